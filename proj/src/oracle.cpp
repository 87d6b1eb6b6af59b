#include "inellipse/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace inellipse::oracle {

namespace {

constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ull;
constexpr double kPi = 3.14159265358979323846;

std::uint64_t fmix(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ull;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBull;
    z ^= z >> 31;
    return z;
}

} // namespace

RngStream RngStream::for_trial(std::uint64_t seed, std::uint64_t trial) {
    return RngStream(fmix(seed + kGamma * (trial + 1)));
}

std::uint64_t RngStream::next_u64() {
    state_ += kGamma;
    return fmix(state_);
}

double RngStream::uniform() { return double(next_u64() >> 11) * 0x1.0p-53; }

double RngStream::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

bool RngStream::coin() { return (next_u64() & 1) != 0; }

void validate(const FuzzConfig& cfg) {
    if (cfg.trials < 1)
        throw InputError("trials must be >= 1");
    if (cfg.grid_size < 16)
        throw InputError("grid_size must be >= 16");
    if (!(cfg.tol > 0))
        throw InputError("tol must be positive");
}

bool operator==(const Violation& a, const Violation& b) {
    if (a.trial != b.trial || a.q != b.q || a.detail != b.detail)
        return false;
    for (int i = 0; i < 4; ++i)
        if (a.quad.v[i].x != b.quad.v[i].x || a.quad.v[i].y != b.quad.v[i].y)
            return false;
    return true;
}

bool same_outcome(const FuzzReport& a, const FuzzReport& b) {
    return a.trials_run == b.trials_run && a.violations == b.violations &&
           a.max_observed_midpoint_count == b.max_observed_midpoint_count &&
           a.histogram == b.histogram;
}

QuadClass affine_class(QuadClass k) {
    return k == QuadClass::MdqType2 ? QuadClass::MdqType1 : k;
}

NormalizedQuad sample_normalized(RngStream& rng, QuadClass cls) {
    constexpr double m = 0.05; // margin to the loci the class does not occupy
    switch (cls) {
    case QuadClass::Parallelogram:
        throw InputError("parallelograms have no normalized shape");
    case QuadClass::Trapezoid: {
        double s;
        do
            s = rng.uniform(0.2, 3.0);
        while (std::abs(s - 1) <= m);
        return {s, 1.0};
    }
    case QuadClass::MdqType1: {
        double s;
        do
            s = rng.uniform(0.55, 3.0);
        while (std::abs(s - 1) <= m);
        return {s, s};
    }
    case QuadClass::MdqType2: {
        double s;
        do
            s = rng.uniform(0.1, 1.9);
        while (std::abs(s - 1) <= m);
        return {s, 2.0 - s};
    }
    case QuadClass::Generic:
        for (;;) {
            const double s = rng.uniform(0.2, 3.0);
            const double t = rng.uniform(0.2, 3.0);
            if (s + t > 1.05 && std::abs(s - 1) > m && std::abs(t - 1) > m &&
                std::abs(s - t) > m && std::abs(s + t - 2) > m)
                return {s, t};
        }
    }
    throw InputError("unknown quadrilateral class");
}

AffineMap random_affine(RngStream& rng, double max_cond) {
    if (!(max_cond >= 1))
        throw InputError("max_cond must be >= 1");
    const double th1 = rng.uniform(0, 2 * kPi);
    const double th2 = rng.uniform(0, 2 * kPi);
    const double s1 = rng.uniform(0.5, 5.0);
    const double ratio = rng.uniform(1.0, std::min(10.0, max_cond));
    const double s2 = (rng.coin() ? -1.0 : 1.0) * s1 / ratio;
    const double tx = rng.uniform(-10.0, 10.0);
    const double ty = rng.uniform(-10.0, 10.0);

    // R(th1) * diag(s1, s2) * R(th2); condition number of the linear part
    // is exactly s1 / |s2| = ratio.
    const double c1 = std::cos(th1), n1 = std::sin(th1);
    const double c2 = std::cos(th2), n2 = std::sin(th2);
    AffineMap map;
    map.m00 = c1 * s1 * c2 - n1 * s2 * n2;
    map.m01 = -c1 * s1 * n2 - n1 * s2 * c2;
    map.m10 = n1 * s1 * c2 + c1 * s2 * n2;
    map.m11 = -n1 * s1 * n2 + c1 * s2 * c2;
    map.shift = {tx, ty};
    return map;
}

Quadrilateral random_quad(RngStream& rng, QuadClass cls) {
    if (cls == QuadClass::Parallelogram) {
        const AffineMap map = random_affine(rng);
        return make_quadrilateral({map({0, 0}), map({0, 1}), map({1, 1}), map({1, 0})});
    }
    for (;;) {
        const NormalizedQuad nq = sample_normalized(rng, cls);
        const AffineMap map = random_affine(rng);
        const Quadrilateral base = to_quadrilateral(nq);
        std::array<Vec2, 4> pts;
        for (int i = 0; i < 4; ++i)
            pts[i] = map(base.v[i]);
        const Quadrilateral quad = make_quadrilateral(pts);
        // Relabeling in user coordinates can swap the mdq type.
        if (classify(quad) == cls)
            return quad;
    }
}

namespace {

bool scan_better(const SideScan& a, const SideScan& b) {
    return a.dist < b.dist || (a.dist == b.dist && a.q < b.q);
}

} // namespace

std::array<SideScan, 4> grid_scan_midpoints(const NormalizedQuad& nq, long grid_size, Exec exec) {
    if (grid_size < 1)
        throw InputError("grid_size must be positive");
    const std::array<Vec2, 4> mids = side_midpoints(to_quadrilateral(nq));
    const auto init = [] {
        std::array<SideScan, 4> a;
        for (SideScan& s : a)
            s = {0, std::numeric_limits<double>::infinity()};
        return a;
    };
    const auto step = [&](std::array<SideScan, 4>& best, long i) {
        const double q = double(i) / double(grid_size + 1);
        const TangencySet ts = tangency_points(nq, q);
        for (int j = 0; j < 4; ++j) {
            const SideScan cand{q, dist(ts.p[j], mids[j])};
            if (scan_better(cand, best[j]))
                best[j] = cand;
        }
    };

    std::array<SideScan, 4> best = init();
#ifdef _OPENMP
    if (exec == Exec::Parallel) {
#pragma omp parallel
        {
            std::array<SideScan, 4> local = init();
#pragma omp for nowait
            for (long i = 1; i <= grid_size; ++i)
                step(local, i);
#pragma omp critical
            for (int j = 0; j < 4; ++j)
                if (scan_better(local[j], best[j]))
                    best[j] = local[j];
        }
        return best;
    }
#else
    (void)exec;
#endif
    for (long i = 1; i <= grid_size; ++i)
        step(best, i);
    return best;
}

double side_midpoint_param(const NormalizedQuad& nq, int side) {
    if (side < 1 || side > 4)
        throw ParameterOutOfRange("side index must be in 1..4");
    const Line line = side_lines(to_quadrilateral(nq))[side - 1];
    const double len2 = dot(line.direction, line.direction);
    const auto offset = [&](double q) {
        const TangencyResult tr = line_tangency(ellipse_from_q(nq, q), line);
        if (!tr.point)
            throw GeometryError("family member lost tangency with its side");
        return dot(*tr.point - line.anchor, line.direction) / len2 - 0.5;
    };

    // Endpoints stay clear of q -> 0/1 where the family member collapses
    // below the real-ellipse thresholds; all midpoint crossings lie well
    // inside (margin-sampled shapes keep them above ~0.02).
    double lo = 1e-4, hi = 1 - 1e-4;
    double flo = offset(lo);
    const double fhi = offset(hi);
    if (flo == 0)
        return lo;
    if (fhi == 0)
        return hi;
    if ((flo < 0) == (fhi < 0))
        throw GeometryError("midpoint crossing is not bracketed");
    for (int iter = 0; iter < 120; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi)
            break;
        const double fm = offset(mid);
        if (fm == 0)
            return mid;
        if ((fm < 0) == (flo < 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

bool inscribed_check(const ConicCoeffs& c, const Quadrilateral& quad, double tol) {
    if (!is_real_ellipse(c))
        return false;
    if (!contains(quad, geometry(c).center))
        return false;
    for (const Line& line : side_lines(quad)) {
        const TangencyResult tr = line_tangency(c, line);
        if (tr.residual > tol || !tr.point)
            return false;
        const double u =
            dot(*tr.point - line.anchor, line.direction) / dot(line.direction, line.direction);
        if (!(u > 0 && u < 1))
            return false;
    }
    return true;
}

double polygonal_area(const ConicCoeffs& c, int n) {
    if (n < 3)
        throw InputError("a polygonal trace needs at least 3 vertices");
    const EllipseGeometry g = geometry(c);
    double acc = 0;
    Vec2 prev = point_at(g, 0);
    for (int k = 1; k <= n; ++k) {
        const Vec2 cur = point_at(g, k == n ? 0.0 : 2 * kPi * double(k) / double(n));
        acc += cross(prev, cur);
        prev = cur;
    }
    return std::abs(acc) / 2;
}

namespace {

struct TrialOutcome {
    std::optional<Violation> violation{};
    int observed = 0;
};

template <typename Fn>
FuzzReport run_trials(const FuzzConfig& cfg, Exec exec, Fn&& per_trial) {
    validate(cfg);
    const auto start = std::chrono::steady_clock::now();
    const long n = cfg.trials;
    std::vector<TrialOutcome> outcomes(static_cast<std::size_t>(n));
    const auto run_one = [&](long i) {
        try {
            outcomes[static_cast<std::size_t>(i)] = per_trial(i);
        } catch (const std::exception& ex) {
            TrialOutcome out;
            out.violation = Violation{i, Quadrilateral{}, 0, std::string("exception: ") + ex.what()};
            outcomes[static_cast<std::size_t>(i)] = out;
        }
    };
#ifdef _OPENMP
    if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic, 16)
        for (long i = 0; i < n; ++i)
            run_one(i);
    } else {
        for (long i = 0; i < n; ++i)
            run_one(i);
    }
#else
    (void)exec;
    for (long i = 0; i < n; ++i)
        run_one(i);
#endif

    FuzzReport rep;
    rep.trials_run = n;
    for (const TrialOutcome& o : outcomes) {
        if (o.violation)
            rep.violations.push_back(*o.violation);
        rep.max_observed_midpoint_count = std::max(rep.max_observed_midpoint_count, o.observed);
        ++rep.histogram[o.observed];
    }
    rep.elapsed = std::chrono::steady_clock::now() - start;
    return rep;
}

constexpr QuadClass kInscribedClasses[4] = {QuadClass::Trapezoid, QuadClass::MdqType1,
                                            QuadClass::MdqType2, QuadClass::Generic};

std::vector<std::vector<int>> expected_multi_sides(QuadClass cls) {
    switch (cls) {
    case QuadClass::Trapezoid: return {{2, 4}};
    case QuadClass::MdqType1: return {{1, 4}, {2, 3}};
    case QuadClass::MdqType2: return {{1, 2}, {3, 4}};
    default: return {};
    }
}

std::vector<std::vector<int>> expected_report_sides(QuadClass cls) {
    if (cls == QuadClass::Generic)
        return {{1}, {2}, {3}, {4}};
    return expected_multi_sides(cls);
}

std::string side_set_string(const std::vector<std::vector<int>>& groups) {
    std::string s = "[";
    for (const auto& g : groups) {
        s += "{";
        for (int v : g)
            s += std::to_string(v) + ",";
        if (!g.empty())
            s.pop_back();
        s += "}";
    }
    return s + "]";
}

} // namespace

FuzzReport fuzz_theorem_t1(const FuzzConfig& cfg, Exec exec) {
    return run_trials(cfg, exec, [&cfg](long trial) {
        RngStream rng = RngStream::for_trial(cfg.seed, static_cast<std::uint64_t>(trial));
        const QuadClass cls = kInscribedClasses[rng.next_u64() % 4];
        const Quadrilateral quad = random_quad(rng, cls);
        const NormalizedQuad nq = normalize(quad).second;

        TrialOutcome out;
        for (long i = 1; i <= cfg.grid_size; ++i) {
            const double q = double(i) / double(cfg.grid_size + 1);
            const int count = count_midpoint_tangencies(nq, q, cfg.tol);
            out.observed = std::max(out.observed, count);
            if (count >= 3 && !out.violation)
                out.violation = Violation{trial, quad, q,
                                          std::to_string(count) + " sides tangent at midpoints"};
        }
        return out;
    });
}

FuzzReport fuzz_lemma_counts(const FuzzConfig& cfg, std::optional<QuadClass> cls, Exec exec) {
    if (cls && *cls == QuadClass::Parallelogram)
        throw InputError("parallelograms admit no inscribed family");
    return run_trials(cfg, exec, [&cfg, cls](long trial) {
        RngStream rng = RngStream::for_trial(cfg.seed, static_cast<std::uint64_t>(trial));
        const QuadClass want = cls ? *cls : kInscribedClasses[rng.next_u64() % 4];
        const Quadrilateral quad = random_quad(rng, want);
        const Quadrilateral labeled = normalize_labeling(quad);
        const NormalizedQuad nq = normalize(quad).second;

        TrialOutcome out;
        const auto fail = [&](double q, std::string detail) {
            out.violation = Violation{trial, quad, q, std::move(detail)};
        };

        // Conic-route crossing parameters, one per side.
        std::array<double, 4> qs{};
        for (int j = 0; j < 4; ++j)
            qs[j] = side_midpoint_param(nq, j + 1);

        // Group sides whose crossings coincide.
        std::vector<std::vector<int>> multi;
        bool used[4] = {};
        for (int i = 0; i < 4; ++i) {
            if (used[i])
                continue;
            std::vector<int> group{i + 1};
            for (int j = i + 1; j < 4; ++j)
                if (!used[j] && std::abs(qs[i] - qs[j]) <= 1e-9) {
                    group.push_back(j + 1);
                    used[j] = true;
                }
            if (group.size() >= 2)
                multi.push_back(std::move(group));
        }
        out.observed = int(multi.size());

        if (multi != expected_multi_sides(want)) {
            fail(0, "midpoint pairing " + side_set_string(multi) + " does not match class " +
                        to_string(want));
            return out;
        }

        // The closed-form report must agree with the conic route.
        const auto ells = midpoint_tangent_ellipses(quad);
        const auto expected = expected_report_sides(want);
        if (ells.size() != expected.size()) {
            fail(0, "reported " + std::to_string(ells.size()) + " midpoint ellipses, expected " +
                        std::to_string(expected.size()));
            return out;
        }
        const std::array<Vec2, 4> mids = side_midpoints(labeled);
        const double scale = cfg.tol * diameter(labeled);
        for (std::size_t k = 0; k < ells.size(); ++k) {
            const auto& e = ells[k];
            if (e.midpoint_sides != expected[k]) {
                fail(e.q, "reported side set does not match class " + std::string(to_string(want)));
                return out;
            }
            // cfg.tol: near-sliver shapes put marginal members a few ulps
            // past the strict single-map residual default.
            if (!inscribed_check(e.conic, labeled, cfg.tol)) {
                fail(e.q, "reported midpoint ellipse is not inscribed");
                return out;
            }
            for (int side : e.midpoint_sides) {
                if (dist(e.tangency.p[side - 1], mids[side - 1]) > scale) {
                    fail(e.q, "tangency point misses midpoint of side " + std::to_string(side));
                    return out;
                }
                if (std::abs(e.q - qs[side - 1]) > 1e-9) {
                    fail(e.q, "closed-form parameter disagrees with conic route on side " +
                                  std::to_string(side));
                    return out;
                }
            }
        }
        return out;
    });
}

FuzzReport fuzz_affine_invariance(const FuzzConfig& cfg, Exec exec) {
    return run_trials(cfg, exec, [&cfg](long trial) {
        RngStream rng = RngStream::for_trial(cfg.seed, static_cast<std::uint64_t>(trial));
        const QuadClass cls0 = rng.coin() ? QuadClass::MdqType1 : QuadClass::MdqType2;
        const Quadrilateral quad = random_quad(rng, cls0);
        const AffineMap map = random_affine(rng);
        std::array<Vec2, 4> pts;
        for (int i = 0; i < 4; ++i)
            pts[i] = map(quad.v[i]);
        const Quadrilateral image = make_quadrilateral(pts);

        TrialOutcome out;
        const auto fail = [&](std::string detail) {
            out.violation = Violation{trial, quad, 0, std::move(detail)};
        };

        const QuadClass cls1 = classify(image);
        if (affine_class(cls1) != affine_class(cls0)) {
            fail(std::string("class changed under affine map: ") + to_string(cls0) + " -> " +
                 to_string(cls1));
            return out;
        }
        if (midpoint_tangent_ellipses(image).size() != 2) {
            fail("image quadrilateral lost its two midpoint-tangent ellipses");
            return out;
        }

        // Midpoints are affine notions: pushing each midpoint-tangent ellipse
        // through the map must land on a midpoint-tangent ellipse of the image.
        const Quadrilateral labeled = normalize_labeling(image);
        const std::array<Vec2, 4> mids = side_midpoints(labeled);
        const std::array<Line, 4> lines = side_lines(labeled);
        const double scale = cfg.tol * diameter(image);
        int mapped_ok = 0;
        for (const auto& e : midpoint_tangent_ellipses(quad)) {
            const ConicCoeffs ce = pushforward(e.conic, map);
            // cfg.tol here: the conic has passed through two affine maps, so
            // its tangency residuals sit well above the single-map default.
            if (!inscribed_check(ce, labeled, cfg.tol)) {
                fail("mapped midpoint ellipse is not inscribed in the image");
                return out;
            }
            int hits = 0;
            for (int j = 0; j < 4; ++j) {
                const TangencyResult tr = line_tangency(ce, lines[j]);
                if (tr.point && dist(*tr.point, mids[j]) <= scale)
                    ++hits;
            }
            if (hits != 2) {
                fail("mapped midpoint ellipse touches " + std::to_string(hits) +
                     " side midpoints, expected 2");
                return out;
            }
            ++mapped_ok;
        }
        out.observed = mapped_ok;
        return out;
    });
}

FuzzReport fuzz_area_law(const FuzzConfig& cfg, Exec exec) {
    return run_trials(cfg, exec, [&cfg](long trial) {
        RngStream rng = RngStream::for_trial(cfg.seed, static_cast<std::uint64_t>(trial));
        const NormalizedQuad nq = sample_normalized(rng, QuadClass::Trapezoid);
        const double q = rng.uniform(0.01, 0.99);

        TrialOutcome out;
        const double lhs = axis_product_squared(nq, q);
        const double rhs = (nq.s / 4) * q * (1 - q);
        Quadrilateral quad = to_quadrilateral(nq);
        if (std::abs(lhs - rhs) > cfg.tol * rhs) {
            out.violation = Violation{trial, quad, q, "axis product breaks the s/4 q(1-q) law"};
            return out;
        }
        ++out.observed;
        const double qmax = max_area_param_scan(nq);
        if (std::abs(qmax - 0.5) > cfg.tol) {
            out.violation = Violation{trial, quad, qmax, "area maximizer strayed from 1/2"};
            return out;
        }
        ++out.observed;
        return out;
    });
}

} // namespace inellipse::oracle
