#include "inellipse/family.hpp"

#include <algorithm>
#include <cmath>

namespace inellipse {

namespace {

void require_admissible(const NormalizedQuad& nq) {
    if (!in_region_g(nq))
        throw InvalidNormalizedQuad("shape parameters outside the admissible region");
}

void require_param(double q) {
    if (!(q > 0) || !(q < 1))
        throw ParameterOutOfRange("family parameter must lie in (0, 1)");
}

} // namespace

ConicCoeffs ellipse_from_q(const NormalizedQuad& nq, double q) {
    require_admissible(nq);
    require_param(q);
    const double s = nq.s, t = nq.t;
    ConicCoeffs c;
    c.A = t * t;
    c.B = 4 * q * q * (t - 1) * t + 2 * q * t * (s - t + 2) - 2 * s * t;
    c.C = ((1 - q) * s + q * t) * ((1 - q) * s + q * t);
    c.D = -2 * q * t * t;
    c.E = -2 * q * t * ((1 - q) * s + q * t);
    c.F = q * q * t * t;
    return c;
}

TangencySet tangency_points(const NormalizedQuad& nq, double q) {
    require_admissible(nq);
    require_param(q);
    const double s = nq.s, t = nq.t;
    TangencySet ts;
    ts.p[0] = {0, q * t / ((t - s) * q + s)};
    const double d2 = (t - 1) * (s + t) * q + s;
    ts.p[1] = {(1 - q) * s * s / d2, t * (s + q * (t - 1)) / d2};
    const double d3 = (s + t - 2) * q + 1;
    ts.p[2] = {(s + q * (t - 1)) / d3, (1 - q) * t / d3};
    ts.p[3] = {q, 0};
    return ts;
}

MidpointSolutions midpoint_solutions(const NormalizedQuad& nq) {
    require_admissible(nq);
    const double s = nq.s, t = nq.t;
    MidpointSolutions m;
    m.q1 = s / (s + t);
    m.q2 = s / (t * t + s * t + s - t);
    m.q3 = 1 / (s + t);
    m.q4 = 0.5;
    return m;
}

namespace {

MidpointTangentEllipse build_record(const NormalizedQuad& nq, double q, std::vector<int> sides,
                                    const AffineMap& to_user) {
    MidpointTangentEllipse e;
    e.q = q;
    e.conic = canonicalized(pushforward(ellipse_from_q(nq, q), to_user));
    e.midpoint_sides = std::move(sides);
    const TangencySet ts = tangency_points(nq, q);
    for (int j = 0; j < 4; ++j)
        e.tangency.p[j] = to_user(ts.p[j]);
    return e;
}

} // namespace

std::vector<MidpointTangentEllipse> midpoint_tangent_ellipses(const Quadrilateral& quad,
                                                              double tol) {
    const QuadClass cls = classify(quad, tol);
    const auto [map, nq] = normalize(quad, tol);
    const AffineMap to_user = map.inverse();
    const MidpointSolutions m = midpoint_solutions(nq);

    std::vector<MidpointTangentEllipse> out;
    switch (cls) {
    case QuadClass::Parallelogram:
        break; // unreachable: normalize already threw
    case QuadClass::Trapezoid:
        out.push_back(build_record(nq, 0.5, {2, 4}, to_user));
        break;
    case QuadClass::MdqType1:
        // s = t collapses q1 with q4 and q2 with q3; average out the rounding.
        out.push_back(build_record(nq, (m.q1 + m.q4) / 2, {1, 4}, to_user));
        out.push_back(build_record(nq, (m.q2 + m.q3) / 2, {2, 3}, to_user));
        break;
    case QuadClass::MdqType2:
        out.push_back(build_record(nq, (m.q1 + m.q2) / 2, {1, 2}, to_user));
        out.push_back(build_record(nq, (m.q3 + m.q4) / 2, {3, 4}, to_user));
        break;
    case QuadClass::Generic: {
        const std::array<double, 4> qs = m.as_array();
        for (int j = 0; j < 4; ++j)
            out.push_back(build_record(nq, qs[j], {j + 1}, to_user));
        break;
    }
    }
    return out;
}

MaxAreaEllipse max_area_ellipse(const Quadrilateral& quad, double tol) {
    const QuadClass cls = classify(quad, tol);
    const auto [map, nq] = normalize(quad, tol);
    MaxAreaEllipse e;
    e.q = cls == QuadClass::Trapezoid ? 0.5 : max_area_param_scan(nq);
    e.conic = canonicalized(pushforward(ellipse_from_q(nq, e.q), map.inverse()));
    e.area = area(e.conic);
    return e;
}

int count_midpoint_tangencies(const NormalizedQuad& nq, double q, double tol) {
    const Quadrilateral quad = to_quadrilateral(nq);
    const std::array<Vec2, 4> mids = side_midpoints(quad);
    const TangencySet ts = tangency_points(nq, q);
    const double scale = tol * diameter(quad);
    int count = 0;
    for (int j = 0; j < 4; ++j)
        if (dist(ts.p[j], mids[j]) <= scale)
            ++count;
    return count;
}

double axis_product_squared(const NormalizedQuad& nq, double q) {
    const ConicCoeffs c = ellipse_from_q(nq, q);
    const auto [Delta, delta] = discriminants(c);
    return 4 * delta * delta / (Delta * Delta * Delta);
}

double max_area_param_scan(const NormalizedQuad& nq) {
    require_admissible(nq);
    constexpr int kGrid = 1024;
    const auto f = [&](double q) { return axis_product_squared(nq, q); };

    int best = 1;
    double best_val = f(1.0 / (kGrid + 1));
    for (int i = 2; i <= kGrid; ++i) {
        const double v = f(double(i) / (kGrid + 1));
        if (v > best_val) {
            best_val = v;
            best = i;
        }
    }
    double a = double(best - 1) / (kGrid + 1);
    double b = double(best + 1) / (kGrid + 1);

    const double gr = (std::sqrt(5.0) - 1) / 2;
    double c = b - gr * (b - a), d = a + gr * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > 1e-6) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - gr * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + gr * (b - a);
            fd = f(d);
        }
    }

    // Comparison search cannot resolve a quadratic peak past sqrt(eps);
    // finish on the sign of a central-difference slope instead.
    constexpr double h = 1e-6;
    a = std::max(a, 2 * h);
    b = std::min(b, 1 - 2 * h);
    const auto slope = [&](double q) { return f(q + h) - f(q - h); };
    double sa = slope(a);
    const double sb = slope(b);
    if (sa == 0)
        return a;
    if (sb == 0)
        return b;
    if ((sa > 0) == (sb > 0))
        return f(a) > f(b) ? a : b;
    while (b - a > 1e-12) {
        const double mid = 0.5 * (a + b);
        if (mid == a || mid == b)
            break;
        const double sm = slope(mid);
        if (sm == 0)
            return mid;
        if ((sm > 0) == (sa > 0)) {
            a = mid;
            sa = sm;
        } else {
            b = mid;
        }
    }
    return 0.5 * (a + b);
}

} // namespace inellipse
