#pragma once

#include <chrono>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "inellipse/family.hpp"
#include "inellipse/quad.hpp"

namespace inellipse::oracle {

/// Deterministic per-trial random stream. Derived from (seed, trial index)
/// so trials can run in any order, on any number of threads, with identical
/// results. splitmix64 underneath; doubles are built from the top 53 bits,
/// so sequences are identical across platforms.
class RngStream {
public:
    static RngStream for_trial(std::uint64_t seed, std::uint64_t trial);
    explicit RngStream(std::uint64_t state) : state_(state) {}

    std::uint64_t next_u64();
    double uniform();                       // [0, 1)
    double uniform(double lo, double hi);
    bool coin();

private:
    std::uint64_t state_ = 0;
};

struct FuzzConfig {
    std::uint64_t seed = 0;
    long trials = 1000;
    long grid_size = 512; // q samples per trial
    double tol = 1e-7;    // midpoint-distance tolerance, relative to diameter
};

/// Throws InputError unless trials >= 1, grid_size >= 16, tol > 0.
void validate(const FuzzConfig& cfg);

struct Violation {
    long trial = 0;
    Quadrilateral quad{};
    double q = 0;
    std::string detail;
};

bool operator==(const Violation& a, const Violation& b);

struct FuzzReport {
    long trials_run = 0;
    std::vector<Violation> violations; // sorted by trial index
    int max_observed_midpoint_count = 0;
    std::map<int, long> histogram; // per-trial observation counts (target-specific)
    std::chrono::duration<double> elapsed{};

    bool passed() const { return violations.empty(); }
};

/// Everything except elapsed.
bool same_outcome(const FuzzReport& a, const FuzzReport& b);

/// Serial is the reference lane; Parallel runs trials under OpenMP. Per-trial
/// work is identical and the reduction is order-insensitive, so both lanes
/// produce the same report.
enum class Exec { Serial, Parallel };

/// Admissible (s,t) for the requested class, margins >= 0.05 from the
/// degenerate loci (s=t, s+t=2, t=1, s=1) that the class does not occupy.
NormalizedQuad sample_normalized(RngStream& rng, QuadClass cls);

/// Random invertible map, condition number of the linear part <= max_cond.
AffineMap random_affine(RngStream& rng, double max_cond = 50.0);

/// Random quadrilateral of the requested classification: sampled normalized
/// shape pushed through a random well-conditioned affine map, resampled until
/// the canonical classification matches (relabeling can swap the mdq type).
Quadrilateral random_quad(RngStream& rng, QuadClass cls);

struct SideScan {
    double q = 0;    // argmin over the grid
    double dist = 0; // min |P_j(q) - MP_j|
};

/// For each side, the grid q minimizing the tangency-point-to-midpoint
/// distance over the open grid q_i = i/(grid_size+1), i = 1..grid_size.
std::array<SideScan, 4> grid_scan_midpoints(const NormalizedQuad& nq, long grid_size,
                                            Exec exec = Exec::Serial);

/// The q at which the conic's tangency point on the given side (1-based)
/// passes the side midpoint, found by bisection on the tangency point
/// computed from the conic itself (line_tangency), independent of the
/// closed-form solutions.
double side_midpoint_param(const NormalizedQuad& nq, int side);

/// Tangent to all four side lines (restriction discriminant residual within
/// tol), tangency points strictly interior to the segments, center inside
/// the quadrilateral.
bool inscribed_check(const ConicCoeffs& c, const Quadrilateral& q, double tol = 1e-9);

/// Shoelace area of the inscribed n-gon traced through geometry(c).
/// Monotone nondecreasing in n, bounded above by area(c).
double polygonal_area(const ConicCoeffs& c, int n);

/// No inscribed ellipse of a non-parallelogram touches three side midpoints:
/// scans q over the grid for quads mixed over all four classes and flags any
/// tangency count >= 3. Histogram: per-trial max count.
FuzzReport fuzz_theorem_t1(const FuzzConfig& cfg, Exec exec = Exec::Parallel);

/// Counts of multi-midpoint inscribed ellipses per class (mdq: 2, trapezoid:
/// 1, generic: 0), with the exact side pairs, via bisection on the conic
/// route; cross-checked against midpoint_tangent_ellipses in user
/// coordinates. Histogram: multi-midpoint ellipse count per trial.
FuzzReport fuzz_lemma_counts(const FuzzConfig& cfg, std::optional<QuadClass> cls = {},
                             Exec exec = Exec::Parallel);

/// Classification is preserved by random invertible affine maps (mdq types
/// folded together; the canonical labeling is coordinate-dependent).
FuzzReport fuzz_affine_invariance(const FuzzConfig& cfg, Exec exec = Exec::Parallel);

/// For t = 1: 4 delta^2 / Delta^3 = (s/4) q (1-q) to relative tol, and the
/// numeric area maximizer sits at q = 1/2.
FuzzReport fuzz_area_law(const FuzzConfig& cfg, Exec exec = Exec::Parallel);

/// Classification with the mdq types folded together, for affine-invariance
/// comparisons.
QuadClass affine_class(QuadClass k);

} // namespace inellipse::oracle
