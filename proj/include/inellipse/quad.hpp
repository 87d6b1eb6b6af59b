#pragma once

#include <array>
#include <utility>

#include "inellipse/conic.hpp"
#include "inellipse/geom.hpp"

namespace inellipse {

/// Strictly convex quadrilateral, vertices A1..A4 labeled clockwise with
/// A1 = lowest vertex (ties broken leftmost). Sides S1=A1A2, S2=A2A3,
/// S3=A3A4, S4=A4A1; diagonals D1=A1A3, D2=A2A4.
struct Quadrilateral {
    std::array<Vec2, 4> v{};
};

enum class QuadClass { Parallelogram, Trapezoid, MdqType1, MdqType2, Generic };

const char* to_string(QuadClass k);

/// Canonical target of normalization: vertices (0,0), (0,1), (s,t), (1,0)
/// with s,t > 0, s + t > 1, s != 1.
struct NormalizedQuad {
    double s = 0;
    double t = 0;
};

struct DiagonalData {
    Vec2 intersection{}; // D1 x D2, strictly interior
    Vec2 mid_d1{};
    Vec2 mid_d2{};
};

inline constexpr double kClassifyTol = 1e-9;

/// Canonically labeled quadrilateral from four points in arbitrary order.
/// Throws CollinearPoints / NonConvexInput.
Quadrilateral make_quadrilateral(const std::array<Vec2, 4>& pts);

/// Max pairwise vertex distance.
double diameter(const Quadrilateral& q);

DiagonalData diagonal_data(const Quadrilateral& q);

std::array<Vec2, 4> side_midpoints(const Quadrilateral& q);

std::array<Line, 4> side_lines(const Quadrilateral& q);

bool contains(const Quadrilateral& q, Vec2 p);

/// Parallelogram: both opposite side pairs parallel. Trapezoid: exactly one.
/// MdqType1/2: diagonal intersection at the midpoint of D2 / D1 within
/// tol * diameter. Tolerances on parallelism are relative to side lengths.
QuadClass classify(const Quadrilateral& q, double tol = kClassifyTol);

/// Labeling used for normalization: for trapezoids the cycle is shifted so the
/// parallel side pair sits at S2/S4; otherwise the canonical labeling.
Quadrilateral normalize_labeling(const Quadrilateral& q, double tol = kClassifyTol);

/// Affine map T with T(A1)=(0,0), T(A2)=(0,1), T(A4)=(1,0), and (s,t)=T(A3).
/// Applies normalize_labeling first; throws ParallelogramInput.
std::pair<AffineMap, NormalizedQuad> normalize(const Quadrilateral& q, double tol = kClassifyTol);

bool in_region_g(const NormalizedQuad& nq);

/// The quadrilateral (0,0), (0,1), (s,t), (1,0); already canonically labeled.
Quadrilateral to_quadrilateral(const NormalizedQuad& nq);

} // namespace inellipse
