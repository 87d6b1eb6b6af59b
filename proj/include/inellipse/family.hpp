#pragma once

#include <vector>

#include "inellipse/conic.hpp"
#include "inellipse/quad.hpp"

namespace inellipse {

/// Tangency points of a family ellipse with the four sides; p[j] lies on
/// side S_{j+1}, strictly interior. On the normalized quad the bottom-side
/// point is P4 = (q, 0), which makes q the family coordinate.
struct TangencySet {
    std::array<Vec2, 4> p{};
};

/// The unique family parameters at which the tangency point on side j hits
/// that side's midpoint:
///   q1 = s/(s+t), q2 = s/(t^2+st+s-t), q3 = 1/(s+t), q4 = 1/2.
/// All four lie in (0,1) whenever (s,t) is admissible.
struct MidpointSolutions {
    double q1 = 0, q2 = 0, q3 = 0, q4 = 0;
    std::array<double, 4> as_array() const { return {q1, q2, q3, q4}; }
};

/// An inscribed ellipse tangent at the midpoint of one or two sides,
/// reported in user coordinates.
struct MidpointTangentEllipse {
    double q = 0;
    ConicCoeffs conic{};
    std::vector<int> midpoint_sides; // 1-based, size 1 or 2
    TangencySet tangency{};
};

struct MaxAreaEllipse {
    double q = 0;
    ConicCoeffs conic{}; // user coordinates
    double area = 0;     // of the user-coordinate ellipse
};

/// The inscribed ellipse with bottom-side tangency abscissa q, as a conic on
/// the normalized quad. Distinct q give distinct ellipses; every inscribed
/// ellipse arises this way for exactly one q in (0,1).
ConicCoeffs ellipse_from_q(const NormalizedQuad& nq, double q);

/// Closed-form tangency points of ellipse_from_q(nq, q) with the four sides.
TangencySet tangency_points(const NormalizedQuad& nq, double q);

MidpointSolutions midpoint_solutions(const NormalizedQuad& nq);

/// The midpoint-tangent inscribed ellipses of a non-parallelogram:
///   mdq type 1 -> two ellipses, midpoint sides {1,4} and {2,3};
///   mdq type 2 -> two ellipses, {1,2} and {3,4};
///   trapezoid  -> one ellipse, {2,4}, at q = 1/2;
///   generic    -> four ellipses, one midpoint side each.
/// Grouping follows the class (s=t, s+t=2, t=1 loci), not float equality of
/// the q values. Ordered by smallest midpoint side index.
std::vector<MidpointTangentEllipse> midpoint_tangent_ellipses(const Quadrilateral& q,
                                                              double tol = kClassifyTol);

/// Maximizer of a^2 b^2 over the family; analytic q = 1/2 for trapezoids,
/// numeric scan + golden-section refinement otherwise.
MaxAreaEllipse max_area_ellipse(const Quadrilateral& q, double tol = kClassifyTol);

/// Number of sides whose tangency point lies within tol * diam of the side
/// midpoint, on the normalized quad. Never exceeds 2 for admissible (s,t).
int count_midpoint_tangencies(const NormalizedQuad& nq, double q, double tol);

/// a^2 b^2 of the family member, via 4 delta^2 / Delta^3 on the raw family
/// coefficients. Equals (s/4) q (1-q) when t = 1.
double axis_product_squared(const NormalizedQuad& nq, double q);

/// Numeric maximizer of axis_product_squared over (0,1): 1024-point scan,
/// golden-section narrowing, then bisection on a central-difference slope
/// down to bracket width 1e-12.
double max_area_param_scan(const NormalizedQuad& nq);

} // namespace inellipse
