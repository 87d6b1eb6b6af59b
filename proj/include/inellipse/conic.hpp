#pragma once

#include <array>
#include <optional>

#include "inellipse/geom.hpp"

namespace inellipse {

/// Coefficients of the general conic A x^2 + B xy + C y^2 + D x + E y + F = 0.
/// Scalar multiples describe the same point set; canonicalized() picks the
/// representative with ||(A,B,C)|| = 1 and A > 0.
struct ConicCoeffs {
    double A = 0, B = 0, C = 0, D = 0, E = 0, F = 0;
};

/// Delta = 4AC - B^2, delta = C D^2 + A E^2 - B D E - F Delta.
/// A real nondegenerate ellipse has Delta > 0 and delta > 0 (with A > 0),
/// and semi-axes a, b satisfying a^2 b^2 = 4 delta^2 / Delta^3.
struct ConicDiscriminants {
    double Delta = 0;
    double delta = 0;
};

struct EllipseGeometry {
    Vec2 center{};
    double a = 0;     // semi-major length, a >= b
    double b = 0;     // semi-minor length, > 0
    double angle = 0; // major-axis direction, radians in [0, pi)
};

/// Parametric line anchor + u * direction, direction nonzero.
struct Line {
    Vec2 anchor{};
    Vec2 direction{};
};

enum class TangencyStatus { Tangent, Secant, Disjoint };

struct TangencyResult {
    TangencyStatus status = TangencyStatus::Disjoint;
    // Stationary point of the restricted quadratic: the tangency point when
    // tangent, the chord midpoint / nearest approach otherwise.
    std::optional<Vec2> point{};
    double residual = 0; // normalized discriminant magnitude of the restricted quadratic
};

ConicCoeffs scaled(const ConicCoeffs& c, double k);
ConicCoeffs canonicalized(const ConicCoeffs& c);

std::array<double, 6> coeff_array(const ConicCoeffs& c);

/// Computed on the raw coefficients as given (no canonicalization).
ConicDiscriminants discriminants(const ConicCoeffs& c);

bool is_real_ellipse(const ConicCoeffs& c);

/// Center, semi-axes and orientation. Throws NotAnEllipse otherwise.
EllipseGeometry geometry(const ConicCoeffs& c);

/// pi * a * b = 2 pi delta / Delta^(3/2); invariant under coefficient scaling.
double area(const ConicCoeffs& c);

/// Conic polynomial at p, on canonicalized coefficients.
double eval(const ConicCoeffs& c, Vec2 p);

/// Conic polynomial at p on the raw coefficients.
double eval_raw(const ConicCoeffs& c, Vec2 p);

TangencyResult line_tangency(const ConicCoeffs& c, const Line& line);

/// Conic of the image set { map(p) : c(p) = 0 }.
ConicCoeffs pushforward(const ConicCoeffs& c, const AffineMap& map);

/// Boundary point at eccentric angle theta.
Vec2 point_at(const EllipseGeometry& g, double theta);

} // namespace inellipse
