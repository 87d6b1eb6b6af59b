#include "inellipse/conic.hpp"

#include <algorithm>
#include <cmath>

namespace inellipse {

namespace {

constexpr double kRelTol = 1e-12;

double sgn(double x) { return x < 0 ? -1.0 : 1.0; }

// Symmetric 3x3 matrix of the conic: [x y 1] M [x y 1]^T = conic(x, y).
struct Sym3 {
    double m[3][3];
};

Sym3 to_matrix(const ConicCoeffs& c) {
    return {{{c.A, c.B / 2, c.D / 2}, {c.B / 2, c.C, c.E / 2}, {c.D / 2, c.E / 2, c.F}}};
}

ConicCoeffs from_matrix(const Sym3& m) {
    return {m.m[0][0], 2 * m.m[0][1], m.m[1][1], 2 * m.m[0][2], 2 * m.m[1][2], m.m[2][2]};
}

} // namespace

AffineMap affine_from_triangle(Vec2 a0, Vec2 a1, Vec2 a2, Vec2 b0, Vec2 b1, Vec2 b2) {
    // Solve M * [a1-a0 | a2-a0] = [b1-b0 | b2-b0], then shift = b0 - M a0.
    const Vec2 u = a1 - a0, w = a2 - a0;
    const double d = cross(u, w);
    const double scale = dot(u, u) + dot(w, w);
    if (std::abs(d) <= 1e-14 * scale)
        throw SingularMap("source points are collinear");
    const Vec2 p = b1 - b0, r = b2 - b0;
    AffineMap t;
    t.m00 = (p.x * w.y - r.x * u.y) / d;
    t.m01 = (r.x * u.x - p.x * w.x) / d;
    t.m10 = (p.y * w.y - r.y * u.y) / d;
    t.m11 = (r.y * u.x - p.y * w.x) / d;
    const Vec2 s = t.linear(a0);
    t.shift = b0 - s;
    return t;
}

ConicCoeffs scaled(const ConicCoeffs& c, double k) {
    return {k * c.A, k * c.B, k * c.C, k * c.D, k * c.E, k * c.F};
}

ConicCoeffs canonicalized(const ConicCoeffs& c) {
    const double n = std::sqrt(c.A * c.A + c.B * c.B + c.C * c.C);
    if (n == 0)
        throw NotAnEllipse("quadratic part is zero");
    double s;
    if (c.A != 0)
        s = sgn(c.A);
    else if (c.B != 0)
        s = sgn(c.B);
    else
        s = sgn(c.C);
    return scaled(c, s / n);
}

std::array<double, 6> coeff_array(const ConicCoeffs& c) {
    return {c.A, c.B, c.C, c.D, c.E, c.F};
}

ConicDiscriminants discriminants(const ConicCoeffs& c) {
    ConicDiscriminants d;
    d.Delta = 4 * c.A * c.C - c.B * c.B;
    d.delta = c.C * c.D * c.D + c.A * c.E * c.E - c.B * c.D * c.E - c.F * d.Delta;
    return d;
}

bool is_real_ellipse(const ConicCoeffs& raw) {
    ConicCoeffs c;
    try {
        c = canonicalized(raw);
    } catch (const NotAnEllipse&) {
        return false;
    }
    const auto [Delta, delta] = discriminants(c);
    // Strictly positive beyond a scale-aware threshold; near-degenerate
    // conics are rejected rather than reduced.
    const double delta_scale = std::max({std::abs(c.C * c.D * c.D), std::abs(c.A * c.E * c.E),
                                         std::abs(c.B * c.D * c.E), std::abs(c.F * Delta), 1e-300});
    const double Delta_scale = std::max(std::abs(4 * c.A * c.C), c.B * c.B);
    return Delta > kRelTol * Delta_scale && delta > kRelTol * delta_scale;
}

EllipseGeometry geometry(const ConicCoeffs& raw) {
    if (!is_real_ellipse(raw))
        throw NotAnEllipse("conic is not a real ellipse");
    const ConicCoeffs c = canonicalized(raw);
    const double Delta = discriminants(c).Delta;

    EllipseGeometry g;
    // Center: gradient-zero system 2A x + B y + D = 0, B x + 2C y + E = 0.
    g.center = {(c.B * c.E - 2 * c.C * c.D) / Delta, (c.B * c.D - 2 * c.A * c.E) / Delta};

    // Constant term after translating the center to the origin.
    const double f0 = c.F + (c.D * g.center.x + c.E * g.center.y) / 2;

    // Eigen-decomposition of [[A, B/2], [B/2, C]].
    const double b2 = c.B / 2;
    const double h = std::hypot(c.A - c.C, c.B);
    const double lmin = (c.A + c.C - h) / 2;
    const double lmax = (c.A + c.C + h) / 2;
    if (!(f0 < 0) || !(lmin > 0))
        throw NotAnEllipse("degenerate quadratic form");
    g.a = std::sqrt(-f0 / lmin);
    g.b = std::sqrt(-f0 / lmax);

    // Major axis along the eigenvector of the smaller eigenvalue.
    const Vec2 v1{b2, lmin - c.A};
    const Vec2 v2{lmin - c.C, b2};
    const Vec2 dir = norm(v1) >= norm(v2) ? v1 : v2;
    if (h <= 1e-12 * (std::abs(c.A) + std::abs(c.C)) || norm(dir) == 0) {
        g.angle = 0; // circle, any direction
    } else {
        constexpr double pi = 3.14159265358979323846;
        double ang = std::atan2(dir.y, dir.x);
        if (ang < 0)
            ang += pi;
        if (ang >= pi)
            ang -= pi;
        g.angle = ang;
    }
    return g;
}

double area(const ConicCoeffs& raw) {
    if (!is_real_ellipse(raw))
        throw NotAnEllipse("conic is not a real ellipse");
    const ConicCoeffs c = canonicalized(raw);
    const auto [Delta, delta] = discriminants(c);
    constexpr double pi = 3.14159265358979323846;
    return 2 * pi * delta / (Delta * std::sqrt(Delta));
}

double eval_raw(const ConicCoeffs& c, Vec2 p) {
    return c.A * p.x * p.x + c.B * p.x * p.y + c.C * p.y * p.y + c.D * p.x + c.E * p.y + c.F;
}

double eval(const ConicCoeffs& c, Vec2 p) {
    return eval_raw(canonicalized(c), p);
}

TangencyResult line_tangency(const ConicCoeffs& raw, const Line& line) {
    if (norm(line.direction) == 0)
        throw DegenerateLine("line direction is zero");
    if (!is_real_ellipse(raw))
        throw NotAnEllipse("conic is not a real ellipse");
    const ConicCoeffs c = canonicalized(raw);

    // Restrict to anchor + u * dir: alpha u^2 + beta u + gamma.
    const Vec2 a = line.anchor, d = line.direction;
    const double alpha = c.A * d.x * d.x + c.B * d.x * d.y + c.C * d.y * d.y;
    const double beta = 2 * c.A * a.x * d.x + c.B * (a.x * d.y + a.y * d.x) +
                        2 * c.C * a.y * d.y + c.D * d.x + c.E * d.y;
    const double gamma = eval_raw(c, a);

    const double disc = beta * beta - 4 * alpha * gamma;
    const double scale = std::max({std::abs(alpha), std::abs(beta), std::abs(gamma), 1e-300});
    const double threshold = 1e-9 * scale * scale;

    TangencyResult r;
    r.residual = std::abs(disc) / (scale * scale);
    if (disc > threshold)
        r.status = TangencyStatus::Secant;
    else if (disc < -threshold)
        r.status = TangencyStatus::Disjoint;
    else
        r.status = TangencyStatus::Tangent;
    // alpha = d^T Q d != 0 for a definite quadratic part, so the restriction
    // always has a stationary point: the tangency point when tangent, the
    // chord midpoint / nearest approach otherwise.
    const double u = -beta / (2 * alpha);
    r.point = a + u * d;
    return r;
}

ConicCoeffs pushforward(const ConicCoeffs& c, const AffineMap& map) {
    // Image conic satisfies c(map^{-1}(p)) = 0: congruence by the inverse.
    const AffineMap inv = map.inverse();
    const double n[3][3] = {{inv.m00, inv.m01, inv.shift.x},
                            {inv.m10, inv.m11, inv.shift.y},
                            {0, 0, 1}};
    const Sym3 q = to_matrix(c);
    Sym3 out{};
    for (int i = 0; i < 3; ++i) {
        for (int j = i; j < 3; ++j) {
            double sum = 0;
            for (int k = 0; k < 3; ++k)
                for (int l = 0; l < 3; ++l)
                    sum += n[k][i] * q.m[k][l] * n[l][j];
            out.m[i][j] = out.m[j][i] = sum;
        }
    }
    return from_matrix(out);
}

Vec2 point_at(const EllipseGeometry& g, double theta) {
    const double ct = std::cos(theta), st = std::sin(theta);
    const double ca = std::cos(g.angle), sa = std::sin(g.angle);
    return {g.center.x + g.a * ct * ca - g.b * st * sa,
            g.center.y + g.a * ct * sa + g.b * st * ca};
}

} // namespace inellipse
