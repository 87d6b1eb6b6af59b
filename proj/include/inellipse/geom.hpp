#pragma once

#include <cmath>

#include "inellipse/errors.hpp"

namespace inellipse {

struct Vec2 {
    double x = 0;
    double y = 0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double k, Vec2 v) { return {k * v.x, k * v.y}; }
inline Vec2 operator*(Vec2 v, double k) { return k * v; }

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 v) { return std::hypot(v.x, v.y); }
inline double dist(Vec2 a, Vec2 b) { return norm(a - b); }

/// Invertible map p -> linear * p + shift.
struct AffineMap {
    double m00 = 1, m01 = 0;
    double m10 = 0, m11 = 1;
    Vec2 shift{};

    Vec2 operator()(Vec2 p) const {
        return {m00 * p.x + m01 * p.y + shift.x, m10 * p.x + m11 * p.y + shift.y};
    }

    /// Action on directions (no translation).
    Vec2 linear(Vec2 v) const { return {m00 * v.x + m01 * v.y, m10 * v.x + m11 * v.y}; }

    double det() const { return m00 * m11 - m01 * m10; }

    AffineMap inverse() const {
        const double d = det();
        const double scale = m00 * m00 + m01 * m01 + m10 * m10 + m11 * m11;
        if (std::abs(d) <= 1e-14 * scale)
            throw SingularMap("affine map is singular");
        AffineMap inv;
        inv.m00 = m11 / d;
        inv.m01 = -m01 / d;
        inv.m10 = -m10 / d;
        inv.m11 = m00 / d;
        const Vec2 s = inv.linear(shift);
        inv.shift = {-s.x, -s.y};
        return inv;
    }
};

/// outer(inner(p)).
inline AffineMap compose(const AffineMap& outer, const AffineMap& inner) {
    AffineMap r;
    r.m00 = outer.m00 * inner.m00 + outer.m01 * inner.m10;
    r.m01 = outer.m00 * inner.m01 + outer.m01 * inner.m11;
    r.m10 = outer.m10 * inner.m00 + outer.m11 * inner.m10;
    r.m11 = outer.m10 * inner.m01 + outer.m11 * inner.m11;
    r.shift = outer(inner.shift);
    return r;
}

/// The unique affine map taking a0,a1,a2 to b0,b1,b2.
AffineMap affine_from_triangle(Vec2 a0, Vec2 a1, Vec2 a2, Vec2 b0, Vec2 b1, Vec2 b2);

} // namespace inellipse
