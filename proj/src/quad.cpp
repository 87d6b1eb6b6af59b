#include "inellipse/quad.hpp"

#include <algorithm>
#include <cmath>

namespace inellipse {

const char* to_string(QuadClass k) {
    switch (k) {
    case QuadClass::Parallelogram: return "parallelogram";
    case QuadClass::Trapezoid: return "trapezoid";
    case QuadClass::MdqType1: return "mdq-type-1";
    case QuadClass::MdqType2: return "mdq-type-2";
    case QuadClass::Generic: return "generic";
    }
    return "unknown";
}

namespace {

bool lowest_leftmost_before(Vec2 a, Vec2 b) {
    if (a.y != b.y)
        return a.y < b.y;
    return a.x < b.x;
}

} // namespace

Quadrilateral make_quadrilateral(const std::array<Vec2, 4>& pts) {
    double diam = 0;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            diam = std::max(diam, dist(pts[i], pts[j]));
    if (diam == 0)
        throw CollinearPoints("all vertices coincide");
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            if (dist(pts[i], pts[j]) <= 1e-12 * diam)
                throw CollinearPoints("coincident vertices");

    const Vec2 centroid = 0.25 * (pts[0] + pts[1] + pts[2] + pts[3]);
    std::array<Vec2, 4> order = pts;
    for (const Vec2& p : order)
        if (dist(p, centroid) <= 1e-12 * diam)
            throw NonConvexInput("a vertex lies inside the others");
    std::sort(order.begin(), order.end(), [&](Vec2 a, Vec2 b) {
        return std::atan2(a.y - centroid.y, a.x - centroid.x) <
               std::atan2(b.y - centroid.y, b.x - centroid.x);
    });

    // Counterclockwise convex position: every consecutive turn is a strict
    // left turn.
    const double eps = 1e-12 * diam * diam;
    for (int i = 0; i < 4; ++i) {
        const Vec2 e0 = order[(i + 1) % 4] - order[i];
        const Vec2 e1 = order[(i + 2) % 4] - order[(i + 1) % 4];
        const double c = cross(e0, e1);
        if (std::abs(c) <= eps)
            throw CollinearPoints("three vertices are collinear");
        if (c < 0)
            throw NonConvexInput("vertices are not in convex position");
    }

    Quadrilateral q;
    q.v = {order[0], order[3], order[2], order[1]}; // clockwise
    int start = 0;
    for (int i = 1; i < 4; ++i)
        if (lowest_leftmost_before(q.v[i], q.v[start]))
            start = i;
    std::rotate(q.v.begin(), q.v.begin() + start, q.v.end());
    return q;
}

double diameter(const Quadrilateral& q) {
    double d = 0;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            d = std::max(d, dist(q.v[i], q.v[j]));
    return d;
}

DiagonalData diagonal_data(const Quadrilateral& q) {
    const Vec2 d1 = q.v[2] - q.v[0];
    const Vec2 d2 = q.v[3] - q.v[1];
    const double den = cross(d1, d2); // nonzero: diagonals of a convex quad cross
    const double u = cross(q.v[1] - q.v[0], d2) / den;
    DiagonalData d;
    d.intersection = q.v[0] + u * d1;
    d.mid_d1 = 0.5 * (q.v[0] + q.v[2]);
    d.mid_d2 = 0.5 * (q.v[1] + q.v[3]);
    return d;
}

std::array<Vec2, 4> side_midpoints(const Quadrilateral& q) {
    return {0.5 * (q.v[0] + q.v[1]), 0.5 * (q.v[1] + q.v[2]), 0.5 * (q.v[2] + q.v[3]),
            0.5 * (q.v[3] + q.v[0])};
}

std::array<Line, 4> side_lines(const Quadrilateral& q) {
    return {Line{q.v[0], q.v[1] - q.v[0]}, Line{q.v[1], q.v[2] - q.v[1]},
            Line{q.v[2], q.v[3] - q.v[2]}, Line{q.v[3], q.v[0] - q.v[3]}};
}

bool contains(const Quadrilateral& q, Vec2 p) {
    const double slack = 1e-12 * diameter(q) * diameter(q);
    for (int i = 0; i < 4; ++i) {
        // Clockwise boundary: interior is to the right of every side.
        if (cross(q.v[(i + 1) % 4] - q.v[i], p - q.v[i]) > slack)
            return false;
    }
    return true;
}

QuadClass classify(const Quadrilateral& q, double tol) {
    const Vec2 s1 = q.v[1] - q.v[0], s2 = q.v[2] - q.v[1];
    const Vec2 s3 = q.v[3] - q.v[2], s4 = q.v[0] - q.v[3];
    const bool p13 = std::abs(cross(s1, s3)) <= tol * norm(s1) * norm(s3);
    const bool p24 = std::abs(cross(s2, s4)) <= tol * norm(s2) * norm(s4);
    if (p13 && p24)
        return QuadClass::Parallelogram;
    if (p13 || p24)
        return QuadClass::Trapezoid;

    const DiagonalData d = diagonal_data(q);
    const double scale = tol * diameter(q);
    if (dist(d.intersection, d.mid_d2) <= scale)
        return QuadClass::MdqType1;
    if (dist(d.intersection, d.mid_d1) <= scale)
        return QuadClass::MdqType2;
    return QuadClass::Generic;
}

Quadrilateral normalize_labeling(const Quadrilateral& q, double tol) {
    if (classify(q, tol) != QuadClass::Trapezoid)
        return q;
    const Vec2 s1 = q.v[1] - q.v[0], s3 = q.v[3] - q.v[2];
    if (std::abs(cross(s1, s3)) > tol * norm(s1) * norm(s3))
        return q; // parallel pair already at S2/S4
    Quadrilateral shifted;
    shifted.v = {q.v[1], q.v[2], q.v[3], q.v[0]};
    return shifted;
}

std::pair<AffineMap, NormalizedQuad> normalize(const Quadrilateral& q, double tol) {
    const QuadClass cls = classify(q, tol);
    if (cls == QuadClass::Parallelogram)
        throw ParallelogramInput("parallelograms admit no normalized shape");
    const Quadrilateral lab = normalize_labeling(q, tol);
    const AffineMap map =
        affine_from_triangle(lab.v[0], lab.v[1], lab.v[3], {0, 0}, {0, 1}, {1, 0});
    const Vec2 image = map(lab.v[2]);
    NormalizedQuad nq{image.x, image.y};
    if (cls == QuadClass::Trapezoid)
        nq.t = 1; // S2 parallel to S4 exactly characterizes t = 1
    if (!in_region_g(nq))
        throw InvalidNormalizedQuad("normalized shape left the admissible region");
    return {map, nq};
}

bool in_region_g(const NormalizedQuad& nq) {
    return nq.s > 0 && nq.t > 0 && nq.s + nq.t > 1 && nq.s != 1;
}

Quadrilateral to_quadrilateral(const NormalizedQuad& nq) {
    if (!in_region_g(nq))
        throw InvalidNormalizedQuad("shape parameters outside the admissible region");
    Quadrilateral q;
    q.v = {Vec2{0, 0}, Vec2{0, 1}, Vec2{nq.s, nq.t}, Vec2{1, 0}};
    return q;
}

} // namespace inellipse
