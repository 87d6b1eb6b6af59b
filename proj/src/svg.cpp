#include "inellipse/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace inellipse {

namespace {

std::string fmt(double x) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.8g", x);
    return buf;
}

struct Box {
    double minx = 0, miny = 0, maxx = 0, maxy = 0;
    bool empty = true;

    void add(Vec2 p) {
        if (empty) {
            minx = maxx = p.x;
            miny = maxy = p.y;
            empty = false;
            return;
        }
        minx = std::min(minx, p.x);
        maxx = std::max(maxx, p.x);
        miny = std::min(miny, p.y);
        maxy = std::max(maxy, p.y);
    }
};

} // namespace

std::string render_svg(const SvgScene& scene) {
    Box box;
    for (Vec2 p : scene.polygon)
        box.add(p);
    for (const EllipseGeometry& g : scene.ellipses) {
        // Axis-aligned extent of the rotated ellipse.
        const double ca = std::cos(g.angle), sa = std::sin(g.angle);
        const double hx = std::sqrt(g.a * g.a * ca * ca + g.b * g.b * sa * sa);
        const double hy = std::sqrt(g.a * g.a * sa * sa + g.b * g.b * ca * ca);
        box.add({g.center.x - hx, g.center.y - hy});
        box.add({g.center.x + hx, g.center.y + hy});
    }
    for (Vec2 p : scene.tangency_dots)
        box.add(p);
    for (Vec2 p : scene.hollow_dots)
        box.add(p);
    if (box.empty)
        box = {0, 0, 1, 1, false};

    double diag = std::hypot(box.maxx - box.minx, box.maxy - box.miny);
    if (diag == 0)
        diag = 1;
    const double margin = 0.05 * diag;
    const double stroke = 0.005 * diag;
    const double dot_r = 0.01 * diag;

    // y grows upward: flip inside a group, so the viewBox lives in flipped
    // coordinates.
    const double vx = box.minx - margin;
    const double vy = -(box.maxy + margin);
    const double vw = (box.maxx - box.minx) + 2 * margin;
    const double vh = (box.maxy - box.miny) + 2 * margin;

    std::string s;
    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" + fmt(vx) + " " + fmt(vy) + " " +
         fmt(vw) + " " + fmt(vh) + "\">\n";
    s += "<g transform=\"scale(1,-1)\" fill=\"none\" stroke-width=\"" + fmt(stroke) + "\">\n";

    s += "<polygon points=\"";
    for (int i = 0; i < 4; ++i)
        s += (i ? " " : "") + fmt(scene.polygon[i].x) + "," + fmt(scene.polygon[i].y);
    s += "\" stroke=\"#1a1a1a\"/>\n";

    for (const EllipseGeometry& g : scene.ellipses) {
        const double deg = g.angle * 180.0 / 3.14159265358979323846;
        s += "<ellipse cx=\"" + fmt(g.center.x) + "\" cy=\"" + fmt(g.center.y) + "\" rx=\"" +
             fmt(g.a) + "\" ry=\"" + fmt(g.b) + "\" transform=\"rotate(" + fmt(deg) + " " +
             fmt(g.center.x) + " " + fmt(g.center.y) + ")\" stroke=\"#0057b7\"/>\n";
    }

    for (Vec2 p : scene.tangency_dots)
        s += "<circle cx=\"" + fmt(p.x) + "\" cy=\"" + fmt(p.y) + "\" r=\"" + fmt(dot_r) +
             "\" fill=\"#c22\" stroke=\"none\"/>\n";
    for (Vec2 p : scene.hollow_dots)
        s += "<circle cx=\"" + fmt(p.x) + "\" cy=\"" + fmt(p.y) + "\" r=\"" + fmt(dot_r) +
             "\" stroke=\"#2a7\"/>\n";

    s += "</g>\n</svg>\n";
    return s;
}

} // namespace inellipse
