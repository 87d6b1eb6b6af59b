#pragma once

#include <string>
#include <vector>

#include "inellipse/conic.hpp"
#include "inellipse/quad.hpp"

namespace inellipse {

struct SvgScene {
    std::array<Vec2, 4> polygon{};
    std::vector<EllipseGeometry> ellipses;
    std::vector<Vec2> tangency_dots; // filled
    std::vector<Vec2> hollow_dots;   // side midpoints
};

/// Deterministic standalone SVG. Math coordinates, y up; the viewBox covers
/// everything with a 5% margin of the scene diagonal.
std::string render_svg(const SvgScene& scene);

} // namespace inellipse
