#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "inellipse/family.hpp"
#include "inellipse/oracle.hpp"
#include "inellipse/quad.hpp"

namespace inellipse {

/// One inscribed ellipse in user coordinates, coefficients canonicalized.
struct EllipseRecord {
    double q = 0;
    std::array<double, 6> coefficients{};
    std::array<Vec2, 4> tangency_points{};
    std::vector<int> midpoint_sides; // empty for plain family members
    double area = 0;
};

struct MaximalRecord {
    double q = 0;
    std::array<double, 6> coefficients{};
    double area = 0;
};

struct ResultDocument {
    std::string classification;
    std::array<Vec2, 4> vertices{}; // labeling the side indices refer to
    std::optional<NormalizedQuad> normalized{};
    std::vector<EllipseRecord> ellipses;
    std::optional<MaximalRecord> maximal{};
};

/// Vertices from {"vertices": [[x,y], ...4]}. Throws InputError.
std::array<Vec2, 4> parse_quad_document(const std::string& text);

std::string to_json(const ResultDocument& doc);
ResultDocument result_from_json(const std::string& text);
std::string format_text(const ResultDocument& doc);

std::string to_json(const oracle::FuzzReport& report);
std::string format_text(const oracle::FuzzReport& report);

/// Write-to-temp-then-rename in the target directory. Throws IoError.
void write_atomic(const std::string& path, const std::string& content);

/// Whole file as a string. Throws IoError.
std::string read_file(const std::string& path);

} // namespace inellipse
