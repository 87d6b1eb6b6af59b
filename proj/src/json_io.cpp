#include "inellipse/json_io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace inellipse {

namespace {

using nlohmann::json;

std::string fmt17(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string point_str(Vec2 v) { return "(" + fmt17(v.x) + ", " + fmt17(v.y) + ")"; }

json vec_to_json(Vec2 v) { return json::array({v.x, v.y}); }

Vec2 vec_from_json(const json& p) {
    if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number())
        throw InputError("each point must be a [x, y] number pair");
    return {p[0].get<double>(), p[1].get<double>()};
}

json ellipse_to_json(const EllipseRecord& e) {
    json j;
    j["q"] = e.q;
    j["coefficients"] = e.coefficients;
    json pts = json::array();
    for (Vec2 p : e.tangency_points)
        pts.push_back(vec_to_json(p));
    j["tangency_points"] = pts;
    j["midpoint_sides"] = e.midpoint_sides;
    j["area"] = e.area;
    return j;
}

EllipseRecord ellipse_from_json(const json& j) {
    EllipseRecord e;
    e.q = j.at("q").get<double>();
    e.coefficients = j.at("coefficients").get<std::array<double, 6>>();
    const json& pts = j.at("tangency_points");
    if (!pts.is_array() || pts.size() != 4)
        throw InputError("tangency_points must hold four points");
    for (int i = 0; i < 4; ++i)
        e.tangency_points[i] = vec_from_json(pts[i]);
    e.midpoint_sides = j.at("midpoint_sides").get<std::vector<int>>();
    e.area = j.at("area").get<double>();
    return e;
}

} // namespace

std::array<Vec2, 4> parse_quad_document(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& ex) {
        throw InputError(std::string("invalid JSON: ") + ex.what());
    }
    if (!j.is_object() || !j.contains("vertices"))
        throw InputError("expected an object with a \"vertices\" key");
    const json& v = j["vertices"];
    if (!v.is_array() || v.size() != 4)
        throw InputError("\"vertices\" must be an array of four points");
    std::array<Vec2, 4> out;
    for (int i = 0; i < 4; ++i)
        out[i] = vec_from_json(v[i]);
    return out;
}

std::string to_json(const ResultDocument& doc) {
    json j;
    j["classification"] = doc.classification;
    json verts = json::array();
    for (Vec2 p : doc.vertices)
        verts.push_back(vec_to_json(p));
    j["vertices"] = verts;
    if (doc.normalized)
        j["normalized"] = {{"s", doc.normalized->s}, {"t", doc.normalized->t}};
    json ells = json::array();
    for (const EllipseRecord& e : doc.ellipses)
        ells.push_back(ellipse_to_json(e));
    j["ellipses"] = ells;
    if (doc.maximal)
        j["maximal"] = {{"q", doc.maximal->q},
                        {"coefficients", doc.maximal->coefficients},
                        {"area", doc.maximal->area}};
    return j.dump(2) + "\n";
}

ResultDocument result_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
        ResultDocument doc;
        doc.classification = j.at("classification").get<std::string>();
        const json& verts = j.at("vertices");
        if (!verts.is_array() || verts.size() != 4)
            throw InputError("vertices must hold four points");
        for (int i = 0; i < 4; ++i)
            doc.vertices[i] = vec_from_json(verts[i]);
        if (j.contains("normalized"))
            doc.normalized = NormalizedQuad{j["normalized"].at("s").get<double>(),
                                            j["normalized"].at("t").get<double>()};
        for (const json& e : j.value("ellipses", json::array()))
            doc.ellipses.push_back(ellipse_from_json(e));
        if (j.contains("maximal")) {
            MaximalRecord m;
            m.q = j["maximal"].at("q").get<double>();
            m.coefficients = j["maximal"].at("coefficients").get<std::array<double, 6>>();
            m.area = j["maximal"].at("area").get<double>();
            doc.maximal = m;
        }
        return doc;
    } catch (const json::exception& ex) {
        throw InputError(std::string("invalid result document: ") + ex.what());
    }
}

std::string format_text(const ResultDocument& doc) {
    std::string s;
    s += "classification: " + doc.classification + "\n";
    s += "vertices:";
    for (Vec2 p : doc.vertices)
        s += " " + point_str(p);
    s += "\n";
    if (doc.normalized)
        s += "normalized: s=" + fmt17(doc.normalized->s) + " t=" + fmt17(doc.normalized->t) + "\n";
    int index = 0;
    for (const EllipseRecord& e : doc.ellipses) {
        s += "ellipse " + std::to_string(++index) + ": q=" + fmt17(e.q) + "\n";
        s += "  coefficients:";
        for (double c : e.coefficients)
            s += " " + fmt17(c);
        s += "\n  tangency:";
        for (Vec2 p : e.tangency_points)
            s += " " + point_str(p);
        s += "\n";
        if (!e.midpoint_sides.empty()) {
            s += "  midpoint sides:";
            for (int side : e.midpoint_sides)
                s += " " + std::to_string(side);
            s += "\n";
        }
        s += "  area: " + fmt17(e.area) + "\n";
    }
    if (doc.maximal) {
        s += "maximal: q=" + fmt17(doc.maximal->q) + " area=" + fmt17(doc.maximal->area) + "\n";
        s += "  coefficients:";
        for (double c : doc.maximal->coefficients)
            s += " " + fmt17(c);
        s += "\n";
    }
    return s;
}

std::string to_json(const oracle::FuzzReport& report) {
    json j;
    j["trials"] = report.trials_run;
    j["passed"] = report.passed();
    j["max_midpoint_count"] = report.max_observed_midpoint_count;
    json hist = json::object();
    for (const auto& [key, count] : report.histogram)
        hist[std::to_string(key)] = count;
    j["histogram"] = hist;
    json viols = json::array();
    for (const oracle::Violation& v : report.violations) {
        json jv;
        jv["trial"] = v.trial;
        jv["q"] = v.q;
        jv["detail"] = v.detail;
        json verts = json::array();
        for (Vec2 p : v.quad.v)
            verts.push_back(vec_to_json(p));
        jv["vertices"] = verts;
        viols.push_back(jv);
    }
    j["violations"] = viols;
    j["elapsed_seconds"] = report.elapsed.count();
    return j.dump(2) + "\n";
}

std::string format_text(const oracle::FuzzReport& report) {
    std::string s;
    s += "trials: " + std::to_string(report.trials_run) + "\n";
    s += "max midpoint tangencies: " + std::to_string(report.max_observed_midpoint_count) + "\n";
    s += "histogram:";
    for (const auto& [key, count] : report.histogram)
        s += " " + std::to_string(key) + ":" + std::to_string(count);
    s += "\n";
    s += "violations: " + std::to_string(report.violations.size()) + "\n";
    std::size_t shown = 0;
    for (const oracle::Violation& v : report.violations) {
        if (++shown > 10) {
            s += "  ...\n";
            break;
        }
        s += "  trial=" + std::to_string(v.trial) + " q=" + fmt17(v.q) + " " + v.detail + "\n";
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3f", report.elapsed.count());
    s += "elapsed: " + std::string(buf) + "s\n";
    s += std::string("result: ") + (report.passed() ? "PASS" : "FAIL") + "\n";
    return s;
}

void write_atomic(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp";
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out)
        throw IoError("cannot open " + tmp.string() + " for writing");
    out << content;
    out.flush();
    const bool ok = static_cast<bool>(out);
    out.close();
    if (!ok) {
        std::error_code ec;
        fs::remove(tmp, ec);
        throw IoError("failed while writing " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        std::error_code ec2;
        fs::remove(tmp, ec2);
        throw IoError("cannot move " + tmp.string() + " into place: " + ec.message());
    }
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad())
        throw IoError("failed while reading " + path);
    return ss.str();
}

} // namespace inellipse
