#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "inellipse/family.hpp"
#include "inellipse/json_io.hpp"
#include "inellipse/oracle.hpp"
#include "inellipse/svg.hpp"

namespace {

using namespace inellipse;

Quadrilateral load_quad(const std::string& in_path, const std::vector<double>& coords) {
    if (!in_path.empty() && !coords.empty())
        throw InputError("give either --in or positional coordinates, not both");
    if (!in_path.empty())
        return make_quadrilateral(parse_quad_document(read_file(in_path)));
    if (coords.size() != 8)
        throw InputError("expected eight coordinates: x1 y1 x2 y2 x3 y3 x4 y4");
    return make_quadrilateral({Vec2{coords[0], coords[1]}, Vec2{coords[2], coords[3]},
                               Vec2{coords[4], coords[5]}, Vec2{coords[6], coords[7]}});
}

void emit(const std::string& content, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << content;
        std::cout.flush();
        if (!std::cout)
            throw IoError("failed writing to standard output");
        return;
    }
    write_atomic(out_path, content);
}

EllipseRecord record_from(const MidpointTangentEllipse& e) {
    EllipseRecord r;
    r.q = e.q;
    r.coefficients = coeff_array(e.conic);
    r.tangency_points = e.tangency.p;
    r.midpoint_sides = e.midpoint_sides;
    r.area = area(e.conic);
    return r;
}

QuadClass class_from_name(const std::string& name) {
    for (QuadClass k : {QuadClass::Parallelogram, QuadClass::Trapezoid, QuadClass::MdqType1,
                        QuadClass::MdqType2, QuadClass::Generic})
        if (name == to_string(k))
            return k;
    throw InputError("unknown class \"" + name + "\"");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Inscribed ellipses of convex quadrilaterals"};
    app.require_subcommand(1);

    double tol = kClassifyTol;
    bool as_json = false;
    std::string out_path;
    CLI::Option* tol_opt =
        app.add_option("--tol", tol, "geometric tolerance")->envname("INELLIPSE_TOL");
    app.add_flag("--json", as_json, "emit JSON instead of text");
    app.add_option("--out", out_path, "write the output to this file (atomically)");

    std::string in_path;
    std::vector<double> coords;
    const auto add_input = [&](CLI::App* sub) {
        sub->add_option("--in", in_path, "JSON file holding {\"vertices\": [[x,y] x4]}");
        sub->add_option("coords", coords, "vertex coordinates x1 y1 x2 y2 x3 y3 x4 y4");
        sub->fallthrough();
    };

    CLI::App* c_classify = app.add_subcommand("classify", "name the quadrilateral's class");
    add_input(c_classify);
    CLI::App* c_mid = app.add_subcommand("midpoints", "midpoint-tangent inscribed ellipses");
    add_input(c_mid);
    CLI::App* c_max = app.add_subcommand("maxarea", "maximal-area inscribed ellipse");
    add_input(c_max);
    CLI::App* c_family = app.add_subcommand("family", "inscribed ellipses at given parameters");
    add_input(c_family);
    std::vector<double> q_list{0.25, 0.5, 0.75};
    c_family->add_option("--q", q_list, "family parameters in (0,1)")->delimiter(',');
    CLI::App* c_render = app.add_subcommand("render", "SVG of the midpoint-tangent ellipses");
    add_input(c_render);

    CLI::App* c_fuzz = app.add_subcommand("fuzz", "randomized self-checks");
    c_fuzz->fallthrough();
    std::string target;
    std::uint64_t seed = 0;
    long trials = 1000;
    long grid = 512;
    std::string cls_name;
    bool serial = false;
    c_fuzz->add_option("target", target, "t1 | counts | affine | area")->required();
    c_fuzz->add_option("--seed", seed, "RNG seed");
    c_fuzz->add_option("--trials", trials, "number of trials");
    c_fuzz->add_option("--grid", grid, "q grid size per trial");
    c_fuzz->add_option("--class", cls_name, "restrict the counts target to one class");
    c_fuzz->add_flag("--serial", serial, "use the serial reference lane");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*c_fuzz) {
            oracle::FuzzConfig cfg;
            cfg.seed = seed;
            cfg.trials = trials;
            cfg.grid_size = grid;
            if (tol_opt->count() > 0)
                cfg.tol = tol;
            std::optional<QuadClass> cls;
            if (!cls_name.empty()) {
                if (target != "counts")
                    throw InputError("--class only applies to the counts target");
                cls = class_from_name(cls_name);
            }
            const oracle::Exec exec = serial ? oracle::Exec::Serial : oracle::Exec::Parallel;
            oracle::FuzzReport rep;
            if (target == "t1")
                rep = oracle::fuzz_theorem_t1(cfg, exec);
            else if (target == "counts")
                rep = oracle::fuzz_lemma_counts(cfg, cls, exec);
            else if (target == "affine")
                rep = oracle::fuzz_affine_invariance(cfg, exec);
            else if (target == "area")
                rep = oracle::fuzz_area_law(cfg, exec);
            else
                throw InputError("unknown fuzz target \"" + target + "\"");
            emit(as_json ? to_json(rep) : format_text(rep), out_path);
            return rep.passed() ? 0 : 1;
        }

        const Quadrilateral quad = load_quad(in_path, coords);
        const QuadClass cls = classify(quad, tol);

        if (*c_classify) {
            ResultDocument doc;
            doc.classification = to_string(cls);
            doc.vertices = quad.v;
            if (cls != QuadClass::Parallelogram)
                doc.normalized = normalize(quad, tol).second;
            emit(as_json ? to_json(doc) : format_text(doc), out_path);
            return 0;
        }

        if (*c_render) {
            const Quadrilateral labeled = normalize_labeling(quad, tol);
            SvgScene scene;
            scene.polygon = labeled.v;
            const std::array<Vec2, 4> mids = side_midpoints(labeled);
            scene.hollow_dots.assign(mids.begin(), mids.end());
            for (const MidpointTangentEllipse& e : midpoint_tangent_ellipses(quad, tol)) {
                scene.ellipses.push_back(geometry(e.conic));
                for (int side : e.midpoint_sides)
                    scene.tangency_dots.push_back(e.tangency.p[side - 1]);
            }
            emit(render_svg(scene), out_path);
            return 0;
        }

        ResultDocument doc;
        doc.classification = to_string(cls);
        doc.vertices = normalize_labeling(quad, tol).v;
        const auto [map, nq] = normalize(quad, tol);
        doc.normalized = nq;

        if (*c_mid) {
            for (const MidpointTangentEllipse& e : midpoint_tangent_ellipses(quad, tol))
                doc.ellipses.push_back(record_from(e));
        } else if (*c_max) {
            const MaxAreaEllipse m = max_area_ellipse(quad, tol);
            doc.maximal = MaximalRecord{m.q, coeff_array(m.conic), m.area};
        } else if (*c_family) {
            const AffineMap to_user = map.inverse();
            for (double q : q_list) {
                EllipseRecord r;
                r.q = q;
                const ConicCoeffs cn = canonicalized(pushforward(ellipse_from_q(nq, q), to_user));
                r.coefficients = coeff_array(cn);
                const TangencySet ts = tangency_points(nq, q);
                for (int j = 0; j < 4; ++j)
                    r.tangency_points[j] = to_user(ts.p[j]);
                r.area = area(cn);
                doc.ellipses.push_back(r);
            }
        }
        emit(as_json ? to_json(doc) : format_text(doc), out_path);
        return 0;
    } catch (const ParallelogramInput& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 4;
    } catch (const NonConvexInput& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 3;
    } catch (const IoError& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 5;
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 2;
    }
}
