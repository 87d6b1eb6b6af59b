#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "inellipse/family.hpp"
#include "inellipse/oracle.hpp"

using namespace inellipse;

namespace {

constexpr double kPi = 3.14159265358979323846;

bool close(double a, double b, double tol = 1e-12) { return std::abs(a - b) <= tol; }

bool close_vec(Vec2 a, Vec2 b, double tol = 1e-12) {
    return close(a.x, b.x, tol) && close(a.y, b.y, tol);
}

bool conics_match(const ConicCoeffs& a, const ConicCoeffs& b, double tol = 1e-12) {
    const auto ca = coeff_array(canonicalized(a));
    const auto cb = coeff_array(canonicalized(b));
    for (int i = 0; i < 6; ++i)
        if (!close(ca[i], cb[i], tol))
            return false;
    return true;
}

} // namespace

TEST_CASE("ellipse_from_q reproduces the reference members") {
    SUBCASE("kite shape, middle of the family") {
        const ConicCoeffs c = ellipse_from_q(NormalizedQuad{2, 2}, 0.5);
        CHECK(c.A == 4);
        CHECK(c.B == -2);
        CHECK(c.C == 4);
        CHECK(c.D == -4);
        CHECK(c.E == -4);
        CHECK(c.F == 1);
    }
    SUBCASE("trapezoid shape") {
        const ConicCoeffs c = ellipse_from_q(NormalizedQuad{4, 1}, 0.5);
        CHECK(c.A == 1);
        CHECK(c.B == -3);
        CHECK(c.C == 6.25);
        CHECK(c.D == -1);
        CHECK(c.E == -2.5);
        CHECK(c.F == 0.25);
        const auto [Delta, delta] = discriminants(c);
        CHECK(close(Delta, 16));
        CHECK(close(delta, 16));
        CHECK(close(area(c), kPi / 2, 1e-12));
    }
    SUBCASE("every member is a real inscribed ellipse") {
        oracle::RngStream rng = oracle::RngStream::for_trial(7, 0);
        for (int i = 0; i < 50; ++i) {
            const NormalizedQuad nq{rng.uniform(0.3, 3), rng.uniform(0.3, 3)};
            if (!in_region_g(nq))
                continue;
            const double q = rng.uniform(0.02, 0.98);
            const ConicCoeffs c = ellipse_from_q(nq, q);
            CHECK(is_real_ellipse(c));
            CHECK((contains(to_quadrilateral(nq), geometry(c).center)));
        }
    }
    SUBCASE("parameter and shape validation") {
        const NormalizedQuad ok{2, 3};
        CHECK_THROWS_AS(ellipse_from_q(ok, 0), ParameterOutOfRange);
        CHECK_THROWS_AS(ellipse_from_q(ok, 1), ParameterOutOfRange);
        CHECK_THROWS_AS(ellipse_from_q(ok, -0.5), ParameterOutOfRange);
        CHECK_THROWS_AS((ellipse_from_q(NormalizedQuad{1, 2}, 0.5)), InvalidNormalizedQuad);
        CHECK_THROWS_AS((ellipse_from_q(NormalizedQuad{0.4, 0.4}, 0.5)), InvalidNormalizedQuad);
    }
}

TEST_CASE("tangency_points touch the four sides at conic-verified spots") {
    SUBCASE("trapezoid midpoints at q = 1/2") {
        const TangencySet ts = tangency_points(NormalizedQuad{4, 1}, 0.5);
        CHECK((close_vec(ts.p[1], {2, 1})));
        CHECK((close_vec(ts.p[3], {0.5, 0})));
    }
    SUBCASE("kite midpoints at q = 1/2") {
        const TangencySet ts = tangency_points(NormalizedQuad{2, 2}, 0.5);
        CHECK((close_vec(ts.p[0], {0, 0.5})));
        CHECK((close_vec(ts.p[3], {0.5, 0})));
    }
    SUBCASE("closed form agrees with line_tangency everywhere") {
        oracle::RngStream rng = oracle::RngStream::for_trial(11, 0);
        for (int i = 0; i < 25; ++i) {
            const NormalizedQuad nq{rng.uniform(0.3, 3), rng.uniform(0.3, 3)};
            if (!in_region_g(nq))
                continue;
            const double q = rng.uniform(0.02, 0.98);
            const ConicCoeffs c = ellipse_from_q(nq, q);
            const TangencySet ts = tangency_points(nq, q);
            const auto lines = side_lines(to_quadrilateral(nq));
            for (int j = 0; j < 4; ++j) {
                const TangencyResult tr = line_tangency(c, lines[j]);
                REQUIRE(tr.status == TangencyStatus::Tangent);
                CHECK((close_vec(*tr.point, ts.p[j], 1e-9)));
                CHECK(close(eval(c, ts.p[j]), 0, 1e-9));
            }
        }
    }
}

TEST_CASE("midpoint_solutions match the closed forms") {
    SUBCASE("generic") {
        const MidpointSolutions m = midpoint_solutions(NormalizedQuad{2, 3});
        CHECK(close(m.q1, 0.4));
        CHECK(close(m.q2, 1.0 / 7));
        CHECK(close(m.q3, 0.2));
        CHECK(close(m.q4, 0.5));
    }
    SUBCASE("kite collapses to two values") {
        const MidpointSolutions m = midpoint_solutions(NormalizedQuad{2, 2});
        CHECK(close(m.q1, 0.5));
        CHECK(close(m.q2, 0.25));
        CHECK(close(m.q3, 0.25));
        CHECK(close(m.q4, 0.5));
    }
    SUBCASE("trapezoid pairs sides 2 and 4") {
        const MidpointSolutions m = midpoint_solutions(NormalizedQuad{4, 1});
        CHECK(close(m.q1, 0.8));
        CHECK(close(m.q2, 0.5));
        CHECK(close(m.q3, 0.2));
        CHECK(close(m.q4, 0.5));
    }
    SUBCASE("pair coincidences sit exactly on the class loci") {
        const MidpointSolutions a = midpoint_solutions(NormalizedQuad{0.7, 1.3});
        CHECK(close(a.q1, a.q2)); // s + t = 2
        CHECK(close(a.q3, a.q4));
        const MidpointSolutions b = midpoint_solutions(NormalizedQuad{1.6, 1.6});
        CHECK(close(b.q1, b.q4)); // s = t
        CHECK(close(b.q2, b.q3));
        const MidpointSolutions c = midpoint_solutions(NormalizedQuad{2, 3});
        const auto qs = c.as_array();
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j)
                CHECK(std::abs(qs[i] - qs[j]) > 1e-3);
    }
    SUBCASE("all solutions lie inside (0,1)") {
        oracle::RngStream rng = oracle::RngStream::for_trial(13, 0);
        for (int i = 0; i < 100; ++i) {
            const NormalizedQuad nq{rng.uniform(0.15, 3.2), rng.uniform(0.15, 3.2)};
            if (!in_region_g(nq))
                continue;
            for (double q : midpoint_solutions(nq).as_array()) {
                CHECK(q > 0);
                CHECK(q < 1);
            }
        }
    }
}

TEST_CASE("midpoint_tangent_ellipses reports the class structure") {
    SUBCASE("sheared kite: two ellipses with paired sides") {
        const Quadrilateral q =
            make_quadrilateral({Vec2{0, 0}, Vec2{0, 1}, Vec2{2, 4}, Vec2{1, 1}});
        const auto ells = midpoint_tangent_ellipses(q);
        REQUIRE(ells.size() == 2);

        CHECK(close(ells[0].q, 0.5, 1e-12));
        CHECK((ells[0].midpoint_sides == std::vector<int>{1, 4}));
        const ConicCoeffs g1{10, -10, 4, 0, -4, 1};
        CHECK(conics_match(ells[0].conic, g1, 1e-12));
        CHECK((close_vec(ells[0].tangency.p[0], {0, 0.5}, 1e-12)));
        CHECK((close_vec(ells[0].tangency.p[3], {0.5, 0.5}, 1e-12)));

        CHECK(close(ells[1].q, 0.25, 1e-12));
        CHECK((ells[1].midpoint_sides == std::vector<int>{2, 3}));
        const ConicCoeffs g2{54, -54, 16, 0, -8, 1};
        CHECK(conics_match(ells[1].conic, g2, 1e-12));
        CHECK((close_vec(ells[1].tangency.p[1], {1, 2.5}, 1e-12)));
        CHECK((close_vec(ells[1].tangency.p[2], {1.5, 2.5}, 1e-12)));
    }
    SUBCASE("trapezoid: single ellipse pairing sides 2 and 4") {
        const auto ells = midpoint_tangent_ellipses(to_quadrilateral(NormalizedQuad{4, 1}));
        REQUIRE(ells.size() == 1);
        CHECK(ells[0].q == 0.5);
        CHECK((ells[0].midpoint_sides == std::vector<int>{2, 4}));
        const ConicCoeffs expected{1, -3, 6.25, -1, -2.5, 0.25};
        CHECK(conics_match(ells[0].conic, expected, 1e-12));
        CHECK((close_vec(ells[0].tangency.p[1], {2, 1})));
        CHECK((close_vec(ells[0].tangency.p[3], {0.5, 0})));
    }
    SUBCASE("second mdq type pairs sides 1,2 and 3,4") {
        const auto ells = midpoint_tangent_ellipses(to_quadrilateral(NormalizedQuad{0.5, 1.5}));
        REQUIRE(ells.size() == 2);
        CHECK((ells[0].midpoint_sides == std::vector<int>{1, 2}));
        CHECK((ells[1].midpoint_sides == std::vector<int>{3, 4}));
        CHECK(close(ells[0].q, 0.25));
        CHECK(close(ells[1].q, 0.5));
    }
    SUBCASE("generic: four singletons ordered by side") {
        const auto ells = midpoint_tangent_ellipses(to_quadrilateral(NormalizedQuad{2, 3}));
        REQUIRE(ells.size() == 4);
        const MidpointSolutions m = midpoint_solutions(NormalizedQuad{2, 3});
        const auto qs = m.as_array();
        for (int j = 0; j < 4; ++j) {
            CHECK((ells[j].midpoint_sides == std::vector<int>{j + 1}));
            CHECK(close(ells[j].q, qs[j]));
            const auto mids = side_midpoints(to_quadrilateral(NormalizedQuad{2, 3}));
            CHECK((close_vec(ells[j].tangency.p[j], mids[j], 1e-9)));
        }
    }
    SUBCASE("parallelograms are refused") {
        const Quadrilateral par =
            make_quadrilateral({Vec2{0, 0}, Vec2{0, 1}, Vec2{1, 1}, Vec2{1, 0}});
        CHECK_THROWS_AS(midpoint_tangent_ellipses(par), ParallelogramInput);
    }
}

TEST_CASE("max_area_ellipse and the parameter scan") {
    SUBCASE("trapezoids peak exactly at 1/2") {
        const MaxAreaEllipse m = max_area_ellipse(to_quadrilateral(NormalizedQuad{4, 1}));
        CHECK(m.q == 0.5);
        CHECK(close(m.area, kPi / 2, 1e-12));
        const ConicCoeffs expected{1, -3, 6.25, -1, -2.5, 0.25};
        CHECK(conics_match(m.conic, expected, 1e-12));
        CHECK(close(max_area_param_scan(NormalizedQuad{2.5, 1}), 0.5, 1e-9));
    }
    SUBCASE("scan finds an interior local maximum") {
        const NormalizedQuad nq{2, 3};
        const double qstar = max_area_param_scan(nq);
        CHECK(qstar > 0);
        CHECK(qstar < 1);
        const double f = axis_product_squared(nq, qstar);
        CHECK(f >= axis_product_squared(nq, qstar - 1e-7));
        CHECK(f >= axis_product_squared(nq, qstar + 1e-7));
    }
    SUBCASE("user-space area matches the reported conic") {
        const Quadrilateral q =
            make_quadrilateral({Vec2{0, 0}, Vec2{0, 1}, Vec2{2, 4}, Vec2{1, 1}});
        const MaxAreaEllipse m = max_area_ellipse(q);
        CHECK(close(m.area, area(m.conic), 1e-12));
        CHECK((inellipse::oracle::inscribed_check(m.conic, q)));
    }
}

TEST_CASE("count_midpoint_tangencies counts within the tolerance") {
    CHECK(count_midpoint_tangencies(NormalizedQuad{2, 3}, 0.4, 1e-9) == 1);
    CHECK(count_midpoint_tangencies(NormalizedQuad{2, 3}, 0.31, 1e-9) == 0);
    CHECK(count_midpoint_tangencies(NormalizedQuad{2, 2}, 0.5, 1e-9) == 2);
    CHECK(count_midpoint_tangencies(NormalizedQuad{2, 2}, 0.25, 1e-9) == 2);
    CHECK(count_midpoint_tangencies(NormalizedQuad{4, 1}, 0.5, 1e-9) == 2);
    CHECK(count_midpoint_tangencies(NormalizedQuad{4, 1}, 0.8, 1e-9) == 1);
    // a huge tolerance counts everything
    CHECK(count_midpoint_tangencies(NormalizedQuad{2, 3}, 0.5, 10) == 4);
}

TEST_CASE("axis_product_squared follows the trapezoid law") {
    for (double s : {0.3, 2.0, 2.9}) {
        for (double q : {0.1, 0.37, 0.5, 0.81}) {
            const double got = axis_product_squared(NormalizedQuad{s, 1}, q);
            const double want = (s / 4) * q * (1 - q);
            CHECK(close(got, want, 1e-12 * want));
        }
    }
}
