#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "wlab/functionals.hpp"
#include "wlab/random_bodies.hpp"
#include "wlab/support2d.hpp"

using namespace wlab;
using oracle::pi;

TEST_CASE("boundary points") {
    const SupportBody2 disk = SupportBody2::make(1.0, {});
    const Vec2 p = boundary_point(disk, 0.0);
    CHECK(p.x == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(std::abs(p.y) < 1e-15);
    for (double t = 0.0; t < 2.0 * pi; t += 0.37) CHECK(norm(boundary_point(disk, t)) == doctest::Approx(1.0).epsilon(1e-15));

    const SupportBody2 h = SupportBody2::make(1.0, {{0.0, 0.0}, {0.1, 0.0}});
    const Vec2 q = boundary_point(h, pi / 4.0), e = oracle::envelope_point_refined(h, pi / 4.0);
    CHECK(norm(q - e) < 1e-8);
    for (std::uint64_t i = 0; i < 10; ++i) {
        const auto r = std::get<SupportBody2>(random_body("support2", 31, i));
        for (double t : {0.1, 1.3, 2.9, 5.0}) CHECK(norm(boundary_point(r, t) - oracle::envelope_point_refined(r, t)) < 1e-8);
    }
}

TEST_CASE("L A J of disks") {
    for (double R : {1.0, 0.5, 3.0}) {
        const LAJTriple t = laj_from_support(SupportBody2::make(R, {}));
        CHECK(t.L == doctest::Approx(2.0 * pi * R).epsilon(1e-14));
        CHECK(t.A == doctest::Approx(pi * R * R).epsilon(1e-14));
        CHECK(t.J == doctest::Approx(2.0 * pi * R * R * R).epsilon(1e-14));
    }
}

TEST_CASE("L A J agree with an envelope polygon") {
    std::vector<SupportBody2> bodies{SupportBody2::make(1.0, {{0.0, 0.0}, {0.1, 0.0}})};
    for (std::uint64_t i = 0; i < 5; ++i) bodies.push_back(std::get<SupportBody2>(random_body("support2", 41, i)));
    for (const auto& h : bodies) {
        const LAJTriple t = laj_from_support(h);
        const auto o = oracle::polygon_moments(oracle::envelope_polygon(h, 4096));
        CHECK(oracle::relative(t.L, o.perimeter) < 1e-6);
        CHECK(oracle::relative(t.A, o.area) < 1e-6);
        CHECK(oracle::relative(t.J, o.momentum) < 1e-6);
    }
}

TEST_CASE("Weinstock gap identity and chain") {
    const WeinstockGap disk = weinstock_gap(SupportBody2::make(1.0, {}));
    CHECK(std::abs(disk.gap) < 1e-13);
    CHECK(disk.p_l2 < 1e-28);

    const std::vector<SupportBody2> named{SupportBody2::make(1.0, {{0.0, 0.0}, {0.1, 0.0}}),
                                          SupportBody2::make(1.0, {{0.0, 0.0}, {0.0, 0.0}, {0.0, 0.05}})};
    for (const auto& h : named) {
        const WeinstockGap g = weinstock_gap(h);
        CHECK(g.gap >= g.lower_bound);
        CHECK(g.lower_bound > 0.0);
        CHECK(g.relative_residual <= 1e-10);
    }
    for (std::uint64_t i = 0; i < 100; ++i) {
        const auto h = std::get<SupportBody2>(random_body("support2", 2024, i));
        const WeinstockGap g = weinstock_gap(h);
        CHECK(g.relative_residual <= 1e-10);
        CHECK(g.gap >= g.lower_bound * (1.0 - 1e-12));
        CHECK(g.lower_bound >= 0.0);
    }
}

TEST_CASE("Weinstock gap only vanishes for disks") {
    // a pure translation mode is not a disk about the origin: p = a1 cos t
    const WeinstockGap g = weinstock_gap(SupportBody2::make(1.0, {{0.2, 0.0}}));
    CHECK(g.gap > 0.0);
    CHECK(g.p_l2 > 0.0);
}

TEST_CASE("polar quadrature") {
    const PolarLAJ c = polar_laj(PolarCurve::circle(1.0));
    CHECK(c.centered.L == doctest::Approx(2.0 * pi).epsilon(1e-12));
    CHECK(c.centered.A == doctest::Approx(pi).epsilon(1e-12));
    CHECK(c.centered.J == doctest::Approx(2.0 * pi).epsilon(1e-12));

    const PolarLAJ e = polar_laj(PolarCurve::ellipse(1.1, 0.9));
    CHECK(e.centered.weinstock_gap() > 0.0);
    const LAJTriple s = laj_from_support(SupportBody2::ellipse(1.1, 0.9));
    CHECK(oracle::relative(e.centered.J, s.J) < 1e-9);
}

TEST_CASE("cardioid against a 10^7-point trapezoid") {
    const PolarLAJ c = polar_laj(PolarCurve::cardioid());
    const auto t = oracle::polar_trapezoid([](double p) { return 1.0 - std::cos(p); },
                                           [](double p) { return std::sin(p); }, 10000000);
    CHECK(c.centered.L == doctest::Approx(8.0).epsilon(1e-10));
    CHECK(c.centered.A == doctest::Approx(1.5 * pi).epsilon(1e-10));
    CHECK(c.J_origin == doctest::Approx(256.0 / 15.0).epsilon(1e-10));
    CHECK(oracle::relative(c.centered.L, t.L) < 1e-9);
    CHECK(oracle::relative(c.centered.A, t.A) < 1e-9);
    CHECK(oracle::relative(c.J_origin, t.J_origin) < 1e-9);
    CHECK(oracle::relative(c.centered.J, t.J_centered()) < 1e-9);
    CHECK(c.barycenter.x == doctest::Approx(-0.8).epsilon(1e-10));
    CHECK(std::abs(c.centered.weinstock_gap() + 4.0 * pi / 75.0) < 1e-6);
    // about the cusp the gap is positive
    CHECK(pi * c.J_origin - c.centered.L * c.centered.A == doctest::Approx(76.0 * pi / 15.0).epsilon(1e-9));
}

TEST_CASE("regular polygon closed forms") {
    for (int k = 3; k <= 64; ++k) {
        const RegularPolygon r = regular_polygon(k);
        const BodyMoments m = moments(r.polygon);
        CHECK(oracle::relative(m.perimeter, r.closed_form.L) < 1e-12);
        CHECK(oracle::relative(m.volume, r.closed_form.A) < 1e-12);
        CHECK(oracle::relative(m.momentum, r.closed_form.J) < 1e-12);
    }
    const RegularPolygon sq = regular_polygon(4);
    CHECK(sq.closed_form.L == doctest::Approx(8.0).epsilon(1e-14));
    CHECK(sq.closed_form.A == doctest::Approx(4.0).epsilon(1e-14));
    CHECK(sq.closed_form.J == doctest::Approx(32.0 / 3.0).epsilon(1e-14));
    const RegularPolygon tri = regular_polygon(3);
    CHECK(tri.closed_form.L == doctest::Approx(6.0 * std::sqrt(3.0)).epsilon(1e-14));
    CHECK(tri.closed_form.A == doctest::Approx(3.0 * std::sqrt(3.0)).epsilon(1e-14));
    CHECK(std::abs(lambda(moments(regular_polygon(10000).polygon)) - 1.0 / pi) < 1e-6);
}

TEST_CASE("lambda_gamma asymptotics") {
    const int ks[] = {64, 128, 256, 512};
    for (double g : {0.25, 0.5, 1.0}) {
        const GammaAsymptotics a = lambda_gamma_asymptotics(g, ks);
        CHECK(a.all_below_disk);
        CHECK(std::abs(a.fitted_coefficient + g / 6.0) <= 0.05 * g / 6.0);
        CHECK(a.expected_coefficient == doctest::Approx(-g / 6.0));
    }
}
