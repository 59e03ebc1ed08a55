#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "wlab/bodies.hpp"
#include "wlab/body_io.hpp"
#include "wlab/error.hpp"
#include "wlab/functionals.hpp"
#include "wlab/random_bodies.hpp"
#include "wlab/support2d.hpp"

using namespace wlab;

namespace {

Polygon2 square2() { return Polygon2::from_ccw({{-1, -1}, {1, -1}, {1, 1}, {-1, 1}}); }

ErrorKind kind_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("expected an error");
    return ErrorKind::BadConfig;
}

}  // namespace

TEST_CASE("hull of a square keeps four vertices") {
    const std::vector<Vec2> pts{{1, 1}, {-1, 1}, {-1, -1}, {1, -1}};
    const Polygon2 p = polygon_from_vertices(pts);
    CHECK(p.size() == 4);
    CHECK(moments(p).volume == doctest::Approx(4.0).epsilon(1e-15));
}

TEST_CASE("hull drops collinear and interior points") {
    const std::vector<Vec2> pts{{0, 0}, {2, 0}, {1, 0}, {2, 2}, {0, 2}, {1, 1}};
    const Polygon2 p = polygon_from_vertices(pts);
    CHECK(p.size() == 4);
    for (const Vec2& v : p.vertices()) CHECK_FALSE((v.x == 1.0 && v.y == 0.0));
}

TEST_CASE("hull matches the brute-force oracle on random disk points") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<Vec2> pts;
        while (pts.size() < 100) {
            const Vec2 p{u(rng), u(rng)};
            if (norm2(p) <= 1.0) pts.push_back(p);
        }
        const Polygon2 hull = polygon_from_vertices(pts);
        const auto expected = oracle::brute_hull(pts);
        std::set<std::pair<double, double>> got;
        for (const Vec2& v : hull.vertices()) got.insert({v.x, v.y});
        CHECK(got == expected);
        const auto v = hull.vertices();
        double area = 0.0;
        for (std::size_t i = 0; i < v.size(); ++i) {
            const Vec2 e0 = v[(i + 1) % v.size()] - v[i], e1 = v[(i + 2) % v.size()] - v[(i + 1) % v.size()];
            CHECK(cross(e0, e1) > 0.0);
            area += cross(v[i], v[(i + 1) % v.size()]);
        }
        CHECK(area > 0.0);
    }
}

TEST_CASE("hull is idempotent up to rotation") {
    for (std::uint64_t i = 0; i < 50; ++i) {
        const auto p = std::get<Polygon2>(random_body("polygon2", 11, i));
        const auto q = polygon_from_vertices(p.vertices());
        REQUIRE(q.size() == p.size());
        std::size_t shift = 0;
        while (shift < q.size() && !(q.vertices()[shift].x == p.vertices()[0].x &&
                                     q.vertices()[shift].y == p.vertices()[0].y))
            ++shift;
        REQUIRE(shift < q.size());
        for (std::size_t k = 0; k < p.size(); ++k) {
            CHECK(q.vertices()[(k + shift) % q.size()].x == p.vertices()[k].x);
            CHECK(q.vertices()[(k + shift) % q.size()].y == p.vertices()[k].y);
        }
    }
}

TEST_CASE("degenerate hulls are rejected") {
    const std::vector<Vec2> line{{0, 0}, {1, 1}, {2, 2}, {3, 3}};
    CHECK(kind_of([&] { polygon_from_vertices(line); }) == ErrorKind::FewerThanThreeHullVertices);
    const std::vector<Vec2> two{{0, 0}, {1, 0}};
    CHECK(kind_of([&] { polygon_from_vertices(two); }) == ErrorKind::FewerThanThreeHullVertices);
}

TEST_CASE("polygon validation") {
    CHECK(kind_of([] { Polygon2::from_ccw({{0, 0}, {0, 1}, {1, 0}}); }) == ErrorKind::InvalidPolygon);
    CHECK(kind_of([] { Polygon2::from_ccw({{0, 0}, {1, 0}, {2, 0}, {1, 1}}); }) == ErrorKind::InvalidPolygon);
    CHECK(kind_of([] { Polygon2::from_ccw({{0, 0}, {2, 0}, {1, 0.1}, {2, 2}, {0, 2}}); }) ==
          ErrorKind::InvalidPolygon);
    CHECK(kind_of([] { Polygon2::from_ccw({{0, 0}, {1, 0}}); }) == ErrorKind::InvalidPolygon);
}

TEST_CASE("hull3 of a regular tetrahedron has four faces") {
    const std::vector<Vec3> pts{{1, 1, 1}, {1, -1, -1}, {-1, 1, -1}, {-1, -1, 1}};
    const Polytope3 t = hull3(pts);
    CHECK(t.faces().size() == 4);
    CHECK(moments(t).volume == doctest::Approx(8.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("hull3 of the cube against the divergence-theorem oracle") {
    std::vector<Vec3> pts;
    for (int i = 0; i < 8; ++i) pts.push_back({i & 1 ? 1.0 : -1.0, i & 2 ? 1.0 : -1.0, i & 4 ? 1.0 : -1.0});
    pts.push_back({0.2, 0.1, -0.3});  // interior
    const Polytope3 cube = hull3(pts);
    CHECK(cube.faces().size() == 12);
    CHECK(cube.vertices().size() == 8);
    const auto o = oracle::polytope_moments(cube);
    const BodyMoments m = moments(cube);
    CHECK(o.volume == doctest::Approx(8.0).epsilon(1e-14));
    CHECK(m.volume == doctest::Approx(o.volume).epsilon(1e-14));
    CHECK(m.perimeter == doctest::Approx(o.area).epsilon(1e-14));
    CHECK(m.momentum == doctest::Approx(o.momentum).epsilon(1e-14));
}

TEST_CASE("hull3 of sphere points contains every point on its surface") {
    std::mt19937_64 rng(3);
    std::normal_distribution<double> g;
    std::vector<Vec3> pts(200);
    for (Vec3& p : pts) {
        p = {g(rng), g(rng), g(rng)};
        p = (1.0 / norm(p)) * p;
    }
    const Polytope3 hull = hull3(pts);
    const auto v = hull.vertices();
    CHECK(v.size() == 200);
    for (const Vec3& p : pts) {
        double worst = -1e300;  // max signed distance over face planes
        for (const auto& f : hull.faces()) {
            Vec3 n = cross(v[f[1]] - v[f[0]], v[f[2]] - v[f[0]]);
            n = (1.0 / norm(n)) * n;
            worst = std::max(worst, dot(p - v[f[0]], n));
        }
        CHECK(worst <= 1e-9);
        CHECK(worst >= -1e-9);
    }
}

TEST_CASE("hull3 rejects coplanar clouds") {
    const std::vector<Vec3> flat{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {1, 1, 0}, {0.5, 0.2, 0}};
    CHECK(kind_of([&] { hull3(flat); }) == ErrorKind::DegenerateInput);
    const std::vector<Vec3> three{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}};
    CHECK(kind_of([&] { hull3(three); }) == ErrorKind::DegenerateInput);
}

TEST_CASE("support body validation") {
    const SupportBody2 disk = SupportBody2::make(1.0, {});
    CHECK(disk.modes() == 0);
    CHECK(SupportBody2::make(1.0, {{0.0, 0.0}, {0.1, 0.0}}).modes() == 2);
    CHECK(kind_of([] { SupportBody2::make(1.0, {{0.0, 0.0}, {0.4, 0.0}}); }) == ErrorKind::NotConvex);
    CHECK(kind_of([] { SupportBody2::make(-1.0, {}); }) == ErrorKind::NotPositive);
    // translated far enough that the origin leaves the body
    CHECK(kind_of([] { SupportBody2::make(1.0, {{2.0, 0.0}}); }) == ErrorKind::NotPositive);
}

TEST_CASE("support sampling gives convex polygons") {
    for (std::uint64_t i = 0; i < 30; ++i) {
        const auto h = std::get<SupportBody2>(random_body("support2", 5, i));
        const Polygon2 p = h.to_polygon(512);
        CHECK(p.size() == 512);
    }
}

TEST_CASE("translation") {
    const Polygon2 sq = square2();
    const double zero[2] = {0.0, 0.0};
    const auto same = std::get<Polygon2>(translate(Body{sq}, zero));
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(same.vertices()[i].x == sq.vertices()[i].x);
        CHECK(same.vertices()[i].y == sq.vertices()[i].y);
    }

    const Polygon2 disk = inscribed_regular_polygon(256);
    const double shift[2] = {1.0, 0.0};
    const Body moved = translate(Body{disk}, shift);
    const BodyMoments m0 = moments(disk), m1 = moments(moved);
    CHECK(m1.volume == doctest::Approx(m0.volume).epsilon(1e-13));
    CHECK(m1.perimeter == doctest::Approx(m0.perimeter).epsilon(1e-13));
    CHECK(m1.momentum - m0.momentum == doctest::Approx(m0.perimeter).epsilon(1e-12));

    const SupportBody2 h = SupportBody2::make(1.0, {{0.0, 0.0}, {0.1, 0.0}});
    const SupportBody2 ht = h.translated({0.2, -0.3});
    for (double t : {0.0, 0.7, 2.0, 4.5})
        CHECK(ht.h(t) == doctest::Approx(h.h(t) + 0.2 * std::cos(t) - 0.3 * std::sin(t)).epsilon(1e-14));
}

TEST_CASE("boundary barycenter") {
    const Vec2 c = boundary_barycenter(square2());
    CHECK(std::abs(c.x) < 1e-15);
    CHECK(std::abs(c.y) < 1e-15);
    const double t[2] = {3.0, 4.0};
    const auto moved = boundary_barycenter(translate(Body{square2()}, t));
    CHECK(moved[0] == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(moved[1] == doctest::Approx(4.0).epsilon(1e-14));

    const std::vector<Vec2> tri{{0, 0}, {1, 0}, {0, 1}};
    const Vec2 mc = oracle::monte_carlo_barycenter(tri, 1000000, 99);
    const Vec2 b = boundary_barycenter(Polygon2::from_ccw(tri));
    CHECK(std::abs(b.x - mc.x) < 1e-3);
    CHECK(std::abs(b.y - mc.y) < 1e-3);
    // exact: edge midpoints weighted by length
    const double s2 = std::sqrt(2.0);
    CHECK(b.x == doctest::Approx((0.5 + 0.5 * s2) / (2.0 + s2)).epsilon(1e-14));
}

TEST_CASE("normalize centers every body kind and barycenter is equivariant") {
    for (const char* kind : {"polygon2", "polytope3", "support2"})
        for (std::uint64_t i = 0; i < 10; ++i) {
            const Body b = random_body(kind, 21, i);
            const double diam = diameter(b);
            for (double c : boundary_barycenter(normalize(b))) CHECK(std::abs(c) <= 1e-12 * diam);
            const std::vector<double> t = dimension(b) == 2 ? std::vector<double>{0.3, -0.2}
                                                             : std::vector<double>{0.3, -0.2, 0.1};
            const auto before = boundary_barycenter(b), after = boundary_barycenter(translate(b, t));
            double tn = 0.0;
            for (double x : t) tn += x * x;
            for (std::size_t k = 0; k < t.size(); ++k)
                CHECK(std::abs(after[k] - before[k] - t[k]) <= 1e-12 * (diam + std::sqrt(tn)));
        }
}

TEST_CASE("body JSON round trip") {
    for (const char* kind : {"polygon2", "polytope3", "support2"}) {
        const Body b = random_body(kind, 4, 2);
        const Body c = body_from_json(body_to_json(b));
        CHECK(kind_name(c) == kind);
        CHECK(lambda(c) == doctest::Approx(lambda(b)).epsilon(1e-14));
    }
    CHECK(kind_of([] { body_from_json(nlohmann::json{{"kind", "blob"}}); }) == ErrorKind::BadConfig);
    CHECK(kind_of([] { read_body("/nonexistent/body.json"); }) == ErrorKind::IoError);
}
