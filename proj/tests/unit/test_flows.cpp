#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "finite_differences.hpp"
#include "oracles.hpp"
#include "wlab/error.hpp"
#include "wlab/flows.hpp"
#include "wlab/functionals.hpp"
#include "wlab/random_bodies.hpp"
#include "wlab/support2d.hpp"

using namespace wlab;
using oracle::pi;
using fd::Speed;
using fd::fd_derivative;
using fd::inverse_curvature_speed;

namespace {

const Speed bump{0.375, {{0.5, 0.0}, {0.125, 0.0}}};  // (1 + cos t)^2 / 4

}  // namespace

TEST_CASE("shape derivative vanishes where it must") {
    const SupportBody2 disk = SupportBody2::make(1.0, {});
    const std::vector<double> ones(SupportBody2::kGridSize, 1.0), zeros(SupportBody2::kGridSize, 0.0);
    const ShapeDerivative d = shape_derivative(disk, ones);
    CHECK(std::abs(d.value) < 1e-14);
    CHECK(std::abs(d.curvature_term) < 1e-13);
    CHECK(std::abs(d.normal_term) < 1e-13);
    const auto h = std::get<SupportBody2>(random_body("support2", 3, 0));
    CHECK(shape_derivative(h, zeros).value == 0.0);
    CHECK_THROWS_AS(shape_derivative(h, std::vector<double>(10, 1.0)), Error);
}

TEST_CASE("shape derivative matches finite differences") {
    const SupportBody2 named = SupportBody2::make(1.0, {{0.0, 0.0}, {0.1, 0.0}});
    const Speed named_speed = inverse_curvature_speed(named);
    const double fd = fd_derivative(named, named_speed);
    const double exact = shape_derivative(named, named_speed.on_grid(SupportBody2::kGridSize)).value;
    CHECK(oracle::relative(exact, fd) <= 1e-4);

    for (std::uint64_t i = 0; i < 10; ++i) {
        const auto h = std::get<SupportBody2>(random_body("support2", 606, i));
        for (const Speed& phi : {Speed{1.0, {}}, inverse_curvature_speed(h), bump}) {
            const double value = shape_derivative(h, phi.on_grid(SupportBody2::kGridSize)).value;
            const double reference = fd_derivative(h, phi);
            CHECK(std::abs(value - reference) <= 1e-4 * std::max(std::abs(reference), 1e-3 * lambda(h)));
        }
    }
}

TEST_CASE("the bracket carries the same sign as the derivative") {
    const auto h = std::get<SupportBody2>(random_body("support2", 9, 4));
    const ShapeDerivative d = shape_derivative(h, bump.on_grid(SupportBody2::kGridSize));
    const BodyMoments m = moments(h);
    CHECK(d.bracket == doctest::Approx(d.value * m.perimeter * m.volume).epsilon(1e-13));
    CHECK(d.bracket == doctest::Approx(d.curvature_term + d.normal_term).epsilon(1e-15));
}

TEST_CASE("polygon shape derivative") {
    const SupportBody2 h = SupportBody2::make(1.0, {{0.0, 0.0}, {0.1, 0.0}});
    const Speed phi = inverse_curvature_speed(h);
    const double exact = shape_derivative(h, phi.on_grid(SupportBody2::kGridSize)).value;
    const Polygon2 fine = h.to_polygon(1024);
    const double approx = shape_derivative(fine, phi.on_grid(1024)).value;
    CHECK(oracle::relative(approx, exact) < 1e-3);
    const Polygon2 coarse = inscribed_regular_polygon(63);
    bool unavailable = false;
    try {
        shape_derivative(coarse, phi.on_grid(63));
    } catch (const Error& e) {
        unavailable = e.kind() == ErrorKind::CurvatureUnavailable;
    }
    CHECK(unavailable);
}

TEST_CASE("IMCF is exact per mode") {
    const FlowState disk = imcf_evolve(SupportBody2::make(1.0, {}), 1.0, 0.1);
    CHECK(disk.body.a0() == doctest::Approx(std::exp(1.0)).epsilon(1e-15));
    CHECK(disk.history.back().perimeter == doctest::Approx(2.0 * pi * std::exp(1.0)).epsilon(1e-13));
    CHECK(disk.history.size() == 11);

    const SupportBody2 h = SupportBody2::make(1.0, {{0.03, -0.02}, {0.1, 0.0}});
    const SupportBody2 at2 = imcf_advance(h, 2.0);
    CHECK(at2.coeffs()[1].a == doctest::Approx(0.1 * std::exp(-6.0)).epsilon(1e-14));
    CHECK(at2.coeffs()[0].a == 0.03);
    CHECK(at2.coeffs()[0].b == -0.02);
    CHECK(weinstock_gap(at2).p_l2 / (2.0 * pi * at2.a0() * at2.a0()) <
          weinstock_gap(h).p_l2 / (2.0 * pi * h.a0() * h.a0()));
}

TEST_CASE("IMCF semigroup and perimeter growth") {
    for (std::uint64_t i = 0; i < 10; ++i) {
        const auto h = std::get<SupportBody2>(random_body("support2", 77, i));
        for (auto [t1, t2] : {std::pair{0.3, 0.7}, std::pair{0.01, 1.99}, std::pair{1.0, 1.0}})
            CHECK(coefficient_distance(imcf_advance(imcf_advance(h, t1), t2), imcf_advance(h, t1 + t2)) <= 1e-14);
        const FlowState s = imcf_evolve(h, 2.0, 0.05);
        for (const auto& row : s.history)
            CHECK(std::abs(row.perimeter / (s.history.front().perimeter * std::exp(row.t)) - 1.0) <= 1e-12);
    }
}

TEST_CASE("flow records the horizon even off the recording grid") {
    const FlowState s = imcf_evolve(SupportBody2::make(1.0, {{0.0, 0.0}, {0.1, 0.0}}), 0.105, 0.01);
    CHECK(s.history.back().t == doctest::Approx(0.105));
    CHECK(s.t == 0.105);
}

TEST_CASE("flow diagnostics") {
    const FlowState disk = imcf_evolve(SupportBody2::make(1.0, {}), 0.5, 0.05);
    const FlowDiagnostics dd = flow_diagnostics(disk);
    for (std::size_t i = 0; i < dd.rows.size(); ++i)
        CHECK(dd.rows[i].volume_rate == doctest::Approx(2.0 * disk.history[i].volume).epsilon(1e-13));

    const FlowState s = imcf_evolve(SupportBody2::make(1.0, {{0.0, 0.0}, {0.1, 0.0}}), 2.0, 0.01);
    const FlowDiagnostics d = flow_diagnostics(s);
    CHECK(d.volume_rate_ok);
    CHECK(d.r_max_ok);
    CHECK(d.mean_normal_ok);
    CHECK(d.pointwise_ok);
    CHECK(d.mvzero_ok);
    for (const auto& row : d.rows) {
        if (row.t > 0.0) CHECK(row.r_max < row.r_max_bound);  // strict off the disk
        CHECK(std::abs(row.mvzero_residual) <= 1e-10 * s.history.front().momentum * std::exp(3.0 * row.t));
    }
    CHECK_THROWS_AS(flow_diagnostics(imcf_evolve(SupportBody2::make(1.0, {}), 0.01, 0.01)), Error);
}

TEST_CASE("negative-excess seed: lambda decreases along the flow") {
    const SupportBody2 seed = SupportBody2::ellipse(0.5, 2.0);
    const FlowState s = imcf_evolve(seed, 1.0, 0.01);
    CHECK(s.history.front().excess < 0.0);
    const FlowDiagnostics d = flow_diagnostics(s);
    CHECK(d.lambda_nonincreasing);
    CHECK(d.rows.front().lambda_rate < 0.0);
    // the shape derivative with phi = 1/H is the time derivative of lambda
    const double dt = 1e-5;
    for (double t : {0.1, 0.5}) {
        const double fd = (lambda(moments(imcf_advance(seed, t + dt))) - lambda(moments(imcf_advance(seed, t - dt)))) /
                          (2.0 * dt);
        const SupportBody2 at = imcf_advance(seed, t);
        CHECK(oracle::relative(shape_derivative(at, inverse_curvature(at)).value, fd) < 1e-4);
    }
}

TEST_CASE("Ros inequality") {
    const RosCheck disk = ros_check(SupportBody2::make(1.0, {}));
    CHECK(std::abs(disk.margin) < 1e-13);
    CHECK(ros_check(SupportBody2::make(1.0, {{0.0, 0.0}, {0.1, 0.0}})).margin > 0.0);
    std::vector<FourierPair> b5(5);
    b5[4].b = 0.02;
    CHECK(ros_check(SupportBody2::make(1.0, b5)).margin > 0.0);
    const SupportBody2 h = SupportBody2::make(1.0, {{0.0, 0.0}, {0.1, 0.0}});
    const RosCheck poly = ros_check(h.to_polygon(2048));
    CHECK(oracle::relative(poly.lhs, ros_check(h).lhs) < 1e-4);
    CHECK(poly.margin > 0.0);
    CHECK_THROWS_AS(ros_check(h.to_polygon(32)), Error);
}
