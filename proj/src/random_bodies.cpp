#include "wlab/random_bodies.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "wlab/error.hpp"

namespace wlab {

std::mt19937_64 sweep_rng(std::uint64_t seed, std::uint64_t index) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
    return std::mt19937_64(seq);
}

Polygon2 random_disk_hull(std::mt19937_64& rng, std::size_t points) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (;;) {
        std::vector<Vec2> pts;
        while (pts.size() < points) {
            const Vec2 p{u(rng), u(rng)};
            if (norm2(p) <= 1.0) pts.push_back(p);
        }
        try {
            return polygon_from_vertices(pts);
        } catch (const Error&) {
            // degenerate draw, resample
        }
    }
}

Polytope3 random_ball_hull(std::mt19937_64& rng, std::size_t points) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (;;) {
        std::vector<Vec3> pts;
        while (pts.size() < points) {
            const Vec3 p{u(rng), u(rng), u(rng)};
            if (norm2(p) <= 1.0) pts.push_back(p);
        }
        try {
            return hull3(pts);
        } catch (const Error&) {
        }
    }
}

SupportBody2 random_support_body(std::mt19937_64& rng, std::size_t modes, double strength) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<FourierPair> c(modes);
    double curvature_budget = 0.0;
    double value_budget = 0.0;
    for (std::size_t k = 1; k <= modes; ++k) {
        const double decay = 1.0 / static_cast<double>(k * k);
        c[k - 1] = {u(rng) * decay, u(rng) * decay};
        const double amp = std::abs(c[k - 1].a) + std::abs(c[k - 1].b);
        curvature_budget += (static_cast<double>(k * k) - 1.0) * amp;
        value_budget += amp;
    }
    // h + h'' >= a0 - sum (k^2 - 1)|c_k| and h >= a0 - sum |c_k|
    const double a0 = 1.0;
    const double worst = std::max(curvature_budget, value_budget);
    const double s = worst > 0.0 ? strength * a0 / worst * std::uniform_real_distribution<double>(0.2, 1.0)(rng) : 0.0;
    for (auto& p : c) {
        p.a *= s;
        p.b *= s;
    }
    return SupportBody2::make(a0, std::move(c));
}

Body random_body(const std::string& kind, std::uint64_t seed, std::uint64_t index) {
    auto rng = sweep_rng(seed, index);
    if (kind == "polygon2") {
        const auto n = std::uniform_int_distribution<std::size_t>(5, 50)(rng);
        return random_disk_hull(rng, n);
    }
    if (kind == "polytope3") {
        const auto n = std::uniform_int_distribution<std::size_t>(8, 60)(rng);
        return random_ball_hull(rng, n);
    }
    if (kind == "support2") {
        const auto modes = std::uniform_int_distribution<std::size_t>(2, 16)(rng);
        return random_support_body(rng, modes);
    }
    throw Error(ErrorKind::BadConfig, "unknown generator kind '" + kind + "'");
}

Polygon2 random_convex_polygon(std::mt19937_64& rng, std::size_t sides) {
    if (sides < 3) throw Error(ErrorKind::FewerThanThreeHullVertices, "polygon needs at least 3 sides");
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double mean_gap = 2.0 * std::numbers::pi / static_cast<double>(sides);
    for (;;) {
        std::vector<double> t(sides);
        for (double& x : t) x = 2.0 * std::numbers::pi * unit(rng);
        std::sort(t.begin(), t.end());
        bool spread = t.front() + 2.0 * std::numbers::pi - t.back() >= 0.2 * mean_gap;
        for (std::size_t i = 1; i < sides && spread; ++i) spread = t[i] - t[i - 1] >= 0.2 * mean_gap;
        if (!spread) continue;
        const double stretch = 0.5 + unit(rng);
        const double turn = 2.0 * std::numbers::pi * unit(rng);
        const double c = std::cos(turn), s = std::sin(turn);
        std::vector<Vec2> v(sides);
        for (std::size_t i = 0; i < sides; ++i) {
            const double x = stretch * std::cos(t[i]), y = std::sin(t[i]);
            v[i] = {c * x - s * y, s * x + c * y};
        }
        return Polygon2::from_ccw(std::move(v));
    }
}

std::vector<Vec3> fibonacci_sphere(std::size_t count) {
    std::vector<Vec3> pts(count);
    const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
    for (std::size_t i = 0; i < count; ++i) {
        const double z = 1.0 - (2.0 * static_cast<double>(i) + 1.0) / static_cast<double>(count);
        const double r = std::sqrt(1.0 - z * z);
        const double phi = golden * static_cast<double>(i);
        pts[i] = {r * std::cos(phi), r * std::sin(phi), z};
    }
    return pts;
}

Polygon2 inscribed_regular_polygon(std::size_t sides, double radius) {
    std::vector<Vec2> v(sides);
    for (std::size_t i = 0; i < sides; ++i) {
        const double t = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(sides);
        v[i] = {radius * std::cos(t), radius * std::sin(t)};
    }
    return Polygon2::from_ccw(std::move(v));
}

}  // namespace wlab
