#pragma once
// Independent reference computations used only by the tests. None of these
// call into the library's moment code.

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <set>
#include <vector>

#include "wlab/bodies.hpp"

namespace oracle {

using wlab::Vec2;
using wlab::Vec3;

inline constexpr double pi = std::numbers::pi;

// O(n^3): i -> j is a counterclockwise hull edge when no point lies strictly
// to its right and collinear points lie inside the segment.
inline std::set<std::pair<double, double>> brute_hull(const std::vector<Vec2>& p) {
    std::set<std::pair<double, double>> out;
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = 0; j < p.size(); ++j) {
            if (i == j) continue;
            const Vec2 e = p[j] - p[i];
            bool edge = true;
            for (std::size_t k = 0; k < p.size() && edge; ++k) {
                if (k == i || k == j) continue;
                const Vec2 f = p[k] - p[i];
                const double c = e.x * f.y - e.y * f.x;
                if (c < -1e-14) edge = false;
                else if (std::abs(c) <= 1e-14) {
                    const double t = (f.x * e.x + f.y * e.y) / (e.x * e.x + e.y * e.y);
                    if (t < 0.0 || t > 1.0) edge = false;
                }
            }
            if (edge) {
                out.insert({p[i].x, p[i].y});
                out.insert({p[j].x, p[j].y});
            }
        }
    return out;
}

struct Moments2 {
    double area = 0.0, perimeter = 0.0, momentum = 0.0;
    Vec2 first{0, 0};
};

// Fan from vertex 0 for the area, Simpson per edge for |x|^2 (exact for
// quadratics), midpoint per edge for x.
inline Moments2 polygon_moments(const std::vector<Vec2>& v) {
    Moments2 m;
    for (std::size_t i = 1; i + 1 < v.size(); ++i) {
        const Vec2 a = v[i] - v[0], b = v[i + 1] - v[0];
        m.area += 0.5 * (a.x * b.y - a.y * b.x);
    }
    for (std::size_t i = 0; i < v.size(); ++i) {
        const Vec2 a = v[i], b = v[(i + 1) % v.size()];
        const double len = std::hypot(b.x - a.x, b.y - a.y);
        const Vec2 mid = 0.5 * (a + b);
        m.perimeter += len;
        m.momentum += len / 6.0 * (wlab::norm2(a) + 4.0 * wlab::norm2(mid) + wlab::norm2(b));
        m.first = m.first + len * mid;
    }
    return m;
}

struct Moments3 {
    double volume = 0.0, area = 0.0, momentum = 0.0;
};

// Tetrahedra from the vertex centroid; int_T |x|^2 = A/6 (sum |p_i|^2 + sum p_i.p_j).
inline Moments3 polytope_moments(const wlab::Polytope3& poly) {
    const auto v = poly.vertices();
    Vec3 c{0, 0, 0};
    for (const Vec3& p : v) c = c + p;
    c = (1.0 / static_cast<double>(v.size())) * c;
    Moments3 m;
    for (const auto& f : poly.faces()) {
        const Vec3 a = v[f[0]], b = v[f[1]], d = v[f[2]];
        m.volume += wlab::dot(a - c, wlab::cross(b - c, d - c)) / 6.0;
        const double A = 0.5 * wlab::norm(wlab::cross(b - a, d - a));
        m.area += A;
        m.momentum += A / 6.0 *
                      (wlab::norm2(a) + wlab::norm2(b) + wlab::norm2(d) + wlab::dot(a, b) + wlab::dot(b, d) +
                       wlab::dot(a, d));
    }
    return m;
}

// Support function by direct summation.
inline double support_value(const wlab::SupportBody2& h, double t) {
    double s = h.a0();
    const auto c = h.coeffs();
    for (std::size_t k = 0; k < c.size(); ++k) {
        const double kt = static_cast<double>(k + 1) * t;
        s += c[k].a * std::cos(kt) + c[k].b * std::sin(kt);
    }
    return s;
}

// Intersection of the tangent lines at t - d and t + d.
inline Vec2 envelope_point(const wlab::SupportBody2& h, double t, double d) {
    const double t1 = t - d, t2 = t + d;
    const double h1 = support_value(h, t1), h2 = support_value(h, t2);
    const double det = std::sin(t2 - t1);
    return {(h1 * std::sin(t2) - h2 * std::sin(t1)) / det, (h2 * std::cos(t1) - h1 * std::cos(t2)) / det};
}

// Envelope point with one Richardson step, error O(d^4).
inline Vec2 envelope_point_refined(const wlab::SupportBody2& h, double t, double d = 1e-3) {
    const Vec2 coarse = envelope_point(h, t, d), fine = envelope_point(h, t, d / 2.0);
    return fine + (1.0 / 3.0) * (fine - coarse);
}

// Inscribed polygon through refined envelope points.
inline std::vector<Vec2> envelope_polygon(const wlab::SupportBody2& h, std::size_t n) {
    std::vector<Vec2> v(n);
    for (std::size_t j = 0; j < n; ++j)
        v[j] = envelope_point_refined(h, 2.0 * pi * static_cast<double>(j) / static_cast<double>(n));
    return v;
}

// Boundary barycenter by uniform arclength sampling.
inline Vec2 monte_carlo_barycenter(const std::vector<Vec2>& v, std::size_t samples, unsigned seed) {
    std::vector<double> cum{0.0};
    for (std::size_t i = 0; i < v.size(); ++i) cum.push_back(cum.back() + wlab::norm(v[(i + 1) % v.size()] - v[i]));
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, cum.back());
    Vec2 sum{0, 0};
    for (std::size_t s = 0; s < samples; ++s) {
        const double x = u(rng);
        const auto it = std::upper_bound(cum.begin(), cum.end(), x);
        const std::size_t e = static_cast<std::size_t>(it - cum.begin()) - 1;
        const double t = (x - cum[e]) / (cum[e + 1] - cum[e]);
        sum = sum + (v[e] + t * (v[(e + 1) % v.size()] - v[e]));
    }
    return (1.0 / static_cast<double>(samples)) * sum;
}

struct PolarTrapezoid {
    double L = 0.0, A = 0.0, J_origin = 0.0;
    Vec2 first{0, 0};
    double J_centered() const { return J_origin - wlab::norm2(first) / L; }
};

// Composite trapezoid on [0, 2 pi] with n panels.
inline PolarTrapezoid polar_trapezoid(const std::function<double(double)>& rho,
                                      const std::function<double(double)>& drho, std::size_t n) {
    PolarTrapezoid r;
    const double h = 2.0 * pi / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) {  // periodic: endpoints share a weight
        const double t = h * static_cast<double>(i);
        const double p = rho(t), dp = drho(t);
        const double ds = std::sqrt(p * p + dp * dp);
        r.L += ds;
        r.A += 0.5 * p * p;
        r.J_origin += p * p * ds;
        r.first = r.first + (p * ds) * Vec2{std::cos(t), std::sin(t)};
    }
    r.L *= h;
    r.A *= h;
    r.J_origin *= h;
    r.first = h * r.first;
    return r;
}

inline double relative(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace oracle
