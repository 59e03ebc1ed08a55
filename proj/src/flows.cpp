#include "wlab/flows.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "wlab/error.hpp"
#include "wlab/functionals.hpp"
#include "wlab/kernels.hpp"

namespace wlab {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Per-vertex discrete geometry of a fine polygon.
struct VertexGeometry {
    std::vector<double> curvature;  // 1 / circumradius through (i-1, i, i+1)
    std::vector<double> weight;     // half the adjacent edge lengths
    std::vector<Vec2> normal;       // normalized sum of adjacent edge normals
};

VertexGeometry vertex_geometry(const Polygon2& body) {
    const auto v = body.vertices();
    const std::size_t n = v.size();
    if (n < kMinCurvatureVertices)
        throw Error(ErrorKind::CurvatureUnavailable,
                    "polygon curvature needs at least 64 vertices, got " + std::to_string(n));
    VertexGeometry g;
    g.curvature.resize(n);
    g.weight.resize(n);
    g.normal.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 a = v[(i + n - 1) % n], b = v[i], c = v[(i + 1) % n];
        const double ab = norm(b - a), bc = norm(c - b), ca = norm(a - c);
        g.curvature[i] = 2.0 * cross(b - a, c - b) / (ab * bc * ca);
        g.weight[i] = 0.5 * (ab + bc);
        const Vec2 n0{(b - a).y / ab, -(b - a).x / ab};
        const Vec2 n1{(c - b).y / bc, -(c - b).x / bc};
        const Vec2 s = n0 + n1;
        g.normal[i] = (1.0 / norm(s)) * s;
    }
    return g;
}

// The flow is exact, so dV/dt is differenced with a step far below the
// recording interval; high modes decay like e^{-k^2 t} and need it.
double volume_rate_fd(const SupportBody2& initial, double t) {
    constexpr double step = 1e-5;
    const auto V = [&](double s) { return moments(imcf_advance(initial, s)).volume; };
    if (t >= step) return (V(t + step) - V(t - step)) / (2.0 * step);
    return (-3.0 * V(t) + 4.0 * V(t + step) - V(t + 2.0 * step)) / (2.0 * step);
}

}  // namespace

ShapeDerivative shape_derivative(const SupportBody2& body, std::span<const double> phi) {
    const SupportGrid& g = body.grid();
    const std::size_t n = g.size();
    if (phi.size() != n)
        throw Error(ErrorKind::BadConfig, "phi must be sampled on the body grid");
    const BodyMoments m = moments(body);
    const double dt = g.step();
    const double mean_sq = m.momentum / m.perimeter;
    const double mean_support = m.momentum / (2.0 * m.volume);
    // H ds = dt, <x, nu> = h, |x|^2 = h^2 + h'^2
    std::vector<double> f(n), radius(n);
    for (std::size_t j = 0; j < n; ++j) {
        f[j] = g.h[j] * g.h[j] + g.dh[j] * g.dh[j] - mean_sq;
        radius[j] = g.h[j] + g.d2h[j];
    }
    std::vector<double> ones(n, 1.0), shifted(n);
    for (std::size_t j = 0; j < n; ++j) shifted[j] = g.h[j] - mean_support;
    const auto& k = kernels::active();
    ShapeDerivative d;
    d.curvature_term = k.dot3(f.data(), phi.data(), ones.data(), n) * dt;
    d.normal_term = 2.0 * k.dot3(shifted.data(), phi.data(), radius.data(), n) * dt;
    d.bracket = d.curvature_term + d.normal_term;
    d.value = d.bracket / (m.perimeter * m.volume);
    return d;
}

ShapeDerivative shape_derivative(const Polygon2& body, std::span<const double> phi) {
    const VertexGeometry geo = vertex_geometry(body);
    const auto v = body.vertices();
    if (phi.size() != v.size()) throw Error(ErrorKind::BadConfig, "phi must have one value per vertex");
    const BodyMoments m = moments(body);
    const double mean_sq = m.momentum / m.perimeter;
    const double mean_support = m.momentum / (2.0 * m.volume);
    ShapeDerivative d;
    for (std::size_t i = 0; i < v.size(); ++i) {
        d.curvature_term += geo.curvature[i] * (norm2(v[i]) - mean_sq) * phi[i] * geo.weight[i];
        d.normal_term += 2.0 * (dot(v[i], geo.normal[i]) - mean_support) * phi[i] * geo.weight[i];
    }
    d.bracket = d.curvature_term + d.normal_term;
    d.value = d.bracket / (m.perimeter * m.volume);
    return d;
}

std::vector<double> inverse_curvature(const SupportBody2& body) {
    const SupportGrid& g = body.grid();
    std::vector<double> r(g.size());
    for (std::size_t j = 0; j < g.size(); ++j) r[j] = g.h[j] + g.d2h[j];
    return r;
}

SupportBody2 imcf_advance(const SupportBody2& body, double t) {
    std::vector<FourierPair> c(body.coeffs().begin(), body.coeffs().end());
    for (std::size_t k = 1; k <= c.size(); ++k) {
        const double kd = static_cast<double>(k);
        const double f = std::exp((1.0 - kd * kd) * t);
        c[k - 1].a *= f;
        c[k - 1].b *= f;
    }
    return SupportBody2::make(body.a0() * std::exp(t), std::move(c));
}

double coefficient_distance(const SupportBody2& x, const SupportBody2& y) {
    double diff = std::abs(x.a0() - y.a0());
    double scale = std::max(std::abs(x.a0()), std::abs(y.a0()));
    const std::size_t n = std::max(x.modes(), y.modes());
    for (std::size_t k = 0; k < n; ++k) {
        const FourierPair u = k < x.modes() ? x.coeffs()[k] : FourierPair{};
        const FourierPair v = k < y.modes() ? y.coeffs()[k] : FourierPair{};
        diff = std::max({diff, std::abs(u.a - v.a), std::abs(u.b - v.b)});
        scale = std::max({scale, std::abs(u.a), std::abs(u.b), std::abs(v.a), std::abs(v.b)});
    }
    return diff / scale;
}

FlowSample flow_sample(const SupportBody2& body, double t) {
    const BodyMoments m = moments(body);
    const RadialExtent e = r_max_and_excess(Body{body});
    return {t, m.volume, m.perimeter, m.momentum, lambda(m), e.excess, e.r_max};
}

FlowState imcf_evolve(const SupportBody2& body, double T, double dt_record) {
    if (!(T >= 0.0) || !(dt_record > 0.0))
        throw Error(ErrorKind::BadConfig, "flow horizon must be >= 0 and record step > 0");
    FlowState s{body, body, 0.0, {}};
    const auto steps = static_cast<std::size_t>(std::floor(T / dt_record + 1e-9));
    for (std::size_t i = 0; i <= steps; ++i) {
        const double t = static_cast<double>(i) * dt_record;
        s.history.push_back(flow_sample(i == 0 ? body : imcf_advance(body, t), t));
    }
    if (T - static_cast<double>(steps) * dt_record > 1e-12)
        s.history.push_back(flow_sample(imcf_advance(body, T), T));
    s.body = imcf_advance(body, T);
    s.t = T;
    return s;
}

FlowDiagnostics flow_diagnostics(const FlowState& state) {
    const auto& hist = state.history;
    if (hist.size() < 3) throw Error(ErrorKind::InsufficientSamples, "flow diagnostics need >= 3 samples");
    FlowDiagnostics d;
    const double r0 = hist.front().r_max;
    for (std::size_t i = 0; i < hist.size(); ++i) {
        const FlowSample& s = hist[i];
        const SupportBody2 body = imcf_advance(state.initial, s.t);
        const SupportGrid& g = body.grid();
        const double dt = g.step();
        FlowDiagnosticRow row;
        row.t = s.t;
        const double mean_support = s.momentum / (2.0 * s.volume);
        const double mean_sq = s.momentum / s.perimeter;
        double rate = 0.0, normal_gap = 0.0, mvzero = 0.0, pointwise = -1e300;
        for (std::size_t j = 0; j < g.size(); ++j) {
            const double radius = g.h[j] + g.d2h[j];
            rate += radius * radius;
            normal_gap += (g.h[j] - mean_support) * radius;
            mvzero += (g.h[j] * g.h[j] + g.dh[j] * g.dh[j] - mean_sq) * radius;
            pointwise = std::max(pointwise, std::abs(g.h[j]) - mean_support - s.excess);
        }
        row.volume_rate = rate * dt;
        row.mean_normal_gap = normal_gap * dt;
        row.mvzero_residual = mvzero * dt;
        row.pointwise_margin = pointwise;
        row.r_max = s.r_max;
        row.r_max_bound = r0 * std::exp(s.t);
        row.lambda_rate = shape_derivative(body, inverse_curvature(body)).value;
        row.volume_rate_fd = volume_rate_fd(state.initial, s.t);
        d.max_volume_rate_error =
            std::max(d.max_volume_rate_error, std::abs(row.volume_rate_fd - row.volume_rate) / row.volume_rate);
        double width = 0.0;
        for (std::size_t j = 0; j < g.size() / 2; ++j)
            width = std::max(width, g.h[j] + g.h[j + g.size() / 2]);
        d.r_max_ok = d.r_max_ok && row.r_max <= row.r_max_bound * (1.0 + 1e-9);
        d.mean_normal_ok = d.mean_normal_ok && row.mean_normal_gap <= 1e-12 * s.perimeter * width;
        d.pointwise_ok = d.pointwise_ok && row.pointwise_margin <= 1e-9 * s.r_max;
        d.mvzero_ok = d.mvzero_ok && std::abs(row.mvzero_residual) <= 1e-10 * s.momentum;
        if (i > 0) d.lambda_nonincreasing = d.lambda_nonincreasing && s.lambda <= hist[i - 1].lambda + 1e-9;
        d.rows.push_back(row);
    }
    d.volume_rate_ok = d.max_volume_rate_error <= 1e-6;
    return d;
}

RosCheck ros_check(const SupportBody2& body) {
    const SupportGrid& g = body.grid();
    double lhs = 0.0;
    for (std::size_t j = 0; j < g.size(); ++j) {
        const double radius = g.h[j] + g.d2h[j];
        lhs += radius * radius;
    }
    RosCheck r;
    r.lhs = lhs * g.step();
    r.rhs = 2.0 * moments(body).volume;
    r.margin = r.lhs - r.rhs;
    return r;
}

RosCheck ros_check(const Polygon2& body) {
    const VertexGeometry geo = vertex_geometry(body);
    double lhs = 0.0;
    for (std::size_t i = 0; i < geo.weight.size(); ++i) lhs += geo.weight[i] / geo.curvature[i];
    RosCheck r;
    r.lhs = lhs;
    r.rhs = 2.0 * moments(body).volume;
    r.margin = r.lhs - r.rhs;
    return r;
}

}  // namespace wlab
