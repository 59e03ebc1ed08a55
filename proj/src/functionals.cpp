#include "wlab/functionals.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "wlab/error.hpp"
#include "wlab/kernels.hpp"

namespace wlab {
namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

BodyMoments moments(const Polygon2& p) {
    const auto v = p.vertices();
    std::vector<double> x(v.size()), y(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        x[i] = v[i].x;
        y[i] = v[i].y;
    }
    const kernels::EdgeMoments e = kernels::active().polygon_moments(x.data(), y.data(), v.size());
    BodyMoments m;
    m.dim = 2;
    m.volume = 0.5 * e.twice_area;
    m.perimeter = e.perimeter;
    m.momentum = e.momentum;
    m.first = {e.first_x, e.first_y, 0.0};
    return m;
}

BodyMoments moments(const Polytope3& p) {
    const auto v = p.vertices();
    const auto f = p.faces();
    const std::size_t n = f.size();
    std::vector<double> buf(9 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t c = 0; c < 3; ++c) {
            const Vec3& q = v[f[i][c]];
            buf[(3 * c + 0) * n + i] = q.x;
            buf[(3 * c + 1) * n + i] = q.y;
            buf[(3 * c + 2) * n + i] = q.z;
        }
    }
    const double* b = buf.data();
    const kernels::TriangleArrays tri{b,         b + n,     b + 2 * n, b + 3 * n, b + 4 * n,
                                      b + 5 * n, b + 6 * n, b + 7 * n, b + 8 * n, n};
    const kernels::TriangleMoments t = kernels::active().triangle_moments(tri);
    BodyMoments m;
    m.dim = 3;
    m.volume = t.six_volume / 6.0;
    m.perimeter = t.area;
    m.momentum = t.momentum;
    m.first = {t.first_x, t.first_y, t.first_z};
    return m;
}

BodyMoments moments(const SupportBody2& h) {
    const SupportGrid& g = h.grid();
    const std::size_t n = g.size();
    const double dt = g.step();
    const auto& k = kernels::active();
    const kernels::SupportMoments s = k.support_moments(g.h.data(), g.d2h.data(), n);

    // ds = (h + h'') dt, x = h cos - h' sin, y = h sin + h' cos
    std::vector<double> radius(n);
    for (std::size_t j = 0; j < n; ++j) radius[j] = g.h[j] + g.d2h[j];
    const TrigTable& trig = trig_table(n);
    const double fx = k.dot3(g.h.data(), trig.cos.data(), radius.data(), n) -
                      k.dot3(g.dh.data(), trig.sin.data(), radius.data(), n);
    const double fy = k.dot3(g.h.data(), trig.sin.data(), radius.data(), n) +
                      k.dot3(g.dh.data(), trig.cos.data(), radius.data(), n);

    BodyMoments m;
    m.dim = 2;
    m.perimeter = s.sum_h * dt;
    m.volume = 0.5 * s.sum_area * dt;
    m.momentum = s.sum_momentum * dt;
    m.first = {fx * dt, fy * dt, 0.0};
    return m;
}

BodyMoments moments(const Body& body) {
    return std::visit([](const auto& b) { return moments(b); }, body);
}

double volume(const Body& body) { return moments(body).volume; }
double perimeter(const Body& body) { return moments(body).perimeter; }
double boundary_momentum(const Body& body) { return moments(body).momentum; }

double lambda(const BodyMoments& m) {
    return m.momentum / (m.perimeter * std::pow(m.volume, 2.0 / m.dim));
}

double lambda(const Body& body) { return lambda(moments(body)); }

double lambda_gamma(const BodyMoments& m, double gamma) {
    if (m.dim != 2) throw Error(ErrorKind::DimensionUnsupported, "lambda_gamma is defined for planar bodies");
    if (!(gamma >= 0.0)) throw Error(ErrorKind::BadConfig, "gamma must be nonnegative");
    return m.momentum / (std::pow(m.perimeter, 1.0 + gamma) * std::pow(m.volume, 1.0 - 0.5 * gamma));
}

double lambda_gamma(const Body& body, double gamma) {
    if (dimension(body) != 2)
        throw Error(ErrorKind::DimensionUnsupported, "lambda_gamma is defined for planar bodies");
    return lambda_gamma(moments(body), gamma);
}

double lambda_gamma_disk(double gamma) {
    return 1.0 / (std::pow(2.0, gamma) * std::pow(kPi, 1.0 + 0.5 * gamma));
}

namespace {

// |boundary point|^2 at normal angle t.
double radial2(const SupportBody2& h, double t) {
    const double hv = h.h(t), dv = h.dh(t);
    return hv * hv + dv * dv;
}

RadialExtent support_extent(const SupportBody2& body, const BodyMoments& m) {
    const SupportGrid& g = body.grid();
    const std::size_t n = g.size();
    std::size_t arg = 0;
    double best = -1.0;
    for (std::size_t j = 0; j < n; ++j) {
        const double r2 = g.h[j] * g.h[j] + g.dh[j] * g.dh[j];
        if (r2 > best) {
            best = r2;
            arg = j;
        }
    }
    // Golden-section refinement on the bracketing grid cell pair.
    const double dt = g.step();
    double lo = (static_cast<double>(arg) - 1.0) * dt;
    double hi = (static_cast<double>(arg) + 1.0) * dt;
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = hi - inv_phi * (hi - lo);
    double d = lo + inv_phi * (hi - lo);
    double fc = radial2(body, c), fd = radial2(body, d);
    for (int it = 0; it < 200 && hi - lo > 1e-14; ++it) {
        if (fc > fd) {
            hi = d;
            d = c;
            fd = fc;
            c = hi - inv_phi * (hi - lo);
            fc = radial2(body, c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + inv_phi * (hi - lo);
            fd = radial2(body, d);
        }
    }
    double t = 0.5 * (lo + hi);
    double r2 = radial2(body, t);
    if (r2 < best) {
        t = static_cast<double>(arg) * dt;
        r2 = best;
    }
    const double hv = body.h(t), dv = body.dh(t);
    RadialExtent e;
    e.r_max = std::sqrt(r2);
    e.x_max = {hv * std::cos(t) - dv * std::sin(t), hv * std::sin(t) + dv * std::cos(t)};
    e.excess = e.r_max - m.momentum / (2.0 * m.volume);
    return e;
}

}  // namespace

RadialExtent r_max_and_excess(const Body& body) {
    const BodyMoments m = moments(body);
    if (const auto* s = std::get_if<SupportBody2>(&body)) return support_extent(*s, m);

    RadialExtent e;
    double best = -1.0;
    if (const auto* p = std::get_if<Polygon2>(&body)) {
        for (const auto& v : p->vertices()) {
            if (norm2(v) > best) {
                best = norm2(v);
                e.x_max = {v.x, v.y};
            }
        }
    } else {
        for (const auto& v : std::get<Polytope3>(body).vertices()) {
            if (norm2(v) > best) {
                best = norm2(v);
                e.x_max = {v.x, v.y, v.z};
            }
        }
    }
    e.r_max = std::sqrt(best);
    e.excess = e.r_max - m.momentum / (m.dim * m.volume);
    return e;
}

double brock_ratio(const BodyMoments& m) {
    return m.momentum / std::pow(m.volume, (m.dim + 1.0) / m.dim);
}

double brock_ratio(const Body& body) { return brock_ratio(moments(body)); }

double brock_ball_value(int n) {
    // unit ball: W = P = n omega_n, V = omega_n
    const double w = unit_ball_volume(n);
    return n * w / std::pow(w, (n + 1.0) / n);
}

double isoperimetric_deficit(const BodyMoments& m) {
    if (m.dim == 2) return m.perimeter * m.perimeter / (4.0 * kPi * m.volume) - 1.0;
    return m.perimeter * m.perimeter * m.perimeter / (36.0 * kPi * m.volume * m.volume) - 1.0;
}

FunctionalReport functional_report(const Body& body, std::span<const double> gammas) {
    const BodyMoments m = moments(body);
    const RadialExtent e = r_max_and_excess(body);
    FunctionalReport r;
    r.kind = kind_name(body);
    r.dim = m.dim;
    r.volume = m.volume;
    r.perimeter = m.perimeter;
    r.momentum = m.momentum;
    r.r_max = e.r_max;
    r.x_max = e.x_max;
    r.lambda = lambda(m);
    r.excess = e.excess;
    r.main_margin = r.lambda - lambda_lower_bound(m.dim);
    r.main_holds = r.main_margin >= -kVerdictTolerance;
    r.brock = brock_ratio(m);
    r.brock_margin = r.brock - brock_ball_value(m.dim);
    r.isoperimetric_deficit = isoperimetric_deficit(m);
    if (m.dim == 2)
        for (double g : gammas) r.lambda_gamma.emplace_back(g, lambda_gamma(m, g));
    r.barycenter.resize(static_cast<std::size_t>(m.dim));
    for (int i = 0; i < m.dim; ++i)
        r.barycenter[static_cast<std::size_t>(i)] = m.first[static_cast<std::size_t>(i)] / m.perimeter;
    // Translation leaves V and P unchanged and lowers W by P |c|^2.
    double c2 = 0.0;
    for (double c : r.barycenter) c2 += c * c;
    BodyMoments centered = m;
    centered.momentum = m.momentum - m.perimeter * c2;
    r.lambda_normalized = lambda(centered);
    r.margin_normalized = r.lambda_normalized - lambda_lower_bound(m.dim);
    return r;
}

nlohmann::json to_json(const FunctionalReport& r) {
    nlohmann::json j;
    j["kind"] = r.kind;
    j["n"] = r.dim;
    j["V"] = r.volume;
    j["P"] = r.perimeter;
    j["W"] = r.momentum;
    j["r_max"] = r.r_max;
    j["x_max"] = r.x_max;
    j["lambda"] = r.lambda;
    j["excess"] = r.excess;
    j["margin"] = r.main_margin;
    j["main_inequality_holds"] = r.main_holds;
    j["brock_ratio"] = r.brock;
    j["brock_margin"] = r.brock_margin;
    j["isoperimetric_deficit"] = r.isoperimetric_deficit;
    j["barycenter"] = r.barycenter;
    j["lambda_normalized"] = r.lambda_normalized;
    j["margin_normalized"] = r.margin_normalized;
    nlohmann::json lg = nlohmann::json::array();
    for (const auto& [g, v] : r.lambda_gamma) lg.push_back({{"gamma", g}, {"value", v}});
    j["lambda_gamma"] = lg;
    if (r.seed) j["seed"] = *r.seed;
    return j;
}

std::string report_csv_header() { return "kind,n,V,P,W,r_max,lambda,excess,margin,seed"; }

std::string report_csv_row(const FunctionalReport& r) {
    return fmt::format("{},{},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{}", r.kind, r.dim,
                       r.volume, r.perimeter, r.momentum, r.r_max, r.lambda, r.excess, r.main_margin,
                       r.seed ? std::to_string(*r.seed) : std::string());
}

}  // namespace wlab
