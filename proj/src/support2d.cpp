#include "wlab/support2d.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "wlab/error.hpp"
#include "wlab/functionals.hpp"

namespace wlab {
namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

double LAJTriple::weinstock_gap() const { return kPi * J - L * A; }

Vec2 boundary_point(const SupportBody2& h, double theta) {
    const double hv = h.h(theta), dv = h.dh(theta);
    const double c = std::cos(theta), s = std::sin(theta);
    return {hv * c - dv * s, hv * s + dv * c};
}

LAJTriple laj_from_support(const SupportBody2& h) {
    const BodyMoments m = moments(h);
    return {m.perimeter, m.volume, m.momentum};
}

WeinstockGap weinstock_gap(const SupportBody2& h) {
    const LAJTriple t = laj_from_support(h);
    const SupportGrid& g = h.grid();
    const double dt = g.step();
    const double mean = t.L / (2.0 * kPi);
    double p2 = 0.0, rhs = 0.0;
    for (std::size_t j = 0; j < g.size(); ++j) {
        const double p = g.h[j] - mean;
        const double pq = p * p;
        p2 += pq;
        rhs += pq * (mean + 0.5 * (mean + p) + 0.5 * (mean + p + g.d2h[j]));
    }
    WeinstockGap w;
    w.gap = t.weinstock_gap();
    w.p_l2 = p2 * dt;
    w.lower_bound = 0.5 * t.L * w.p_l2;
    w.identity_rhs = kPi * rhs * dt;
    w.residual = w.gap - w.identity_rhs;
    w.relative_residual = std::abs(w.residual) / (kPi * t.J);
    return w;
}

PolarLAJ polar_laj(const PolarCurve& curve, double tolerance, unsigned max_depth) {
    std::vector<double> cuts{0.0};
    for (double b : curve.breakpoints)
        if (b > 0.0 && b < 2.0 * kPi) cuts.push_back(b);
    cuts.push_back(2.0 * kPi);
    std::sort(cuts.begin(), cuts.end());

    double total_error = 0.0;
    auto integrate = [&](auto&& f) {
        double sum = 0.0;
        for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
            double err = 0.0;
            const double v = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
                f, cuts[i], cuts[i + 1], max_depth, tolerance, &err);
            if (!std::isfinite(v) || err > 10.0 * tolerance * std::max(1.0, std::abs(v)))
                throw Error(ErrorKind::QuadratureFailure,
                            "adaptive refinement exceeded depth " + std::to_string(max_depth));
            sum += v;
            total_error += err;
        }
        return sum;
    };
    auto speed = [&](double p) {
        const double r = curve.rho(p), d = curve.drho(p);
        return std::sqrt(r * r + d * d);
    };

    const double L = integrate(speed);
    const double A = integrate([&](double p) { return 0.5 * curve.rho(p) * curve.rho(p); });
    const double J0 = integrate([&](double p) {
        const double r = curve.rho(p);
        return r * r * speed(p);
    });
    const double mx = integrate([&](double p) { return curve.rho(p) * std::cos(p) * speed(p); });
    const double my = integrate([&](double p) { return curve.rho(p) * std::sin(p) * speed(p); });

    PolarLAJ out;
    out.barycenter = {mx / L, my / L};
    out.J_origin = J0;
    // int |x - c|^2 = J0 - 2 c . int x + L |c|^2 = J0 - L |c|^2
    out.centered = {L, A, J0 - L * norm2(out.barycenter)};
    out.error_estimate = total_error;
    return out;
}

RegularPolygon regular_polygon(int k) {
    if (k < 3) throw Error(ErrorKind::BadConfig, "regular polygon needs k >= 3");
    const double alpha = kPi / k;
    const double circumradius = 1.0 / std::cos(alpha);
    std::vector<Vec2> v(static_cast<std::size_t>(k));
    for (int j = 0; j < k; ++j) {
        const double t = (2.0 * j + 1.0) * alpha;
        v[static_cast<std::size_t>(j)] = {circumradius * std::cos(t), circumradius * std::sin(t)};
    }
    const double ta = std::tan(alpha);
    RegularPolygon r{Polygon2::from_ccw(std::move(v)),
                     {2.0 * kPi * ta / alpha, kPi * ta / alpha, (2.0 * kPi / alpha) * (ta + ta * ta * ta / 3.0)},
                     alpha};
    return r;
}

GammaAsymptotics lambda_gamma_asymptotics(double gamma, std::span<const int> ks) {
    GammaAsymptotics out;
    out.gamma = gamma;
    out.disk_value = lambda_gamma_disk(gamma);
    out.expected_coefficient = -gamma / 6.0;
    double sxy = 0.0, sxx = 0.0;
    for (int k : ks) {
        const RegularPolygon rp = regular_polygon(k);
        GammaRow row;
        row.k = k;
        row.alpha = rp.alpha;
        row.value = lambda_gamma(moments(rp.polygon), gamma);
        row.ratio = row.value / out.disk_value;
        out.all_below_disk = out.all_below_disk && row.value < out.disk_value;
        const double x = rp.alpha * rp.alpha;
        sxy += x * (row.ratio - 1.0);
        sxx += x * x;
        out.rows.push_back(row);
    }
    out.fitted_coefficient = sxx > 0.0 ? sxy / sxx : 0.0;
    return out;
}

}  // namespace wlab
