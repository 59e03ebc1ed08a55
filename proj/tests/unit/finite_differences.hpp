#pragma once
// Central differences of lambda along a normal speed, for checking the
// closed-form shape derivative. Uses the library's moment code.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "wlab/bodies.hpp"
#include "wlab/functionals.hpp"

namespace fd {

using wlab::FourierPair;
using wlab::SupportBody2;

// A trigonometric normal speed phi = c0 + sum (a_k cos kt + b_k sin kt).
struct Speed {
    double c0 = 0.0;
    std::vector<FourierPair> modes;

    std::vector<double> on_grid(std::size_t n) const {
        std::vector<double> v(n);
        for (std::size_t j = 0; j < n; ++j) {
            const double t = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n);
            double s = c0;
            for (std::size_t k = 0; k < modes.size(); ++k)
                s += modes[k].a * std::cos((k + 1.0) * t) + modes[k].b * std::sin((k + 1.0) * t);
            v[j] = s;
        }
        return v;
    }
};

// Moving the boundary with normal speed phi adds phi to the support function.
inline SupportBody2 perturbed(const SupportBody2& h, const Speed& phi, double s) {
    std::vector<FourierPair> c(std::max(h.modes(), phi.modes.size()));
    for (std::size_t k = 0; k < h.modes(); ++k) c[k] = h.coeffs()[k];
    for (std::size_t k = 0; k < phi.modes.size(); ++k) {
        c[k].a += s * phi.modes[k].a;
        c[k].b += s * phi.modes[k].b;
    }
    return SupportBody2::make(h.a0() + s * phi.c0, std::move(c));
}

inline double fd_derivative(const SupportBody2& h, const Speed& phi) {
    const auto central = [&](double s) {
        return (wlab::lambda(wlab::moments(perturbed(h, phi, s))) - wlab::lambda(wlab::moments(perturbed(h, phi, -s)))) / (2.0 * s);
    };
    const double s = 1e-3;
    return (4.0 * central(s / 2.0) - central(s)) / 3.0;
}

inline Speed inverse_curvature_speed(const SupportBody2& h) {
    Speed phi{h.a0(), {}};
    for (std::size_t k = 0; k < h.modes(); ++k) {
        const double f = 1.0 - (k + 1.0) * (k + 1.0);
        phi.modes.push_back({f * h.coeffs()[k].a, f * h.coeffs()[k].b});
    }
    return phi;
}

}  // namespace fd
