#pragma once

#include <span>
#include <vector>

#include "wlab/bodies.hpp"

namespace wlab {

/// Perimeter L, area A and boundary momentum J of a planar body.
struct LAJTriple {
    double L = 0.0;
    double A = 0.0;
    double J = 0.0;

    double weinstock_gap() const;  // pi J - L A
};

/// (h cos t - h' sin t, h sin t + h' cos t)
Vec2 boundary_point(const SupportBody2& h, double theta);

/// L = int h, A = 1/2 int (h^2 + h h''), J = int (h^3 + h^2 h'' / 2) on the
/// uniform grid; exact for the truncated series.
LAJTriple laj_from_support(const SupportBody2& h);

struct WeinstockGap {
    double gap = 0.0;          // pi J - L A
    double p_l2 = 0.0;         // int p^2, p = h - L / 2 pi
    double lower_bound = 0.0;  // (L / 2) int p^2
    double identity_rhs = 0.0; // pi int p^2 (L/2pi + (L/2pi + p)/2 + (L/2pi + p + p'')/2)
    double residual = 0.0;     // gap - identity_rhs
    double relative_residual = 0.0;  // |residual| / (pi J)
};

WeinstockGap weinstock_gap(const SupportBody2& h);

struct PolarLAJ {
    LAJTriple centered;      // J about the boundary barycenter
    double J_origin = 0.0;   // J about the polar origin
    Vec2 barycenter;         // boundary barycenter
    double error_estimate = 0.0;
};

/// Adaptive Gauss-Kronrod quadrature of L = int sqrt(rho^2 + rho'^2),
/// A = 1/2 int rho^2 and the boundary moments, split at the curve's
/// breakpoints. Throws QuadratureFailure when the error estimate misses the
/// tolerance within `max_depth` bisections.
PolarLAJ polar_laj(const PolarCurve& curve, double tolerance = 1e-10, unsigned max_depth = 20);

struct RegularPolygon {
    Polygon2 polygon;
    LAJTriple closed_form;
    double alpha = 0.0;  // pi / k
};

/// Regular k-gon with inradius 1 and edge normals at angles 2 j pi / k.
/// Closed forms P = 2 pi tan a / a, V = pi tan a / a,
/// W = (2 pi / a)(tan a + tan^3 a / 3), a = pi / k.
RegularPolygon regular_polygon(int k);

struct GammaRow {
    int k = 0;
    double alpha = 0.0;
    double value = 0.0;  // lambda_gamma of the vertex-built polygon
    double ratio = 0.0;  // value / lambda_gamma(disk)
};

struct GammaAsymptotics {
    double gamma = 0.0;
    double disk_value = 0.0;
    std::vector<GammaRow> rows;
    double fitted_coefficient = 0.0;   // least squares slope of (ratio - 1) against alpha^2
    double expected_coefficient = 0.0; // -gamma / 6
    bool all_below_disk = true;
};

GammaAsymptotics lambda_gamma_asymptotics(double gamma, std::span<const int> ks);

}  // namespace wlab
