#pragma once

#include <span>
#include <vector>

#include "wlab/bodies.hpp"

namespace wlab {

/// Domain derivative of lambda for the normal velocity phi.
///
/// bracket = int (n-1) H (|x|^2 - W/P) phi + 2 int (<x,nu> - W/(nV)) phi,
/// value   = bracket / (P V^{2/n}), the derivative of lambda itself.
struct ShapeDerivative {
    double value = 0.0;
    double bracket = 0.0;
    double curvature_term = 0.0;
    double normal_term = 0.0;
};

/// phi sampled on the body's uniform grid (SupportBody2::kGridSize values at
/// t_j = 2 pi j / n, t = normal angle). Exact for trigonometric phi: H ds = dt
/// and ds = (h + h'') dt turn both integrands into trigonometric polynomials.
ShapeDerivative shape_derivative(const SupportBody2& body, std::span<const double> phi);

/// Fine polygon (>= 64 vertices) with circumcircle curvature at vertices;
/// phi sampled at vertices. Approximate. Throws CurvatureUnavailable.
ShapeDerivative shape_derivative(const Polygon2& body, std::span<const double> phi);

inline constexpr std::size_t kMinCurvatureVertices = 64;

/// 1/H = h + h'' on the body grid (the IMCF normal speed).
std::vector<double> inverse_curvature(const SupportBody2& body);

/// Exact IMCF in support-function form h_t = h + h'': mode k scales by e^{(1-k^2) t}.
SupportBody2 imcf_advance(const SupportBody2& body, double t);

/// max |coefficient difference| / max |coefficient| over (a0, a_k, b_k),
/// modes missing on one side counted as zero.
double coefficient_distance(const SupportBody2& x, const SupportBody2& y);

struct FlowSample {
    double t = 0.0;
    double volume = 0.0;
    double perimeter = 0.0;
    double momentum = 0.0;
    double lambda = 0.0;
    double excess = 0.0;
    double r_max = 0.0;
};

struct FlowState {
    SupportBody2 initial;
    SupportBody2 body;
    double t = 0.0;
    std::vector<FlowSample> history;
};

FlowSample flow_sample(const SupportBody2& body, double t);

/// Records the flow every dt_record up to T (T itself always recorded).
FlowState imcf_evolve(const SupportBody2& body, double T = 2.0, double dt_record = 0.01);

struct FlowDiagnosticRow {
    double t = 0.0;
    double volume_rate = 0.0;     // int 1/H ds
    double volume_rate_fd = 0.0;  // central difference of V(t), step 1e-5
    double r_max = 0.0;
    double r_max_bound = 0.0;     // r_max(0) e^{t/(n-1)}
    double mean_normal_gap = 0.0; // int (<x,nu> - W/(nV)) ds, <= 0 up to 1e-12 P diam
    double pointwise_margin = 0.0;// max (|<x,nu>| - W/(nV)) - E, <= 0
    double mvzero_residual = 0.0; // int (|x|^2 - W/P) ds
    double lambda_rate = 0.0;     // shape derivative with phi = 1/H
};

struct FlowDiagnostics {
    std::vector<FlowDiagnosticRow> rows;
    double max_volume_rate_error = 0.0;  // relative, interior samples
    bool volume_rate_ok = true;
    bool r_max_ok = true;
    bool mean_normal_ok = true;
    bool pointwise_ok = true;
    bool mvzero_ok = true;
    bool lambda_nonincreasing = true;
};

/// Tolerances: relative 1e-6 on the finite-difference volume rate, 1e-9 on the
/// r_max bound and sign checks, 1e-10 W on the mvzero residual.
FlowDiagnostics flow_diagnostics(const FlowState& state);

struct RosCheck {
    double lhs = 0.0;   // int 1/H ds
    double rhs = 0.0;   // same for the disk of equal area = 2 V
    double margin = 0.0;
};

RosCheck ros_check(const SupportBody2& body);
RosCheck ros_check(const Polygon2& body);

}  // namespace wlab
