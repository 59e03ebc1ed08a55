#pragma once

#include <span>
#include <vector>

#include "wlab/bodies.hpp"
#include "wlab/mesh.hpp"

namespace wlab {

/// Relative slack allowed between P1 finite-element eigenvalues and the bounds.
inline constexpr double kFemSlack = 0.02;

struct SpectrumResult {
    std::vector<double> eigenvalues;  // ascending, first ~ 0 (constants)
    double sigma_1 = 0.0;
    double beta = 0.0;
    double h_max = 0.0;
    int refinement_level = 0;
    std::size_t boundary_nodes = 0;

    // Functionals of the mesh boundary polygon about its boundary barycenter.
    double volume = 0.0;
    double perimeter = 0.0;
    double momentum = 0.0;

    double bound = 0.0;                // (2V + beta P) / W
    double ball_equal_perimeter = 0.0; // (R + beta) / R^2, R = P / 2 pi
    double ball_equal_volume = 0.0;    // same with R = sqrt(V / pi)
    bool bound_ok = false;             // sigma_1 <= bound (1 + kFemSlack)
    bool nonnegative = false;          // every eigenvalue >= -1e-10 max(1, sigma_1)
    bool constant_mode = false;        // eigenvalue[0] <= 1e-8 eigenvalue[1]
};

/// Ball value mu(B_R, beta) = (R + beta) / R^2 (beta = 0 gives the Steklov 1/R).
double ball_eigenvalue(double radius, double beta);

/// Dense Dirichlet-to-Neumann pencil on the boundary nodes. Returns the k
/// smallest eigenvalues (k >= 2). Throws NegativeBeta, SolverFailure.
SpectrumResult wentzell_spectrum(const Mesh& mesh, double beta, std::size_t k = 6);
SpectrumResult wentzell_spectrum(const Polygon2& poly, double beta, int refinements, std::size_t k = 6);
SpectrumResult steklov_spectrum(const Mesh& mesh, std::size_t k = 6);
SpectrumResult steklov_spectrum(const Polygon2& poly, int refinements, std::size_t k = 6);

struct WeinstockReport {
    SpectrumResult fine;
    double sigma_coarse = 0.0;
    double sigma_extrapolated = 0.0;   // Richardson with order 2, informational
    double ball_value = 0.0;           // 2 pi / P
    double test_bound = 0.0;           // 2 V / W
    double main_bound = 0.0;           // 2 pi V^0 / P
    double scaled_ratio = 0.0;         // sigma P / V^0
    double reciprocal_sum = 0.0;       // (1/sigma_1 + 1/sigma_2) / P
    double reciprocal_ball = 0.0;      // 1 / pi
    bool link_test = false;            // sigma_1 <= 2V/W
    bool link_main = false;            // 2V/W <= 2 pi / P
    bool link_isoperimetric = false;   // 2 pi / P <= (2 pi / P)
    bool weinstock = false;            // sigma_1 <= 2 pi / P
    bool reciprocal = false;
    bool ok() const { return link_test && link_main && link_isoperimetric && weinstock && reciprocal; }
};

/// Verdicts use relative tolerance 1e-9; the FEM eigenvalue is a Rayleigh-Ritz
/// upper bound, so a pass is a pass for the exact polygon eigenvalue.
WeinstockReport weinstock_verdict(const Polygon2& poly, int refinements);

struct SurfaceRow {
    double beta = 0.0;
    double mu = 0.0;
    double ball = 0.0;
    double margin = 0.0;  // ball - mu
    bool holds = false;   // mu <= ball (1 + kFemSlack)
    bool strict = false;  // mu <= ball
};

struct SurfaceReport {
    std::vector<SurfaceRow> rows;
    double threshold = -1.0;  // largest beta of the leading run of rows that hold; -1 if none
};

/// Equal-perimeter comparison mu(poly, beta) <= mu(B_R, beta), R = P / 2 pi.
SurfaceReport small_beta_surface_check(const Polygon2& poly, std::span<const double> betas, int refinements);

struct VolumeBallRow {
    double beta = 0.0;
    double mu = 0.0;
    double test_bound = 0.0;  // (2V + beta P)/W
    double ball = 0.0;        // R = sqrt(V / pi)
    bool test_ok = false;
    bool ball_ok = false;
};

/// Equal-volume comparison mu(poly, beta) <= mu(B_R, beta), R = sqrt(V / pi).
std::vector<VolumeBallRow> wentzell_volume_check(const Polygon2& poly, std::span<const double> betas,
                                                 int refinements);

}  // namespace wlab
