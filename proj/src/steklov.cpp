#include "wlab/steklov.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "wlab/error.hpp"
#include "wlab/functionals.hpp"

namespace wlab {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kVerdictRel = 1e-9;

using SparseMatrix = Eigen::SparseMatrix<double>;
using Entry = Eigen::Triplet<double>;

struct Pencil {
    Eigen::MatrixXd stiffness;  // Schur complement plus beta times the boundary Laplacian
    Eigen::MatrixXd mass;
};

Pencil assemble(const Mesh& mesh, double beta) {
    const std::size_t n = mesh.nodes.size();
    const std::size_t nb = mesh.boundary_nodes.size();
    std::vector<std::ptrdiff_t> slot(n, -1);
    std::vector<bool> boundary(n, false);
    for (std::size_t i = 0; i < nb; ++i) {
        boundary[mesh.boundary_nodes[i]] = true;
        slot[mesh.boundary_nodes[i]] = static_cast<std::ptrdiff_t>(i);
    }
    std::size_t ni = 0;
    for (std::size_t v = 0; v < n; ++v)
        if (!boundary[v]) slot[v] = static_cast<std::ptrdiff_t>(ni++);

    std::vector<Entry> kii, kib, kbb;
    kii.reserve(mesh.triangles.size() * 9);
    kib.reserve(mesh.triangles.size() * 3);
    for (const Triangle& t : mesh.triangles) {
        const Vec2 p[3] = {mesh.nodes[t[0]], mesh.nodes[t[1]], mesh.nodes[t[2]]};
        const double twice_area = cross(p[1] - p[0], p[2] - p[0]);
        if (!(twice_area > 0.0)) throw Error(ErrorKind::SolverFailure, "degenerate or inverted mesh triangle");
        // gradient of barycentric i is rot(p[i+2] - p[i+1]) / (2A)
        Vec2 g[3];
        for (int i = 0; i < 3; ++i) {
            const Vec2 e = p[(i + 2) % 3] - p[(i + 1) % 3];
            g[i] = {-e.y, e.x};
        }
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                const double k = dot(g[i], g[j]) / (2.0 * twice_area);
                const auto a = t[i], b = t[j];
                if (!boundary[a] && !boundary[b]) kii.emplace_back(slot[a], slot[b], k);
                else if (!boundary[a] && boundary[b]) kib.emplace_back(slot[a], slot[b], k);
                else if (boundary[a] && boundary[b]) kbb.emplace_back(slot[a], slot[b], k);
            }
    }
    const auto nbi = static_cast<Eigen::Index>(nb), nii = static_cast<Eigen::Index>(ni);
    SparseMatrix Kbb(nbi, nbi);
    Kbb.setFromTriplets(kbb.begin(), kbb.end());
    Pencil pencil;
    pencil.stiffness = Eigen::MatrixXd(Kbb);
    if (ni > 0) {
        SparseMatrix Kii(nii, nii), Kib(nii, nbi);
        Kii.setFromTriplets(kii.begin(), kii.end());
        Kib.setFromTriplets(kib.begin(), kib.end());
        Eigen::SimplicialLDLT<SparseMatrix> ldlt(Kii);
        if (ldlt.info() != Eigen::Success) throw Error(ErrorKind::SolverFailure, "interior stiffness factorization failed");
        const Eigen::MatrixXd X = ldlt.solve(Eigen::MatrixXd(Kib));
        if (ldlt.info() != Eigen::Success) throw Error(ErrorKind::SolverFailure, "interior solve failed");
        pencil.stiffness -= Kib.transpose() * X;
    }
    pencil.mass = Eigen::MatrixXd::Zero(nbi, nbi);
    for (std::size_t i = 0; i < nb; ++i) {
        const auto a = static_cast<Eigen::Index>(i), b = static_cast<Eigen::Index>((i + 1) % nb);
        const double len = norm(mesh.nodes[mesh.boundary_nodes[b]] - mesh.nodes[mesh.boundary_nodes[a]]);
        pencil.mass(a, a) += len / 3.0;
        pencil.mass(b, b) += len / 3.0;
        pencil.mass(a, b) += len / 6.0;
        pencil.mass(b, a) += len / 6.0;
        if (beta > 0.0) {
            const double s = beta / len;
            pencil.stiffness(a, a) += s;
            pencil.stiffness(b, b) += s;
            pencil.stiffness(a, b) -= s;
            pencil.stiffness(b, a) -= s;
        }
    }
    // symmetrize away round-off from the Schur product
    pencil.stiffness = 0.5 * (pencil.stiffness + pencil.stiffness.transpose()).eval();
    return pencil;
}

}  // namespace

double ball_eigenvalue(double radius, double beta) { return (radius + beta) / (radius * radius); }

SpectrumResult wentzell_spectrum(const Mesh& mesh, double beta, std::size_t k) {
    if (beta < 0.0) throw Error(ErrorKind::NegativeBeta, "beta must be >= 0");
    if (mesh.boundary_nodes.size() < 3) throw Error(ErrorKind::BadConfig, "mesh boundary too small");
    k = std::clamp<std::size_t>(k, 2, mesh.boundary_nodes.size());
    const Pencil pencil = assemble(mesh, beta);

    Eigen::LLT<Eigen::MatrixXd> chol(pencil.mass);
    if (chol.info() != Eigen::Success) throw Error(ErrorKind::SolverFailure, "boundary mass matrix is not positive definite");
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> solver(pencil.stiffness, pencil.mass,
                                                                     Eigen::EigenvaluesOnly | Eigen::Ax_lBx);
    if (solver.info() != Eigen::Success) throw Error(ErrorKind::SolverFailure, "generalized eigensolver did not converge");

    SpectrumResult r;
    const Eigen::VectorXd& ev = solver.eigenvalues();
    r.eigenvalues.assign(ev.data(), ev.data() + k);
    r.sigma_1 = r.eigenvalues[1];
    r.beta = beta;
    r.h_max = mesh.h_max;
    r.refinement_level = mesh.level;
    r.boundary_nodes = mesh.boundary_nodes.size();

    const BodyMoments m = moments(std::get<Polygon2>(normalize(Body{boundary_polygon(mesh)})));
    r.volume = m.volume;
    r.perimeter = m.perimeter;
    r.momentum = m.momentum;
    r.bound = (2.0 * m.volume + beta * m.perimeter) / m.momentum;
    r.ball_equal_perimeter = ball_eigenvalue(m.perimeter / (2.0 * kPi), beta);
    r.ball_equal_volume = ball_eigenvalue(std::sqrt(m.volume / kPi), beta);
    r.bound_ok = r.sigma_1 <= r.bound * (1.0 + kFemSlack);
    const double floor = -1e-10 * std::max(1.0, std::abs(r.sigma_1));
    r.nonnegative = std::all_of(ev.data(), ev.data() + ev.size(), [floor](double x) { return x >= floor; });
    r.constant_mode = std::abs(r.eigenvalues[0]) <= 1e-8 * r.eigenvalues[1];
    return r;
}

SpectrumResult wentzell_spectrum(const Polygon2& poly, double beta, int refinements, std::size_t k) {
    if (beta < 0.0) throw Error(ErrorKind::NegativeBeta, "beta must be >= 0");
    return wentzell_spectrum(mesh_polygon(poly, refinements), beta, k);
}

SpectrumResult steklov_spectrum(const Mesh& mesh, std::size_t k) { return wentzell_spectrum(mesh, 0.0, k); }

SpectrumResult steklov_spectrum(const Polygon2& poly, int refinements, std::size_t k) {
    return wentzell_spectrum(poly, 0.0, refinements, k);
}

WeinstockReport weinstock_verdict(const Polygon2& poly, int refinements) {
    WeinstockReport w;
    w.fine = steklov_spectrum(poly, refinements);
    const double sigma = w.fine.sigma_1;
    w.sigma_coarse = refinements > 0 ? steklov_spectrum(poly, refinements - 1, 2).sigma_1 : sigma;
    w.sigma_extrapolated = sigma + (sigma - w.sigma_coarse) / 3.0;
    const double V = w.fine.volume, P = w.fine.perimeter, W = w.fine.momentum;
    w.ball_value = 2.0 * kPi / P;
    w.test_bound = 2.0 * V / W;
    w.main_bound = 2.0 * kPi / P;
    w.scaled_ratio = sigma * P;
    w.reciprocal_sum = (1.0 / w.fine.eigenvalues[1] + 1.0 / w.fine.eigenvalues[2]) / P;
    w.reciprocal_ball = 1.0 / kPi;
    w.link_test = sigma <= w.test_bound * (1.0 + kVerdictRel);
    w.link_main = w.test_bound <= w.main_bound * (1.0 + kVerdictRel);
    w.link_isoperimetric = w.main_bound <= w.ball_value * (1.0 + kVerdictRel);
    w.weinstock = sigma <= w.ball_value * (1.0 + kVerdictRel);
    w.reciprocal = w.reciprocal_sum >= w.reciprocal_ball * (1.0 - kVerdictRel);
    return w;
}

SurfaceReport small_beta_surface_check(const Polygon2& poly, std::span<const double> betas, int refinements) {
    const Mesh mesh = mesh_polygon(poly, refinements);
    SurfaceReport rep;
    bool run = true;
    for (double beta : betas) {
        const SpectrumResult s = wentzell_spectrum(mesh, beta, 2);
        SurfaceRow row{beta, s.sigma_1, s.ball_equal_perimeter, s.ball_equal_perimeter - s.sigma_1};
        row.holds = s.sigma_1 <= s.ball_equal_perimeter * (1.0 + kFemSlack);
        row.strict = s.sigma_1 <= s.ball_equal_perimeter;
        run = run && row.holds;
        if (run) rep.threshold = std::max(rep.threshold, beta);
        rep.rows.push_back(row);
    }
    return rep;
}

std::vector<VolumeBallRow> wentzell_volume_check(const Polygon2& poly, std::span<const double> betas,
                                                 int refinements) {
    const Mesh mesh = mesh_polygon(poly, refinements);
    std::vector<VolumeBallRow> rows;
    for (double beta : betas) {
        const SpectrumResult s = wentzell_spectrum(mesh, beta, 2);
        VolumeBallRow row{beta, s.sigma_1, s.bound, s.ball_equal_volume};
        row.test_ok = s.bound_ok;
        row.ball_ok = s.sigma_1 <= s.ball_equal_volume * (1.0 + kFemSlack);
        rows.push_back(row);
    }
    return rows;
}

}  // namespace wlab
