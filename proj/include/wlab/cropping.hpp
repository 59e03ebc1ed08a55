#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "wlab/bodies.hpp"
#include "wlab/functionals.hpp"

namespace wlab {

/// Result of cutting a polytope by the hyperplane {x . u = level},
/// keeping {x . u <= level}. By default u = x_max / |x_max| and
/// level = r_max - eps.
struct CropResult {
    FunctionalReport original;
    Body cropped;
    double eps = 0.0;
    std::vector<double> direction{};
    double level = 0.0;
    double delta_volume = 0.0;
    double delta_perimeter = 0.0;
    double delta_momentum = 0.0;
    double delta_lambda_actual = 0.0;
    double delta_lambda_predicted = 0.0;
    double cap_measure = 0.0;   // length (2D) or area (3D) of the new facet
    double cap_diameter = 0.0;
    double cap_volume = 0.0;    // removed piece, built independently of the cropped body
};

/// Throws CutMissesBody if eps <= 0 or the plane misses the body,
/// CutThroughOrigin if the kept side no longer contains the origin,
/// DimensionUnsupported for support bodies.
CropResult crop(const Body& body, double eps,
                std::optional<std::span<const double>> direction = std::nullopt);

struct ReverseRow {
    double eps = 0.0;
    double delta_volume = 0.0;
    double delta_perimeter = 0.0;
    double delta_momentum = 0.0;
    double delta_lambda_actual = 0.0;
    double delta_lambda_predicted = 0.0;
    double ratio = 0.0;                // |dV| / |dP|
    double residual = 0.0;             // dW - 2 r dV - r^2 dP
    double normalized_residual = 0.0;  // |residual| / (|dV| + |dP|)
    double expansion_error = 0.0;      // |dlam_actual - dlam_pred| P V^{2/n} / (|dV| + |dP|)
    double cap_diameter = 0.0;
    double diameter_bound = 0.0;       // 2 sqrt(2 r eps)
};

struct ReverseReport {
    std::vector<ReverseRow> rows;
    bool ratio_bounded = true;
    bool residual_vanishes = true;
    bool expansion_vanishes = true;
    bool diameter_ok = true;
    bool signs_ok = true;  // dV < 0 and dP < 0 on every row
    bool ok() const {
        return ratio_bounded && residual_vanishes && expansion_vanishes && diameter_ok && signs_ok;
    }
};

/// eps_list must be strictly decreasing and positive (BadConfig otherwise).
ReverseReport lemma_reverse_check(const Body& body, std::span<const double> eps_list);

/// "Tends to zero" on a finite sweep: each value at most 1.1 x its
/// predecessor and the last strictly below the first. Values below
/// `floor` count as zero.
bool vanishes_under_refinement(std::span<const double> values, double floor = 1e-13);

enum class DescentStatus { WitnessFound, NoDescentFound, NegativeExcess };

std::string to_string(DescentStatus s);

struct DescentVerdict {
    DescentStatus status = DescentStatus::NoDescentFound;
    double excess = 0.0;
    double r_max = 0.0;
    double spread = 0.0;  // r_max^2 - W/P
    bool near_ball = false;
    bool step4 = false;   // excess ~ 0, the spread decides
    std::optional<CropResult> witness;
    std::size_t cuts_tried = 0;
    std::string note;
};

/// Relative thresholds of the descent sweep.
inline constexpr double kNearBallTolerance = 1e-4;
inline constexpr double kDescentTolerance = 1e-13;
inline constexpr int kDescentSweepLength = 40;

/// Sweeps eps = r_max 2^{-j}, j = 1..40, toward x_max and returns the first cut
/// that lowers lambda by more than 1e-13 relative. Bodies with
/// |E| <= 1e-4 r_max and r_max^2 - W/P <= 1e-4 r_max^2 are reported as near-ball
/// (NoDescentFound) without sweeping; E < -1e-4 r_max gives NegativeExcess.
DescentVerdict step3_descent(const Body& body);

}  // namespace wlab
