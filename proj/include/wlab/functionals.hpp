#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "wlab/bodies.hpp"

namespace wlab {

/// Volume V, perimeter P, boundary momentum W = int |x|^2 and first boundary
/// moment int x over the boundary. Exact for polytopes; spectrally exact on
/// the uniform grid for support bodies.
struct BodyMoments {
    int dim = 2;
    double volume = 0.0;
    double perimeter = 0.0;
    double momentum = 0.0;
    std::array<double, 3> first{};
};

BodyMoments moments(const Polygon2& p);
BodyMoments moments(const Polytope3& p);
BodyMoments moments(const SupportBody2& h);
BodyMoments moments(const Body& body);

double volume(const Body& body);
double perimeter(const Body& body);
double boundary_momentum(const Body& body);

/// W / (P V^{2/n})
double lambda(const Body& body);
double lambda(const BodyMoments& m);

/// W / (P^{1+gamma} V^{1-gamma/2}); planar bodies only.
double lambda_gamma(const Body& body, double gamma);
double lambda_gamma(const BodyMoments& m, double gamma);
/// Value of lambda_gamma on any disk.
double lambda_gamma_disk(double gamma);

struct RadialExtent {
    double r_max = 0.0;
    std::vector<double> x_max;
    double excess = 0.0;  // r_max - W / (n V)
};

RadialExtent r_max_and_excess(const Body& body);

/// W / V^{(n+1)/n} and its value on balls.
double brock_ratio(const Body& body);
double brock_ratio(const BodyMoments& m);
double brock_ball_value(int n);

/// P^2 / (4 pi V) - 1 in 2D, P^3 / (36 pi V^2) - 1 in 3D.
double isoperimetric_deficit(const BodyMoments& m);

/// Verdict tolerance on the lambda margin.
inline constexpr double kVerdictTolerance = 1e-9;

struct FunctionalReport {
    std::string kind;
    int dim = 2;
    double volume = 0.0;
    double perimeter = 0.0;
    double momentum = 0.0;
    double r_max = 0.0;
    std::vector<double> x_max;
    double lambda = 0.0;
    double excess = 0.0;
    double main_margin = 0.0;  // lambda - omega_n^{-2/n}
    bool main_holds = true;
    double brock = 0.0;
    double brock_margin = 0.0;
    std::vector<std::pair<double, double>> lambda_gamma;  // (gamma, value)
    double isoperimetric_deficit = 0.0;
    // Same functional after moving the boundary barycenter to the origin.
    std::vector<double> barycenter;
    double lambda_normalized = 0.0;
    double margin_normalized = 0.0;
    std::optional<std::uint64_t> seed;
};

FunctionalReport functional_report(const Body& body, std::span<const double> gammas = {});

nlohmann::json to_json(const FunctionalReport& r);
std::string report_csv_header();
std::string report_csv_row(const FunctionalReport& r);

}  // namespace wlab
