#include "wlab/cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>
#include <nlohmann/json.hpp>

#include "wlab/body_io.hpp"
#include "wlab/cropping.hpp"
#include "wlab/error.hpp"
#include "wlab/flows.hpp"
#include "wlab/functionals.hpp"
#include "wlab/parallel.hpp"
#include "wlab/random_bodies.hpp"
#include "wlab/steklov.hpp"
#include "wlab/support2d.hpp"

namespace wlab::cli {
namespace {

using json = nlohmann::json;
constexpr double kPi = std::numbers::pi;

std::string num(double x) { return fmt::format("{:.17g}", x); }

std::vector<Body> load_bodies(const ExperimentConfig& c) {
    const int sources = int(c.body_path.has_value()) + int(c.generator.has_value()) +
                        int(c.ellipse.has_value()) + int(c.disk);
    if (sources != 1)
        throw Error(ErrorKind::BadConfig, "give exactly one input: --body, --generate, --ellipse or --disk");
    if (c.body_path) return {read_body(*c.body_path)};
    if (c.ellipse) {
        if (c.ellipse->size() != 2) throw Error(ErrorKind::BadConfig, "--ellipse takes a,b");
        return {SupportBody2::ellipse((*c.ellipse)[0], (*c.ellipse)[1])};
    }
    if (c.disk) return {inscribed_regular_polygon(256, 1.0)};
    if (c.count == 0) throw Error(ErrorKind::BadConfig, "--count must be positive");
    std::vector<Body> bodies;
    bodies.reserve(c.count);
    for (std::size_t i = 0; i < c.count; ++i) bodies.push_back(random_body(*c.generator, c.seed, i));
    return bodies;
}

const Polygon2& need_polygon(const Body& b) {
    if (const auto* p = std::get_if<Polygon2>(&b)) return *p;
    throw Error(ErrorKind::DimensionUnsupported, "this command needs a polygon2 body, got " + kind_name(b));
}

void write_json(std::ostream& out, const json& j) { out << j.dump(2) << '\n'; }

// ---- functionals / verify-main -------------------------------------------

int run_functionals(const ExperimentConfig& c, std::ostream& out, unsigned jobs) {
    const auto bodies = load_bodies(c);
    auto reports = parallel_map(bodies.size(), jobs, [&](std::size_t i) {
        FunctionalReport r = functional_report(bodies[i], c.gammas);
        if (c.generator) r.seed = c.seed;
        return r;
    });
    if (c.format == Format::Json) {
        json j{{"seed", c.seed}, {"bodies", json::array()}};
        for (const auto& r : reports) j["bodies"].push_back(to_json(r));
        write_json(out, j);
    } else {
        out << report_csv_header() << '\n';
        for (const auto& r : reports) out << report_csv_row(r) << '\n';
    }
    return 0;
}

struct MainRow {
    std::string kind;
    int dim = 2;
    double lambda = 0.0, bound = 0.0, margin = 0.0, deficit = 0.0;
    bool holds = true;
};

int run_verify_main(const ExperimentConfig& c, std::ostream& out, std::ostream& log, unsigned jobs) {
    const auto bodies = load_bodies(c);
    auto rows = parallel_map(bodies.size(), jobs, [&](std::size_t i) {
        const FunctionalReport r = functional_report(bodies[i]);
        MainRow row{r.kind, r.dim, r.lambda_normalized, lambda_lower_bound(r.dim), r.margin_normalized,
                    r.isoperimetric_deficit};
        row.holds = row.margin >= -kVerdictTolerance && (row.deficit <= 1e-6 || row.margin > 0.0);
        return row;
    });
    std::vector<std::size_t> failed;
    if (c.format == Format::Json) {
        json j{{"seed", c.seed}, {"rows", json::array()}};
        for (std::size_t i = 0; i < rows.size(); ++i) {
            const auto& r = rows[i];
            j["rows"].push_back({{"index", i}, {"kind", r.kind}, {"n", r.dim}, {"lambda", r.lambda},
                                 {"bound", r.bound}, {"margin", r.margin}, {"deficit", r.deficit},
                                 {"holds", r.holds}});
        }
        write_json(out, j);
    } else {
        out << "index,kind,n,lambda,bound,margin,deficit,holds,seed\n";
        for (std::size_t i = 0; i < rows.size(); ++i) {
            const auto& r = rows[i];
            out << fmt::format("{},{},{},{},{},{},{},{},{}\n", i, r.kind, r.dim, num(r.lambda), num(r.bound),
                               num(r.margin), num(r.deficit), r.holds ? 1 : 0, c.seed);
        }
    }
    for (std::size_t i = 0; i < rows.size(); ++i)
        if (!rows[i].holds) failed.push_back(i);
    log << fmt::format("verify-main: {} bodies, {} violations\n", rows.size(), failed.size());
    for (auto i : failed) log << fmt::format("  violation: body {} margin {}\n", i, num(rows[i].margin));
    return failed.empty() ? 0 : 1;
}

// ---- flow-imcf ------------------------------------------------------------

int run_flow(const ExperimentConfig& c, std::ostream& out, std::ostream& log) {
    const auto bodies = load_bodies(c);
    if (bodies.size() != 1) throw Error(ErrorKind::BadConfig, "flow-imcf evolves a single body (use --count 1)");
    const auto* support = std::get_if<SupportBody2>(&bodies[0]);
    if (!support) throw Error(ErrorKind::DimensionUnsupported, "flow-imcf needs a support2 body");
    const FlowState state = imcf_evolve(*support, c.horizon, c.record_step);
    const FlowDiagnostics d = flow_diagnostics(state);
    if (c.format == Format::Json) {
        json j{{"seed", c.seed}, {"history", json::array()}};
        for (const auto& s : state.history)
            j["history"].push_back({{"t", s.t}, {"V", s.volume}, {"P", s.perimeter}, {"W", s.momentum},
                                    {"lambda", s.lambda}, {"excess", s.excess}, {"rmax", s.r_max}});
        write_json(out, j);
    } else {
        out << "t,V,P,W,lambda,excess,rmax,seed\n";
        for (const auto& s : state.history)
            out << fmt::format("{},{},{},{},{},{},{},{}\n", num(s.t), num(s.volume), num(s.perimeter),
                               num(s.momentum), num(s.lambda), num(s.excess), num(s.r_max), c.seed);
    }
    const bool ok = d.volume_rate_ok && d.r_max_ok && d.mean_normal_ok && d.pointwise_ok && d.mvzero_ok;
    log << fmt::format(
        "flow-imcf: volume rate {} (max rel err {:.3g}), r_max bound {}, mean normal {}, pointwise {}, "
        "mvzero {}, lambda nonincreasing {}\n",
        d.volume_rate_ok, d.max_volume_rate_error, d.r_max_ok, d.mean_normal_ok, d.pointwise_ok, d.mvzero_ok,
        d.lambda_nonincreasing);
    return ok ? 0 : 1;
}

// ---- crop -----------------------------------------------------------------

int run_crop(const ExperimentConfig& c, std::ostream& out, std::ostream& log, unsigned jobs) {
    const auto bodies = load_bodies(c);
    std::vector<double> eps = c.eps;
    std::sort(eps.begin(), eps.end(), std::greater<>());
    struct Outcome {
        std::vector<CropResult> cuts;
        std::optional<ReverseReport> lemma;
        std::optional<DescentVerdict> descent;
    };
    auto outcomes = parallel_map(bodies.size(), jobs, [&](std::size_t i) {
        Outcome o;
        std::optional<std::span<const double>> dir;
        if (c.direction) dir = std::span<const double>(*c.direction);
        for (double e : eps) o.cuts.push_back(crop(bodies[i], e, dir));
        if (!c.direction) o.lemma = lemma_reverse_check(bodies[i], eps);
        if (c.descent) o.descent = step3_descent(bodies[i]);
        return o;
    });
    bool ok = true;
    if (c.format == Format::Json) {
        json j{{"seed", c.seed}, {"rows", json::array()}};
        for (std::size_t b = 0; b < outcomes.size(); ++b)
            for (const auto& r : outcomes[b].cuts)
                j["rows"].push_back({{"body_id", b}, {"eps", r.eps}, {"dV", r.delta_volume},
                                     {"dP", r.delta_perimeter}, {"dW", r.delta_momentum},
                                     {"dlam_actual", r.delta_lambda_actual},
                                     {"dlam_predicted", r.delta_lambda_predicted}});
        write_json(out, j);
    } else {
        out << "body_id,eps,dV,dP,dW,dlam_actual,dlam_predicted,ratio,residual,seed\n";
        for (std::size_t b = 0; b < outcomes.size(); ++b)
            for (const auto& r : outcomes[b].cuts) {
                const double rm = r.original.r_max;
                out << fmt::format("{},{},{},{},{},{},{},{},{},{}\n", b, num(r.eps), num(r.delta_volume),
                                   num(r.delta_perimeter), num(r.delta_momentum), num(r.delta_lambda_actual),
                                   num(r.delta_lambda_predicted),
                                   num(std::abs(r.delta_volume) / std::abs(r.delta_perimeter)),
                                   num(r.delta_momentum - 2.0 * rm * r.delta_volume - rm * rm * r.delta_perimeter),
                                   c.seed);
            }
    }
    for (std::size_t b = 0; b < outcomes.size(); ++b) {
        const auto& o = outcomes[b];
        if (o.lemma) {
            const auto& l = *o.lemma;
            log << fmt::format("crop body {}: ratio bounded {}, residual vanishes {}, expansion vanishes {}, "
                               "cap diameter {}, signs {}\n",
                               b, l.ratio_bounded, l.residual_vanishes, l.expansion_vanishes, l.diameter_ok,
                               l.signs_ok);
            ok = ok && l.ok();
        }
        if (o.descent) {
            const auto& d = *o.descent;
            log << fmt::format("descent body {}: {} (E = {:.6g}, spread = {:.6g}{})\n", b, to_string(d.status),
                               d.excess, d.spread,
                               d.witness ? fmt::format(", eps = {:.6g}, dlam = {:.6g}", d.witness->eps,
                                                       d.witness->delta_lambda_actual)
                                         : std::string(", ") + d.note);
        }
    }
    return ok ? 0 : 1;
}

// ---- steklov / wentzell ---------------------------------------------------

int run_spectral(const ExperimentConfig& c, std::ostream& out, std::ostream& log, unsigned jobs, bool wentzell) {
    if (c.refinements < 0) throw Error(ErrorKind::BadConfig, "--refine must be >= 0");
    const auto bodies = load_bodies(c);
    for (const auto& b : bodies) need_polygon(b);
    if (wentzell)
        for (double beta : c.betas)
            if (beta < 0.0) throw Error(ErrorKind::NegativeBeta, "beta must be >= 0");
    struct Row {
        std::size_t body = 0;
        double beta = 0.0, h_max = 0.0, value = 0.0, bound = 0.0, ball = 0.0;
        bool ok = true;
    };
    auto per_body = parallel_map(bodies.size(), jobs, [&](std::size_t i) {
        const Polygon2& p = need_polygon(bodies[i]);
        std::vector<Row> rows;
        if (!wentzell) {
            const Mesh mesh = c.disk ? mesh_disk(1.0, c.refinements) : mesh_polygon(p, c.refinements);
            const SpectrumResult s = steklov_spectrum(mesh, c.eigen_count);
            const bool chain = c.disk || weinstock_verdict(p, c.refinements).ok();
            rows.push_back({i, 0.0, s.h_max, s.sigma_1, 2.0 * s.volume / s.momentum, 2.0 * kPi / s.perimeter,
                            s.bound_ok && chain && s.sigma_1 <= 2.0 * kPi / s.perimeter * (1.0 + kFemSlack)});
        } else {
            const Mesh mesh = c.disk ? mesh_disk(1.0, c.refinements) : mesh_polygon(p, c.refinements);
            for (double beta : c.betas) {
                const SpectrumResult s = wentzell_spectrum(mesh, beta, c.eigen_count);
                rows.push_back({i, beta, s.h_max, s.sigma_1, s.bound, s.ball_equal_volume,
                                s.bound_ok && s.sigma_1 <= s.ball_equal_volume * (1.0 + kFemSlack)});
            }
        }
        return rows;
    });
    std::size_t failures = 0;
    if (c.format == Format::Json) {
        json j{{"seed", c.seed}, {"rows", json::array()}};
        for (const auto& rows : per_body)
            for (const auto& r : rows) {
                json row{{"body_id", r.body}, {"h_max", r.h_max}, {wentzell ? "mu" : "sigma1", r.value},
                         {"bound_nVW", r.bound}, {"ball_value", r.ball}, {"margin", r.ball - r.value},
                         {"holds", r.ok}};
                if (wentzell) row["beta"] = r.beta;
                j["rows"].push_back(row);
            }
        write_json(out, j);
    } else {
        out << fmt::format("body_id,{}h_max,{},bound_nVW,ball_value,margin,holds,seed\n", wentzell ? "beta," : "",
                           wentzell ? "mu" : "sigma1");
        for (const auto& rows : per_body)
            for (const auto& r : rows)
                out << fmt::format("{},{}{},{},{},{},{},{},{}\n", r.body, wentzell ? num(r.beta) + "," : "",
                                   num(r.h_max), num(r.value), num(r.bound), num(r.ball), num(r.ball - r.value),
                                   r.ok ? 1 : 0, c.seed);
    }
    for (const auto& rows : per_body)
        for (const auto& r : rows) failures += r.ok ? 0 : 1;
    log << fmt::format("{}: {} rows, {} violations\n", wentzell ? "wentzell" : "steklov",
                       per_body.size() * (wentzell ? c.betas.size() : 1), failures);
    return failures == 0 ? 0 : 1;
}

// ---- reproduce ------------------------------------------------------------

using Table = std::vector<std::pair<std::string, double>>;

struct Check {
    std::string name;
    bool pass = false;
    std::string detail;
};

Polygon2 sampled_ellipse(double a, double b, std::size_t samples = 4096) {
    std::vector<Vec2> v(samples);
    for (std::size_t i = 0; i < samples; ++i) {
        const double t = 2.0 * kPi * static_cast<double>(i) / static_cast<double>(samples);
        v[i] = {a * std::cos(t), b * std::sin(t)};
    }
    return Polygon2::from_ccw(std::move(v));
}

std::vector<Check> reproduce_cardioid(Table& table) {
    const PolarLAJ r = polar_laj(PolarCurve::cardioid());
    const double gap = r.centered.weinstock_gap();
    const double expected = -4.0 * kPi / 75.0;
    table = {{"L", r.centered.L}, {"A", r.centered.A}, {"J", r.centered.J}, {"J_origin", r.J_origin},
             {"barycenter_x", r.barycenter.x}, {"gap", gap}, {"expected", expected}};
    return {{"cardioid pi J - L A about the boundary barycenter", std::abs(gap - expected) <= 1e-6,
             fmt::format("L = {:.12g}, A = {:.12g}, J = {:.12g}, gap = {:.12g}, expected -4pi/75 = {:.12g}",
                         r.centered.L, r.centered.A, r.centered.J, gap, expected)}};
}

std::vector<Check> reproduce_polygon_gamma(const ExperimentConfig& c, Table& table) {
    std::vector<Check> checks;
    const std::vector<double> gammas = c.gammas.empty() ? std::vector<double>{0.5} : c.gammas;
    for (double gamma : gammas) {
        const double disk = lambda_gamma_disk(gamma);
        table.emplace_back(fmt::format("lambda_gamma_disk[{}]", gamma), disk);
        for (int k : c.ks) {
            const double v = lambda_gamma(Body{regular_polygon(k).polygon}, gamma);
            table.emplace_back(fmt::format("lambda_gamma[{};{}]", gamma, k), v);
            checks.push_back({fmt::format("gamma {} k {}: lambda_gamma(polygon) < lambda_gamma(disk)", gamma, k),
                              v < disk, fmt::format("{:.15g} vs {:.15g}, diff {:.3e}", v, disk, v - disk)});
        }
        if (c.ks.size() >= 2) {
            const GammaAsymptotics a = lambda_gamma_asymptotics(gamma, c.ks);
            const double expected = -gamma / 6.0;
            table.emplace_back(fmt::format("fitted_coefficient[{}]", gamma), a.fitted_coefficient);
            checks.push_back({fmt::format("gamma {}: asymptotic coefficient", gamma),
                              std::abs(a.fitted_coefficient - expected) <= 0.05 * std::abs(expected),
                              fmt::format("fitted {:.6g}, expected {:.6g}", a.fitted_coefficient, expected)});
        }
    }
    return checks;
}

std::vector<Check> reproduce_ellipse_excess(Table& table) {
    const double thin = 0.3;
    const FunctionalReport a = functional_report(Body{sampled_ellipse(thin, 1.0 / thin)});
    const FunctionalReport b = functional_report(Body{sampled_ellipse(1.1, 0.9)});
    table = {{"excess[0.3;3.33]", a.excess}, {"excess[1.1;0.9]", b.excess}};
    return {{"ellipse (0.3, 1/0.3) has negative excess", a.excess < 0.0, fmt::format("E = {:.10g}", a.excess)},
            {"ellipse (1.1, 0.9) has positive excess", b.excess > 0.0, fmt::format("E = {:.10g}", b.excess)}};
}

std::vector<Check> reproduce_imcf_descent(const ExperimentConfig& c, Table& table) {
    const SupportBody2 seed = SupportBody2::ellipse(0.5, 2.0);
    const double horizon = std::min(c.horizon, 1.0);
    const FlowState state = imcf_evolve(seed, horizon, c.record_step);
    const FlowDiagnostics d = flow_diagnostics(state);
    const ShapeDerivative rate = shape_derivative(seed, inverse_curvature(seed));
    double perimeter_err = 0.0;
    const double p0 = state.history.front().perimeter;
    for (const auto& s : state.history)
        perimeter_err = std::max(perimeter_err, std::abs(s.perimeter / (p0 * std::exp(s.t)) - 1.0));
    const SupportBody2 split = imcf_advance(imcf_advance(seed, 0.3), 0.7);
    const SupportBody2 whole = imcf_advance(seed, 1.0);
    const double semigroup = coefficient_distance(split, whole);
    const auto& h = state.history;
    table = {{"excess_0", h.front().excess}, {"lambda_rate_0", rate.value}, {"lambda_0", h.front().lambda},
             {"lambda_T", h.back().lambda}, {"perimeter_error", perimeter_err}, {"semigroup_error", semigroup}};
    return {{"seed ellipse (0.5, 2) has negative excess", h.front().excess < 0.0,
             fmt::format("E(0) = {:.10g}", h.front().excess)},
            {"d lambda / dt < 0 at t = 0 (phi = 1/H)", rate.value < 0.0, fmt::format("{:.10g}", rate.value)},
            {"lambda nonincreasing on recorded samples", d.lambda_nonincreasing,
             fmt::format("lambda {:.10g} -> {:.10g} over [0, {}]", h.front().lambda, h.back().lambda, horizon)},
            {"P(t) = P(0) e^t", perimeter_err <= 1e-12, fmt::format("max rel err {:.3e}", perimeter_err)},
            {"semigroup evolve(0.3) then evolve(0.7) = evolve(1)", semigroup <= 1e-14,
             fmt::format("max rel diff {:.3e}", semigroup)}};
}

std::vector<Check> reproduce_weinstock(const ExperimentConfig& c, unsigned jobs, Table& table) {
    std::vector<Check> checks;
    const int level = c.refinements;
    const SpectrumResult disk = steklov_spectrum(mesh_disk(1.0, std::max(level, 4)));
    checks.push_back({"disk sigma_1 = 1 within 1%", std::abs(disk.sigma_1 - 1.0) <= 0.01,
                      fmt::format("sigma_1 = {:.10g}", disk.sigma_1)});
    const auto square = Polygon2::from_ccw({{-1, -1}, {1, -1}, {1, 1}, {-1, 1}});
    const WeinstockReport sq = weinstock_verdict(square, level);
    checks.push_back({"square side 2: sigma_1 < pi/4", sq.fine.sigma_1 < kPi / 4.0 && sq.ok(),
                      fmt::format("sigma_1 = {:.10g}, extrapolated {:.10g}, pi/4 = {:.10g}", sq.fine.sigma_1,
                                  sq.sigma_extrapolated, kPi / 4.0)});
    const std::size_t suite = c.count > 1 ? c.count : 50;
    auto reports = parallel_map(suite, jobs, [&](std::size_t i) {
        auto rng = sweep_rng(c.seed, i);
        return weinstock_verdict(random_convex_polygon(rng, 12), level);
    });
    std::size_t bad = 0;
    double worst = -1e300;
    for (const auto& r : reports) {
        bad += r.ok() ? 0 : 1;
        worst = std::max(worst, r.fine.sigma_1 / r.ball_value);
    }
    table = {{"disk_sigma_1", disk.sigma_1}, {"square_sigma_1", sq.fine.sigma_1},
             {"square_sigma_extrapolated", sq.sigma_extrapolated}, {"suite_failures", double(bad)},
             {"suite_max_sigma_P_over_2pi", worst}};
    checks.push_back({fmt::format("random 12-gon suite ({} bodies): sigma_1 <= 2pi/P and chain links", suite),
                      bad == 0, fmt::format("{} failures, max sigma_1 P / 2pi = {:.8g}", bad, worst)});
    return checks;
}

std::vector<Check> reproduce_wentzell_ball(const ExperimentConfig& c, Table& table) {
    std::vector<Check> checks;
    const Mesh mesh = mesh_disk(1.0, std::max(c.refinements, 5));
    for (double beta : {0.1, 0.5, 1.0}) {
        const SpectrumResult s = wentzell_spectrum(mesh, beta, 2);
        table.emplace_back(fmt::format("mu[{}]", beta), s.sigma_1);
        checks.push_back({fmt::format("mu(B1, {}) = 1 + beta within 1%", beta),
                          std::abs(s.sigma_1 / (1.0 + beta) - 1.0) <= 0.01,
                          fmt::format("mu = {:.10g}, expected {:.10g}", s.sigma_1, 1.0 + beta)});
    }
    return checks;
}

std::vector<Check> reproduce_brock(const ExperimentConfig& c, unsigned jobs, Table& table) {
    const std::size_t count = c.count > 1 ? c.count : 1000;
    const double ball = brock_ball_value(2);
    auto ratios = parallel_map(count, jobs, [&](std::size_t i) {
        return brock_ratio(normalize(random_body("polygon2", c.seed, i)));
    });
    const double worst = *std::min_element(ratios.begin(), ratios.end());
    table = {{"min_ratio", worst}, {"ball_value", ball}};
    return {{fmt::format("W / V^(3/2) >= 2/sqrt(pi) over {} random polygons", count),
             worst >= ball - kVerdictTolerance, fmt::format("min ratio {:.12g}, ball {:.12g}", worst, ball)}};
}

int run_reproduce(const ExperimentConfig& c, std::ostream& out, std::ostream& log, unsigned jobs) {
    std::vector<Check> checks;
    Table table;
    const std::string& t = c.target;
    if (t == "cardioid") checks = reproduce_cardioid(table);
    else if (t == "polygon-gamma") checks = reproduce_polygon_gamma(c, table);
    else if (t == "ellipse-excess") checks = reproduce_ellipse_excess(table);
    else if (t == "imcf-descent") checks = reproduce_imcf_descent(c, table);
    else if (t == "weinstock") checks = reproduce_weinstock(c, jobs, table);
    else if (t == "wentzell-ball") checks = reproduce_wentzell_ball(c, table);
    else if (t == "brock") checks = reproduce_brock(c, jobs, table);
    else throw Error(ErrorKind::UnknownTarget, "unknown reproduce target '" + t + "'");
    const bool ok = std::all_of(checks.begin(), checks.end(), [](const Check& x) { return x.pass; });
    if (c.format == Format::Json) {
        json j{{"target", t}, {"seed", c.seed}, {"pass", ok}, {"checks", json::array()}, {"values", json::object()}};
        for (const auto& x : checks) j["checks"].push_back({{"name", x.name}, {"pass", x.pass}, {"detail", x.detail}});
        for (const auto& [name, value] : table) j["values"][name] = value;
        write_json(out, j);
    } else {
        out << "quantity,value\n";
        for (const auto& [name, value] : table) out << name << ',' << num(value) << '\n';
    }
    for (const auto& x : checks) log << fmt::format("{} {}: {}\n", x.pass ? "PASS" : "FAIL", x.name, x.detail);
    log << fmt::format("{}: {}\n", t, ok ? "PASS" : "FAIL");
    return ok ? 0 : 1;
}

}  // namespace

int run(const ExperimentConfig& config, std::ostream& out, std::ostream& log) {
    const unsigned jobs = resolve_jobs(config.jobs);
    switch (config.command) {
        case Command::Functionals: return run_functionals(config, out, jobs);
        case Command::VerifyMain: return run_verify_main(config, out, log, jobs);
        case Command::FlowImcf: return run_flow(config, out, log);
        case Command::Crop: return run_crop(config, out, log, jobs);
        case Command::Steklov: return run_spectral(config, out, log, jobs, false);
        case Command::Wentzell: return run_spectral(config, out, log, jobs, true);
        case Command::Reproduce: return run_reproduce(config, out, log, jobs);
    }
    return 2;
}

namespace {

void add_input(CLI::App* sub, ExperimentConfig& c) {
    sub->add_option_function<std::string>("--body", [&c](const std::string& p) { c.body_path = p; },
                                          "Body JSON file");
    sub->add_option_function<std::string>("--generate", [&c](const std::string& k) { c.generator = k; },
                                          "Random generator kind: polygon2, polytope3, support2");
    sub->add_option("--count", c.count, "Number of generated bodies");
}

}  // namespace

int main(int argc, char** argv) {
    ExperimentConfig c;
    std::string format = "csv";
    CLI::App app{"Numerical checks of the Weinstock-type isoperimetric inequalities"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--seed", c.seed, "Random seed");
    app.add_option_function<std::string>("--out", [&c](const std::string& p) { c.out = p; }, "Output file");
    app.add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--jobs", c.jobs, "Worker threads (env WEINSTOCK_LAB_JOBS)");

    auto* functionals = app.add_subcommand("functionals", "V, P, W, lambda, excess and friends");
    add_input(functionals, c);
    functionals->add_option("--gamma", c.gammas, "lambda_gamma exponents (2D)")->delimiter(',');

    auto* verify = app.add_subcommand("verify-main", "lambda >= omega_n^(-2/n) sweep");
    add_input(verify, c);

    auto* flow = app.add_subcommand("flow-imcf", "Inverse mean curvature flow of a support body");
    add_input(flow, c);
    flow->add_option_function<std::vector<double>>("--ellipse", [&c](const std::vector<double>& v) { c.ellipse = v; },
                                                   "Semi-axes a,b")->delimiter(',');
    flow->add_option("--T", c.horizon, "Flow horizon");
    flow->add_option("--dt", c.record_step, "Recording interval");

    auto* cropc = app.add_subcommand("crop", "Hyperplane cut toward x_max");
    add_input(cropc, c);
    cropc->add_option("--eps", c.eps, "Cut depths")->delimiter(',');
    cropc->add_option_function<std::vector<double>>("--direction",
                                                    [&c](const std::vector<double>& v) { c.direction = v; },
                                                    "Override the cut normal")->delimiter(',');
    cropc->add_flag("--descent", c.descent, "Also run the descent sweep");

    auto* stek = app.add_subcommand("steklov", "First Steklov eigenvalue and Weinstock verdict");
    auto* went = app.add_subcommand("wentzell", "First Wentzell eigenvalue against the bounds");
    for (auto* sub : {stek, went}) {
        add_input(sub, c);
        sub->add_flag("--disk", c.disk, "Unit disk with a curved-boundary mesh");
        sub->add_option("--refine", c.refinements, "Uniform refinement rounds");
        sub->add_option("--k", c.eigen_count, "Eigenvalues to compute");
        sub->add_option_function<std::string>("--csv", [&c](const std::string& p) { c.out = p; }, "Output CSV");
    }
    went->add_option("--beta", c.betas, "Boundary stiffness (list)")->delimiter(',');

    auto* repro = app.add_subcommand("reproduce", "Canonical experiments with pass/fail");
    repro->add_option("target", c.target,
                      "cardioid | polygon-gamma | ellipse-excess | imcf-descent | weinstock | wentzell-ball | brock")
        ->required();
    repro->add_option("--gamma", c.gammas, "Exponents for polygon-gamma")->delimiter(',');
    repro->add_option("--k", c.ks, "Polygon sizes for polygon-gamma")->delimiter(',');
    repro->add_option("--count", c.count, "Suite size for weinstock and brock");
    repro->add_option("--refine", c.refinements, "Refinement for weinstock and wentzell-ball");
    repro->add_option("--T", c.horizon, "Horizon for imcf-descent (at most 1)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    c.format = format == "json" ? Format::Json : Format::Csv;
    const std::pair<CLI::App*, Command> table[] = {
        {functionals, Command::Functionals}, {verify, Command::VerifyMain}, {flow, Command::FlowImcf},
        {cropc, Command::Crop}, {stek, Command::Steklov}, {went, Command::Wentzell}, {repro, Command::Reproduce}};
    for (const auto& [sub, cmd] : table)
        if (sub->parsed()) c.command = cmd;

    try {
        if (c.out) {
            std::ofstream file(*c.out);
            if (!file) throw Error(ErrorKind::IoError, "cannot open " + *c.out);
            const int code = run(c, file, std::cerr);
            file.flush();
            if (!file) throw Error(ErrorKind::IoError, "write failed for " + *c.out);
            return code;
        }
        return run(c, std::cout, std::cerr);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_code(e.kind());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    }
}

}  // namespace wlab::cli
