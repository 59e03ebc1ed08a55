#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace wlab::cli {

enum class Command { Functionals, VerifyMain, FlowImcf, Crop, Steklov, Wentzell, Reproduce };
enum class Format { Csv, Json };

struct ExperimentConfig {
    Command command = Command::Functionals;
    // input: exactly one of body_path / generator (flow-imcf also takes ellipse,
    // steklov and wentzell also take disk)
    std::optional<std::string> body_path;
    std::optional<std::string> generator;
    std::size_t count = 1;
    std::optional<std::vector<double>> ellipse;
    bool disk = false;
    std::uint64_t seed = 0;

    std::vector<double> eps{0.1, 0.05, 0.025, 0.0125};
    std::optional<std::vector<double>> direction;
    bool descent = false;
    double horizon = 2.0;
    double record_step = 0.01;
    std::vector<double> betas{0.5};
    int refinements = 3;
    std::size_t eigen_count = 6;
    std::vector<double> gammas;
    std::vector<int> ks{64, 128, 256, 512};
    std::string target;

    std::optional<std::string> out;
    Format format = Format::Csv;
    int jobs = 0;
};

/// Runs one experiment, writing the artifact to `out` and a human summary to
/// `log`. Returns 0, or 1 when any inequality verdict fails. Module errors
/// propagate as wlab::Error.
int run(const ExperimentConfig& config, std::ostream& out, std::ostream& log);

/// Parses argv and runs; maps errors to exit codes 2 (input) and 3 (numeric).
int main(int argc, char** argv);

}  // namespace wlab::cli
