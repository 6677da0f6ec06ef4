#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

namespace orlicz::cli {

/// One run of one subcommand. Every field has a default, so a config file may
/// list only what it changes. Levels and ks left empty pick family-dependent
/// defaults at run time.
struct ExperimentConfig {
    std::string command;
    std::string family = "power:2";
    std::string sequence;
    std::string objective = "modular";
    std::string center;
    double radius = 1.0;
    double epsilon = 0.1;
    double delta_lo = 1.0;
    double eps_hi = 2.0;
    std::size_t dims = 2;
    double step = 0.05;
    double half_width = 0.0;  // 0 = radius
    std::uint64_t seed = 1;
    double tail_tol = 1e-3;
    double move_tol = 1e-6;
    double norm_tol = 1e-12;
    double wpmc_tol = 1e-2;
    int budget = 50;
    std::vector<int> ks;
    std::vector<double> levels;
    std::size_t samples = 2000;
    std::string probe = "l1";
    double p = 2.0;
    int k_max = 10;
    int scale_from = -1;
    int scale_to = -6;
    std::string mode = "both";
    std::string xbar;
    std::string weights_file;
    std::string out_json;
    std::string out_csv;

    friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

nlohmann::json to_json(const ExperimentConfig& c);
/// Unknown keys are rejected; missing keys keep their defaults.
ExperimentConfig config_from_json(const nlohmann::json& j);
/// Throws DomainError when a tolerance or size is out of range.
void validate(const ExperimentConfig& c);

enum ExitCode : int { kOk = 0, kInconclusive = 1, kInvalidInput = 2 };

/// Runs the command line `args` (without the program name). The report goes to
/// `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace orlicz::cli
