#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mpemba/evolution.hpp"
#include "mpemba/model.hpp"

namespace mpemba::cli {

inline constexpr const char* kToolName = "mpemba";
inline constexpr const char* kToolVersion = "0.1.0";

/// Scan grid given as "start:stop:count:log|lin".
struct GridSpec {
    double start = 0.0;
    double stop = 0.0;
    int count = 0;
    bool log = false;
};

GridSpec parse_grid(const std::string& text);
std::vector<double> make_grid(const GridSpec& g);

enum class Format { csv, json };

struct RunConfig {
    std::string subcommand;
    ModelParams params;                  // gamma_prime plays the role of gamma_f'
    std::vector<double> gamma_i;         // initial coupling(s); meaning depends on subcommand
    Engine engine = Engine::closed_form;
    int steps = 200;                     // trotter steps; sample intervals otherwise
    double total_time = 4.0;             // units of 1/gamma_f
    int shots = 0;                       // 0 disables tomography
    std::uint64_t seed = 1;
    int smooth_window = 0;               // 0 disables smoothing
    int smooth_degree = 3;
    std::optional<GridSpec> grid;
    std::string out;                     // path, or path prefix for demo-mpemba
    Format format = Format::csv;
};

// Exit codes: 0 success, 2 validation error, 3 numerical failure,
// 4 verification-suite failure. Commands throw std::invalid_argument for
// validation problems and runtime errors for numerical ones; run() maps them.
int cmd_locus(const RunConfig& cfg);
int cmd_spectrum(const RunConfig& cfg);
int cmd_evolve(const RunConfig& cfg);
int cmd_demo_mpemba(const RunConfig& cfg);
int cmd_scan_aminus(const RunConfig& cfg);
int cmd_scan_sme(const RunConfig& cfg);
int cmd_verify(const RunConfig& cfg);

/// Dispatches cfg.subcommand and maps exceptions to exit codes.
int run(const RunConfig& cfg);

}  // namespace mpemba::cli
