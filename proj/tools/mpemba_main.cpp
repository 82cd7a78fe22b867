#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mpemba/commands.hpp"

using mpemba::cli::RunConfig;

int main(int argc, char** argv) {
    CLI::App app{"Driven-dissipative qubit: relaxation spectra, Mpemba scans, and protocol emulation"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string engine_name = "closed";
    std::string grid_text;
    std::string format_name = "csv";

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--gamma-f", cfg.params.gamma_prime, "final bath coupling gamma_f' = gamma_f/omega");
        sub->add_option("--gamma-i", cfg.gamma_i,
                        "initial coupling(s); demo-mpemba takes <cold> <hot>")
            ->expected(1, 2);
        sub->add_option("--alpha", cfg.params.alpha, "decay fraction in [0, 1]");
        sub->add_option("--omega", cfg.params.omega, "drive rate (unit conversion only)")
            ->default_val(1.0);
        sub->add_option("--engine", engine_name, "evolution engine: closed, ode, trotter")
            ->check(CLI::IsMember({"closed", "closed_form", "ode", "trotter"}));
        sub->add_option("--steps", cfg.steps, "trotter steps / output sample intervals");
        sub->add_option("--total-time", cfg.total_time, "evolution span in units of 1/gamma_f");
        sub->add_option("--shots", cfg.shots, "tomography shots per axis (0 = exact states)");
        sub->add_option("--seed", cfg.seed, "RNG seed for tomography");
        sub->add_option("--smooth-window", cfg.smooth_window, "polynomial smoothing window (odd, 0 = off)");
        sub->add_option("--smooth-degree", cfg.smooth_degree, "polynomial smoothing degree");
        sub->add_option("--grid", grid_text, "scan grid start:stop:count:log|lin");
        sub->add_option("--out", cfg.out, "output path (prefix for demo-mpemba)");
        sub->add_option("--format", format_name, "output format")
            ->check(CLI::IsMember({"csv", "json"}));
    };

    add_common(app.add_subcommand("locus", "steady-state locus over a gamma' grid"));
    add_common(app.add_subcommand("spectrum", "relaxation rates and strong-Mpemba classification"));
    add_common(app.add_subcommand("evolve", "single relaxation trajectory from r*(gamma_i)"));
    add_common(app.add_subcommand("demo-mpemba",
                                  "cold/hot relaxation race: distances, difference, crossing report"));
    add_common(app.add_subcommand("scan-aminus", "slow-mode coefficient a_- over initial couplings"));
    add_common(app.add_subcommand("scan-sme",
                                  "crossing time and post-crossing separation vs cold coupling"));
    add_common(app.add_subcommand("verify", "run the model invariant suite (exit 4 on failure)"));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    cfg.subcommand = app.get_subcommands().front()->get_name();
    try {
        cfg.engine = mpemba::engine_from_string(engine_name);
        if (!grid_text.empty()) cfg.grid = mpemba::cli::parse_grid(grid_text);
        cfg.format = format_name == "json" ? mpemba::cli::Format::json : mpemba::cli::Format::csv;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    const bool needs_out = cfg.subcommand != "spectrum" && cfg.subcommand != "verify";
    if (needs_out && cfg.out.empty()) {
        std::cerr << "error: --out is required for " << cfg.subcommand << "\n";
        return 2;
    }

    return mpemba::cli::run(cfg);
}
