#include "mpemba/commands.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

#include <Eigen/Dense>
#include <json.hpp>

#include "mpemba/analysis.hpp"
#include "mpemba/experiment.hpp"
#include "mpemba/parallel.hpp"
#include "mpemba/rng.hpp"
#include "mpemba/spectral.hpp"

namespace mpemba::cli {

using nlohmann::json;

GridSpec parse_grid(const std::string& text) {
    GridSpec g;
    std::istringstream in(text);
    std::string part;
    std::vector<std::string> parts;
    while (std::getline(in, part, ':')) parts.push_back(part);
    if (parts.size() != 4) {
        throw std::invalid_argument("grid must be start:stop:count:log|lin, got '" + text + "'");
    }
    try {
        g.start = std::stod(parts[0]);
        g.stop = std::stod(parts[1]);
        g.count = std::stoi(parts[2]);
    } catch (const std::exception&) {
        throw std::invalid_argument("grid has non-numeric fields: '" + text + "'");
    }
    if (parts[3] == "log") {
        g.log = true;
    } else if (parts[3] == "lin") {
        g.log = false;
    } else {
        throw std::invalid_argument("grid scale must be log or lin, got '" + parts[3] + "'");
    }
    if (g.count < 0) throw std::invalid_argument("grid count must be >= 0");
    if (g.log && (g.start <= 0.0 || g.stop <= 0.0)) {
        throw std::invalid_argument("log grid needs positive bounds");
    }
    return g;
}

std::vector<double> make_grid(const GridSpec& g) {
    std::vector<double> out;
    out.reserve(g.count);
    if (g.count == 0) return out;
    if (g.count == 1) {
        out.push_back(g.start);
        return out;
    }
    for (int i = 0; i < g.count; ++i) {
        const double f = static_cast<double>(i) / (g.count - 1);
        out.push_back(g.log ? g.start * std::pow(g.stop / g.start, f)
                            : g.start + f * (g.stop - g.start));
    }
    return out;
}

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

json params_json(const RunConfig& cfg) {
    json j{{"omega", cfg.params.omega},
           {"gamma_f_prime", cfg.params.gamma_prime},
           {"alpha", cfg.params.alpha}};
    if (!cfg.gamma_i.empty()) j["gamma_i_prime"] = cfg.gamma_i;
    return j;
}

json base_metadata(const RunConfig& cfg) {
    json meta{{"tool", kToolName},
              {"version", kToolVersion},
              {"subcommand", cfg.subcommand},
              {"params", params_json(cfg)},
              {"engine", to_string(cfg.engine)},
              {"seed", cfg.seed},
              {"time_unit", cfg.params.gamma_prime > 0.0 ? "1/gamma_f" : "1/omega"},
              {"gamma_f_abs", cfg.params.gamma_prime * cfg.params.omega}};
    if (cfg.grid) {
        meta["grid"] = {{"start", cfg.grid->start},
                        {"stop", cfg.grid->stop},
                        {"count", cfg.grid->count},
                        {"scale", cfg.grid->log ? "log" : "lin"}};
    }
    if (cfg.shots > 0) meta["shots"] = cfg.shots;
    if (cfg.smooth_window > 0) {
        meta["smoothing"] = {{"window", cfg.smooth_window}, {"degree", cfg.smooth_degree}};
    }
    return meta;
}

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot open output file '" + path + "'");
    return out;
}

/// Tabular output: CSV with '#'-prefixed JSON metadata header lines, or a
/// single JSON document with the same content.
class Table {
public:
    explicit Table(std::vector<std::string> columns) : columns_(std::move(columns)) {}

    void add_row(std::initializer_list<double> row) { rows_.emplace_back(row); }
    void add_row(const std::vector<double>& row) { rows_.push_back(row); }

    void write(const std::string& path, const json& metadata, Format format) const {
        std::ofstream out = open_output(path);
        if (format == Format::csv) {
            out << "# " << metadata.dump() << "\n";
            for (std::size_t c = 0; c < columns_.size(); ++c) {
                out << (c ? "," : "") << columns_[c];
            }
            out << "\n";
            for (const auto& row : rows_) {
                for (std::size_t c = 0; c < row.size(); ++c) {
                    out << (c ? "," : "") << fmt(row[c]);
                }
                out << "\n";
            }
        } else {
            json doc{{"metadata", metadata}};
            json data = json::array();
            for (const auto& row : rows_) {
                json r;
                for (std::size_t c = 0; c < row.size(); ++c) {
                    if (std::isnan(row[c])) {
                        r[columns_[c]] = nullptr;
                    } else {
                        r[columns_[c]] = row[c];
                    }
                }
                data.push_back(std::move(r));
            }
            doc["data"] = std::move(data);
            out << doc.dump(2) << "\n";
        }
    }

private:
    std::vector<std::string> columns_;
    std::vector<std::vector<double>> rows_;
};

std::vector<double> time_grid(const RunConfig& cfg) {
    const int n = std::max(1, cfg.steps);
    std::vector<double> ts;
    ts.reserve(n + 1);
    for (int i = 0; i <= n; ++i) ts.push_back(cfg.total_time * i / n);
    return ts;
}

Trajectory run_engine(const RunConfig& cfg, double gamma_i) {
    const PreparedEnsemble prep = decompose_steady_state(gamma_i, cfg.params.alpha);
    const std::vector<double> ts = time_grid(cfg);
    const TrotterSchedule sched{cfg.steps, cfg.total_time};
    return evolve_prepared(prep, cfg.params, ts, cfg.engine,
                           cfg.engine == Engine::trotter ? std::optional(sched) : std::nullopt);
}

std::vector<std::pair<double, double>> to_series(const DistanceSeries& d) {
    std::vector<std::pair<double, double>> s;
    s.reserve(d.times.size());
    for (std::size_t i = 0; i < d.times.size(); ++i) s.emplace_back(d.times[i], d.d_ss[i]);
    return s;
}

}  // namespace

int cmd_locus(const RunConfig& cfg) {
    const GridSpec spec = cfg.grid.value_or(GridSpec{0.01, 100.0, 50, true});
    const std::vector<double> grid = make_grid(spec);
    const std::vector<SteadyState> locus = locus_sample(cfg.params.alpha, grid);

    Table table({"gamma_prime", "y", "z", "p", "theta"});
    for (std::size_t i = 0; i < locus.size(); ++i) {
        const auto& ss = locus[i];
        table.add_row({grid[i], ss.bloch.y, ss.bloch.z, ss.p, ss.theta});
    }
    RunConfig meta_cfg = cfg;
    meta_cfg.grid = spec;
    table.write(cfg.out, base_metadata(meta_cfg), cfg.format);
    return 0;
}

int cmd_spectrum(const RunConfig& cfg) {
    const SpectralData s = spectrum(cfg.params);
    const MpembaClassification cls = classify_mpemba(cfg.params.gamma_prime, cfg.params.alpha);

    json doc{{"metadata", base_metadata(cfg)},
             {"lambda_plus", {{"re", s.lambda_plus.real()}, {"im", s.lambda_plus.imag()}}},
             {"lambda_minus", {{"re", s.lambda_minus.real()}, {"im", s.lambda_minus.imag()}}},
             {"lambda_x", s.lambda_x},
             {"discriminant", s.discriminant.real()},
             {"complex_modes", s.complex_modes()},
             {"gamma_b_prime", std::isinf(cls.gamma_b_prime) ? json(nullptr) : json(cls.gamma_b_prime)},
             {"strong_possible", cls.strong_possible},
             {"gamma_i_sme_prime",
              cls.gamma_i_sme_prime ? json(*cls.gamma_i_sme_prime) : json(nullptr)}};

    if (cfg.out.empty()) {
        std::cout << doc.dump(2) << "\n";
    } else {
        open_output(cfg.out) << doc.dump(2) << "\n";
    }
    return 0;
}

int cmd_evolve(const RunConfig& cfg) {
    if (cfg.gamma_i.size() != 1) {
        throw std::invalid_argument("evolve needs exactly one --gamma-i (initial steady state)");
    }
    const Trajectory traj = run_engine(cfg, cfg.gamma_i[0]);
    const DistanceSeries d = distance_series(traj, cfg.params);

    Table table({"t", "x", "y", "z", "d_ss"});
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        const auto& r = traj.states[i];
        table.add_row({traj.times[i], r.x, r.y, r.z, d.d_ss[i]});
    }
    table.write(cfg.out, base_metadata(cfg), cfg.format);
    return 0;
}

int cmd_demo_mpemba(const RunConfig& cfg) {
    RunConfig local = cfg;
    if (local.gamma_i.empty()) {
        // Default to the strong-Mpemba pair against the canonical hot state.
        const MpembaClassification cls = classify_mpemba(local.params.gamma_prime, local.params.alpha);
        if (!cls.gamma_i_sme_prime) {
            throw std::invalid_argument("no strong-Mpemba point here; pass --gamma-i <cold> <hot>");
        }
        local.gamma_i = {*cls.gamma_i_sme_prime, 0.77};
    }
    if (local.gamma_i.size() != 2) {
        throw std::invalid_argument("demo-mpemba needs --gamma-i <cold> <hot>");
    }
    const double gi_cold = local.gamma_i[0];
    const double gi_hot = local.gamma_i[1];

    const Trajectory traj_cold = run_engine(local, gi_cold);
    const Trajectory traj_hot = run_engine(local, gi_hot);
    DistanceSeries d_cold = distance_series(traj_cold, local.params);
    DistanceSeries d_hot = distance_series(traj_hot, local.params);
    d_cold.gamma_i_prime = gi_cold;
    d_hot.gamma_i_prime = gi_hot;

    const bool smooth = local.smooth_window > 0;
    DistanceSeries d_cold_s = d_cold, d_hot_s = d_hot;
    if (smooth) {
        auto sc = polynomial_smooth(to_series(d_cold), local.smooth_window, local.smooth_degree);
        auto sh = polynomial_smooth(to_series(d_hot), local.smooth_window, local.smooth_degree);
        for (std::size_t i = 0; i < sc.size(); ++i) {
            d_cold_s.d_ss[i] = sc[i].second;
            d_hot_s.d_ss[i] = sh[i].second;
        }
    }

    const bool tomo = local.shots > 0;
    std::vector<TomographyRecord> rec_cold, rec_hot;
    if (tomo) {
        rec_cold = simulate_tomography(traj_cold, local.shots, local.seed);
        rec_hot = simulate_tomography(traj_hot, local.shots, local.seed + 1);
    }
    const SteadyState ss_final = steady_state(local.params);

    auto per_system = [&](const std::string& path, const Trajectory& traj, const DistanceSeries& d,
                          const DistanceSeries& ds, const std::vector<TomographyRecord>& rec,
                          double gi) {
        std::vector<std::string> cols{"t", "x", "y", "z", "d_ss"};
        if (smooth) cols.push_back("d_ss_smooth");
        if (tomo) {
            for (const char* c : {"mx", "my", "mz", "sx", "sy", "sz", "d_ss_tomo", "d_ss_tomo_2sigma"})
                cols.push_back(c);
        }
        Table table(cols);
        for (std::size_t i = 0; i < traj.times.size(); ++i) {
            std::vector<double> row{traj.times[i], traj.states[i].x, traj.states[i].y,
                                    traj.states[i].z, d.d_ss[i]};
            if (smooth) row.push_back(ds.d_ss[i]);
            if (tomo) {
                const auto& r = rec[i];
                const double dx = r.mean.x - ss_final.bloch.x;
                const double dy = r.mean.y - ss_final.bloch.y;
                const double dz = r.mean.z - ss_final.bloch.z;
                const double dist = std::sqrt(dx * dx + dy * dy + dz * dz);
                // First-order error propagation through the norm.
                double var = 0.0;
                if (dist > 0.0) {
                    var = (dx * dx * r.sigma[0] * r.sigma[0] + dy * dy * r.sigma[1] * r.sigma[1] +
                           dz * dz * r.sigma[2] * r.sigma[2]) /
                          (dist * dist);
                }
                row.insert(row.end(), {r.mean.x, r.mean.y, r.mean.z, r.sigma[0], r.sigma[1],
                                       r.sigma[2], dist, 2.0 * std::sqrt(var)});
            }
            table.add_row(row);
        }
        RunConfig meta_cfg = local;
        meta_cfg.gamma_i = {gi};
        json meta = base_metadata(meta_cfg);
        meta["role"] = gi == gi_cold ? "cold" : "hot";
        table.write(path, meta, local.format);
    };

    per_system(local.out + "_cold.csv", traj_cold, d_cold, d_cold_s, rec_cold, gi_cold);
    per_system(local.out + "_hot.csv", traj_hot, d_hot, d_hot_s, rec_hot, gi_hot);

    {
        std::vector<std::string> cols{"t", "delta"};
        if (smooth) cols.push_back("delta_smooth");
        Table table(cols);
        for (std::size_t i = 0; i < d_cold.times.size(); ++i) {
            std::vector<double> row{d_cold.times[i], d_cold.d_ss[i] - d_hot.d_ss[i]};
            if (smooth) row.push_back(d_cold_s.d_ss[i] - d_hot_s.d_ss[i]);
            table.add_row(row);
        }
        json meta = base_metadata(local);
        meta["delta"] = "d_ss_cold - d_ss_hot";
        table.write(local.out + "_diff.csv", meta, local.format);
    }

    const CrossingReport rep = find_crossing(smooth ? d_cold_s : d_cold, smooth ? d_hot_s : d_hot);
    json cross{{"metadata", base_metadata(local)},
               {"series", smooth ? "smoothed" : "raw"},
               {"t_cross", rep.t_cross ? json(*rep.t_cross) : json(nullptr)},
               {"sign_before", rep.sign_before},
               {"sign_after", rep.sign_after},
               {"d_max_post", rep.d_max_post}};
    open_output(local.out + "_crossing.json") << cross.dump(2) << "\n";
    return 0;
}

int cmd_scan_aminus(const RunConfig& cfg) {
    const GridSpec spec =
        cfg.grid.value_or(GridSpec{1e-3, cfg.params.gamma_prime * 0.999, 200, true});
    const std::vector<double> grid = make_grid(spec);
    const AminusScan scan = a_minus_scan(cfg.params.gamma_prime, cfg.params.alpha, grid);

    Table table({"gamma_i_prime", "a_minus"});
    for (const auto& pt : scan.points) table.add_row({pt.gamma_i_prime, pt.a_minus});

    RunConfig meta_cfg = cfg;
    meta_cfg.grid = spec;
    json meta = base_metadata(meta_cfg);
    meta["zeros"] = scan.zeros;
    table.write(cfg.out, meta, cfg.format);
    return 0;
}

int cmd_scan_sme(const RunConfig& cfg) {
    const double hot = cfg.gamma_i.empty() ? 0.77 : cfg.gamma_i[0];
    const GridSpec spec = cfg.grid.value_or(GridSpec{1e-3, hot * 0.999, 200, true});
    const std::vector<double> grid = make_grid(spec);
    const auto scan =
        sme_optimality_scan(cfg.params.gamma_prime, cfg.params.alpha, hot, grid, cfg.total_time);

    Table table({"gamma_i_prime", "t_cross", "d_max_post"});
    for (const auto& pt : scan) {
        table.add_row({pt.gamma_i_prime,
                       pt.t_cross ? *pt.t_cross : std::numeric_limits<double>::quiet_NaN(),
                       pt.d_max_post});
    }
    RunConfig meta_cfg = cfg;
    meta_cfg.grid = spec;
    meta_cfg.gamma_i = {hot};
    table.write(cfg.out, base_metadata(meta_cfg), cfg.format);
    return 0;
}

namespace {

struct Check {
    std::string name;
    bool pass;
    std::string detail;
};

// Numerical eigenvalues of the 2x2 drift, sorted by real part (fast first).
std::pair<std::complex<double>, std::complex<double>> numeric_eigen(const Eigen::Matrix2d& A) {
    const Eigen::EigenSolver<Eigen::Matrix2d> es(A);
    std::complex<double> a = es.eigenvalues()(0), b = es.eigenvalues()(1);
    if (a.real() > b.real()) std::swap(a, b);
    return {a, b};
}

std::vector<Check> invariant_suite(std::uint64_t seed) {
    std::vector<Check> checks;
    CounterRng rng(seed, 0x1237);

    auto random_params = [&] {
        return ModelParams{1.0, 0.05 + 30.0 * rng.next_uniform(), rng.next_uniform()};
    };
    auto random_bloch = [&] {
        // Uniform direction, radius < 1.
        const double u = 2.0 * rng.next_uniform() - 1.0;
        const double phi = 2.0 * M_PI * rng.next_uniform();
        const double r = 0.999 * std::cbrt(rng.next_uniform());
        const double s = std::sqrt(1.0 - u * u);
        return BlochState{r * s * std::cos(phi), r * s * std::sin(phi), r * u};
    };

    {
        double worst = 0.0;
        for (int k = 0; k < 200; ++k) {
            const ModelParams p = random_params();
            const DensityMatrix rho = bloch_to_density(random_bloch());
            const Eigen::Matrix4cd L = superoperator_matrix(p);
            const Eigen::Vector4cd v(rho.rho11(), rho.rho21(), rho.rho12(), rho.rho22());
            const Eigen::Vector4cd dv = L * v;
            worst = std::max(worst, std::abs((dv(0) + dv(3)).real()) + std::abs((dv(0) + dv(3)).imag()));
        }
        checks.push_back({"trace_preservation", worst < 1e-12, "max |d tr(rho)/dt| = " + fmt(worst)});
    }
    {
        double worst = 0.0;
        for (int k = 0; k < 200; ++k) {
            const ModelParams p = random_params();
            const BlochState r = random_bloch();
            const DensityMatrix rho = bloch_to_density(r);
            const Eigen::Matrix4cd L = superoperator_matrix(p);
            const Eigen::Vector4cd v(rho.rho11(), rho.rho21(), rho.rho12(), rho.rho22());
            const Eigen::Vector4cd dv = L * v;
            // Bloch velocity from the superoperator.
            const double dx = (dv(2) + dv(1)).real();
            const double dy = (std::complex<double>(0, 1) * (dv(2) - dv(1))).real();
            const double dz = (dv(0) - dv(3)).real();
            const BlochDrift drift = bloch_drift(p);
            const Eigen::Vector2d yz = drift.A * Eigen::Vector2d(r.y, r.z) + drift.b;
            worst = std::max({worst, std::abs(dx - drift.lambda_x * r.x), std::abs(dy - yz(0)),
                              std::abs(dz - yz(1))});
        }
        checks.push_back({"drift_superoperator_consistency", worst < 1e-12, "max dev = " + fmt(worst)});
    }
    {
        double worst = 0.0;
        for (int ia = 0; ia < 40; ++ia) {
            for (int ig = 0; ig < 40; ++ig) {
                const double alpha = (ia + 1) / 40.0;
                const double g = 0.05 * std::pow(2000.0, ig / 39.0);
                const ModelParams p{1.0, g, alpha};
                SpectralData s;
                try {
                    s = spectrum(p);
                } catch (const DegenerateSpectrumError&) {
                    continue;
                }
                const auto [lo, hi] = numeric_eigen(bloch_drift(p).A);
                // Compare as an unordered pair; a complex pair ties on the real part.
                const double direct = std::abs(s.lambda_plus - lo) + std::abs(s.lambda_minus - hi);
                const double swapped = std::abs(s.lambda_plus - hi) + std::abs(s.lambda_minus - lo);
                worst = std::max(worst, std::min(direct, swapped));
            }
        }
        checks.push_back({"eigenvalue_closed_form", worst < 1e-10, "max |closed - numeric| = " + fmt(worst)});
    }
    {
        double worst = 0.0;
        for (int ia = 0; ia < 30; ++ia) {
            for (int ig = 0; ig < 30; ++ig) {
                const double alpha = (ia + 1) / 30.0;
                const double g = 1e-3 * std::pow(1e6, ig / 29.0);
                const ModelParams p{1.0, g, alpha};
                worst = std::max(worst, steady_state_residual(p, steady_state(p)));
            }
        }
        checks.push_back({"steady_state_residual", worst < 1e-12, "max |A r* + b| = " + fmt(worst)});
    }
    {
        double worst = 0.0;
        for (int ia = 0; ia < 30; ++ia) {
            for (int ig = 0; ig < 30; ++ig) {
                const double alpha = (ia + 1) / 30.0;
                const double g = 1e-3 * std::pow(1e6, ig / 29.0);
                const SteadyState ss = steady_state(ModelParams{1.0, g, alpha});
                const double e1 = std::sqrt(2.0 / alpha) * ss.bloch.y;
                const double e2 = 2.0 * ss.bloch.z + 1.0;
                worst = std::max(worst, std::abs(e1 * e1 + e2 * e2 - 1.0));
            }
        }
        checks.push_back({"ellipse_identity", worst < 1e-10, "max |ellipse - 1| = " + fmt(worst)});
    }
    {
        double worst = 0.0;
        for (int k = 0; k < 5; ++k) {
            ModelParams p{1.0, 2.5 + 40.0 * rng.next_uniform(), 0.55 + 0.45 * rng.next_uniform()};
            if (std::abs((p.alpha - 0.5) * (p.alpha - 0.5) - 1.0 / (p.gamma_prime * p.gamma_prime)) <
                1e-6) {
                p.gamma_prime += 0.1;
            }
            const BlochState r0 = random_bloch();
            std::vector<double> ts;
            for (int i = 0; i <= 40; ++i) ts.push_back(10.0 * i / 40.0);
            const Trajectory a = evolve_closed_form(r0, p, ts);
            const Trajectory b = evolve_ode(r0, p, ts);
            for (std::size_t i = 0; i < ts.size(); ++i) {
                worst = std::max({worst, std::abs(a.states[i].x - b.states[i].x),
                                  std::abs(a.states[i].y - b.states[i].y),
                                  std::abs(a.states[i].z - b.states[i].z)});
            }
        }
        checks.push_back({"engine_agreement", worst < 1e-8, "max |closed - ode| = " + fmt(worst)});
    }
    {
        bool all = true;
        std::size_t cells = 0;
        for (int ia = 0; ia < 12 && all; ++ia) {
            const double alpha = 0.55 + 0.45 * ia / 11.0;
            const double gb = bifurcation_point(alpha);
            std::vector<double> gfs;
            for (int ig = 0; ig < 12; ++ig) {
                gfs.push_back(gb * 1.05 * std::pow(100.0 / (gb * 1.05), ig / 11.0));
            }
            const double alphas[1] = {alpha};
            const auto rep = verify_no_direct_strong_me(alphas, gfs, 200);
            all = all && rep.all_pass;
            cells += rep.points.size();
        }
        checks.push_back({"no_direct_strong_me", all, "cells checked: " + std::to_string(cells)});
    }
    return checks;
}

}  // namespace

int cmd_verify(const RunConfig& cfg) {
    const std::vector<Check> checks = invariant_suite(cfg.seed);
    bool all = true;
    json items = json::array();
    for (const auto& c : checks) {
        std::cout << (c.pass ? "PASS " : "FAIL ") << c.name << ": " << c.detail << "\n";
        items.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
        all = all && c.pass;
    }
    if (!cfg.out.empty()) {
        json doc{{"metadata", base_metadata(cfg)}, {"checks", items}, {"all_pass", all}};
        open_output(cfg.out) << doc.dump(2) << "\n";
    }
    return all ? 0 : 4;
}

int run(const RunConfig& cfg) {
    try {
        if (cfg.subcommand == "locus") return cmd_locus(cfg);
        if (cfg.subcommand == "spectrum") return cmd_spectrum(cfg);
        if (cfg.subcommand == "evolve") return cmd_evolve(cfg);
        if (cfg.subcommand == "demo-mpemba") return cmd_demo_mpemba(cfg);
        if (cfg.subcommand == "scan-aminus") return cmd_scan_aminus(cfg);
        if (cfg.subcommand == "scan-sme") return cmd_scan_sme(cfg);
        if (cfg.subcommand == "verify") return cmd_verify(cfg);
        std::cerr << "unknown subcommand '" << cfg.subcommand << "'\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}

}  // namespace mpemba::cli
