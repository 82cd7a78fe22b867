#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "mpemba/evolution.hpp"
#include "mpemba/model.hpp"

namespace mpemba {

/// Decomposition of a steady state into two pure states,
/// rho_ss = (1-p)/2 |+theta><+theta| + (1+p)/2 |-theta><-theta|,
/// with |+-theta> = exp(-i(theta +- pi/2) sigma_x / 2)|up>.
struct PreparedEnsemble {
    double theta = 0.0;
    double p = 0.0;
    std::array<BlochState, 2> components;  // Bloch vectors of |+theta>, |-theta>
    std::array<double, 2> weights;         // (1-p)/2, (1+p)/2

    BlochState average() const;
};

PreparedEnsemble decompose_steady_state(double gamma_i_prime, double alpha);

/// Evolves each pure component with the chosen engine and returns the
/// weighted Bloch combination; by linearity this equals evolving the mixed
/// state directly. `times` is ignored for the trotter engine (the schedule
/// fixes the grid).
Trajectory evolve_prepared(const PreparedEnsemble& ensemble, const ModelParams& p,
                           std::span<const double> times, Engine engine,
                           std::optional<TrotterSchedule> schedule = std::nullopt);

/// Per-axis binomial sampling of a state: k ~ Binomial(shots, (1+w)/2),
/// w_hat = 2k/shots - 1, sigma = sqrt((1 - w_hat^2)/shots).
struct TomographyRecord {
    double time = 0.0;
    BlochState mean;
    std::array<double, 3> sigma{};  // per axis x, y, z
    int shots = 0;
    std::uint64_t seed = 0;
};

/// Simulated projective tomography of a trajectory. Draws are keyed by
/// (seed, time index, axis) with a counter-based generator, so records are
/// identical regardless of evaluation order.
std::vector<TomographyRecord> simulate_tomography(const Trajectory& traj, int shots, std::uint64_t seed);

/// Sliding-window local least-squares polynomial fit (Savitzky-Golay style)
/// evaluated at each sample; windows truncate at the ends, with the fit
/// degree clamped to the available points. Reproduces polynomials of degree
/// <= `degree` exactly. Requires odd window, window >= degree + 1,
/// window <= series length.
std::vector<std::pair<double, double>> polynomial_smooth(
    std::span<const std::pair<double, double>> series, int window, int degree);

}  // namespace mpemba
