#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "mpemba/qubit_state.hpp"

namespace mpemba {

/// Drive/bath parameters. All internal computations use rates in units of
/// omega (gamma_prime = gamma/omega); omega itself only converts to absolute
/// units at the interfaces.
struct ModelParams {
    double omega = 1.0;        // coherent drive rate, > 0
    double gamma_prime = 0.0;  // dimensionless bath coupling gamma/omega, >= 0
    double alpha = 1.0;        // decay fraction of the decoherence, in [0, 1]

    double gamma_decay() const { return alpha * gamma_prime * omega; }
    double gamma_dephase() const { return (1.0 - alpha) * gamma_prime * omega; }
};

/// Throws std::invalid_argument on out-of-range parameters.
void validate(const ModelParams& p);

/// Non-equilibrium steady state on the locus, with its polar parametrization
/// y = p cos(theta), z = p sin(theta). `degenerate` marks the gamma'->0 /
/// alpha->0 limit points (locus collapses to the center).
struct SteadyState {
    BlochState bloch;
    double p = 0.0;      // radial distance from the origin, in [0, 1]
    double theta = 0.0;  // -arctan(gamma'), in [-pi/2, 0]
    bool degenerate = false;
};

/// The 4x4 generator L acting on vec(rho) = (rho11, rho21, rho12, rho22),
/// in absolute rate units. Trace preservation: rows 1 and 4 sum to zero
/// column-wise.
Eigen::Matrix4cd superoperator_matrix(const ModelParams& p);

/// Bloch-coordinate form of the generator: d(y,z)/dt = A (y,z) + b, with the
/// decoupled dx/dt = lambda_x * x. Absolute rate units.
struct BlochDrift {
    Eigen::Matrix2d A;
    Eigen::Vector2d b;
    double lambda_x;  // = -gamma
};

BlochDrift bloch_drift(const ModelParams& p);

/// Closed-form steady state. For gamma' = 0 or alpha = 0 returns the center
/// flagged degenerate instead of erroring, so grid scans can include the
/// endpoints.
SteadyState steady_state(const ModelParams& p);

/// Steady states over a gamma' grid (fixed alpha, omega = 1).
std::vector<SteadyState> locus_sample(double alpha, std::span<const double> gamma_grid);

/// Residual |A r* + b| of a steady state under the drift; ~1e-16 when exact.
double steady_state_residual(const ModelParams& p, const SteadyState& ss);

}  // namespace mpemba
