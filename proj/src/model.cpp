#include "mpemba/model.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace mpemba {

void validate(const ModelParams& p) {
    std::ostringstream msg;
    if (!(p.omega > 0.0) || !std::isfinite(p.omega)) {
        msg << "omega must be positive and finite, got " << p.omega;
        throw std::invalid_argument(msg.str());
    }
    if (!(p.gamma_prime >= 0.0) || !std::isfinite(p.gamma_prime)) {
        msg << "gamma_prime must be >= 0 and finite, got " << p.gamma_prime;
        throw std::invalid_argument(msg.str());
    }
    if (!(p.alpha >= 0.0 && p.alpha <= 1.0)) {
        msg << "alpha must be in [0, 1], got " << p.alpha;
        throw std::invalid_argument(msg.str());
    }
}

Eigen::Matrix4cd superoperator_matrix(const ModelParams& p) {
    validate(p);
    const double gamma = p.gamma_prime * p.omega;
    const double ag = p.alpha * gamma;
    const std::complex<double> iw2(0.0, 0.5 * p.omega);

    // vec(rho) ordering: (rho11, rho21, rho12, rho22), basis index 1 = |up>.
    Eigen::Matrix4cd L = Eigen::Matrix4cd::Zero();
    L(0, 0) = -2.0 * ag;
    L(0, 1) = -iw2;
    L(0, 2) = iw2;
    L(1, 0) = -iw2;
    L(1, 1) = -gamma;
    L(1, 3) = iw2;
    L(2, 0) = iw2;
    L(2, 2) = -gamma;
    L(2, 3) = -iw2;
    L(3, 0) = 2.0 * ag;
    L(3, 1) = iw2;
    L(3, 2) = -iw2;
    return L;
}

BlochDrift bloch_drift(const ModelParams& p) {
    validate(p);
    const double gamma = p.gamma_prime * p.omega;
    BlochDrift d;
    d.A << -gamma, -p.omega, p.omega, -2.0 * p.alpha * gamma;
    d.b << 0.0, -2.0 * p.alpha * gamma;
    d.lambda_x = -gamma;
    return d;
}

SteadyState steady_state(const ModelParams& p) {
    validate(p);
    const double g = p.gamma_prime;
    SteadyState ss;
    ss.theta = -std::atan(g);
    if (g == 0.0 || p.alpha == 0.0) {
        // Locus collapses to the center; report the limit point.
        ss.degenerate = true;
        return ss;
    }
    const double denom = 1.0 + 1.0 / (2.0 * p.alpha * g * g);
    const double z = -1.0 / denom;
    ss.bloch = BlochState{0.0, -z / g, z};
    ss.p = 2.0 * p.alpha * g * std::sqrt(1.0 + g * g) / (1.0 + 2.0 * p.alpha * g * g);
    return ss;
}

std::vector<SteadyState> locus_sample(double alpha, std::span<const double> gamma_grid) {
    std::vector<SteadyState> out;
    out.reserve(gamma_grid.size());
    for (double g : gamma_grid) {
        out.push_back(steady_state(ModelParams{1.0, g, alpha}));
    }
    return out;
}

double steady_state_residual(const ModelParams& p, const SteadyState& ss) {
    const BlochDrift d = bloch_drift(p);
    const Eigen::Vector2d r(ss.bloch.y, ss.bloch.z);
    return (d.A * r + d.b).norm();
}

}  // namespace mpemba
