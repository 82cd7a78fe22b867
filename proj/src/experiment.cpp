#include "mpemba/experiment.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include <Eigen/Dense>

#include "mpemba/rng.hpp"

namespace mpemba {

BlochState PreparedEnsemble::average() const {
    BlochState avg;
    for (int i = 0; i < 2; ++i) {
        avg.x += weights[i] * components[i].x;
        avg.y += weights[i] * components[i].y;
        avg.z += weights[i] * components[i].z;
    }
    return avg;
}

PreparedEnsemble decompose_steady_state(double gamma_i_prime, double alpha) {
    if (!(alpha > 0.0 && alpha <= 1.0)) {
        throw std::invalid_argument("decomposition requires alpha in (0, 1]");
    }
    const SteadyState ss = steady_state(ModelParams{1.0, gamma_i_prime, alpha});

    PreparedEnsemble e;
    e.theta = ss.theta;
    e.p = ss.p;
    // exp(-i phi sigma_x / 2)|up> has Bloch vector (0, -sin phi, cos phi);
    // phi = theta +- pi/2 gives (0, -+cos theta, -+sin theta).
    e.components[0] = BlochState{0.0, -std::cos(e.theta), -std::sin(e.theta)};  // |+theta>
    e.components[1] = BlochState{0.0, std::cos(e.theta), std::sin(e.theta)};    // |-theta>
    e.weights = {0.5 * (1.0 - e.p), 0.5 * (1.0 + e.p)};
    return e;
}

Trajectory evolve_prepared(const PreparedEnsemble& ensemble, const ModelParams& p,
                           std::span<const double> times, Engine engine,
                           std::optional<TrotterSchedule> schedule) {
    const double wsum = ensemble.weights[0] + ensemble.weights[1];
    if (std::abs(wsum - 1.0) > kStateTol || ensemble.weights[0] < -kStateTol ||
        ensemble.weights[1] < -kStateTol) {
        throw std::invalid_argument("ensemble weights must be nonnegative and sum to 1");
    }

    auto run = [&](const BlochState& r0) {
        switch (engine) {
            case Engine::closed_form: return evolve_closed_form(r0, p, times);
            case Engine::ode: return evolve_ode(r0, p, times);
            case Engine::trotter:
                if (!schedule) throw std::invalid_argument("trotter engine needs a schedule");
                return evolve_trotter(r0, p, *schedule);
        }
        throw std::invalid_argument("unknown engine");
    };

    const Trajectory a = run(ensemble.components[0]);
    const Trajectory b = run(ensemble.components[1]);

    Trajectory out;
    out.engine = engine;
    out.params = p;
    out.times = a.times;
    out.states.reserve(a.states.size());
    for (std::size_t i = 0; i < a.states.size(); ++i) {
        out.states.push_back(BlochState{
            ensemble.weights[0] * a.states[i].x + ensemble.weights[1] * b.states[i].x,
            ensemble.weights[0] * a.states[i].y + ensemble.weights[1] * b.states[i].y,
            ensemble.weights[0] * a.states[i].z + ensemble.weights[1] * b.states[i].z,
        });
    }
    return out;
}

std::vector<TomographyRecord> simulate_tomography(const Trajectory& traj, int shots, std::uint64_t seed) {
    if (shots < 1) throw std::invalid_argument("shots must be >= 1");

    std::vector<TomographyRecord> records;
    records.reserve(traj.times.size());
    for (std::size_t ti = 0; ti < traj.times.size(); ++ti) {
        const BlochState& r = traj.states[ti];
        const double truth[3] = {r.x, r.y, r.z};
        double est[3], sig[3];
        for (int axis = 0; axis < 3; ++axis) {
            CounterRng rng(seed, static_cast<std::uint64_t>(ti), static_cast<std::uint64_t>(axis));
            const int k = rng.binomial(shots, 0.5 * (1.0 + truth[axis]));
            est[axis] = 2.0 * static_cast<double>(k) / shots - 1.0;
            sig[axis] = std::sqrt(std::max(0.0, (1.0 - est[axis] * est[axis]) / shots));
        }
        TomographyRecord rec;
        rec.time = traj.times[ti];
        rec.mean = BlochState{est[0], est[1], est[2]};
        rec.sigma = {sig[0], sig[1], sig[2]};
        rec.shots = shots;
        rec.seed = seed;
        records.push_back(rec);
    }
    return records;
}

std::vector<std::pair<double, double>> polynomial_smooth(
    std::span<const std::pair<double, double>> series, int window, int degree) {
    const int n = static_cast<int>(series.size());
    if (degree < 0) throw std::invalid_argument("degree must be >= 0");
    if (window % 2 == 0) throw std::invalid_argument("window must be odd");
    if (window < degree + 1) throw std::invalid_argument("window must be >= degree + 1");
    if (window > n) throw std::invalid_argument("window exceeds series length");

    const int half = window / 2;
    std::vector<std::pair<double, double>> out;
    out.reserve(n);
    for (int i = 0; i < n; ++i) {
        const int lo = std::max(0, i - half);
        const int hi = std::min(n - 1, i + half);
        const int m = hi - lo + 1;
        const int deg = std::min(degree, m - 1);  // truncated end windows

        // Least squares in t centered at t_i; the fit value at t_i is the
        // constant coefficient.
        Eigen::MatrixXd design(m, deg + 1);
        Eigen::VectorXd rhs(m);
        for (int k = 0; k < m; ++k) {
            const double dt = series[lo + k].first - series[i].first;
            double pw = 1.0;
            for (int c = 0; c <= deg; ++c) {
                design(k, c) = pw;
                pw *= dt;
            }
            rhs(k) = series[lo + k].second;
        }
        const Eigen::VectorXd coef = design.colPivHouseholderQr().solve(rhs);
        out.emplace_back(series[i].first, coef(0));
    }
    return out;
}

}  // namespace mpemba
