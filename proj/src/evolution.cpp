#include "mpemba/evolution.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <sstream>
#include <stdexcept>

#include <boost/numeric/odeint.hpp>

#include "mpemba/spectral.hpp"

namespace mpemba {

using std::complex;

std::string to_string(Engine e) {
    switch (e) {
        case Engine::closed_form: return "closed_form";
        case Engine::ode: return "ode";
        case Engine::trotter: return "trotter";
    }
    return "unknown";
}

Engine engine_from_string(const std::string& name) {
    if (name == "closed_form" || name == "closed") return Engine::closed_form;
    if (name == "ode") return Engine::ode;
    if (name == "trotter") return Engine::trotter;
    throw std::invalid_argument("unknown engine '" + name + "' (expected closed, ode, or trotter)");
}

double to_omega_time(double t, const ModelParams& p) {
    // Trajectory times are in units of 1/gamma_f; in the coherent limit that
    // unit degenerates and 1/omega is used instead.
    return p.gamma_prime > 0.0 ? t / p.gamma_prime : t;
}

namespace {

void validate_times(std::span<const double> times) {
    if (times.empty()) throw std::invalid_argument("empty time grid");
    if (times.front() < 0.0) throw std::invalid_argument("times must be >= 0");
    for (std::size_t i = 1; i < times.size(); ++i) {
        if (!(times[i] > times[i - 1])) {
            throw std::invalid_argument("times must be strictly increasing");
        }
    }
}

double time_scale(const ModelParams& p) {
    // omega-units time per trajectory-unit time.
    return p.gamma_prime > 0.0 ? 1.0 / p.gamma_prime : 1.0;
}

}  // namespace

Trajectory evolve_closed_form(const BlochState& r0, const ModelParams& p, std::span<const double> times) {
    require_valid(r0);
    validate(p);
    validate_times(times);
    if (p.gamma_prime == 0.0) {
        // Pure rotation about x at rate omega; times in 1/omega units here.
        Trajectory traj;
        traj.engine = Engine::closed_form;
        traj.params = p;
        traj.times.assign(times.begin(), times.end());
        traj.states.reserve(times.size());
        for (double t : times) {
            const double c = std::cos(t), s = std::sin(t);
            traj.states.push_back(BlochState{r0.x, r0.y * c - r0.z * s, r0.y * s + r0.z * c});
        }
        return traj;
    }

    const SpectralData sd = spectrum(p);  // throws DegenerateSpectrumError at the Jordan point
    const SteadyState ss = steady_state(p);
    const Eigen::Vector2d disp(r0.y - ss.bloch.y, r0.z - ss.bloch.z);
    const ComplexModeCoefficients a = project_displacement(sd, disp);
    const double scale = time_scale(p);

    Trajectory traj;
    traj.engine = Engine::closed_form;
    traj.params = p;
    traj.times.assign(times.begin(), times.end());
    traj.states.reserve(times.size());
    for (double t : times) {
        const double tau = t * scale;  // omega units
        const Eigen::Vector2cd yz = a.a_plus * sd.v_plus * std::exp(sd.lambda_plus * tau) +
                                    a.a_minus * sd.v_minus * std::exp(sd.lambda_minus * tau);
        const double imag_resid = std::max(std::abs(yz(0).imag()), std::abs(yz(1).imag()));
        if (imag_resid > 1e-10) {
            std::ostringstream msg;
            msg << "mode sum left imaginary residue " << imag_resid << " at t = " << t;
            throw std::runtime_error(msg.str());
        }
        traj.states.push_back(BlochState{r0.x * std::exp(sd.lambda_x * tau),
                                         ss.bloch.y + yz(0).real(), ss.bloch.z + yz(1).real()});
    }
    return traj;
}

namespace {

using OdeState = std::array<double, 3>;

struct BlochOde {
    double gamma, alpha, omega;

    void operator()(const OdeState& r, OdeState& drdt, double /*t*/) const {
        drdt[0] = -gamma * r[0];
        drdt[1] = -gamma * r[1] - omega * r[2];
        drdt[2] = -2.0 * alpha * gamma * (1.0 + r[2]) + omega * r[1];
    }
};

}  // namespace

Trajectory evolve_ode(const BlochState& r0, const ModelParams& p, std::span<const double> times,
                      double tol) {
    require_valid(r0);
    validate(p);
    validate_times(times);
    if (!(tol > 0.0)) throw std::invalid_argument("ode tolerance must be > 0");

    namespace odeint = boost::numeric::odeint;
    using Stepper = odeint::runge_kutta_cash_karp54<OdeState>;
    auto stepper = odeint::make_controlled<Stepper>(tol, tol);

    const BlochOde sys{p.gamma_prime * p.omega, p.alpha, p.omega};
    const double scale = time_scale(p) / p.omega;  // absolute time per trajectory unit

    Trajectory traj;
    traj.engine = Engine::ode;
    traj.params = p;
    traj.times.assign(times.begin(), times.end());
    traj.states.reserve(times.size());

    OdeState r{r0.x, r0.y, r0.z};
    double t_now = 0.0;
    const double rate = std::max({std::abs(sys.gamma), 2.0 * sys.alpha * sys.gamma, p.omega});
    for (double t : times) {
        const double t_target = t * scale;
        if (t_target > t_now) {
            const double dt0 = std::min(0.1 / rate, t_target - t_now);
            try {
                odeint::integrate_adaptive(stepper, sys, r, t_now, t_target, dt0);
            } catch (const std::exception& e) {
                std::ostringstream msg;
                msg << "ode integration failed on [" << t_now << ", " << t_target << "]: " << e.what();
                throw std::runtime_error(msg.str());
            }
            t_now = t_target;
        }
        traj.states.push_back(BlochState{r[0], r[1], r[2]});
    }
    return traj;
}

DissipativeStepChannel::DissipativeStepChannel(const ModelParams& p, double dt) {
    validate(p);
    if (!(dt > 0.0)) throw std::invalid_argument("channel duration must be > 0");
    p_decay_ = -std::expm1(-2.0 * p.gamma_decay() * dt);
    dephase_factor_ = std::exp(-p.gamma_dephase() * dt);
}

DensityMatrix DissipativeStepChannel::operator()(const DensityMatrix& rho) const {
    require_valid(rho);
    // Amplitude damping |up> -> |down> with probability p_decay_, then pure
    // dephasing of the remaining coherence.
    const double keep = 1.0 - p_decay_;
    const double coher = std::sqrt(keep) * dephase_factor_;
    DensityMatrix out;
    out.m(0, 0) = keep * rho.m(0, 0);
    out.m(1, 1) = rho.m(1, 1) + p_decay_ * rho.m(0, 0);
    out.m(0, 1) = coher * rho.m(0, 1);
    out.m(1, 0) = coher * rho.m(1, 0);
    return out;
}

DissipativeStepChannel dissipative_step_channel(const ModelParams& p, double dt) {
    return DissipativeStepChannel(p, dt);
}

void validate(const TrotterSchedule& s) {
    if (s.n_steps < 1) throw std::invalid_argument("trotter schedule needs n_steps >= 1");
    if (!(s.total_time > 0.0)) throw std::invalid_argument("trotter schedule needs total_time > 0");
}

Trajectory evolve_trotter(const BlochState& r0, const ModelParams& p, const TrotterSchedule& schedule) {
    require_valid(r0);
    validate(p);
    validate(schedule);

    const double dt_traj = schedule.total_time / schedule.n_steps;
    const double dt_abs = dt_traj * time_scale(p) / p.omega;
    const double angle = p.omega * dt_abs;
    const double c = std::cos(angle), s = std::sin(angle);

    Trajectory traj;
    traj.engine = Engine::trotter;
    traj.params = p;
    traj.times.reserve(schedule.n_steps + 1);
    traj.states.reserve(schedule.n_steps + 1);
    traj.times.push_back(0.0);
    traj.states.push_back(r0);

    DensityMatrix rho = bloch_to_density(r0);
    const bool dissipate = p.gamma_prime > 0.0;
    const std::optional<DissipativeStepChannel> channel =
        dissipate ? std::optional<DissipativeStepChannel>(DissipativeStepChannel(p, dt_abs))
                  : std::nullopt;
    for (int k = 1; k <= schedule.n_steps; ++k) {
        // Coherent x-rotation by omega*dt: (y, z) -> (y c - z s, y s + z c).
        BlochState r = density_to_bloch(rho);
        r = BlochState{r.x, r.y * c - r.z * s, r.y * s + r.z * c};
        rho = bloch_to_density(r);
        if (channel) {
            rho = (*channel)(rho);
        }
        require_valid(rho);
        traj.times.push_back(k * dt_traj);
        traj.states.push_back(density_to_bloch(rho));
    }
    return traj;
}

}  // namespace mpemba
