#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mpemba/model.hpp"
#include "mpemba/qubit_state.hpp"

namespace mpemba {

enum class Engine { closed_form, ode, trotter };

std::string to_string(Engine e);
Engine engine_from_string(const std::string& name);

/// Time series of Bloch states. Times are in units of 1/gamma_f (the natural
/// relaxation unit); for the coherent limit gamma' = 0 they are in units of
/// 1/omega instead.
struct Trajectory {
    std::vector<double> times;
    std::vector<BlochState> states;
    Engine engine = Engine::closed_form;
    ModelParams params;
    std::optional<std::uint64_t> seed;
};

/// Converts a time in trajectory units to omega-units (absolute, omega = 1).
double to_omega_time(double t, const ModelParams& p);

/// Mode-sum solution r(t) = r* + sum_n a_n v_n e^(lambda_n t). Works above and
/// below the bifurcation (conjugate pair, real part extracted); throws
/// DegenerateSpectrumError at the Jordan point - use evolve_ode there.
Trajectory evolve_closed_form(const BlochState& r0, const ModelParams& p, std::span<const double> times);

/// Adaptive Cash-Karp RK45 on the 3-variable Bloch ODE; the independent
/// engine, valid at any parameters including the degenerate point.
Trajectory evolve_ode(const BlochState& r0, const ModelParams& p, std::span<const double> times,
                      double tol = 1e-10);

/// One dissipative interval of duration dt (absolute units): exact amplitude
/// damping toward |down> with p_d = 1 - e^(-2 gamma_decay dt), then exact
/// dephasing shrinking off-diagonals by e^(-gamma_dephase dt). CPTP for any dt.
class DissipativeStepChannel {
public:
    DissipativeStepChannel(const ModelParams& p, double dt);

    DensityMatrix operator()(const DensityMatrix& rho) const;

    double decay_probability() const { return p_decay_; }
    double dephasing_factor() const { return dephase_factor_; }

private:
    double p_decay_;
    double dephase_factor_;
};

DissipativeStepChannel dissipative_step_channel(const ModelParams& p, double dt);

struct TrotterSchedule {
    int n_steps = 1;          // >= 1
    double total_time = 1.0;  // > 0, trajectory time units
};

void validate(const TrotterSchedule& s);

/// First-order trotterization: each step is a coherent x-rotation by
/// omega*dt followed by the dissipative channel for dt. Records the state
/// after every full step; every intermediate state is a valid density matrix.
Trajectory evolve_trotter(const BlochState& r0, const ModelParams& p, const TrotterSchedule& schedule);

}  // namespace mpemba
