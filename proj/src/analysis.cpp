#include "mpemba/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "mpemba/parallel.hpp"
#include "mpemba/spectral.hpp"

namespace mpemba {

namespace {

int sign_of(double v) { return v > 0.0 ? 1 : (v < 0.0 ? -1 : 0); }

// Continuous closed-form distance to the final steady state for a system
// initialized at r*(gamma_i), as a function of time in 1/gamma_f units.
class ClosedFormDistance {
public:
    ClosedFormDistance(double gamma_i, double gamma_f, double alpha)
        : spec_(spectrum(ModelParams{1.0, gamma_f, alpha})), gamma_f_(gamma_f) {
        const SteadyState from = steady_state(ModelParams{1.0, gamma_i, alpha});
        const SteadyState to = steady_state(ModelParams{1.0, gamma_f, alpha});
        const Eigen::Vector2d disp(from.bloch.y - to.bloch.y, from.bloch.z - to.bloch.z);
        coeffs_ = project_displacement(spec_, disp);
    }

    double operator()(double t) const {
        const double tau = t / gamma_f_;
        const Eigen::Vector2cd yz = coeffs_.a_plus * spec_.v_plus * std::exp(spec_.lambda_plus * tau) +
                                    coeffs_.a_minus * spec_.v_minus * std::exp(spec_.lambda_minus * tau);
        return std::hypot(yz(0).real(), yz(1).real());
    }

private:
    SpectralData spec_;
    ComplexModeCoefficients coeffs_;
    double gamma_f_;
};

}  // namespace

DistanceSeries distance_series(const Trajectory& traj, const ModelParams& p) {
    validate(p);
    const auto& tp = traj.params;
    if (std::abs(tp.gamma_prime - p.gamma_prime) > 1e-12 || std::abs(tp.alpha - p.alpha) > 1e-12 ||
        std::abs(tp.omega - p.omega) > 1e-12) {
        throw std::invalid_argument("trajectory parameters do not match the requested steady state");
    }
    const SteadyState ss = steady_state(p);

    DistanceSeries out;
    out.times = traj.times;
    out.engine = to_string(traj.engine);
    out.d_ss.reserve(traj.states.size());
    for (const BlochState& r : traj.states) {
        const double dx = r.x - ss.bloch.x;
        const double dy = r.y - ss.bloch.y;
        const double dz = r.z - ss.bloch.z;
        out.d_ss.push_back(std::sqrt(dx * dx + dy * dy + dz * dz));
    }
    return out;
}

CrossingReport find_crossing(const DistanceSeries& cold, const DistanceSeries& hot) {
    if (cold.times.size() != hot.times.size()) {
        throw std::invalid_argument("crossing needs identical time grids");
    }
    for (std::size_t i = 0; i < cold.times.size(); ++i) {
        if (std::abs(cold.times[i] - hot.times[i]) > 1e-12) {
            throw std::invalid_argument("crossing needs identical time grids");
        }
    }

    const std::size_t n = cold.times.size();
    CrossingReport rep;
    std::size_t cross_idx = n;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double d0 = cold.d_ss[i] - hot.d_ss[i];
        const double d1 = cold.d_ss[i + 1] - hot.d_ss[i + 1];
        if (sign_of(d0) != 0 && sign_of(d1) != sign_of(d0)) {
            rep.sign_before = sign_of(d0);
            rep.sign_after = -rep.sign_before;
            const double frac = d0 / (d0 - d1);
            rep.t_cross = cold.times[i] + frac * (cold.times[i + 1] - cold.times[i]);
            cross_idx = i + 1;
            break;
        }
    }
    if (!rep.t_cross) {
        const int s = n > 0 ? sign_of(cold.d_ss[0] - hot.d_ss[0]) : 0;
        rep.sign_before = rep.sign_after = s;
        return rep;
    }
    for (std::size_t i = cross_idx; i < n; ++i) {
        rep.d_max_post = std::max(rep.d_max_post, hot.d_ss[i] - cold.d_ss[i]);
    }
    return rep;
}

AminusScan a_minus_scan(double gamma_f_prime, double alpha, std::span<const double> gamma_i_grid) {
    AminusScan scan;
    scan.points.reserve(gamma_i_grid.size());
    for (double gi : gamma_i_grid) {
        scan.points.push_back({gi, mode_coefficients(gi, gamma_f_prime, alpha).a_minus});
    }
    auto a_minus_at = [&](double gi) { return mode_coefficients(gi, gamma_f_prime, alpha).a_minus; };
    for (std::size_t i = 0; i + 1 < scan.points.size(); ++i) {
        double lo = scan.points[i].gamma_i_prime, hi = scan.points[i + 1].gamma_i_prime;
        double flo = scan.points[i].a_minus, fhi = scan.points[i + 1].a_minus;
        if (flo == 0.0) {
            scan.zeros.push_back(lo);
            continue;
        }
        if (flo * fhi >= 0.0) continue;
        for (int it = 0; it < 100 && hi - lo > 1e-12 * std::max(1.0, hi); ++it) {
            const double mid = 0.5 * (lo + hi);
            const double fm = a_minus_at(mid);
            if (fm == 0.0) {
                lo = hi = mid;
                break;
            }
            if (flo * fm < 0.0) {
                hi = mid;
            } else {
                lo = mid;
                flo = fm;
            }
        }
        scan.zeros.push_back(0.5 * (lo + hi));
    }
    return scan;
}

std::vector<SmeOptimalityPoint> sme_optimality_scan(double gamma_f_prime, double alpha,
                                                    double gamma_i_hot_prime,
                                                    std::span<const double> gamma_i_grid,
                                                    double t_max) {
    if (!(gamma_i_hot_prime > 0.0 && gamma_i_hot_prime < gamma_f_prime)) {
        throw std::invalid_argument("hot reference must satisfy 0 < gamma_i_hot' < gamma_f'");
    }
    for (double gi : gamma_i_grid) {
        if (!(gi > 0.0 && gi < gamma_i_hot_prime)) {
            throw std::invalid_argument("scan grid must lie inside (0, gamma_i_hot')");
        }
    }

    const ClosedFormDistance d_hot(gamma_i_hot_prime, gamma_f_prime, alpha);
    const int n_time = 1601;

    std::vector<SmeOptimalityPoint> out(gamma_i_grid.size());
    parallel_for(gamma_i_grid.size(), [&](std::size_t idx) {
        const double gi = gamma_i_grid[idx];
        const ClosedFormDistance d_cold(gi, gamma_f_prime, alpha);
        auto delta = [&](double t) { return d_cold(t) - d_hot(t); };

        SmeOptimalityPoint& pt = out[idx];
        pt.gamma_i_prime = gi;

        // Locate the first sign change on a dense grid, then bisect on the
        // continuous curves.
        double t_lo = 0.0, t_hi = 0.0;
        double prev = delta(0.0);
        for (int k = 1; k < n_time; ++k) {
            const double t = t_max * k / (n_time - 1);
            const double cur = delta(t);
            if (prev > 0.0 && cur <= 0.0) {
                t_lo = t_max * (k - 1) / (n_time - 1);
                t_hi = t;
                break;
            }
            prev = cur;
        }
        if (t_hi == 0.0) return;  // no crossing found

        for (int it = 0; it < 80 && t_hi - t_lo > 1e-13; ++it) {
            const double mid = 0.5 * (t_lo + t_hi);
            (delta(mid) > 0.0 ? t_lo : t_hi) = mid;
        }
        pt.t_cross = 0.5 * (t_lo + t_hi);

        double best = 0.0;
        for (int k = 0; k < n_time; ++k) {
            const double t = *pt.t_cross + (t_max - *pt.t_cross) * k / (n_time - 1);
            best = std::max(best, d_hot(t) - d_cold(t));
        }
        pt.d_max_post = best;
    });
    return out;
}

std::vector<ApproachDirection> approach_direction(std::span<const double> gamma_i_list,
                                                  double gamma_f_prime, double alpha, double t_late) {
    const SpectralData spec = spectrum(ModelParams{1.0, gamma_f_prime, alpha});
    if (spec.complex_modes()) {
        throw BelowBifurcationError("approach direction needs distinct real modes (gamma_f' > gamma_b')");
    }
    // Require the fast mode to be well decayed: |lambda_-| tau >= 3.
    const double tau = t_late / gamma_f_prime;
    if (!(std::abs(spec.lambda_minus.real()) * tau >= 3.0)) {
        std::ostringstream msg;
        msg << "t_late = " << t_late << " too early; need |lambda_-| t_late / gamma_f' >= 3";
        throw std::invalid_argument(msg.str());
    }

    const SteadyState to = steady_state(ModelParams{1.0, gamma_f_prime, alpha});
    std::vector<ApproachDirection> out;
    out.reserve(gamma_i_list.size());
    for (double gi : gamma_i_list) {
        const SteadyState from = steady_state(ModelParams{1.0, gi, alpha});
        const Eigen::Vector2d disp(from.bloch.y - to.bloch.y, from.bloch.z - to.bloch.z);
        const ComplexModeCoefficients c = project_displacement(spec, disp);
        // Slow-mode component of r(t_late) - r*: a_- e^(lambda_- tau).
        const double proj = c.a_minus.real() * std::exp(spec.lambda_minus.real() * tau);
        ApproachDirection dir;
        dir.gamma_i_prime = gi;
        dir.sign = std::abs(proj) < 1e-13
                       ? ApproachSign::indeterminate
                       : (proj > 0.0 ? ApproachSign::positive : ApproachSign::negative);
        out.push_back(dir);
    }
    return out;
}

}  // namespace mpemba
