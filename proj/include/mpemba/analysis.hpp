#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mpemba/evolution.hpp"
#include "mpemba/model.hpp"

namespace mpemba {

/// d_ss(t) = |r(t) - r*(gamma_f)| (full 3D Euclidean norm).
struct DistanceSeries {
    std::vector<double> times;
    std::vector<double> d_ss;
    double gamma_i_prime = 0.0;  // label only
    std::string engine;
};

/// Distances of a trajectory to the steady state of `p`. The trajectory must
/// have been produced with the same parameters.
DistanceSeries distance_series(const Trajectory& traj, const ModelParams& p);

/// First sign change of delta(t) = d_cold(t) - d_hot(t), located by linear
/// interpolation between the bracketing samples. d_max_post is the largest
/// d_hot - d_cold over the post-crossing samples.
struct CrossingReport {
    std::optional<double> t_cross;
    int sign_before = 0;
    int sign_after = 0;
    double d_max_post = 0.0;
};

CrossingReport find_crossing(const DistanceSeries& cold, const DistanceSeries& hot);

/// Slow-mode coefficient across initial couplings, with sign-change zeros
/// refined by bisection.
struct AminusScan {
    struct Point {
        double gamma_i_prime;
        double a_minus;
    };
    std::vector<Point> points;
    std::vector<double> zeros;
};

AminusScan a_minus_scan(double gamma_f_prime, double alpha, std::span<const double> gamma_i_grid);

/// Crossing time and post-crossing separation of each cold candidate against
/// a fixed hot reference, from closed-form evolution. t_cross is refined by
/// bisection on the continuous curves; d_max_post on a dense time grid.
struct SmeOptimalityPoint {
    double gamma_i_prime = 0.0;
    std::optional<double> t_cross;
    double d_max_post = 0.0;
};

std::vector<SmeOptimalityPoint> sme_optimality_scan(double gamma_f_prime, double alpha,
                                                    double gamma_i_hot_prime,
                                                    std::span<const double> gamma_i_grid,
                                                    double t_max = 8.0);

/// Sign of the slow-mode component of r(t_late) - r*; states on opposite
/// sides of the a_- zero approach the steady state from opposite directions
/// along v_-. Magnitudes below 1e-13 are reported indeterminate.
enum class ApproachSign { negative = -1, indeterminate = 0, positive = +1 };

struct ApproachDirection {
    double gamma_i_prime = 0.0;
    ApproachSign sign = ApproachSign::indeterminate;
};

std::vector<ApproachDirection> approach_direction(std::span<const double> gamma_i_list,
                                                  double gamma_f_prime, double alpha, double t_late);

}  // namespace mpemba
