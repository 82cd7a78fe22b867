#pragma once

#include <complex>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "mpemba/model.hpp"

namespace mpemba {

/// Closed-form relaxation modes are invalid at the Jordan-block point
/// (discriminant ~ 0); callers should fall back to the numerical engine.
struct DegenerateSpectrumError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Raised where an operation needs two distinct real modes but
/// gamma_f' <= gamma_b'; complex-mode evolution handles that regime.
struct BelowBifurcationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline constexpr double kDegeneracyTol = 1e-10;

/// Relaxation modes of the y-z drift, rates in units of omega.
/// lambda_pm = -gamma'(alpha + 1/2 +- sqrt(disc)), disc = (alpha-1/2)^2 - 1/gamma'^2.
/// v are right eigenvectors (column), u left eigenvectors (row); u_+ . v_- = 0.
struct SpectralData {
    std::complex<double> lambda_plus;   // fast mode (more negative real part)
    std::complex<double> lambda_minus;  // slow mode
    double lambda_x = 0.0;              // = -gamma'
    Eigen::Vector2cd v_plus, v_minus;
    Eigen::Vector2cd u_plus, u_minus;
    std::complex<double> discriminant;

    bool complex_modes() const { return discriminant.real() < 0.0; }
};

/// Closed-form spectrum. Throws DegenerateSpectrumError when
/// |discriminant| < kDegeneracyTol, std::invalid_argument for gamma' = 0.
SpectralData spectrum(const ModelParams& p);

/// gamma_b' = 1/|alpha - 1/2|. Returns +infinity at alpha = 1/2 (the modes
/// never split).
double bifurcation_point(double alpha);

struct ModeCoefficients {
    double a_plus = 0.0;
    double a_minus = 0.0;
};

/// Biorthogonal projection of the initial displacement r*(gamma_i) - r*(gamma_f)
/// onto the modes of gamma_f: a_n = u_n . d / (u_n . v_n), so that
/// d = a_+ v_+ + a_- v_-. Requires gamma_f' > gamma_b' (real modes).
ModeCoefficients mode_coefficients(double gamma_i_prime, double gamma_f_prime, double alpha);

/// Same projection without the real-modes restriction; used by the
/// closed-form evolution engine below the bifurcation (conjugate pair).
struct ComplexModeCoefficients {
    std::complex<double> a_plus;
    std::complex<double> a_minus;
};

ComplexModeCoefficients project_displacement(const SpectralData& s, const Eigen::Vector2d& displacement);

struct MpembaClassification {
    double gamma_b_prime = 0.0;                   // +inf at alpha = 1/2
    bool strong_possible = false;                 // alpha > 1/2 + 1/gamma_f'
    std::optional<double> gamma_i_sme_prime;      // zero of a_-, present iff strong_possible
};

/// Strong-Mpemba classification at a final coupling. gamma_i_sme' comes from
/// the closed form gamma_f'((alpha-1/2) - sqrt((alpha-1/2)^2 - 1/gamma_f'^2)),
/// polished by one Newton step on a_-.
MpembaClassification classify_mpemba(double gamma_f_prime, double alpha);

/// Grid certificate that the strong effect only exists in the heating
/// direction: gamma_i_sme' < gamma_f' everywhere, and a_- has no zero for
/// gamma_i' in (gamma_f', 1e3 gamma_f'] (dense log sign scan).
struct NoDirectStrongMeReport {
    struct Point {
        double alpha = 0.0;
        double gamma_f_prime = 0.0;
        double gamma_i_sme_prime = 0.0;
        bool sme_below_final = false;
        bool no_cooling_zero = false;
        bool pass() const { return sme_below_final && no_cooling_zero; }
    };
    std::vector<Point> points;
    bool all_pass = false;
};

NoDirectStrongMeReport verify_no_direct_strong_me(std::span<const double> alpha_grid,
                                                  std::span<const double> gamma_f_grid,
                                                  int scan_points_per_cell = 200);

}  // namespace mpemba
