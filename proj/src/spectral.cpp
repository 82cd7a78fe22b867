#include "mpemba/spectral.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "mpemba/parallel.hpp"

namespace mpemba {

using std::complex;

SpectralData spectrum(const ModelParams& p) {
    validate(p);
    const double g = p.gamma_prime;
    if (g == 0.0) {
        throw std::invalid_argument("spectrum undefined at gamma' = 0 (coherent limit, no relaxation)");
    }

    const double half_shift = p.alpha - 0.5;
    const complex<double> disc(half_shift * half_shift - 1.0 / (g * g), 0.0);
    if (std::abs(disc) < kDegeneracyTol) {
        std::ostringstream msg;
        msg << "degenerate spectrum at gamma' = " << g << ", alpha = " << p.alpha
            << " (Jordan block); use the ode engine";
        throw DegenerateSpectrumError(msg.str());
    }
    const complex<double> s = std::sqrt(disc);

    SpectralData sd;
    sd.discriminant = disc;
    sd.lambda_plus = -g * (p.alpha + 0.5 + s);
    sd.lambda_minus = -g * (p.alpha + 0.5 - s);
    sd.lambda_x = -g;

    // Right eigenvectors v_n = (1/(g(alpha - 1/2 +- s)), 1)/(2 alpha - 1);
    // left eigenvectors u_n = (1, -g(alpha - 1/2 +- s)). The prefactor is a
    // convention; the projection below divides it out. At alpha = 1/2 the
    // printed prefactor is singular, so the unscaled vector is used.
    const complex<double> pref =
        std::abs(2.0 * p.alpha - 1.0) > 1e-15 ? complex<double>(1.0 / (2.0 * p.alpha - 1.0), 0.0)
                                              : complex<double>(1.0, 0.0);
    sd.v_plus << pref / (g * (half_shift + s)), pref;
    sd.v_minus << pref / (g * (half_shift - s)), pref;
    sd.u_plus << 1.0, -g * (half_shift + s);
    sd.u_minus << 1.0, -g * (half_shift - s);
    return sd;
}

double bifurcation_point(double alpha) {
    if (!(alpha >= 0.0 && alpha <= 1.0)) {
        throw std::invalid_argument("alpha must be in [0, 1]");
    }
    const double d = std::abs(alpha - 0.5);
    if (d == 0.0) return std::numeric_limits<double>::infinity();  // never splits
    return 1.0 / d;
}

namespace {

// Bilinear (non-conjugating) product; the left/right eigenvector pairing is
// u . v, not the Hermitian inner product.
complex<double> bilinear(const Eigen::Vector2cd& a, const Eigen::Vector2cd& b) {
    return a(0) * b(0) + a(1) * b(1);
}

}  // namespace

ComplexModeCoefficients project_displacement(const SpectralData& s, const Eigen::Vector2d& d) {
    const Eigen::Vector2cd dc = d.cast<complex<double>>();
    ComplexModeCoefficients c;
    c.a_plus = bilinear(s.u_plus, dc) / bilinear(s.u_plus, s.v_plus);
    c.a_minus = bilinear(s.u_minus, dc) / bilinear(s.u_minus, s.v_minus);
    return c;
}

namespace {

ComplexModeCoefficients coefficients_between(double gi, double gf, double alpha, const SpectralData& s) {
    const SteadyState from = steady_state(ModelParams{1.0, gi, alpha});
    const SteadyState to = steady_state(ModelParams{1.0, gf, alpha});
    const Eigen::Vector2d d(from.bloch.y - to.bloch.y, from.bloch.z - to.bloch.z);
    return project_displacement(s, d);
}

double a_minus_real(double gi, double gf, double alpha, const SpectralData& s) {
    return coefficients_between(gi, gf, alpha, s).a_minus.real();
}

}  // namespace

ModeCoefficients mode_coefficients(double gamma_i_prime, double gamma_f_prime, double alpha) {
    if (!(gamma_i_prime >= 0.0)) {
        throw std::invalid_argument("gamma_i' must be >= 0");
    }
    const ModelParams pf{1.0, gamma_f_prime, alpha};
    const SpectralData s = spectrum(pf);  // throws on degeneracy
    if (s.complex_modes()) {
        std::ostringstream msg;
        msg << "gamma_f' = " << gamma_f_prime << " is below the bifurcation point "
            << bifurcation_point(alpha) << "; modes form a complex pair - use complex-mode evolution";
        throw BelowBifurcationError(msg.str());
    }
    const ComplexModeCoefficients c = coefficients_between(gamma_i_prime, gamma_f_prime, alpha, s);
    return ModeCoefficients{c.a_plus.real(), c.a_minus.real()};
}

MpembaClassification classify_mpemba(double gamma_f_prime, double alpha) {
    validate(ModelParams{1.0, gamma_f_prime, alpha});
    MpembaClassification out;
    out.gamma_b_prime = bifurcation_point(alpha);
    const double half_shift = alpha - 0.5;
    const double disc = gamma_f_prime > 0.0
                            ? half_shift * half_shift - 1.0 / (gamma_f_prime * gamma_f_prime)
                            : -1.0;
    // Right at the bound the modes have not split and there is no distinct
    // slow coefficient to cancel; the degeneracy threshold decides.
    out.strong_possible = alpha > 0.5 && disc >= kDegeneracyTol;
    if (!out.strong_possible) return out;

    double g_sme = gamma_f_prime * (half_shift - std::sqrt(disc));

    // One Newton step on a_- guards against cancellation at large gamma_f'.
    const SpectralData s = spectrum(ModelParams{1.0, gamma_f_prime, alpha});
    const double h = g_sme * 1e-6;
    const double f0 = a_minus_real(g_sme, gamma_f_prime, alpha, s);
    const double df =
        (a_minus_real(g_sme + h, gamma_f_prime, alpha, s) - a_minus_real(g_sme - h, gamma_f_prime, alpha, s)) /
        (2.0 * h);
    if (df != 0.0 && std::isfinite(df)) {
        const double polished = g_sme - f0 / df;
        if (polished > 0.0 && polished < gamma_f_prime) g_sme = polished;
    }
    out.gamma_i_sme_prime = g_sme;
    return out;
}

NoDirectStrongMeReport verify_no_direct_strong_me(std::span<const double> alpha_grid,
                                                  std::span<const double> gamma_f_grid,
                                                  int scan_points_per_cell) {
    if (scan_points_per_cell < 2) {
        throw std::invalid_argument("scan_points_per_cell must be >= 2");
    }
    for (double a : alpha_grid) {
        if (!(a > 0.5 && a <= 1.0)) {
            throw std::invalid_argument("alpha grid must lie in (1/2, 1]");
        }
    }

    struct Cell {
        double alpha, gamma_f;
    };
    std::vector<Cell> cells;
    for (double a : alpha_grid) {
        const double gb = bifurcation_point(a);
        for (double gf : gamma_f_grid) {
            if (!(gf > gb)) {
                std::ostringstream msg;
                msg << "gamma_f' = " << gf << " not above bifurcation " << gb << " at alpha = " << a;
                throw std::invalid_argument(msg.str());
            }
            cells.push_back({a, gf});
        }
    }

    NoDirectStrongMeReport report;
    report.points.resize(cells.size());
    parallel_for(cells.size(), [&](std::size_t i) {
        const auto [a, gf] = cells[i];
        auto& pt = report.points[i];
        pt.alpha = a;
        pt.gamma_f_prime = gf;
        const MpembaClassification cls = classify_mpemba(gf, a);
        pt.gamma_i_sme_prime = cls.gamma_i_sme_prime.value_or(std::numeric_limits<double>::quiet_NaN());
        pt.sme_below_final = cls.strong_possible && *cls.gamma_i_sme_prime < gf;

        // Dense log sign scan of a_- over the cooling direction (gamma_f, 1e3 gamma_f].
        const SpectralData s = spectrum(ModelParams{1.0, gf, a});
        const double lo = std::log(gf * (1.0 + 1e-6));
        const double hi = std::log(gf * 1e3);
        double prev = 0.0;
        bool found_zero = false;
        for (int k = 0; k < scan_points_per_cell; ++k) {
            const double gi = std::exp(lo + (hi - lo) * k / (scan_points_per_cell - 1));
            const double v = a_minus_real(gi, gf, a, s);
            if (k > 0 && prev * v < 0.0) {
                found_zero = true;
                break;
            }
            prev = v;
        }
        pt.no_cooling_zero = !found_zero;
    });

    report.all_pass = true;
    for (const auto& pt : report.points) {
        report.all_pass = report.all_pass && pt.pass();
    }
    return report;
}

}  // namespace mpemba
