#pragma once

#include <Eigen/Dense>
#include <complex>

namespace mpemba {

// Tolerance for state validity checks (purity, Hermiticity, trace, PSD).
// Channel compositions accumulate rounding at this scale; violations beyond
// it are treated as bugs and raise, never clamp.
inline constexpr double kStateTol = 1e-12;

/// Bloch vector r = (x, y, z); physical states satisfy |r|^2 <= 1.
struct BlochState {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    double norm2() const { return x * x + y * y + z * z; }
    double norm() const;
};

bool is_valid(const BlochState& r, double tol = kStateTol);

/// Throws std::invalid_argument if |r|^2 > 1 + tol.
void require_valid(const BlochState& r, double tol = kStateTol);

/// 2x2 density matrix in the {|up>, |down>} basis; row/col 1 is |up> (z = +1).
struct DensityMatrix {
    Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();

    std::complex<double> rho11() const { return m(0, 0); }
    std::complex<double> rho12() const { return m(0, 1); }
    std::complex<double> rho21() const { return m(1, 0); }
    std::complex<double> rho22() const { return m(1, 1); }

    /// Tr(rho^2); equals (1 + |r|^2)/2 for the Bloch vector r.
    double purity() const;
};

bool is_valid(const DensityMatrix& rho, double tol = kStateTol);

/// Throws std::invalid_argument on non-Hermitian, non-unit-trace, or
/// negative-eigenvalue (beyond -tol) input.
void require_valid(const DensityMatrix& rho, double tol = kStateTol);

/// rho = (1 + r.sigma)/2. Rejects unphysical |r| > 1 + tol.
DensityMatrix bloch_to_density(const BlochState& r);

/// r = (rho12 + rho21, i(rho12 - rho21), rho11 - rho22). Validates input.
BlochState density_to_bloch(const DensityMatrix& rho);

}  // namespace mpemba
