#include "mpemba/qubit_state.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace mpemba {

using std::complex;

double BlochState::norm() const { return std::sqrt(norm2()); }

bool is_valid(const BlochState& r, double tol) {
    return std::isfinite(r.x) && std::isfinite(r.y) && std::isfinite(r.z) && r.norm2() <= 1.0 + tol;
}

void require_valid(const BlochState& r, double tol) {
    if (!is_valid(r, tol)) {
        std::ostringstream msg;
        msg << "unphysical Bloch vector (" << r.x << ", " << r.y << ", " << r.z
            << "): |r|^2 = " << r.norm2() << " exceeds 1 + " << tol;
        throw std::invalid_argument(msg.str());
    }
}

double DensityMatrix::purity() const { return (m * m).trace().real(); }

namespace {

// Eigenvalues of a 2x2 Hermitian matrix: tr/2 +- sqrt((a-d)^2/4 + |b|^2).
double min_eigenvalue(const Eigen::Matrix2cd& m) {
    const double a = m(0, 0).real();
    const double d = m(1, 1).real();
    const double half_gap = std::sqrt(0.25 * (a - d) * (a - d) + std::norm(m(0, 1)));
    return 0.5 * (a + d) - half_gap;
}

}  // namespace

bool is_valid(const DensityMatrix& rho, double tol) {
    const auto& m = rho.m;
    if (!m.allFinite()) return false;
    if (std::abs(m(0, 0).imag()) > tol || std::abs(m(1, 1).imag()) > tol) return false;
    if (std::abs(m(1, 0) - std::conj(m(0, 1))) > tol) return false;
    if (std::abs(m.trace().real() - 1.0) > tol) return false;
    return min_eigenvalue(m) >= -tol;
}

void require_valid(const DensityMatrix& rho, double tol) {
    const auto& m = rho.m;
    if (!m.allFinite()) throw std::invalid_argument("density matrix has non-finite entries");
    if (std::abs(m(0, 0).imag()) > tol || std::abs(m(1, 1).imag()) > tol ||
        std::abs(m(1, 0) - std::conj(m(0, 1))) > tol) {
        throw std::invalid_argument("density matrix is not Hermitian");
    }
    if (std::abs(m.trace().real() - 1.0) > tol) {
        std::ostringstream msg;
        msg << "density matrix trace " << m.trace().real() << " != 1";
        throw std::invalid_argument(msg.str());
    }
    if (min_eigenvalue(m) < -tol) {
        std::ostringstream msg;
        msg << "density matrix has negative eigenvalue " << min_eigenvalue(m);
        throw std::invalid_argument(msg.str());
    }
}

DensityMatrix bloch_to_density(const BlochState& r) {
    require_valid(r);
    DensityMatrix rho;
    rho.m(0, 0) = complex<double>(0.5 * (1.0 + r.z), 0.0);
    rho.m(1, 1) = complex<double>(0.5 * (1.0 - r.z), 0.0);
    rho.m(0, 1) = complex<double>(0.5 * r.x, -0.5 * r.y);
    rho.m(1, 0) = std::conj(rho.m(0, 1));
    return rho;
}

BlochState density_to_bloch(const DensityMatrix& rho) {
    require_valid(rho);
    const auto& m = rho.m;
    return BlochState{
        (m(0, 1) + m(1, 0)).real(),
        (complex<double>(0.0, 1.0) * (m(0, 1) - m(1, 0))).real(),
        (m(0, 0) - m(1, 1)).real(),
    };
}

}  // namespace mpemba
