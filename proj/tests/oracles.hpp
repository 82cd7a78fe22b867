#pragma once

// Test-side reference computations, independent of the library's closed-form
// paths: dense eigendecompositions, linear solves, matrix exponentials, and
// small statistics helpers.

#include <cmath>
#include <complex>
#include <random>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include "mpemba/model.hpp"
#include "mpemba/qubit_state.hpp"

namespace oracles {

/// Eigenvalues of the 2x2 drift matrix, sorted by real part ascending
/// (fast mode first).
inline std::pair<std::complex<double>, std::complex<double>> eigenvalues(const Eigen::Matrix2d& A) {
    const Eigen::EigenSolver<Eigen::Matrix2d> es(A);
    std::complex<double> a = es.eigenvalues()(0);
    std::complex<double> b = es.eigenvalues()(1);
    if (a.real() > b.real() || (a.real() == b.real() && a.imag() > b.imag())) std::swap(a, b);
    return {a, b};
}

/// Fixed point of dr/dt = A r + b by direct linear solve.
inline Eigen::Vector2d fixed_point(const Eigen::Matrix2d& A, const Eigen::Vector2d& b) {
    return A.fullPivLu().solve(-b);
}

/// Exact propagation of the affine system dr/dt = A r + b over time t via the
/// exponential of the augmented homogeneous system.
inline Eigen::Vector3d propagate_affine(const Eigen::Matrix3d& A, const Eigen::Vector3d& b,
                                        const Eigen::Vector3d& r0, double t) {
    Eigen::Matrix4d aug = Eigen::Matrix4d::Zero();
    aug.topLeftCorner<3, 3>() = A;
    aug.topRightCorner<3, 1>() = b;
    const Eigen::Matrix4d prop = (aug * t).exp();
    Eigen::Vector4d x;
    x << r0, 1.0;
    return (prop * x).head<3>();
}

/// Full 3-variable drift of the Bloch vector in absolute units.
inline void bloch_drift3(const mpemba::ModelParams& p, Eigen::Matrix3d& A, Eigen::Vector3d& b) {
    const double g = p.gamma_prime * p.omega;
    A << -g, 0.0, 0.0, 0.0, -g, -p.omega, 0.0, p.omega, -2.0 * p.alpha * g;
    b << 0.0, 0.0, -2.0 * p.alpha * g;
}

/// Least-squares slope of y against x.
inline double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

/// Uniformly random Bloch vector with |r| <= radius.
inline mpemba::BlochState random_bloch(std::mt19937_64& rng, double radius = 0.999) {
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    const double u = 2.0 * uni(rng) - 1.0;
    const double phi = 2.0 * M_PI * uni(rng);
    const double r = radius * std::cbrt(uni(rng));
    const double s = std::sqrt(1.0 - u * u);
    return {r * s * std::cos(phi), r * s * std::sin(phi), r * u};
}

inline std::vector<double> linspace(double a, double b, int n) {
    std::vector<double> out;
    out.reserve(n);
    for (int i = 0; i < n; ++i) out.push_back(a + (b - a) * i / (n - 1));
    return out;
}

inline std::vector<double> logspace(double a, double b, int n) {
    std::vector<double> out;
    out.reserve(n);
    for (int i = 0; i < n; ++i) out.push_back(a * std::pow(b / a, static_cast<double>(i) / (n - 1)));
    return out;
}

}  // namespace oracles
