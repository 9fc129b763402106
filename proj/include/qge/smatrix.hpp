#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>

#include <Eigen/Dense>

#include "qge/graph.hpp"

namespace qge {

using complexd = std::complex<double>;

inline constexpr double default_tol = 1e-10;

/// Scattering matrix of a two-channel graph at wavenumber k. The full
/// matrix is [[r, t], [t, r]]: equal off-diagonals and equal diagonals,
/// which pins Re(r conj(t)) = 0 for any unitary member.
struct ChannelSMatrix {
    complexd r;
    complexd t;
    double k = 0.0;

    double unitarity_residual() const {
        return std::abs(std::norm(r) + std::norm(t) - 1.0);
    }

    // Zero whenever the underlying matrix really is [[r,t],[t,r]]; a
    // star with unequal arm phases breaks it while staying unitary.
    double phase_lock_residual() const { return std::abs(std::real(r * std::conj(t))); }

    bool is_valid(double tol = default_tol) const {
        return unitarity_residual() <= tol;
    }

    Eigen::Matrix2cd matrix() const {
        Eigen::Matrix2cd m;
        m << r, t, t, r;
        return m;
    }
};

/// c-channel scattering matrix at a single wavenumber.
struct FullSMatrix {
    Eigen::MatrixXcd entries;
    double k = 0.0;

    double unitarity_residual() const {
        const auto n = entries.rows();
        return (entries * entries.adjoint() -
                Eigen::MatrixXcd::Identity(n, n))
            .cwiseAbs()
            .maxCoeff();
    }
};

/// Two-channel view of a 2x2 full matrix; requires equal off-diagonals
/// (reciprocity). r is the channel-0 reflection, t the 0 -> 1 amplitude.
inline ChannelSMatrix as_channel(const FullSMatrix& s, double tol = 1e-8) {
    if (s.entries.rows() != 2 || s.entries.cols() != 2) {
        throw std::invalid_argument("as_channel: matrix is not 2x2");
    }
    if (std::abs(s.entries(0, 1) - s.entries(1, 0)) > tol) {
        throw std::invalid_argument(
            "as_channel: off-diagonal entries differ; not a reciprocal "
            "two-channel matrix");
    }
    return {s.entries(0, 0), s.entries(0, 1), s.k};
}

/// Vertex scattering matrix. Standard: (2/d)J - I, energy independent,
/// real symmetric and unitary. Dirichlet: -I.
inline Eigen::MatrixXcd vertex_matrix(int degree, BoundaryCondition bc) {
    if (degree < 1) throw std::invalid_argument("vertex_matrix: degree must be >= 1");
    if (bc == BoundaryCondition::Dirichlet) {
        return -Eigen::MatrixXcd::Identity(degree, degree);
    }
    const double off = 2.0 / degree;
    return Eigen::MatrixXcd::Constant(degree, degree, off) -
           Eigen::MatrixXcd::Identity(degree, degree);
}

namespace detail {

// Shared core of the star-4 amplitudes: everything is multiplied through
// by cos(x) so x = (n + 1/2)*pi is an ordinary point (t -> 0, |r| -> 1).
// Denominator 2i cos x + sin x has |.|^2 = 1 + 3 cos^2 x >= 1.
struct StarCore {
    complexd r_factor; // -sin x / (2i cos x + sin x)
    complexd t_factor; // 2i cos x / (2i cos x + sin x)
};

inline StarCore star_core(double x) {
    const double s = std::sin(x);
    const double c = std::cos(x);
    const complexd den(s, 2.0 * c);
    return {complexd(-s, 0.0) / den, complexd(0.0, 2.0 * c) / den};
}

} // namespace detail

/// Simplified star amplitudes R(x), T(x) of the alpha = beta = pi slice,
/// evaluated in the singularity-free sin/cos form.
inline std::pair<complexd, complexd> rt_simplified(double x) {
    const auto core = detail::star_core(x);
    return {core.r_factor, core.t_factor};
}

/// Closed-form S-matrix of the 4-vertex star with leads on the two outer
/// arm vertices; x = k*l23 + phi is the dead-end arm argument.
inline ChannelSMatrix star4_analytic(double k, double l12, double l23, double l24,
                                     double phi = 0.0) {
    if (!(l12 > 0.0) || !(l23 > 0.0) || !(l24 > 0.0)) {
        throw std::invalid_argument("star4_analytic: lengths must be positive");
    }
    const auto core = detail::star_core(k * l23 + phi);
    const complexd ph12 = std::polar(1.0, k * l12);
    const complexd ph24 = std::polar(1.0, k * l24);
    // Diagonal entries differ by arm phases when l12 != l24; the returned
    // r is the channel-0 reflection, t the 0 -> 1 transmission.
    return {core.r_factor * ph12 * ph12, core.t_factor * ph12 * ph24, k};
}

/// Same closed form as star4_analytic but with both diagonal entries, so
/// it can be compared entrywise against a generic solver result.
inline FullSMatrix star4_analytic_full(double k, double l12, double l23, double l24,
                                       double phi = 0.0) {
    if (!(l12 > 0.0) || !(l23 > 0.0) || !(l24 > 0.0)) {
        throw std::invalid_argument("star4_analytic_full: lengths must be positive");
    }
    const auto core = detail::star_core(k * l23 + phi);
    const complexd ph12 = std::polar(1.0, k * l12);
    const complexd ph24 = std::polar(1.0, k * l24);
    FullSMatrix s;
    s.entries.resize(2, 2);
    s.entries(0, 0) = core.r_factor * ph12 * ph12;
    s.entries(1, 1) = core.r_factor * ph24 * ph24;
    s.entries(0, 1) = core.t_factor * ph12 * ph24;
    s.entries(1, 0) = s.entries(0, 1);
    s.k = k;
    return s;
}

/// Combined x = k*l + phi argument with the two arm lengths replaced by
/// pure phases alpha and beta.
struct StarPhaseParams {
    double x = 0.0;
    double alpha = 0.0;
    double beta = 0.0;
};

/// Phase-parameter star S-matrix. Returned as a full 2x2 because the
/// diagonal entries differ whenever alpha != beta.
inline FullSMatrix star4_phase_form(const StarPhaseParams& p) {
    const auto core = detail::star_core(p.x);
    FullSMatrix s;
    s.entries.resize(2, 2);
    s.entries(0, 0) = core.r_factor * std::polar(1.0, 2.0 * p.alpha);
    s.entries(1, 1) = core.r_factor * std::polar(1.0, 2.0 * p.beta);
    s.entries(0, 1) = core.t_factor * std::polar(1.0, p.alpha + p.beta);
    s.entries(1, 0) = s.entries(0, 1);
    s.k = 0.0;
    return s;
}

} // namespace qge
