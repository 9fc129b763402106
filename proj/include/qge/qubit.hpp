#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>

#include <Eigen/Dense>

#include "qge/smatrix.hpp"

namespace qge {

/// Single-qubit state on the channel basis: |0> is reflection into the
/// entry lead, |1> transmission into the other lead.
struct QubitState {
    complexd a0;
    complexd a1;

    double norm_residual() const {
        return std::abs(std::norm(a0) + std::norm(a1) - 1.0);
    }
};

/// A particle entering from lead 0 leaves the graph in r|0> + t|1>.
inline QubitState scatter_state(const ChannelSMatrix& s) { return {s.r, s.t}; }

/// Alice's graph plus Bob's two configurations. Alice's output channel
/// selects whether B or B' acts on Bob's particle.
struct ControlledPair {
    ChannelSMatrix alice;
    ChannelSMatrix bob;
    ChannelSMatrix bob_mod;
};

/// Two-qubit pure state, basis order |0,0>, |0,1>, |1,0>, |1,1>.
struct JointState {
    complexd c00, c01, c10, c11;

    double norm_residual() const {
        return std::abs(std::norm(c00) + std::norm(c01) + std::norm(c10) +
                        std::norm(c11) - 1.0);
    }

    /// Amplitude matrix M with M(i,j) = <i,j|Psi>; squared singular
    /// values are the reduced-density eigenvalues.
    Eigen::Matrix2cd amplitude_matrix() const {
        Eigen::Matrix2cd m;
        m << c00, c01, c10, c11;
        return m;
    }

    Eigen::Vector4cd vector() const { return {c00, c01, c10, c11}; }
};

/// Controlled scattering: Alice scatters first, then her output channel
/// picks Bob's configuration. Amplitudes (r_A r_B, r_A t_B, t_A r_B',
/// t_A t_B'); normalized whenever each member matrix is unitary.
inline JointState joint_state(const ControlledPair& p) {
    return {p.alice.r * p.bob.r, p.alice.r * p.bob.t,
            p.alice.t * p.bob_mod.r, p.alice.t * p.bob_mod.t};
}

/// Variant where the controlled change is a bare phase on Bob's
/// transmission channel: B' = B with t -> e^{i phi} t.
inline JointState joint_state_channel_phase(const ChannelSMatrix& alice,
                                            const ChannelSMatrix& bob, double phi) {
    return {alice.r * bob.r, alice.r * bob.t, alice.t * bob.r,
            std::polar(1.0, phi) * alice.t * bob.t};
}

/// Hermitian, PSD, unit-trace matrix; 2x2 reduced or 4x4 joint.
struct DensityMatrix {
    Eigen::MatrixXcd entries;

    double trace_residual() const {
        return std::abs(entries.trace() - complexd(1.0, 0.0));
    }

    double hermiticity_residual() const {
        return (entries - entries.adjoint()).cwiseAbs().maxCoeff();
    }

    /// Smallest eigenvalue; >= -tol for a valid density matrix.
    double min_eigenvalue() const {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(entries);
        return es.eigenvalues().minCoeff();
    }
};

/// rho = |Psi><Psi|, rank one by construction.
inline DensityMatrix density_matrix(const JointState& psi) {
    const Eigen::Vector4cd v = psi.vector();
    DensityMatrix rho;
    rho.entries = v * v.adjoint();
    return rho;
}

namespace detail {

inline void require_4x4(const DensityMatrix& rho, const char* who) {
    if (rho.entries.rows() != 4 || rho.entries.cols() != 4) {
        throw std::invalid_argument(std::string(who) + ": expected a 4x4 matrix");
    }
}

} // namespace detail

/// Partial trace over Bob: (rho_A)_{ij} = sum_b rho_{ib,jb}.
inline DensityMatrix reduce_A(const DensityMatrix& rho) {
    detail::require_4x4(rho, "reduce_A");
    DensityMatrix out;
    out.entries.resize(2, 2);
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            out.entries(i, j) = rho.entries(2 * i, 2 * j) +
                                rho.entries(2 * i + 1, 2 * j + 1);
        }
    }
    return out;
}

/// Partial trace over Alice: (rho_B)_{ij} = sum_a rho_{ai,aj}.
inline DensityMatrix reduce_B(const DensityMatrix& rho) {
    detail::require_4x4(rho, "reduce_B");
    DensityMatrix out;
    out.entries.resize(2, 2);
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            out.entries(i, j) =
                rho.entries(i, j) + rho.entries(2 + i, 2 + j);
        }
    }
    return out;
}

/// Randomized-transmission reading of Bob's channel: with p = |t_A|^2
/// this equals <1|rho_B|1> of the controlled pair.
inline double expected_transmission_B(double p, complexd tB, complexd tBp) {
    if (!(p >= 0.0) || !(p <= 1.0)) {
        throw std::invalid_argument("expected_transmission_B: p must be in [0,1]");
    }
    return (1.0 - p) * std::norm(tB) + p * std::norm(tBp);
}

} // namespace qge
