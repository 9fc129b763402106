#pragma once

#include <complex>
#include <random>
#include <utility>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "qge/qubit.hpp"
#include "qge/smatrix.hpp"

namespace qge::testing {

/// Random member of the symmetric-unitary family [[r,t],[t,r]]:
/// r = e^{i theta} cos(mu), t = i e^{i theta} sin(mu).
inline ChannelSMatrix random_channel(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> angle(0.0, 2.0 * 3.14159265358979323846);
    const double theta = angle(rng);
    const double mu = angle(rng);
    const complexd phase = std::polar(1.0, theta);
    return {phase * std::cos(mu), complexd(0.0, 1.0) * phase * std::sin(mu), 1.0};
}

inline ControlledPair random_pair(std::mt19937_64& rng) {
    return {random_channel(rng), random_channel(rng), random_channel(rng)};
}

/// Channel matrix orthogonal to s in the (r,t) amplitude sense:
/// r s.r* + t s.t* = 0. chi is a free overall phase.
inline ChannelSMatrix orthogonal_channel(const ChannelSMatrix& s, double chi = 0.0) {
    const complexd ph = std::polar(1.0, chi);
    return {-std::conj(s.t) * ph, std::conj(s.r) * ph, s.k};
}

/// Schmidt spectrum of a two-qubit pure state: squared singular values
/// of the amplitude matrix. Independent of the closed-form lambda route.
inline std::pair<double, double> schmidt_lambdas(const JointState& psi) {
    Eigen::JacobiSVD<Eigen::Matrix2cd> svd(psi.amplitude_matrix());
    const auto sv = svd.singularValues();
    return {sv(0) * sv(0), sv(1) * sv(1)};
}

/// Reduced density matrices by the rank-1 algebraic route: for
/// rho = vv^dagger with amplitude matrix M, rho_A = M M^dagger and
/// rho_B = M^T M^*.
inline Eigen::Matrix2cd reduce_A_oracle(const JointState& psi) {
    const Eigen::Matrix2cd m = psi.amplitude_matrix();
    return m * m.adjoint();
}

inline Eigen::Matrix2cd reduce_B_oracle(const JointState& psi) {
    const Eigen::Matrix2cd m = psi.amplitude_matrix();
    return m.transpose() * m.conjugate();
}

/// Ascending eigenvalues of a 2x2 Hermitian matrix via the dense solver.
inline std::pair<double, double> hermitian_eigs(const Eigen::Matrix2cd& m) {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(m);
    return {es.eigenvalues()(0), es.eigenvalues()(1)};
}

} // namespace qge::testing
