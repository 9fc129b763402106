#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "qge/qubit.hpp"
#include "qge/smatrix.hpp"

namespace qge {

/// Bob-configuration overlap g = r_B r_B'* + t_B t_B'*. |g| = 1 means
/// the modification is a global phase (separable); |g| = 0 is the
/// orthogonality needed for maximal entanglement.
inline complexd bob_overlap(const ControlledPair& p) {
    return p.bob.r * std::conj(p.bob_mod.r) + p.bob.t * std::conj(p.bob_mod.t);
}

namespace detail {

/// lambda_pm from the scalar data (|r_A|^2, |t_A|^2, |g|^2).
inline std::pair<double, double> lambda_core(double rA2, double tA2,
                                             double overlap2, double tol = 1e-12) {
    double radicand = 1.0 - 4.0 * rA2 * tA2 * (1.0 - overlap2);
    if (radicand < -tol || radicand > 1.0 + tol) {
        throw std::domain_error(
            "lambda_pm: radicand " + std::to_string(radicand) +
            " outside [0,1]; inputs are not a valid controlled pair");
    }
    radicand = std::clamp(radicand, 0.0, 1.0);
    const double root = std::sqrt(radicand);
    return {0.5 * (1.0 + root), 0.5 * (1.0 - root)};
}

} // namespace detail

/// Closed-form eigenvalues of Alice's reduced density matrix.
inline std::pair<double, double> lambda_pm(const ControlledPair& p) {
    return detail::lambda_core(std::norm(p.alice.r), std::norm(p.alice.t),
                               std::norm(bob_overlap(p)));
}

/// Von Neumann entropy in bits of a two-level spectrum.
inline double entropy(std::pair<double, double> lambdas) {
    auto term = [](double l) { return l > 0.0 ? -l * std::log2(l) : 0.0; };
    return term(lambdas.first) + term(lambdas.second);
}

/// |r_A|^2 |t_A|^2 (1 - |g|^2); zero iff the state is separable.
inline double separability_residual(const ControlledPair& p) {
    return std::norm(p.alice.r) * std::norm(p.alice.t) *
           (1.0 - std::norm(bob_overlap(p)));
}

/// Distance of the same expression from 1/4; zero iff maximally entangled.
inline double max_ent_residual(const ControlledPair& p) {
    return std::abs(separability_residual(p) - 0.25);
}

/// Full report for one controlled pair.
struct EntanglementReport {
    double lambda_plus;
    double lambda_minus;
    double entropy_bits;
    double max_ent_residual;
    double separability_residual;
};

inline EntanglementReport analyze(const ControlledPair& p) {
    const auto l = lambda_pm(p);
    return {l.first, l.second, entropy(l), max_ent_residual(p),
            separability_residual(p)};
}

// ---------------------------------------------------------------------------
// Edge-phase solver: phi such that tan(y) tan(y + phi) = -4, the
// orthogonality condition for two identical stars whose controlled change
// is a phase on the dead-end arm.

/// phi = -arctan(3 sin 2y / (5 + 3 cos 2y)) + (2n+1) pi/2. The
/// denominator is >= 2, so every y is regular.
inline double solve_phi(double kBl, int n) {
    const double s = 3.0 * std::sin(2.0 * kBl);
    const double c = 5.0 + 3.0 * std::cos(2.0 * kBl);
    return -std::atan(s / c) + (2.0 * n + 1.0) * std::numbers::pi / 2.0;
}

/// Normalized orthogonality residual |R(y)R*(y') + T(y)T*(y')| with
/// y' = y + phi. Bounded on all of R, zero exactly when
/// tan(y) tan(y') = -4 (including the cos -> 0 limits).
inline double phi_plugback_residual(double kBl, double phi) {
    const double y = kBl;
    const double yp = kBl + phi;
    const double num = std::sin(y) * std::sin(yp) + 4.0 * std::cos(y) * std::cos(yp);
    const double na = std::sqrt(std::sin(y) * std::sin(y) +
                                4.0 * std::cos(y) * std::cos(y));
    const double nb = std::sqrt(std::sin(yp) * std::sin(yp) +
                                4.0 * std::cos(yp) * std::cos(yp));
    return std::abs(num) / (na * nb);
}

// ---------------------------------------------------------------------------
// Table of single-qubit gates realizable by the phase-parameter star.

enum class Gate {
    Identity,
    GlobalPhase,
    PauliX,
    PauliZ,
    Hadamard,
};

struct GateSpec {
    Gate gate = Gate::Identity;
    int n_phi = 0;
    int n_alpha = 0;
    int n_beta = 0;
    double delta = 0.0;    // GlobalPhase only
    double alpha = 0.0;    // PauliX only: free choice, beta follows
    bool plus_sign = true; // Hadamard only: branch of the arctan(2) offsets
};

/// Star parameters realizing the requested gate. The Hadamard branch
/// sign flips the arctan(2) offset in x and the 3/8 and 1/8 pi offsets
/// in alpha and beta together; flipping only x never yields Hadamard.
inline StarPhaseParams gate_params(const GateSpec& spec) {
    constexpr double pi = std::numbers::pi;
    const double nphi = spec.n_phi;
    const double nalpha = spec.n_alpha;
    const double nbeta = spec.n_beta;
    switch (spec.gate) {
        case Gate::Identity:
            return {(nphi + 0.5) * pi, (nalpha + 0.5) * pi, (nbeta + 0.5) * pi};
        case Gate::GlobalPhase:
            return {(nphi + 0.5) * pi, (nalpha + 0.5) * pi + 0.5 * spec.delta,
                    (nbeta + 0.5) * pi + 0.5 * spec.delta};
        case Gate::PauliX:
            return {nphi * pi, spec.alpha, 2.0 * nbeta * pi - spec.alpha};
        case Gate::PauliZ:
            return {(nphi + 0.5) * pi, (nalpha + 0.5) * pi, nbeta * pi};
        case Gate::Hadamard: {
            const double s = spec.plus_sign ? 1.0 : -1.0;
            return {s * std::atan(2.0) + nphi * pi, (nalpha - s * 0.375) * pi,
                    (2.0 * nbeta - nalpha + s * 0.125) * pi};
        }
    }
    throw std::invalid_argument("gate_params: unknown gate");
}

inline Eigen::Matrix2cd canonical_gate(const GateSpec& spec) {
    Eigen::Matrix2cd m;
    switch (spec.gate) {
        case Gate::Identity:
            m = Eigen::Matrix2cd::Identity();
            break;
        case Gate::GlobalPhase:
            m = std::polar(1.0, spec.delta) * Eigen::Matrix2cd::Identity();
            break;
        case Gate::PauliX:
            m << 0, 1, 1, 0;
            break;
        case Gate::PauliZ:
            m << 1, 0, 0, -1;
            break;
        case Gate::Hadamard:
            m << 1, 1, 1, -1;
            m /= std::numbers::sqrt2;
            break;
        default:
            throw std::invalid_argument("canonical_gate: unknown gate");
    }
    return m;
}

/// Max elementwise distance between two 2x2 matrices after removing the
/// global phase of each, read off at the largest-magnitude entry of the
/// first matrix.
inline double deviation_up_to_phase(const Eigen::Matrix2cd& got,
                                    const Eigen::Matrix2cd& want) {
    Eigen::Index mi = 0, mj = 0;
    got.cwiseAbs().maxCoeff(&mi, &mj);
    if (std::abs(got(mi, mj)) == 0.0 || std::abs(want(mi, mj)) == 0.0) {
        return (got - want).cwiseAbs().maxCoeff();
    }
    const complexd pg = got(mi, mj) / std::abs(got(mi, mj));
    const complexd pw = want(mi, mj) / std::abs(want(mi, mj));
    return (got / pg - want / pw).cwiseAbs().maxCoeff();
}

struct GateReport {
    StarPhaseParams params;
    Eigen::Matrix2cd achieved;
    double deviation;
    bool passed;
};

/// Builds the star S-matrix at the synthesized parameters and compares
/// it against the canonical gate up to global phase.
inline GateReport verify_gate(const GateSpec& spec, double tol = 1e-10) {
    const StarPhaseParams params = gate_params(spec);
    const FullSMatrix s = star4_phase_form(params);
    const Eigen::Matrix2cd achieved = s.entries;
    const double dev = deviation_up_to_phase(achieved, canonical_gate(spec));
    return {params, achieved, dev, dev <= tol};
}

} // namespace qge
