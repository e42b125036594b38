#pragma once

#include <string>

#include "xycorr/qstate.hpp"

namespace xycorr {

enum class MeasureKind { Min, Wysim, Gmqd, Omqc, Concurrence };

inline constexpr MeasureKind kAllMeasures[] = {MeasureKind::Min, MeasureKind::Wysim,
                                               MeasureKind::Gmqd, MeasureKind::Omqc,
                                               MeasureKind::Concurrence};

const char* to_string(MeasureKind kind);
/// Parses "MIN", "WYSIM", "GMQD", "OMQC", "CONCURRENCE" (case-insensitive).
MeasureKind parse_measure(const std::string& name);

/// Measurement-induced nonlocality, closed form for two qubits:
///   2 (tr TT^t - x^t TT^t x / |x|^2)            when |x| > eps_x,
///   2 (tr TT^t - lambda_min(TT^t))              when |x| <= eps_x.
double min_closed(const BlochDecomposition& b);

/// MIN fast path for X states with nonzero local Bloch vector:
/// 4 (r23^2 + r14^2). Throws BlochVectorZero when r11 + r22 = r33 + r44;
/// the caller must fall back to min_closed.
double min_xstate(const XState& s);

/// Wigner-Yanase skew information I(rho, X) = -1/2 tr [sqrt(rho), X]^2.
double skew_information(const Eigen::MatrixXcd& rho, const Eigen::MatrixXcd& obs);

/// Skew-information measure of total correlations,
/// F = 2/3 (Q_a(rho^ab) - Q_a(rho^a)) summed over the local orthonormal
/// basis {sigma_i / sqrt2}.
double wysim(const TwoQubitState& rho);

/// Geometric quantum discord, D_G = 2 (tr S - lambda_max(S)), S = x x^t + TT^t.
double gmqd_closed(const BlochDecomposition& b);

/// Observable lower bound to the GMQD:
/// Q = 2/3 (2 tr S - sqrt(6 tr S^2 - 2 (tr S)^2)).
double omqc(const BlochDecomposition& b);

/// Wootters concurrence from the spin-flipped matrix
/// rho~ = (sigma_y ⊗ sigma_y) rho* (sigma_y ⊗ sigma_y).
double concurrence_general(const TwoQubitState& rho);

/// Concurrence fast path for X states:
/// 2 max{0, |r14| - sqrt(r22 r33), |r23| - sqrt(r11 r44)}.
double concurrence_xstate(const XState& s);

/// Closed-form dispatch over the general state.
double evaluate(MeasureKind kind, const TwoQubitState& rho);
/// Dispatch over an X state, using the X fast paths where they exist.
double evaluate(MeasureKind kind, const XState& s);

/// Bloch-vector-zero threshold for branch selection in MIN.
inline constexpr double kBlochZeroEps = 1e-9;

}  // namespace xycorr
