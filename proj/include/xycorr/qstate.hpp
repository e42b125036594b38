#pragma once

#include <Eigen/Dense>

#include "xycorr/errors.hpp"
#include "xycorr/pauli.hpp"

namespace xycorr {

/// Thermodynamic-limit two-point functions at spin distance r.
struct Correlators {
    double mz;  // <sigma^z>
    double xx;  // <sigma^x_0 sigma^x_r>
    double yy;  // <sigma^y_0 sigma^y_r>
    double zz;  // <sigma^z_0 sigma^z_r>
    int r;
};

/// A validated two-qubit density matrix: Hermitian, unit trace, positive
/// semidefinite (eigenvalues in [-tol, 1+tol] are clamped into [0, 1]).
class TwoQubitState {
  public:
    static constexpr double kDefaultTol = 1e-10;

    explicit TwoQubitState(const Eigen::Matrix4cd& m, double tol = kDefaultTol);

    const Eigen::Matrix4cd& matrix() const { return rho_; }

  private:
    Eigen::Matrix4cd rho_;
};

/// Checks the three density-matrix invariants at tolerance tol and returns the
/// state. Throws NotHermitian / TraceNotOne / NotPositive naming the violated
/// invariant and its magnitude.
TwoQubitState validate_state(const Eigen::Matrix4cd& m, double tol = TwoQubitState::kDefaultTol);

/// Real X-shaped two-qubit state: nonzero entries on the diagonal and the
/// anti-diagonal only, with symmetric coherences r14 and r23.
struct XState {
    double r11, r22, r33, r44;  // populations
    double r14, r23;            // anti-diagonal coherences
};

/// Validates populations and the two positivity conditions
/// r22*r33 >= r23^2 and r11*r44 >= r14^2 (slack tol).
XState make_xstate(double r11, double r22, double r33, double r44, double r14, double r23,
                   double tol = 1e-10);

Eigen::Matrix4cd to_matrix(const XState& s);
TwoQubitState to_state(const XState& s);

/// Bloch-basis expansion coefficients in the orthonormal Hermitian basis
/// {I/sqrt2, sigma_x/sqrt2, sigma_y/sqrt2, sigma_z/sqrt2}:
///   x_i = tr rho (X_i ⊗ I)/sqrt2,  y_j = tr rho (I ⊗ X_j)/sqrt2,
///   t_ij = tr rho (X_i ⊗ X_j),
/// so that x_i = <sigma_i ⊗ I>/2 and t_ij = <sigma_i ⊗ sigma_j>/2.
struct BlochDecomposition {
    Eigen::Vector3d x;
    Eigen::Vector3d y;
    Eigen::Matrix3d t;
};

BlochDecomposition bloch_decompose(const TwoQubitState& rho);

/// Inverse of bloch_decompose: rebuilds the density matrix from (x, y, T).
Eigen::Matrix4cd reconstruct(const BlochDecomposition& b);

/// Assembles the X state of the thermal chain from its correlators:
///   r11 = (1 + 2 mz + zz)/4, r44 = (1 - 2 mz + zz)/4,
///   r22 = r33 = (1 - zz)/4, r14 = (xx - yy)/4, r23 = (xx + yy)/4.
/// Throws NotPositive when the correlators are inconsistent.
XState xstate_from_correlators(const Correlators& c);

/// Reduced state of qubit a (traces out b).
Eigen::Matrix2cd partial_trace_a(const TwoQubitState& rho);
/// Reduced state of qubit b (traces out a).
Eigen::Matrix2cd partial_trace_b(const TwoQubitState& rho);

/// Principal square root of a positive-semidefinite Hermitian matrix.
/// Eigenvalues in [-tol, 0) are clamped to zero; below -tol throws NotPositive.
Eigen::MatrixXcd matrix_sqrt_psd(const Eigen::MatrixXcd& m, double tol = 1e-10);

}  // namespace xycorr
