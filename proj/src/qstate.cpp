#include "xycorr/qstate.hpp"

#include <cmath>
#include <sstream>

namespace xycorr {

namespace {

std::string fmt_violation(const char* what, double magnitude) {
    std::ostringstream os;
    os << what << " (violation " << magnitude << ")";
    return os.str();
}

}  // namespace

TwoQubitState::TwoQubitState(const Eigen::Matrix4cd& m, double tol) {
    const double herm_err = (m - m.adjoint()).cwiseAbs().maxCoeff();
    if (herm_err > tol) throw NotHermitian(fmt_violation("state is not Hermitian", herm_err));
    const Eigen::Matrix4cd h = 0.5 * (m + m.adjoint());

    const double trace_err = std::abs(h.trace() - Complex(1.0));
    if (trace_err > tol) throw TraceNotOne(fmt_violation("state trace differs from 1", trace_err));

    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(h);
    const Eigen::Vector4d ev = es.eigenvalues();
    if (ev.minCoeff() < -tol)
        throw NotPositive(fmt_violation("state has a negative eigenvalue", -ev.minCoeff()));

    // Clamp round-off-level violations into [0, 1] and restore unit trace.
    if (ev.minCoeff() < 0.0 || ev.maxCoeff() > 1.0) {
        Eigen::Vector4d clamped = ev.cwiseMax(0.0).cwiseMin(1.0);
        clamped /= clamped.sum();
        rho_ = es.eigenvectors() * clamped.asDiagonal() * es.eigenvectors().adjoint();
    } else {
        rho_ = h;
    }
}

TwoQubitState validate_state(const Eigen::Matrix4cd& m, double tol) {
    return TwoQubitState(m, tol);
}

XState make_xstate(double r11, double r22, double r33, double r44, double r14, double r23,
                   double tol) {
    const double sum = r11 + r22 + r33 + r44;
    if (std::abs(sum - 1.0) > 1e-12)
        throw TraceNotOne(fmt_violation("X-state populations do not sum to 1", std::abs(sum - 1.0)));
    const double min_pop = std::min(std::min(r11, r22), std::min(r33, r44));
    if (min_pop < -tol)
        throw NotPositive(fmt_violation("X-state population is negative", -min_pop));
    const double inner = r23 * r23 - r22 * r33;
    if (inner > tol)
        throw NotPositive(fmt_violation("X-state inner block violates positivity", inner));
    const double outer = r14 * r14 - r11 * r44;
    if (outer > tol)
        throw NotPositive(fmt_violation("X-state outer block violates positivity", outer));
    return XState{r11, r22, r33, r44, r14, r23};
}

Eigen::Matrix4cd to_matrix(const XState& s) {
    Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
    m(0, 0) = s.r11;
    m(1, 1) = s.r22;
    m(2, 2) = s.r33;
    m(3, 3) = s.r44;
    m(0, 3) = m(3, 0) = s.r14;
    m(1, 2) = m(2, 1) = s.r23;
    return m;
}

TwoQubitState to_state(const XState& s) { return validate_state(to_matrix(s)); }

BlochDecomposition bloch_decompose(const TwoQubitState& rho) {
    const Eigen::Matrix4cd& m = rho.matrix();
    BlochDecomposition b;
    for (int i = 1; i <= 3; ++i) {
        b.x(i - 1) = 0.5 * (m * kron(pauli::sigma(i), pauli::I)).trace().real();
        b.y(i - 1) = 0.5 * (m * kron(pauli::I, pauli::sigma(i))).trace().real();
        for (int j = 1; j <= 3; ++j)
            b.t(i - 1, j - 1) = 0.5 * (m * kron(pauli::sigma(i), pauli::sigma(j))).trace().real();
    }
    return b;
}

Eigen::Matrix4cd reconstruct(const BlochDecomposition& b) {
    Eigen::Matrix4cd m = 0.25 * Eigen::Matrix4cd::Identity();
    for (int i = 1; i <= 3; ++i) {
        m += 0.5 * b.x(i - 1) * kron(pauli::sigma(i), pauli::I);
        m += 0.5 * b.y(i - 1) * kron(pauli::I, pauli::sigma(i));
        for (int j = 1; j <= 3; ++j)
            m += 0.5 * b.t(i - 1, j - 1) * kron(pauli::sigma(i), pauli::sigma(j));
    }
    return m;
}

XState xstate_from_correlators(const Correlators& c) {
    const double r11 = 0.25 * (1.0 + 2.0 * c.mz + c.zz);
    const double r44 = 0.25 * (1.0 - 2.0 * c.mz + c.zz);
    const double r22 = 0.25 * (1.0 - c.zz);
    const double r14 = 0.25 * (c.xx - c.yy);
    const double r23 = 0.25 * (c.xx + c.yy);
    return make_xstate(r11, r22, r22, r44, r14, r23);
}

Eigen::Matrix2cd partial_trace_a(const TwoQubitState& rho) {
    const Eigen::Matrix4cd& m = rho.matrix();
    Eigen::Matrix2cd out;
    for (int a = 0; a < 2; ++a)
        for (int ap = 0; ap < 2; ++ap) out(a, ap) = m(2 * a, 2 * ap) + m(2 * a + 1, 2 * ap + 1);
    return out;
}

Eigen::Matrix2cd partial_trace_b(const TwoQubitState& rho) {
    const Eigen::Matrix4cd& m = rho.matrix();
    Eigen::Matrix2cd out;
    for (int b = 0; b < 2; ++b)
        for (int bp = 0; bp < 2; ++bp) out(b, bp) = m(b, bp) + m(2 + b, 2 + bp);
    return out;
}

Eigen::MatrixXcd matrix_sqrt_psd(const Eigen::MatrixXcd& m, double tol) {
    const double herm_err = (m - m.adjoint()).cwiseAbs().maxCoeff();
    if (herm_err > tol) throw NotHermitian(fmt_violation("matrix is not Hermitian", herm_err));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(0.5 * (m + m.adjoint()));
    Eigen::VectorXd ev = es.eigenvalues();
    if (ev.minCoeff() < -tol)
        throw NotPositive(fmt_violation("matrix has a negative eigenvalue", -ev.minCoeff()));
    // Eigenvalues at round-off level are zeroed outright: the square root
    // amplifies rank-deficiency noise from 1e-16 to 1e-8 otherwise.
    const double floor = 1e-14 * std::max(ev.maxCoeff(), 0.0);
    const Eigen::VectorXd root =
        (ev.array() < floor).select(Eigen::VectorXd::Zero(ev.size()), ev).cwiseSqrt();
    return es.eigenvectors() * root.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace xycorr
