#include "xycorr/measures.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>

namespace xycorr {

namespace {

constexpr double kSqrt2Inv = 0.70710678118654752440;

double clamp_nonneg(double v) { return v > 0.0 ? v : 0.0; }

/// I(rho, X) given the precomputed square root of rho. The commutator C is
/// anti-Hermitian, so -1/2 tr C^2 = 1/2 ||C||_F^2 >= 0.
double skew_with_sqrt(const Eigen::MatrixXcd& sqrt_rho, const Eigen::MatrixXcd& obs) {
    const Eigen::MatrixXcd comm = sqrt_rho * obs - obs * sqrt_rho;
    return 0.5 * comm.squaredNorm();
}

}  // namespace

const char* to_string(MeasureKind kind) {
    switch (kind) {
        case MeasureKind::Min: return "MIN";
        case MeasureKind::Wysim: return "WYSIM";
        case MeasureKind::Gmqd: return "GMQD";
        case MeasureKind::Omqc: return "OMQC";
        case MeasureKind::Concurrence: return "CONCURRENCE";
    }
    return "?";
}

MeasureKind parse_measure(const std::string& name) {
    std::string up = name;
    std::transform(up.begin(), up.end(), up.begin(),
                   [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    for (MeasureKind kind : kAllMeasures)
        if (up == to_string(kind)) return kind;
    throw DomainError("unknown measure '" + name + "'");
}

double min_closed(const BlochDecomposition& b) {
    const Eigen::Matrix3d m = b.t * b.t.transpose();
    const double xnorm = b.x.norm();
    if (xnorm > kBlochZeroEps) {
        const Eigen::Vector3d xhat = b.x / xnorm;
        return clamp_nonneg(2.0 * (m.trace() - xhat.dot(m * xhat)));
    }
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(m);
    return clamp_nonneg(2.0 * (m.trace() - es.eigenvalues().minCoeff()));
}

double min_xstate(const XState& s) {
    const double bloch_z = s.r11 + s.r22 - s.r33 - s.r44;
    if (std::abs(bloch_z) <= 2.0 * kBlochZeroEps)
        throw BlochVectorZero("X state has zero local Bloch vector; use min_closed");
    return 4.0 * (s.r23 * s.r23 + s.r14 * s.r14);
}

double skew_information(const Eigen::MatrixXcd& rho, const Eigen::MatrixXcd& obs) {
    return skew_with_sqrt(matrix_sqrt_psd(rho), obs);
}

double wysim(const TwoQubitState& rho) {
    const Eigen::MatrixXcd sqrt_ab = matrix_sqrt_psd(rho.matrix());
    const Eigen::MatrixXcd sqrt_a = matrix_sqrt_psd(partial_trace_a(rho));
    double q_ab = 0.0, q_a = 0.0;
    for (int i = 1; i <= 3; ++i) {
        const Eigen::Matrix2cd local = kSqrt2Inv * pauli::sigma(i);
        q_ab += skew_with_sqrt(sqrt_ab, kron(local, pauli::I));
        q_a += skew_with_sqrt(sqrt_a, local);
    }
    return clamp_nonneg((2.0 / 3.0) * (q_ab - q_a));
}

double gmqd_closed(const BlochDecomposition& b) {
    const Eigen::Matrix3d s = b.x * b.x.transpose() + b.t * b.t.transpose();
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(s);
    return clamp_nonneg(2.0 * (s.trace() - es.eigenvalues().maxCoeff()));
}

double omqc(const BlochDecomposition& b) {
    const Eigen::Matrix3d s = b.x * b.x.transpose() + b.t * b.t.transpose();
    const double tr_s = s.trace();
    const double tr_s2 = s.squaredNorm();  // tr S^2 for symmetric S
    const double radicand = clamp_nonneg(6.0 * tr_s2 - 2.0 * tr_s * tr_s);
    return clamp_nonneg((2.0 / 3.0) * (2.0 * tr_s - std::sqrt(radicand)));
}

double concurrence_general(const TwoQubitState& rho) {
    static const Eigen::Matrix4cd spin_flip = kron(pauli::Y, pauli::Y);
    const Eigen::Matrix4cd flipped = spin_flip * rho.matrix().conjugate() * spin_flip;
    Eigen::ComplexEigenSolver<Eigen::Matrix4cd> es(rho.matrix() * flipped, false);
    std::array<double, 4> ev;
    for (int i = 0; i < 4; ++i) ev[i] = clamp_nonneg(es.eigenvalues()(i).real());
    std::sort(ev.begin(), ev.end(), std::greater<>());
    return clamp_nonneg(std::sqrt(ev[0]) - std::sqrt(ev[1]) - std::sqrt(ev[2]) - std::sqrt(ev[3]));
}

double concurrence_xstate(const XState& s) {
    const double inner = std::abs(s.r14) - std::sqrt(clamp_nonneg(s.r22 * s.r33));
    const double outer = std::abs(s.r23) - std::sqrt(clamp_nonneg(s.r11 * s.r44));
    return 2.0 * clamp_nonneg(std::max(inner, outer));
}

double evaluate(MeasureKind kind, const TwoQubitState& rho) {
    switch (kind) {
        case MeasureKind::Min: return min_closed(bloch_decompose(rho));
        case MeasureKind::Wysim: return wysim(rho);
        case MeasureKind::Gmqd: return gmqd_closed(bloch_decompose(rho));
        case MeasureKind::Omqc: return omqc(bloch_decompose(rho));
        case MeasureKind::Concurrence: return concurrence_general(rho);
    }
    throw DomainError("unhandled measure kind");
}

double evaluate(MeasureKind kind, const XState& s) {
    switch (kind) {
        case MeasureKind::Min: {
            const double bloch_z = s.r11 + s.r22 - s.r33 - s.r44;
            if (std::abs(bloch_z) > 2.0 * kBlochZeroEps) return min_xstate(s);
            return min_closed(bloch_decompose(to_state(s)));
        }
        case MeasureKind::Concurrence: return concurrence_xstate(s);
        case MeasureKind::Wysim: return wysim(to_state(s));
        case MeasureKind::Gmqd: return gmqd_closed(bloch_decompose(to_state(s)));
        case MeasureKind::Omqc: return omqc(bloch_decompose(to_state(s)));
    }
    throw DomainError("unhandled measure kind");
}

}  // namespace xycorr
