#pragma once

#include <Eigen/Dense>
#include <complex>

namespace xycorr {

using Complex = std::complex<double>;

namespace pauli {

inline const Eigen::Matrix2cd I = Eigen::Matrix2cd::Identity();

inline const Eigen::Matrix2cd X = (Eigen::Matrix2cd() << 0, 1,  //
                                   1, 0)
                                      .finished();

inline const Eigen::Matrix2cd Y = (Eigen::Matrix2cd() << Complex(0, 0), Complex(0, -1),  //
                                   Complex(0, 1), Complex(0, 0))
                                      .finished();

inline const Eigen::Matrix2cd Z = (Eigen::Matrix2cd() << 1, 0,  //
                                   0, -1)
                                      .finished();

/// sigma(1) = X, sigma(2) = Y, sigma(3) = Z.
inline const Eigen::Matrix2cd& sigma(int i) {
    switch (i) {
        case 1: return X;
        case 2: return Y;
        default: return Z;
    }
}

}  // namespace pauli

/// Kronecker product of two single-qubit operators, basis order |ab> = |a> ⊗ |b>.
inline Eigen::Matrix4cd kron(const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b) {
    Eigen::Matrix4cd out;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
    return out;
}

}  // namespace xycorr
