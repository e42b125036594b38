#include "xycorr/oracle.hpp"

#include <bit>
#include <cmath>
#include <future>
#include <numbers>
#include <sstream>

#include "xycorr/measures.hpp"

namespace xycorr {

namespace {

constexpr double kGroundWindow = 1e-12;  // degeneracy threshold at kT = 0
constexpr double kWeightCutoff = 1e-18;  // relative Boltzmann weight below which
                                         // an eigenstate cannot move the result

int bit(std::uint32_t s, int j) { return static_cast<int>((s >> j) & 1u); }

}  // namespace

RingSolver::RingSolver(int n_spins, double gamma, double lambda) : n_(n_spins) {
    if (n_spins > 14) {
        std::ostringstream os;
        os << "ring of " << n_spins << " spins exceeds the dense-diagonalization limit of 14";
        throw SizeTooLarge(os.str());
    }
    if (n_spins < 2) throw DomainError("ring needs at least 2 spins");
    validate_params({gamma, lambda, 0.0});

    const std::uint32_t dim = 1u << n_;
    std::vector<std::int32_t> pos(dim);
    for (int parity = 0; parity < 2; ++parity) {
        Sector& sec = sectors_[static_cast<std::size_t>(parity)];
        for (std::uint32_t s = 0; s < dim; ++s)
            if (std::popcount(s) % 2 == parity) {
                pos[s] = static_cast<std::int32_t>(sec.states.size());
                sec.states.push_back(s);
            }
    }

    // H = -(lambda/2) sum_j [(1+gamma) XX + (1-gamma) YY] - sum_j Z, expressed
    // in the energy units of the dispersion relation (quasiparticle energy
    // 2 omega), i.e. scaled by 1/2 overall so that Gibbs weights at kT match
    // the tanh(omega/kT) factors of the correlator integrals. The bond terms
    // flip two spins at once: amplitude -lambda/2 when the bits differ
    // (hopping), -lambda*gamma/2 when they agree (pair creation).
    auto build_and_solve = [&](int parity) {
        Sector& sec = sectors_[static_cast<std::size_t>(parity)];
        const auto m = static_cast<Eigen::Index>(sec.states.size());
        Eigen::MatrixXd h = Eigen::MatrixXd::Zero(m, m);
        for (Eigen::Index row = 0; row < m; ++row) {
            const std::uint32_t s = sec.states[static_cast<std::size_t>(row)];
            h(row, row) = -0.5 * (n_ - 2 * std::popcount(s));
            for (int j = 0; j < n_; ++j) {
                const int k = (j + 1) % n_;
                const std::uint32_t flipped = s ^ (1u << j) ^ (1u << k);
                const double amp = 0.5 * (bit(s, j) != bit(s, k) ? -lambda : -lambda * gamma);
                h(row, pos[flipped]) += amp;
            }
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
        sec.evals = es.eigenvalues();
        sec.evecs = es.eigenvectors();
    };

    auto other = std::async(std::launch::async, build_and_solve, 1);
    build_and_solve(0);
    other.get();
}

double RingSolver::ground_energy() const {
    return std::min(sectors_[0].evals.minCoeff(), sectors_[1].evals.minCoeff());
}

TwoQubitState RingSolver::thermal_reduced(double kT, int i, int j) const {
    if (!(0 <= i && i < j && j < n_)) throw DomainError("need 0 <= i < j < n_spins");
    if (kT < 0.0) throw DomainError("kT must be >= 0");

    const double e0 = ground_energy();
    auto weight = [&](double e) {
        if (kT == 0.0) return e - e0 <= kGroundWindow ? 1.0 : 0.0;
        return std::exp(-(e - e0) / kT);
    };

    double z = 0.0;
    for (const Sector& sec : sectors_)
        for (Eigen::Index k = 0; k < sec.evals.size(); ++k) z += weight(sec.evals(k));

    // Tr_rest |v><v| accumulated eigenvector by eigenvector: amplitudes are
    // grouped by the configuration of the remaining n-2 spins, whose parity
    // pins (bit_i, bit_j) to two of the four local basis states.
    const std::uint32_t rest_dim = 1u << (n_ - 2);
    Eigen::Matrix4d acc = Eigen::Matrix4d::Zero();
    std::vector<int> slot(rest_dim);       // local basis index of this row
    std::vector<Eigen::Index> row_of(rest_dim);
    for (const Sector& sec : sectors_) {
        // Precompute (rest index, local index) for every basis state.
        std::vector<std::uint32_t> rest_of(sec.states.size());
        std::vector<int> ab_of(sec.states.size());
        for (std::size_t idx = 0; idx < sec.states.size(); ++idx) {
            const std::uint32_t s = sec.states[idx];
            std::uint32_t rest = 0;
            int out = 0;
            for (int b = 0; b < n_; ++b) {
                if (b == i || b == j) continue;
                rest |= static_cast<std::uint32_t>(bit(s, b)) << out;
                ++out;
            }
            rest_of[idx] = rest;
            ab_of[idx] = 2 * bit(s, i) + bit(s, j);
        }

        for (Eigen::Index k = 0; k < sec.evals.size(); ++k) {
            const double w = weight(sec.evals(k));
            if (w <= kWeightCutoff) continue;
            const auto& v = sec.evecs.col(k);
            // Each rest configuration contributes a rank-1 outer product of
            // the two amplitudes living on it.
            std::vector<bool> seen(rest_dim, false);
            for (std::size_t idx = 0; idx < sec.states.size(); ++idx) {
                const std::uint32_t rest = rest_of[idx];
                if (!seen[rest]) {
                    seen[rest] = true;
                    slot[rest] = ab_of[idx];
                    row_of[rest] = static_cast<Eigen::Index>(idx);
                    continue;
                }
                const double u0 = v(row_of[rest]);
                const double u1 = v(static_cast<Eigen::Index>(idx));
                const int a0 = slot[rest];
                const int a1 = ab_of[idx];
                acc(a0, a0) += w * u0 * u0;
                acc(a1, a1) += w * u1 * u1;
                acc(a0, a1) += w * u0 * u1;
                acc(a1, a0) += w * u0 * u1;
            }
        }
    }
    acc /= z;
    return validate_state(acc.cast<Complex>());
}

TwoQubitState ed_thermal_reduced(const RingSpec& spec, int i, int j) {
    validate_params(spec.params);
    RingSolver solver(spec.n_spins, spec.params.gamma, spec.params.lambda);
    return solver.thermal_reduced(spec.params.kT, i, j);
}

Correlators ed_correlators(const RingSpec& spec, int i, int j) {
    const TwoQubitState rho = ed_thermal_reduced(spec, i, j);
    const Eigen::Matrix4cd& m = rho.matrix();
    auto expect = [&m](const Eigen::Matrix4cd& op) { return (m * op).trace().real(); };
    const int d = j - i;
    return Correlators{expect(kron(pauli::Z, pauli::I)),
                       expect(kron(pauli::X, pauli::X)),
                       expect(kron(pauli::Y, pauli::Y)),
                       expect(kron(pauli::Z, pauli::Z)),
                       std::min(d, spec.n_spins - d)};
}

double off_x_norm(const TwoQubitState& rho) {
    const Eigen::Matrix4cd& m = rho.matrix();
    double worst = 0.0;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
            const bool on_pattern = a == b || a + b == 3;
            if (!on_pattern) worst = std::max(worst, std::abs(m(a, b)));
        }
    return worst;
}

namespace {

Eigen::Vector3d bloch_of_qubit(const Eigen::Matrix2cd& rho_a) {
    Eigen::Vector3d a;
    for (int i = 1; i <= 3; ++i) a(i - 1) = (rho_a * pauli::sigma(i)).trace().real();
    return a;
}

/// Unit axes spread over the sphere by the golden-angle spiral.
std::vector<Eigen::Vector3d> fibonacci_sphere(int n) {
    constexpr double golden_angle = 2.39996322972865332;  // pi (3 - sqrt 5)
    std::vector<Eigen::Vector3d> axes;
    axes.reserve(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        const double z = 1.0 - (2.0 * k + 1.0) / n;
        const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
        const double az = golden_angle * k;
        axes.emplace_back(rho * std::cos(az), rho * std::sin(az), z);
    }
    return axes;
}

/// Golden-angle spiral cap of n axes within angular radius theta around c.
std::vector<Eigen::Vector3d> spiral_cap(const Eigen::Vector3d& c, double theta, int n) {
    Eigen::Vector3d u = c.cross(std::abs(c.z()) < 0.9 ? Eigen::Vector3d::UnitZ()
                                                      : Eigen::Vector3d::UnitX());
    u.normalize();
    const Eigen::Vector3d v = c.cross(u);
    constexpr double golden_angle = 2.39996322972865332;
    std::vector<Eigen::Vector3d> axes;
    axes.reserve(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        const double t = theta * std::sqrt((k + 0.5) / n);
        const double az = golden_angle * k;
        axes.push_back(std::cos(t) * c + std::sin(t) * (std::cos(az) * u + std::sin(az) * v));
    }
    return axes;
}

template <class Better>
double search_axes(const TwoQubitState& rho, int n_dirs, Better better) {
    Eigen::Vector3d best_axis = Eigen::Vector3d::UnitZ();
    double best = measurement_disturbance(rho, best_axis);
    for (const auto& axis : fibonacci_sphere(n_dirs)) {
        const double d = measurement_disturbance(rho, axis);
        if (better(d, best)) {
            best = d;
            best_axis = axis;
        }
    }
    // Local refinement pass around the grid winner: golden-angle spiral caps
    // whose radius shrinks geometrically, recentered on each improvement.
    double theta = 2.0 * std::sqrt(4.0 * std::numbers::pi / n_dirs);
    for (int round = 0; round < 40 && theta > 1e-9; ++round, theta *= 0.5) {
        for (const auto& axis : spiral_cap(best_axis, theta, 64)) {
            const double d = measurement_disturbance(rho, axis);
            if (better(d, best)) {
                best = d;
                best_axis = axis.normalized();
            }
        }
    }
    return best;
}

}  // namespace

double measurement_disturbance(const TwoQubitState& rho, const Eigen::Vector3d& axis) {
    const Eigen::Vector3d n = axis.normalized();
    Eigen::Matrix2cd dir = Eigen::Matrix2cd::Zero();
    for (int i = 1; i <= 3; ++i) dir += n(i - 1) * pauli::sigma(i);
    const Eigen::Matrix4cd p_up = kron(0.5 * (pauli::I + dir), pauli::I);
    const Eigen::Matrix4cd p_dn = kron(0.5 * (pauli::I - dir), pauli::I);
    const Eigen::Matrix4cd dephased =
        p_up * rho.matrix() * p_up + p_dn * rho.matrix() * p_dn;
    return 2.0 * (rho.matrix() - dephased).squaredNorm();
}

double min_bruteforce(const TwoQubitState& rho, int n_dirs) {
    if (n_dirs < 100) throw DomainError("min_bruteforce needs n_dirs >= 100");
    const Eigen::Vector3d a = bloch_of_qubit(partial_trace_a(rho));
    // With a nonzero local Bloch vector the only rho^a-preserving von Neumann
    // measurement is the one along it.
    if (0.5 * a.norm() > kBlochZeroEps) return measurement_disturbance(rho, a.normalized());
    return search_axes(rho, n_dirs, [](double d, double best) { return d > best; });
}

double gmqd_bruteforce(const TwoQubitState& rho, int n_dirs) {
    if (n_dirs < 100) throw DomainError("gmqd_bruteforce needs n_dirs >= 100");
    return search_axes(rho, n_dirs, [](double d, double best) { return d < best; });
}

namespace {

Eigen::MatrixXcd ginibre(std::mt19937_64& rng, int rows, int cols) {
    std::normal_distribution<double> normal(0.0, 1.0);
    Eigen::MatrixXcd g(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) g(i, j) = Complex(normal(rng), normal(rng));
    return g;
}

Eigen::MatrixXcd wishart_state(std::mt19937_64& rng, int dim) {
    const Eigen::MatrixXcd g = ginibre(rng, dim, dim);
    Eigen::MatrixXcd rho = g * g.adjoint();
    return rho / rho.trace().real();
}

}  // namespace

XState random_xstate(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    std::uniform_real_distribution<double> half(-0.5, 0.5);
    // Dirichlet(1,1,1,1) populations.
    double p[4];
    double sum = 0.0;
    for (double& v : p) {
        v = -std::log(1.0 - uni(rng));
        sum += v;
    }
    for (double& v : p) v /= sum;
    // Rejection-sample the coherences under the two positivity constraints.
    double r14 = 0.0, r23 = 0.0;
    for (int tries = 0; tries < 100000; ++tries) {
        r14 = half(rng);
        if (r14 * r14 <= p[0] * p[3]) break;
        r14 = 0.0;
    }
    for (int tries = 0; tries < 100000; ++tries) {
        r23 = half(rng);
        if (r23 * r23 <= p[1] * p[2]) break;
        r23 = 0.0;
    }
    return make_xstate(p[0], p[1], p[2], p[3], r14, r23);
}

TwoQubitState random_state(RandomStateKind kind, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    switch (kind) {
        case RandomStateKind::General: return validate_state(wishart_state(rng, 4));
        case RandomStateKind::X: return to_state(random_xstate(seed));
        case RandomStateKind::Pure: {
            Eigen::Vector4cd psi = ginibre(rng, 4, 1);
            psi.normalize();
            return validate_state(psi * psi.adjoint());
        }
        case RandomStateKind::Product: {
            const Eigen::Matrix2cd a = wishart_state(rng, 2);
            const Eigen::Matrix2cd b = wishart_state(rng, 2);
            return validate_state(kron(a, b));
        }
    }
    throw DomainError("unhandled random state kind");
}

Eigen::Matrix2cd random_unitary2(std::mt19937_64& rng) {
    const Eigen::MatrixXcd g = ginibre(rng, 2, 2);
    const Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
    Eigen::Matrix2cd q = qr.householderQ();
    const Eigen::Matrix2cd r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int i = 0; i < 2; ++i) q.col(i) *= r(i, i) / std::abs(r(i, i));
    return q;
}

Eigen::Matrix4cd bell_state(int which) {
    Eigen::Vector4cd psi = Eigen::Vector4cd::Zero();
    const double s = std::numbers::sqrt2 / 2.0;
    switch (which) {
        case 0: psi(0) = s, psi(3) = s; break;   // Phi+
        case 1: psi(0) = s, psi(3) = -s; break;  // Phi-
        case 2: psi(1) = s, psi(2) = s; break;   // Psi+
        default: psi(1) = s, psi(2) = -s; break; // Psi-
    }
    return psi * psi.adjoint();
}

}  // namespace xycorr
