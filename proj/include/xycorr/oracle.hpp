#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <vector>

#include "xycorr/qstate.hpp"
#include "xycorr/xymodel.hpp"

namespace xycorr {

/// A finite periodic ring, diagonalized densely. 2 <= n_spins <= 14.
struct RingSpec {
    int n_spins;
    ModelParams params;
};

/// Dense exact diagonalization of the XY ring, split into the two
/// spin-flip-parity sectors the Hamiltonian preserves. One instance serves any
/// number of temperatures and spin pairs.
class RingSolver {
  public:
    RingSolver(int n_spins, double gamma, double lambda);

    /// Gibbs-state reduced density matrix of spins (i, j), 0 <= i < j < n.
    /// kT = 0 means an equal-weight mixture over the (quasi-)degenerate ground
    /// space (energy window 1e-12).
    TwoQubitState thermal_reduced(double kT, int i, int j) const;

    double ground_energy() const;
    int n_spins() const { return n_; }

  private:
    struct Sector {
        std::vector<std::uint32_t> states;
        Eigen::VectorXd evals;
        Eigen::MatrixXd evecs;
    };

    int n_;
    std::array<Sector, 2> sectors_;
};

/// One-shot convenience wrapper around RingSolver.
TwoQubitState ed_thermal_reduced(const RingSpec& spec, int i, int j);

/// The four correlators of the ED reduced state of spins (i, j).
Correlators ed_correlators(const RingSpec& spec, int i, int j);

/// Largest off-X-pattern matrix element; the parity symmetry of the Gibbs
/// state keeps this at round-off level.
double off_x_norm(const TwoQubitState& rho);

/// Variational MIN straight from the definition: the maximal disturbance
/// 2 ||rho - Pi^a(rho)||^2 over local von Neumann measurements preserving
/// rho^a. With a nonzero local Bloch vector the measurement is unique; at
/// zero Bloch vector the axis is searched on a Fibonacci sphere of n_dirs
/// points with one local refinement pass.
double min_bruteforce(const TwoQubitState& rho, int n_dirs);

/// Variational GMQD: minimal disturbance over all local measurement axes
/// (the nearest zero-discord state at a fixed axis is the dephased state).
double gmqd_bruteforce(const TwoQubitState& rho, int n_dirs);

/// Hilbert-Schmidt disturbance 2 ||rho - Pi^a(rho)||^2 of measuring qubit a
/// along the given axis.
double measurement_disturbance(const TwoQubitState& rho, const Eigen::Vector3d& axis);

enum class RandomStateKind { General, X, Pure, Product };

/// Deterministic per seed. General states use a normalized Wishart-style
/// construction; X states rejection-sample the coherences under positivity.
TwoQubitState random_state(RandomStateKind kind, std::uint64_t seed);

XState random_xstate(std::uint64_t seed);

/// Haar-ish random single-qubit unitary.
Eigen::Matrix2cd random_unitary2(std::mt19937_64& rng);

/// The four Bell states as density matrices:
/// 0 -> Phi+, 1 -> Phi-, 2 -> Psi+, 3 -> Psi-.
Eigen::Matrix4cd bell_state(int which);

}  // namespace xycorr
