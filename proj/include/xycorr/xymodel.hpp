#pragma once

#include <memory>
#include <vector>

#include "xycorr/qstate.hpp"

namespace xycorr {

/// Hamiltonian point of the anisotropic XY chain in a transverse field,
/// dimensionless units with k_b = 1. kT = 0 means the beta -> infinity limit,
/// handled exactly (tanh == 1), never by a large finite beta.
struct ModelParams {
    double gamma;   // anisotropy, in [0, 1]
    double lambda;  // inverse-field strength, >= 0
    double kT;      // temperature, >= 0
};

/// Throws DomainError unless 0 <= gamma <= 1, lambda >= 0, kT >= 0.
void validate_params(const ModelParams& p);

/// Quasiparticle dispersion
///   omega(phi) = sqrt((gamma lambda sin phi)^2 + (1 + lambda cos phi)^2) / 2,
/// zero only at (lambda = 1, phi = pi) and on the gamma = 0 gapless region.
double dispersion(const ModelParams& p, double phi);

/// Transverse magnetization
///  <sigma^z> = -int_0^pi (1 + lambda cos phi) tanh(beta omega) / (2 pi omega) dphi.
double magnetization(const ModelParams& p);

/// The G kernel on k in [-r, r]:
///   G_k = int_0^pi tanh(beta omega) cos(k phi) (1 + lambda cos phi) / (2 pi omega) dphi
///       - gamma lambda int_0^pi tanh(beta omega) sin(k phi) sin(phi) / (2 pi omega) dphi.
/// Note G_0 = -<sigma^z>.
struct GSequence {
    ModelParams params;
    int r;
    std::vector<double> values;  // values[k + r] = G_k

    double at(int k) const { return values[static_cast<std::size_t>(k + r)]; }
};

GSequence g_sequence(const ModelParams& p, int r);

/// <sigma^x_0 sigma^x_r>: r x r Toeplitz determinant with entries G_{i-j-1},
/// evaluated by LU with partial pivoting.
double correlator_xx(const GSequence& g, int r);
/// <sigma^y_0 sigma^y_r>: Toeplitz determinant with entries G_{i-j+1}.
double correlator_yy(const GSequence& g, int r);
/// <sigma^z_0 sigma^z_r> = <sigma^z>^2 - G_r G_{-r}.
double correlator_zz(const GSequence& g, int r);

/// All four correlators at distance r (uses the shared G cache).
Correlators correlators(const ModelParams& p, int r);

/// Thermal two-spin reduced density matrix at distance r, assembled from the
/// correlators via the X-state expansion.
XState reduced_state(const ModelParams& p, int r);

/// Read-through memo for G sequences keyed by bit-identical (params, r).
/// Insertion is mutex-guarded, so concurrent sweeps may share it freely.
std::shared_ptr<const GSequence> g_sequence_cached(const ModelParams& p, int r);
void clear_g_cache();

}  // namespace xycorr
