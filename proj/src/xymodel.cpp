#include "xycorr/xymodel.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <sstream>
#include <tuple>

#include "xycorr/quadrature.hpp"

namespace xycorr {

namespace {

constexpr double kPi = std::numbers::pi;

/// tanh(beta omega) / (2 pi omega), the common factor of all model integrands.
/// At kT = 0 the tanh is identically 1. The omega -> 0 guard only fires on the
/// measure-zero set where the integrand has a removable zero limit.
double thermal_kernel(double omega, double kT) {
    if (omega < 1e-150) return 0.0;
    if (kT == 0.0) return 1.0 / (2.0 * kPi * omega);
    const double x = omega / kT;
    if (x < 1e-8) return (1.0 - x * x / 3.0) / (2.0 * kPi * kT);  // tanh(x)/x -> 1
    return std::tanh(x) / (2.0 * kPi * omega);
}

/// A_k = int_0^pi cos(k phi) (1 + lambda cos phi) tanh(beta omega)/(2 pi omega) dphi.
double cosine_moment(const ModelParams& p, int k) {
    return integrate_adaptive(
        [&p, k](double phi) {
            const double w = thermal_kernel(dispersion(p, phi), p.kT);
            return std::cos(k * phi) * (1.0 + p.lambda * std::cos(phi)) * w;
        },
        0.0, kPi);
}

/// B_k = int_0^pi sin(k phi) sin(phi) tanh(beta omega)/(2 pi omega) dphi
/// (without the gamma lambda prefactor).
double sine_moment(const ModelParams& p, int k) {
    return integrate_adaptive(
        [&p, k](double phi) {
            const double w = thermal_kernel(dispersion(p, phi), p.kT);
            return std::sin(k * phi) * std::sin(phi) * w;
        },
        0.0, kPi);
}

Eigen::MatrixXd toeplitz(const GSequence& g, int r, int shift) {
    Eigen::MatrixXd m(r, r);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) m(i, j) = g.at(i - j + shift);
    return m;
}

struct GKey {
    double gamma, lambda, kT;
    int r;

    bool operator<(const GKey& o) const {
        return std::tie(gamma, lambda, kT, r) < std::tie(o.gamma, o.lambda, o.kT, o.r);
    }
};

std::mutex g_cache_mutex;
std::map<GKey, std::shared_ptr<const GSequence>> g_cache;

}  // namespace

void validate_params(const ModelParams& p) {
    std::ostringstream os;
    if (!(p.gamma >= 0.0 && p.gamma <= 1.0)) {
        os << "gamma must be in [0, 1], got " << p.gamma;
        throw DomainError(os.str());
    }
    if (!(p.lambda >= 0.0)) {
        os << "lambda must be >= 0, got " << p.lambda;
        throw DomainError(os.str());
    }
    if (!(p.kT >= 0.0)) {
        os << "kT must be >= 0, got " << p.kT;
        throw DomainError(os.str());
    }
}

double dispersion(const ModelParams& p, double phi) {
    const double a = p.gamma * p.lambda * std::sin(phi);
    const double b = 1.0 + p.lambda * std::cos(phi);
    return 0.5 * std::hypot(a, b);
}

double magnetization(const ModelParams& p) {
    validate_params(p);
    return -cosine_moment(p, 0);
}

GSequence g_sequence(const ModelParams& p, int r) {
    validate_params(p);
    if (r < 1) throw DomainError("g_sequence requires r >= 1");
    GSequence g{p, r, std::vector<double>(static_cast<std::size_t>(2 * r + 1), 0.0)};
    const double coupling = p.gamma * p.lambda;
    for (int k = 0; k <= r; ++k) {
        const double a = cosine_moment(p, k);
        // The sine term is odd in k: G_{+-k} = A_k -+ gamma lambda B_k.
        const double c = (k == 0 || coupling == 0.0) ? 0.0 : coupling * sine_moment(p, k);
        g.values[static_cast<std::size_t>(r + k)] = a - c;
        g.values[static_cast<std::size_t>(r - k)] = a + c;
    }
    return g;
}

double correlator_xx(const GSequence& g, int r) {
    if (r < 1 || r > g.r) throw DomainError("correlator_xx: r outside the G sequence range");
    if (r == 1) return g.at(-1);
    return toeplitz(g, r, -1).partialPivLu().determinant();
}

double correlator_yy(const GSequence& g, int r) {
    if (r < 1 || r > g.r) throw DomainError("correlator_yy: r outside the G sequence range");
    if (r == 1) return g.at(1);
    return toeplitz(g, r, +1).partialPivLu().determinant();
}

double correlator_zz(const GSequence& g, int r) {
    if (r < 1 || r > g.r) throw DomainError("correlator_zz: r outside the G sequence range");
    const double mz = -g.at(0);
    return mz * mz - g.at(r) * g.at(-r);
}

Correlators correlators(const ModelParams& p, int r) {
    const auto g = g_sequence_cached(p, r);
    return Correlators{-g->at(0), correlator_xx(*g, r), correlator_yy(*g, r),
                       correlator_zz(*g, r), r};
}

XState reduced_state(const ModelParams& p, int r) {
    return xstate_from_correlators(correlators(p, r));
}

std::shared_ptr<const GSequence> g_sequence_cached(const ModelParams& p, int r) {
    const GKey key{p.gamma, p.lambda, p.kT, r};
    {
        std::lock_guard<std::mutex> lock(g_cache_mutex);
        auto it = g_cache.find(key);
        if (it != g_cache.end()) return it->second;
    }
    auto fresh = std::make_shared<const GSequence>(g_sequence(p, r));
    std::lock_guard<std::mutex> lock(g_cache_mutex);
    auto [it, inserted] = g_cache.emplace(key, std::move(fresh));
    return it->second;
}

void clear_g_cache() {
    std::lock_guard<std::mutex> lock(g_cache_mutex);
    g_cache.clear();
}

}  // namespace xycorr
