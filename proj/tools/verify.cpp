#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <vector>

#include "commands.hpp"
#include "xycorr/measures.hpp"
#include "xycorr/oracle.hpp"
#include "xycorr/version.hpp"
#include "xycorr/xymodel.hpp"

namespace xycorr::cli {

namespace {

struct CheckResult {
    double worst = 0.0;
    double tol = 0.0;
    std::string note;
};

struct Check {
    std::string name;
    std::function<CheckResult(const RunConfig&)> run;
};

void track(CheckResult& r, double err, const std::string& where) {
    if (err > r.worst) {
        r.worst = err;
        r.note = where;
    }
}

CheckResult check_sanity(const RunConfig& cfg) {
    CheckResult r{0.0, 1e-10, ""};
    for (int b = 0; b < 4; ++b) {
        const TwoQubitState rho = validate_state(bell_state(b));
        for (MeasureKind k : kAllMeasures)
            track(r, std::abs(evaluate(k, rho) - 1.0),
                  std::string(to_string(k)) + " on Bell " + std::to_string(b));
    }
    for (int i = 0; i < 50; ++i) {
        const TwoQubitState rho = random_state(RandomStateKind::Product, cfg.seed + 17 * i);
        for (MeasureKind k : kAllMeasures)
            track(r, evaluate(k, rho),
                  std::string(to_string(k)) + " on product state " + std::to_string(i));
    }
    return r;
}

CheckResult check_ordering(const RunConfig& cfg) {
    CheckResult r{0.0, 1e-10, ""};
    for (int i = 0; i < cfg.n_states; ++i) {
        const TwoQubitState rho = random_state(RandomStateKind::General, cfg.seed + i);
        const BlochDecomposition b = bloch_decompose(rho);
        const double q = omqc(b), g = gmqd_closed(b), m = min_closed(b);
        track(r, q - g, "omqc > gmqd at state " + std::to_string(i));
        track(r, g - m, "gmqd > min at state " + std::to_string(i));
    }
    return r;
}

CheckResult check_bruteforce(const RunConfig& cfg) {
    CheckResult r{0.0, 2e-3, ""};
    for (int i = 0; i < cfg.n_states; ++i) {
        const TwoQubitState rho = random_state(RandomStateKind::General, cfg.seed + i);
        const BlochDecomposition b = bloch_decompose(rho);
        track(r, std::abs(min_closed(b) - min_bruteforce(rho, cfg.n_dirs)),
              "MIN at state " + std::to_string(i));
        track(r, std::abs(gmqd_closed(b) - gmqd_bruteforce(rho, cfg.n_dirs)),
              "GMQD at state " + std::to_string(i));
    }
    return r;
}

CheckResult check_fastpath(const RunConfig& cfg) {
    CheckResult r{0.0, 1e-12, ""};
    int found = 0;
    for (std::uint64_t s = cfg.seed; found < cfg.n_states; ++s) {
        const XState x = random_xstate(s);
        if (std::abs(x.r11 + x.r22 - x.r33 - x.r44) <= 1e-3) continue;
        ++found;
        const TwoQubitState rho = to_state(x);
        track(r, std::abs(min_xstate(x) - min_closed(bloch_decompose(rho))),
              "MIN fast path, seed " + std::to_string(s));
        track(r, std::abs(concurrence_xstate(x) - concurrence_general(rho)),
              "concurrence fast path, seed " + std::to_string(s));
    }
    return r;
}

CheckResult check_skew(const RunConfig& cfg) {
    CheckResult r{0.0, 1e-10, ""};
    for (int i = 0; i < 50; ++i) {
        const TwoQubitState rho = random_state(RandomStateKind::Pure, cfg.seed + 31 * i);
        std::mt19937_64 rng(cfg.seed + 1000 + i);
        // Random Hermitian observable.
        Eigen::Matrix4cd obs;
        std::normal_distribution<double> n01;
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b) obs(a, b) = Complex(n01(rng), n01(rng));
        obs = 0.5 * (obs + obs.adjoint()).eval();
        const double skew = skew_information(rho.matrix(), obs);
        track(r, -skew, "negative skew information at state " + std::to_string(i));
        const double mean = (rho.matrix() * obs).trace().real();
        const double variance = (rho.matrix() * obs * obs).trace().real() - mean * mean;
        track(r, std::abs(skew - variance), "pure-state variance at state " + std::to_string(i));
    }
    return r;
}

Eigen::Matrix3d random_rotation(std::mt19937_64& rng) {
    // Adjoint representation of a random single-qubit unitary.
    const Eigen::Matrix2cd u = random_unitary2(rng);
    Eigen::Matrix3d rot;
    for (int i = 1; i <= 3; ++i)
        for (int j = 1; j <= 3; ++j)
            rot(i - 1, j - 1) =
                0.5 * (pauli::sigma(i) * u * pauli::sigma(j) * u.adjoint()).trace().real();
    return rot;
}

CheckResult check_wysim_basis(const RunConfig& cfg) {
    CheckResult r{0.0, 1e-9, ""};
    constexpr double inv_sqrt2 = 0.70710678118654752440;
    for (int t = 0; t < 20; ++t) {
        const TwoQubitState rho = random_state(RandomStateKind::General, cfg.seed + 7 * t);
        std::mt19937_64 rng(cfg.seed + 2000 + t);
        const Eigen::Matrix3d rot = random_rotation(rng);
        const Eigen::MatrixXcd sqrt_ab = matrix_sqrt_psd(rho.matrix());
        const Eigen::MatrixXcd sqrt_a = matrix_sqrt_psd(partial_trace_a(rho));
        double q_ab = 0.0, q_a = 0.0;
        for (int i = 1; i <= 3; ++i) {
            Eigen::Matrix2cd local = Eigen::Matrix2cd::Zero();
            for (int j = 1; j <= 3; ++j) local += rot(i - 1, j - 1) * pauli::sigma(j);
            local *= inv_sqrt2;
            const Eigen::MatrixXcd lifted = kron(local, pauli::I);
            q_ab += 0.5 * (sqrt_ab * lifted - lifted * sqrt_ab).squaredNorm();
            q_a += 0.5 * (sqrt_a * local - local * sqrt_a).squaredNorm();
        }
        const double rotated = std::max(0.0, (2.0 / 3.0) * (q_ab - q_a));
        track(r, std::abs(rotated - wysim(rho)), "trial " + std::to_string(t));
    }
    return r;
}

CheckResult check_local_unitary(const RunConfig& cfg) {
    CheckResult r{0.0, 1e-9, ""};
    for (int t = 0; t < 20; ++t) {
        const TwoQubitState rho = random_state(RandomStateKind::General, cfg.seed + 13 * t);
        std::mt19937_64 rng(cfg.seed + 3000 + t);
        const Eigen::Matrix4cd u = kron(random_unitary2(rng), random_unitary2(rng));
        const TwoQubitState rotated = validate_state(u * rho.matrix() * u.adjoint());
        track(r, std::abs(concurrence_general(rotated) - concurrence_general(rho)),
              "concurrence, trial " + std::to_string(t));
        track(r, std::abs(wysim(rotated) - wysim(rho)), "wysim, trial " + std::to_string(t));
    }
    return r;
}

CheckResult check_ed(const RunConfig& cfg) {
    CheckResult r{0.0, 2e-2, ""};
    // kT = 1.0 sits deep in the regime where the N = 12 ring's finite-size
    // corrections are thermally suppressed below the tolerance.
    const double kT = 1.0;
    for (double gamma : {0.5, 1.0}) {
        for (double lambda : {0.5, 1.5}) {
            RingSolver solver(cfg.ring_size, gamma, lambda);
            const TwoQubitState rho = solver.thermal_reduced(kT, 0, 1);
            track(r, off_x_norm(rho),
                  "off-X element at gamma=" + std::to_string(gamma) +
                      " lambda=" + std::to_string(lambda));
            const Eigen::Matrix4cd& m = rho.matrix();
            auto expect = [&m](const Eigen::Matrix4cd& op) {
                return (m * op).trace().real();
            };
            const Correlators tl = correlators({gamma, lambda, kT}, 1);
            std::ostringstream at;
            at << "gamma=" << gamma << " lambda=" << lambda << " kT=" << kT;
            track(r, std::abs(std::abs(expect(kron(pauli::Z, pauli::I))) - std::abs(tl.mz)),
                  "|mz| at " + at.str());
            track(r, std::abs(expect(kron(pauli::X, pauli::X)) - tl.xx), "xx at " + at.str());
            track(r, std::abs(expect(kron(pauli::Y, pauli::Y)) - tl.yy), "yy at " + at.str());
            track(r, std::abs(expect(kron(pauli::Z, pauli::Z)) - tl.zz), "zz at " + at.str());
        }
    }
    return r;
}

}  // namespace

int cmd_verify(const RunConfig& cfg) {
    const std::vector<Check> checks = {
        {"sanity-bell-product", check_sanity},
        {"ordering-chain", check_ordering},
        {"bruteforce-min-gmqd", check_bruteforce},
        {"fastpath-xstate", check_fastpath},
        {"skew-pure-variance", check_skew},
        {"wysim-basis-independence", check_wysim_basis},
        {"local-unitary-invariance", check_local_unitary},
        {"ed-correlators", check_ed},
    };

    std::printf("xycorr %s verify (seed %llu, tol-scale %g)\n", kVersion,
                static_cast<unsigned long long>(cfg.seed), cfg.tol_scale);
    int ran = 0, passed = 0;
    for (const Check& check : checks) {
        if (!cfg.only.empty() && check.name.find(cfg.only) == std::string::npos) continue;
        ++ran;
        CheckResult result;
        try {
            result = check.run(cfg);
        } catch (const Error& e) {
            std::printf("FAIL %-26s error: %s\n", check.name.c_str(), e.what());
            continue;
        }
        const double tol = result.tol * cfg.tol_scale;
        const bool ok = result.worst <= tol;
        passed += ok ? 1 : 0;
        std::printf("%s %-26s max err %.3e (tol %.1e)%s%s\n", ok ? "PASS" : "FAIL",
                    check.name.c_str(), result.worst, tol, result.note.empty() ? "" : "  worst: ",
                    result.note.c_str());
    }
    if (ran == 0) {
        std::printf("no checks match --only %s\n", cfg.only.c_str());
        return 1;
    }
    std::printf("verify: %d/%d checks passed\n", passed, ran);
    return passed == ran ? 0 : 1;
}

}  // namespace xycorr::cli
