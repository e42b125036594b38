#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <thread>

#include "xycorr/measures.hpp"
#include "xycorr/oracle.hpp"
#include "xycorr/xymodel.hpp"

using namespace xycorr;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("dispersion closed values") {
    CHECK(dispersion({0.7, 1.3, 0.0}, 0.0) == doctest::Approx((1.0 + 1.3) / 2).epsilon(1e-14));
    CHECK(dispersion({0.3, 0.4, 0.0}, kPi) == doctest::Approx(0.3).epsilon(1e-14));
    CHECK(dispersion({0.3, 2.5, 0.0}, kPi) == doctest::Approx(0.75).epsilon(1e-14));
    CHECK(dispersion({1.0, 1.0, 0.0}, kPi / 2) ==
          doctest::Approx(std::numbers::sqrt2 / 2).epsilon(1e-14));
    CHECK(dispersion({1.0, 1.0, 0.0}, kPi) == doctest::Approx(0.0));
}

TEST_CASE("validate_params rejects out-of-domain parameters") {
    CHECK_THROWS_AS(validate_params({-0.1, 1.0, 0.0}), DomainError);
    CHECK_THROWS_AS(validate_params({1.1, 1.0, 0.0}), DomainError);
    CHECK_THROWS_AS(validate_params({0.5, -1.0, 0.0}), DomainError);
    CHECK_THROWS_AS(validate_params({0.5, 1.0, -0.2}), DomainError);
}

TEST_CASE("magnetization at lambda = 0 has the closed form -tanh(1/(2 kT))") {
    for (double kT : {0.1, 0.5, 1.0})
        CHECK(magnetization({0.7, 0.0, kT}) ==
              doctest::Approx(-std::tanh(1.0 / (2.0 * kT))).epsilon(1e-10));
    CHECK(magnetization({0.7, 0.0, 0.0}) == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("magnetization matches the N=12 ring at gamma=1, lambda=0.5, kT=0.1") {
    const ModelParams p{1.0, 0.5, 0.1};
    const Correlators ed = ed_correlators({12, p}, 0, 1);
    CHECK(std::abs(std::abs(magnetization(p)) - std::abs(ed.mz)) < 1e-2);
}

TEST_CASE("g_sequence at lambda = 0 is tanh(beta/2) delta_k0") {
    const GSequence g = g_sequence({0.8, 0.0, 0.5}, 3);
    CHECK(g.at(0) == doctest::Approx(std::tanh(1.0)).epsilon(1e-12));
    for (int k = 1; k <= 3; ++k) {
        CHECK(std::abs(g.at(k)) < 1e-12);
        CHECK(std::abs(g.at(-k)) < 1e-12);
    }
}

TEST_CASE("g_sequence is even in k at gamma = 0") {
    for (const ModelParams p : {ModelParams{0.0, 0.7, 0.3}, ModelParams{0.0, 2.0, 0.5}}) {
        const GSequence g = g_sequence(p, 4);
        for (int k = 1; k <= 4; ++k) CHECK(g.at(k) == doctest::Approx(g.at(-k)).epsilon(1e-10));
    }
}

TEST_CASE("critical Ising kernel at T = 0 has the exact values 2/pi and -2/(3 pi)") {
    const GSequence g = g_sequence({1.0, 1.0, 0.0}, 1);
    CHECK(g.at(0) == doctest::Approx(2.0 / kPi).epsilon(1e-10));
    CHECK(g.at(-1) == doctest::Approx(2.0 / kPi).epsilon(1e-10));
    CHECK(g.at(1) == doctest::Approx(-2.0 / (3.0 * kPi)).epsilon(1e-10));
    CHECK(magnetization({1.0, 1.0, 0.0}) == doctest::Approx(-2.0 / kPi).epsilon(1e-10));
}

TEST_CASE("ordered-phase kernel at T = 0 matches the N=12 ring xx correlator") {
    const ModelParams p{1.0, 2.0, 0.0};
    const GSequence g = g_sequence(p, 1);
    const Correlators ed = ed_correlators({12, p}, 0, 1);
    CHECK(std::abs(g.at(-1) - ed.xx) < 2e-2);
}

TEST_CASE("r = 1 correlators are single kernel values") {
    const ModelParams p{0.6, 1.2, 0.4};
    const GSequence g = g_sequence(p, 1);
    CHECK(correlator_xx(g, 1) == g.at(-1));
    CHECK(correlator_yy(g, 1) == g.at(1));
    CHECK(correlator_zz(g, 1) ==
          doctest::Approx(g.at(0) * g.at(0) - g.at(1) * g.at(-1)).epsilon(1e-14));
}

TEST_CASE("lambda = 0 zz correlator equals tanh^2") {
    const GSequence g05 = g_sequence({0.5, 0.0, 0.5}, 1);
    CHECK(correlator_zz(g05, 1) == doctest::Approx(std::tanh(1.0) * std::tanh(1.0)).epsilon(1e-12));
    const GSequence g0 = g_sequence({0.5, 0.0, 0.0}, 1);
    CHECK(correlator_zz(g0, 1) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("r = 2 Toeplitz determinant matches the N=12 ring at kT=0.1") {
    const ModelParams p{1.0, 1.5, 0.1};
    const Correlators tl = correlators(p, 2);
    const Correlators ed = ed_correlators({12, p}, 0, 2);
    CHECK(std::abs(tl.xx - ed.xx) < 2e-2);
    CHECK(std::abs(tl.yy - ed.yy) < 2e-2);
    CHECK(std::abs(tl.zz - ed.zz) < 2e-2);
}

TEST_CASE("reduced state at lambda=0, kT=0 is the polarized product state") {
    const XState s = reduced_state({0.4, 0.0, 0.0}, 1);
    CHECK(s.r44 == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(std::abs(s.r14) < 1e-12);
    CHECK(std::abs(s.r23) < 1e-12);
    for (MeasureKind k : kAllMeasures) CHECK(evaluate(k, s) < 1e-10);
}

TEST_CASE("strong-coupling Ising limit approaches the x-correlated mixture") {
    const ModelParams p{1.0, 20.0, 0.0};
    const XState s = reduced_state(p, 1);
    const Correlators ed = ed_correlators({12, p}, 0, 1);
    CHECK(s.r23 * 2 + s.r14 * 2 == doctest::Approx(ed.xx).epsilon(5e-2));
    CHECK(2 * (s.r23 + s.r14) > 0.95);  // xx -> 1
}

TEST_CASE("ground state factorizes on the factorization line") {
    const XState s = reduced_state({0.5, 2.0 / std::sqrt(3.0), 0.0}, 1);
    CHECK(concurrence_xstate(s) < 1e-6);
}

TEST_CASE("assembled states are valid X states with r22 = r33 across the grid") {
    for (double gamma : {0.001, 0.5, 1.0})
        for (double lambda : {0.0, 0.5, 1.0, 1.5, 2.0, 3.0})
            for (double kT : {0.0, 0.25, 0.5, 1.0})
                for (int r : {1, 2, 5, 10}) {
                    const XState s = reduced_state({gamma, lambda, kT}, r);
                    CHECK(s.r22 == s.r33);
                    CHECK_NOTHROW(to_state(s));
                }
}

TEST_CASE("measures are continuous in the kT -> 0 limit") {
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> ug(0.05, 1.0), ul(0.0, 3.0);
    for (int t = 0; t < 20; ++t) {
        const double gamma = ug(rng), lambda = ul(rng);
        const XState cold = reduced_state({gamma, lambda, 0.0}, 1);
        const XState warm = reduced_state({gamma, lambda, 1e-6}, 1);
        for (MeasureKind k : kAllMeasures)
            CHECK(std::abs(evaluate(k, cold) - evaluate(k, warm)) <= 1e-4);
    }
}

TEST_CASE("G cache memoizes and is safe under concurrent lookups") {
    clear_g_cache();
    const ModelParams p{0.5, 1.1, 0.3};
    const auto first = g_sequence_cached(p, 2);
    CHECK(g_sequence_cached(p, 2).get() == first.get());

    std::vector<std::shared_ptr<const GSequence>> seen(4);
    std::vector<std::thread> pool;
    for (int t = 0; t < 4; ++t)
        pool.emplace_back([&, t] { seen[t] = g_sequence_cached({0.5, 1.2 + 0.1 * t, 0.3}, 3); });
    for (auto& th : pool) th.join();
    for (int t = 0; t < 4; ++t) {
        CHECK(seen[t]->at(0) ==
              doctest::Approx(-magnetization({0.5, 1.2 + 0.1 * t, 0.3})).epsilon(1e-12));
    }
    clear_g_cache();
}

TEST_CASE("out-of-range correlator requests are rejected") {
    const GSequence g = g_sequence({0.5, 1.0, 0.5}, 2);
    CHECK_THROWS_AS(correlator_xx(g, 3), DomainError);
    CHECK_THROWS_AS(g_sequence({0.5, 1.0, 0.5}, 0), DomainError);
}
