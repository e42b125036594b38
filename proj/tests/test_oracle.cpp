#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "xycorr/measures.hpp"
#include "xycorr/oracle.hpp"
#include "xycorr/xymodel.hpp"

using namespace xycorr;

TEST_CASE("two-spin ring at lambda = 0, kT = 0 is the fully polarized product") {
    const TwoQubitState rho = ed_thermal_reduced({2, {0.5, 0.0, 0.0}}, 0, 1);
    CHECK(std::abs(rho.matrix()(0, 0) - Complex(1.0)) < 1e-12);
    for (MeasureKind k : kAllMeasures) CHECK(evaluate(k, rho) < 1e-10);
}

TEST_CASE("ring size limits") {
    CHECK_THROWS_AS(ed_thermal_reduced({15, {0.5, 1.0, 0.5}}, 0, 1), SizeTooLarge);
    CHECK_THROWS_AS(ed_thermal_reduced({1, {0.5, 1.0, 0.5}}, 0, 0), DomainError);
    CHECK_THROWS_AS(ed_thermal_reduced({6, {0.5, 1.0, 0.5}}, 3, 3), DomainError);
    CHECK_THROWS_AS(ed_thermal_reduced({6, {0.5, 1.0, 0.5}}, 4, 2), DomainError);
}

TEST_CASE("thermal reduced states are X-shaped for all tested parameters") {
    for (double gamma : {0.0, 0.5, 1.0})
        for (double lambda : {0.3, 1.0, 2.0})
            for (double kT : {0.0, 0.7}) {
                const TwoQubitState rho = ed_thermal_reduced({8, {gamma, lambda, kT}}, 2, 5);
                CHECK(off_x_norm(rho) < 1e-10);
            }
}

TEST_CASE("quasi-degenerate ground space is mixed with equal weights") {
    // Deep in the ordered phase the parity doublet splits below 1e-12; the
    // equal mixture keeps the reduced state X-shaped with saturated xx.
    const TwoQubitState rho = ed_thermal_reduced({8, {1.0, 100.0, 0.0}}, 0, 1);
    CHECK(off_x_norm(rho) < 1e-10);
    const double xx = (rho.matrix() * kron(pauli::X, pauli::X)).trace().real();
    CHECK(xx == doctest::Approx(1.0).epsilon(1e-3));
    const double mx = (rho.matrix() * kron(pauli::X, pauli::I)).trace().real();
    CHECK(std::abs(mx) < 1e-10);  // no symmetry breaking
}

TEST_CASE("N = 10 ring reproduces the thermodynamic-limit correlators at kT = 0.5") {
    const ModelParams p{1.0, 0.5, 0.5};
    const Correlators ed = ed_correlators({10, p}, 0, 1);
    const Correlators tl = correlators(p, 1);
    CHECK(std::abs(std::abs(ed.mz) - std::abs(tl.mz)) < 2e-2);
    CHECK(std::abs(ed.xx - tl.xx) < 2e-2);
    CHECK(std::abs(ed.yy - tl.yy) < 2e-2);
    CHECK(std::abs(ed.zz - tl.zz) < 2e-2);
}

TEST_CASE("finite-size error shrinks from N = 4 to N = 6") {
    const ModelParams p{1.0, 2.0, 1.0};
    const Correlators tl = correlators(p, 1);
    const Correlators e4 = ed_correlators({4, p}, 0, 1);
    const Correlators e6 = ed_correlators({6, p}, 0, 1);
    CHECK(std::abs(e6.xx - tl.xx) < std::abs(e4.xx - tl.xx));
    CHECK(std::abs(e6.zz - tl.zz) < std::abs(e4.zz - tl.zz));
}

TEST_CASE("min_bruteforce") {
    SUBCASE("Bell state reaches 1 on the axis grid") {
        CHECK(min_bruteforce(validate_state(bell_state(0)), 500) ==
              doctest::Approx(1.0).epsilon(1e-3));
    }
    SUBCASE("product states are undisturbed by the preserving measurement") {
        for (int i = 0; i < 20; ++i)
            CHECK(min_bruteforce(random_state(RandomStateKind::Product, 500 + i), 100) < 1e-10);
    }
    SUBCASE("unique-measurement branch is exact on X states") {
        int found = 0;
        for (std::uint64_t seed = 1000; found < 100; ++seed) {
            const XState s = random_xstate(seed);
            if (std::abs(s.r11 + s.r22 - s.r33 - s.r44) <= 1e-3) continue;
            ++found;
            CHECK(std::abs(min_bruteforce(to_state(s), 100) - min_xstate(s)) < 1e-8);
        }
    }
    SUBCASE("n_dirs below 100 is rejected") {
        CHECK_THROWS_AS(min_bruteforce(validate_state(bell_state(0)), 10), DomainError);
    }
}

TEST_CASE("gmqd_bruteforce") {
    SUBCASE("zero-discord classical mixture stays at zero") {
        Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
        m(0, 0) = m(3, 3) = 0.5;
        CHECK(gmqd_bruteforce(validate_state(m), 300) < 1e-10);
    }
    SUBCASE("Bell state reaches 1") {
        CHECK(gmqd_bruteforce(validate_state(bell_state(1)), 500) ==
              doctest::Approx(1.0).epsilon(1e-3));
    }
    SUBCASE("sits between the closed form and the OMQC bound on 100 states") {
        for (int i = 0; i < 100; ++i) {
            const TwoQubitState rho = random_state(RandomStateKind::General, 2000 + i);
            const BlochDecomposition b = bloch_decompose(rho);
            const double brute = gmqd_bruteforce(rho, 400);
            CHECK(brute >= gmqd_closed(b) - 1e-8);
            CHECK(brute >= omqc(b) - 1e-8);
        }
    }
}

TEST_CASE("random_state classes") {
    SUBCASE("pure states are rank one") {
        for (int i = 0; i < 20; ++i) {
            Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(
                random_state(RandomStateKind::Pure, 3000 + i).matrix());
            CHECK(es.eigenvalues()(2) < 1e-12);
            CHECK(es.eigenvalues()(3) == doctest::Approx(1.0).epsilon(1e-12));
        }
    }
    SUBCASE("product states carry no correlations") {
        for (int i = 0; i < 20; ++i) {
            const TwoQubitState rho = random_state(RandomStateKind::Product, 3100 + i);
            for (MeasureKind k : kAllMeasures) CHECK(evaluate(k, rho) < 1e-10);
        }
    }
    SUBCASE("X states satisfy the X-state invariants") {
        for (int i = 0; i < 50; ++i) {
            const XState s = random_xstate(3200 + i);
            CHECK(s.r11 + s.r22 + s.r33 + s.r44 == doctest::Approx(1.0).epsilon(1e-12));
            CHECK(s.r23 * s.r23 <= s.r22 * s.r33 + 1e-12);
            CHECK(s.r14 * s.r14 <= s.r11 * s.r44 + 1e-12);
            CHECK_NOTHROW(to_state(s));
        }
    }
    SUBCASE("deterministic per seed") {
        const auto a = random_state(RandomStateKind::General, 99).matrix();
        const auto b = random_state(RandomStateKind::General, 99).matrix();
        const auto c = random_state(RandomStateKind::General, 100).matrix();
        CHECK((a - b).cwiseAbs().maxCoeff() == 0.0);
        CHECK((a - c).cwiseAbs().maxCoeff() > 1e-3);
    }
}

TEST_CASE("ed and closed-form measures agree on the reduced ring state") {
    const TwoQubitState rho = ed_thermal_reduced({8, {0.8, 1.2, 0.4}}, 0, 1);
    const BlochDecomposition b = bloch_decompose(rho);
    CHECK(std::abs(min_bruteforce(rho, 2000) - min_closed(b)) < 2e-3);
    CHECK(std::abs(gmqd_bruteforce(rho, 2000) - gmqd_closed(b)) < 2e-3);
}
