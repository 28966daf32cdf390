#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <random>

#include "chronosense/errors.hpp"
#include "chronosense/stochastic.hpp"
#include "chronosense/varmatrix.hpp"
#include "doctest.h"

using namespace chronosense;
using namespace chronosense::varmatrix;

namespace {

std::vector<double> random_pmf(std::mt19937& rng, int n) {
    std::uniform_real_distribution<double> u(0.05, 1.0);
    std::vector<double> p(static_cast<std::size_t>(n));
    double sum = 0.0;
    for (double& v : p) {
        v = u(rng);
        sum += v;
    }
    for (double& v : p) v /= sum;
    return p;
}

}  // namespace

TEST_CASE("matrix construction matches the 3x3 pattern") {
    const VarianceMatrix vm = build_g({0.5, 0.3, 0.2});
    const double expected[3][3] = {{0.25, -0.15, -0.10},
                                   {-0.15, 0.21, -0.06},
                                   {-0.10, -0.06, 0.16}};
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            CHECK(vm.g(i, j) == doctest::Approx(expected[i][j]).epsilon(1e-15));
}

TEST_CASE("single band and symmetric two-band matrices") {
    CHECK(build_g({1.0}).g(0, 0) == doctest::Approx(0.0));
    const VarianceMatrix vm = build_g({0.5, 0.5});
    CHECK(vm.g(0, 0) == doctest::Approx(0.25));
    CHECK(vm.g(0, 1) == doctest::Approx(-0.25));
    CHECK(vm.g(1, 0) == doctest::Approx(-0.25));
    CHECK(vm.g(1, 1) == doctest::Approx(0.25));
}

TEST_CASE("invalid pmf is rejected") {
    CHECK_THROWS_AS(build_g({0.5, 0.6}), InputError);
    CHECK_THROWS_AS(build_g({0.5, 0.5, 0.0}), InputError);
    CHECK_THROWS_AS(build_g({}), InputError);
}

TEST_CASE("trace equals one minus the squared mass") {
    CHECK(g_trace(build_g({0.5, 0.3, 0.2})) == doctest::Approx(0.62).epsilon(1e-15));
    CHECK(g_trace(build_g({1.0})) == doctest::Approx(0.0));
    CHECK(g_trace(build_g({0.25, 0.25, 0.25, 0.25})) == doctest::Approx(0.75).epsilon(1e-15));
}

TEST_CASE("rows sum to zero and the all-ones vector is in the null space") {
    std::mt19937 rng(17);
    std::uniform_int_distribution<int> mdist(2, 10);
    for (int trial = 0; trial < 300; ++trial) {
        const VarianceMatrix vm = build_g(random_pmf(rng, mdist(rng)));
        for (std::size_t i = 0; i < vm.probs.size(); ++i) {
            double row = 0.0;
            for (std::size_t j = 0; j < vm.probs.size(); ++j) row += vm.g(i, j);
            CHECK(std::fabs(row) <= 1e-12);
        }
    }
}

TEST_CASE("determinant vanishes and the rank-one identity holds") {
    std::mt19937 rng(23);
    std::uniform_int_distribution<int> mdist(1, 8);
    for (int trial = 0; trial < 200; ++trial) {
        const DeterminantCheck check = g_det(build_g(random_pmf(rng, mdist(rng))));
        CHECK(std::fabs(check.determinant) <= 1e-10);
        CHECK(std::fabs(check.rank_one_identity) <= 1e-12);
    }
}

TEST_CASE("spectral bounds and the lower-bound counterexample") {
    const VarianceMatrix vm = build_g({0.5, 0.3, 0.2});
    const auto [lo, hi] = spectral_bounds(vm);
    CHECK(lo == doctest::Approx(0.32).epsilon(1e-12));
    CHECK(hi == doctest::Approx(0.5).epsilon(1e-12));
    const MatrixAnalysis a = analyze(vm);
    CHECK(a.spectral_radius == doctest::Approx(0.38810).epsilon(1e-4));
    CHECK(a.spectral_radius <= hi + 1e-12);
    CHECK(a.spectral_radius >= lo - 1e-12);
    CHECK(a.lower_bound_holds);

    const auto [lo2, hi2] = spectral_bounds(build_g({0.5, 0.5}));
    CHECK(lo2 == doctest::Approx(0.5));
    CHECK(hi2 == doctest::Approx(0.5));
    CHECK(analyze(build_g({0.5, 0.5})).spectral_radius == doctest::Approx(0.5).epsilon(1e-12));

    // Uniform three-band pmf: rho = 1/3 falls below the reported lower value
    // 4/9, which is why the lower bound is a diagnostic rather than an
    // invariant.
    const double third = 1.0 / 3.0;
    const MatrixAnalysis u = analyze(build_g({third, third, third}));
    CHECK(u.bounds.first == doctest::Approx(4.0 / 9.0).epsilon(1e-12));
    CHECK(u.spectral_radius == doctest::Approx(third).epsilon(1e-9));
    CHECK_FALSE(u.lower_bound_holds);
}

TEST_CASE("uniformization yields a doubly stochastic matrix") {
    const VarianceMatrix vm = build_g({0.5, 0.3, 0.2});
    const numerics::Matrix p = uniformize(vm);
    CHECK(p(0, 0) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(p(0, 1) == doctest::Approx(0.6).epsilon(1e-12));
    CHECK(p(0, 2) == doctest::Approx(0.4).epsilon(1e-12));

    const numerics::Matrix swap = uniformize(build_g({0.5, 0.5}));
    CHECK(swap(0, 0) == doctest::Approx(0.0));
    CHECK(swap(0, 1) == doctest::Approx(1.0));
    CHECK(swap(1, 0) == doctest::Approx(1.0));
    CHECK(swap(1, 1) == doctest::Approx(0.0));

    std::mt19937 rng(37);
    std::uniform_int_distribution<int> mdist(2, 9);
    for (int trial = 0; trial < 200; ++trial) {
        const auto probs = random_pmf(rng, mdist(rng));
        const numerics::Matrix s = uniformize(build_g(probs));
        for (std::size_t i = 0; i < probs.size(); ++i) {
            double row = 0.0;
            for (std::size_t j = 0; j < probs.size(); ++j) {
                CHECK(s(i, j) >= 0.0);
                row += s(i, j);
            }
            CHECK(std::fabs(row - 1.0) <= 1e-12);
        }
    }

    CHECK_THROWS_AS(uniformize(build_g({1.0})), NumericError);
}

TEST_CASE("rank-one powers have the alpha closed form") {
    const ChatPower two = chat_power({0.5, 0.3, 0.2}, 2);
    CHECK(two.alpha_power == doctest::Approx(0.38).epsilon(1e-15));
    const ChatPower one = chat_power({0.5, 0.3, 0.2}, 1);
    CHECK(one.alpha_power == doctest::Approx(1.0));
    CHECK(one.matrix(0, 0) == doctest::Approx(0.25));
    const ChatPower three = chat_power({0.5, 0.5}, 3);
    CHECK(three.alpha_power == doctest::Approx(0.25).epsilon(1e-15));

    std::mt19937 rng(43);
    std::uniform_int_distribution<int> mdist(2, 6);
    std::uniform_int_distribution<int> power(1, 8);
    for (int trial = 0; trial < 100; ++trial) {
        const auto probs = random_pmf(rng, mdist(rng));
        const int m = power(rng);
        const ChatPower closed = chat_power(probs, m);

        numerics::Matrix cct(probs.size());
        for (std::size_t i = 0; i < probs.size(); ++i)
            for (std::size_t j = 0; j < probs.size(); ++j) cct(i, j) = probs[i] * probs[j];
        numerics::Matrix iterated = cct;
        for (int k = 1; k < m; ++k) iterated = iterated * cct;

        for (std::size_t i = 0; i < probs.size(); ++i)
            for (std::size_t j = 0; j < probs.size(); ++j)
                CHECK(std::fabs(closed.matrix(i, j) - iterated(i, j)) <= 1e-12);
    }
}

TEST_CASE("powers of G decay to zero") {
    const VarianceMatrix vm = build_g({0.5, 0.3, 0.2});
    const numerics::Matrix g1 = g_power(vm, 1);
    CHECK(g1(0, 0) == doctest::Approx(0.25));

    const numerics::Matrix g20 = g_power(vm, 20);
    const double rho = analyze(vm).spectral_radius;
    CHECK(g20.frobenius_norm() <= std::pow(rho, 20) * std::sqrt(3.0));
    CHECK(g20.frobenius_norm() < 1e-8);
    CHECK(g20.frobenius_norm() <= vm.g.frobenius_norm() * std::pow(0.5, 19) * 3.0);

    double prev = vm.g.frobenius_norm();
    for (int n = 2; n <= 6; ++n) {
        const double cur = g_power(vm, n).frobenius_norm();
        CHECK(cur <= prev + 1e-15);
        prev = cur;
    }

    const numerics::Matrix zero = g_power(build_g({1.0}), 5);
    CHECK(zero.frobenius_norm() == doctest::Approx(0.0));
}

TEST_CASE("quadratic form matches the direct moments") {
    const VarianceMatrix vm = build_g({0.2, 0.3, 0.5});
    const VarianceForm flat = variance_form(vm, {1.0, 1.0, 1.0});
    CHECK(std::fabs(flat.variance) <= 1e-12);

    const VarianceForm form = variance_form(vm, {1.0, 3.0, 5.0});
    const auto m = stochastic::moments(std::vector<double>{1, 3, 5}, {0.2, 0.3, 0.5});
    CHECK(form.variance == doctest::Approx(m.variance).epsilon(1e-12));
    CHECK(form.variance == doctest::Approx(2.44).epsilon(1e-12));
    CHECK(form.objective == doctest::Approx(2.44 - 3.6).epsilon(1e-12));

    const VarianceForm zero = variance_form(vm, {0.0, 0.0, 0.0});
    CHECK(zero.variance == doctest::Approx(0.0));
    CHECK(zero.objective == doctest::Approx(0.0));

    CHECK_THROWS_AS(variance_form(vm, {1.0}), InputError);
}

TEST_CASE("quadratic form is positive semidefinite") {
    std::mt19937 rng(53);
    std::uniform_int_distribution<int> mdist(2, 8);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 10000; ++trial) {
        const auto probs = random_pmf(rng, mdist(rng));
        const VarianceMatrix vm = build_g(probs);
        std::vector<double> t(probs.size());
        double norm = 0.0;
        for (double& v : t) {
            v = u(rng);
            norm += v * v;
        }
        norm = std::sqrt(norm);
        if (norm == 0.0) continue;
        for (double& v : t) v /= norm;
        CHECK(variance_form(vm, t).variance >= -1e-12);
    }
}

TEST_CASE("second-smallest eigenpair") {
    const MinVariance mv = min_nonzero_variance(build_g({0.5, 0.3, 0.2}));
    CHECK(mv.eigenvalue == doctest::Approx(0.23190).epsilon(1e-4));
    CHECK(mv.max_eigenvalue == doctest::Approx(0.38810).epsilon(1e-4));
    // R^T G R = mu on the unit sphere
    const VarianceMatrix vm = build_g({0.5, 0.3, 0.2});
    const VarianceForm quad = variance_form(vm, mv.eigenvector);
    CHECK(quad.variance == doctest::Approx(mv.eigenvalue).epsilon(1e-9));

    const MinVariance pair = min_nonzero_variance(build_g({0.5, 0.5}));
    CHECK(pair.eigenvalue == doctest::Approx(0.5).epsilon(1e-12));
    const double along = (pair.eigenvector[0] - pair.eigenvector[1]) / std::sqrt(2.0);
    CHECK(std::fabs(along) == doctest::Approx(1.0).epsilon(1e-9));

    const double third = 1.0 / 3.0;
    CHECK(min_nonzero_variance(build_g({third, third, third})).eigenvalue ==
          doctest::Approx(third).epsilon(1e-9));

    CHECK_THROWS_AS(min_nonzero_variance(build_g({1.0})), InputError);
}

TEST_CASE("spectrum stays in the half-open unit interval and traces match") {
    std::mt19937 rng(59);
    std::uniform_int_distribution<int> mdist(2, 10);
    for (int trial = 0; trial < 200; ++trial) {
        const auto probs = random_pmf(rng, mdist(rng));
        const MatrixAnalysis a = analyze(build_g(probs));
        double sum = 0.0, alpha = 0.0;
        for (double ev : a.eigenvalues) {
            CHECK(ev >= -1e-9);
            CHECK(ev <= 0.5 + 1e-9);
            sum += ev;
        }
        for (double p : probs) alpha += p * p;
        CHECK(std::fabs(sum - (1.0 - alpha)) <= 1e-12);
        // rank M-1: exactly one (near-)zero eigenvalue for positive pmfs
        CHECK(std::fabs(a.eigenvalues.front()) <= 1e-9);
        CHECK(a.eigenvalues[1] > 1e-9);
    }
}
