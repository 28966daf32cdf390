#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <cmath>
#include <random>

#include "chronosense/coding.hpp"
#include "chronosense/errors.hpp"
#include "doctest.h"

using namespace chronosense;
using namespace chronosense::coding;

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

// Enumerate all compositions of `units` into n parts >= 1.
void compositions(int units, int n, std::vector<int>& prefix,
                  const std::function<void(const std::vector<int>&)>& fn) {
    if (n == 1) {
        if (units >= 1) {
            prefix.push_back(units);
            fn(prefix);
            prefix.pop_back();
        }
        return;
    }
    for (int v = 1; v + (n - 1) <= units; ++v) {
        prefix.push_back(v);
        compositions(units - v, n - 1, prefix, fn);
        prefix.pop_back();
    }
}

// Minimum expected length over all Kraft-feasible integer length multisets
// (max length 8), assigning short lengths to large probabilities.
double optimal_code_cost(const std::vector<double>& probs) {
    std::vector<double> sorted = probs;
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    const int n = static_cast<int>(probs.size());
    double best = 1e100;
    std::vector<int> lengths;
    std::function<void(int, int)> walk = [&](int pos, int lo) {
        if (pos == n) {
            double kraft = 0.0;
            for (int l : lengths) kraft += std::ldexp(1.0, -l);
            if (kraft > 1.0) return;
            double cost = 0.0;
            for (int i = 0; i < n; ++i) cost += sorted[static_cast<std::size_t>(i)] *
                                                lengths[static_cast<std::size_t>(i)];
            best = std::min(best, cost);
            return;
        }
        for (int l = lo; l <= 8; ++l) {
            lengths.push_back(l);
            walk(pos + 1, l);
            lengths.pop_back();
        }
    };
    walk(0, 1);
    return best;
}

}  // namespace

TEST_CASE("kraft sums") {
    CHECK(kraft_sum({1, 2, 3}) == 0.875);
    CHECK(kraft_sum({1, 2, 2}) == 1.0);
    CHECK(kraft_sum({1, 2, 3, 4, 5}) == 0.96875);
}

TEST_CASE("unit-difference ladders satisfy kraft exactly") {
    for (long long t1 = 1; t1 <= 10; ++t1)
        for (int m = 1; m <= 20; ++m) {
            std::vector<long long> times;
            for (int j = 0; j < m; ++j) times.push_back(t1 + j);
            const double sum = kraft_sum(times);
            CHECK(sum <= 1.0);
            // closed form 2^(1-t1) - 2^(1-t1-m), exact in binary floats
            const double expected = std::ldexp(1.0, static_cast<int>(1 - t1)) -
                                    std::ldexp(1.0, static_cast<int>(1 - t1 - m));
            CHECK(sum == expected);
        }
}

TEST_CASE("kraft feasibility extends to larger bases") {
    std::mt19937 rng(31);
    std::uniform_int_distribution<int> mdist(2, 10);
    std::uniform_int_distribution<int> base(3, 17);
    for (int trial = 0; trial < 500; ++trial) {
        const auto lengths = huffman_lengths(random_pmf(rng, mdist(rng)));
        REQUIRE(kraft_sum(lengths.lengths) <= 1.0);
        CHECK(kraft_sum(lengths.lengths, base(rng)) <= 1.0);
    }
}

TEST_CASE("entropy values") {
    CHECK(entropy({0.25, 0.25, 0.25, 0.25}) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(entropy({0.5, 0.3, 0.2}) == doctest::Approx(1.48548).epsilon(1e-5));
    CHECK(entropy({1.0}) == doctest::Approx(0.0));
    CHECK_THROWS_AS(entropy({0.0, 1.0}), InputError);
}

TEST_CASE("kraft-feasible times are lower bounded by entropy") {
    std::mt19937 rng(67);
    std::uniform_int_distribution<int> mdist(2, 12);
    std::uniform_int_distribution<int> bump(0, 4);
    for (int trial = 0; trial < 2000; ++trial) {
        const int m = mdist(rng);
        // Kraft-feasible lengths by construction, then randomly lengthened.
        auto lengths = huffman_lengths(random_pmf(rng, m)).lengths;
        for (long long& l : lengths) l += bump(rng);
        REQUIRE(kraft_sum(lengths) <= 1.0);

        const auto pmf = random_pmf(rng, m);  // measured against a different pmf
        double mean = 0.0;
        for (int i = 0; i < m; ++i) mean += static_cast<double>(lengths[static_cast<std::size_t>(i)]) *
                                            pmf[static_cast<std::size_t>(i)];
        CHECK(mean >= entropy(pmf) - 1e-12);
    }
}

TEST_CASE("huffman worked examples") {
    CHECK(huffman_lengths({0.5, 0.3, 0.2}).lengths == std::vector<long long>{1, 2, 2});
    CHECK(huffman_lengths({0.25, 0.25, 0.25, 0.25}).lengths ==
          std::vector<long long>{2, 2, 2, 2});
    CHECK(huffman_lengths({0.4, 0.3, 0.2, 0.1}).lengths == std::vector<long long>{1, 2, 3, 3});
    CHECK_THROWS_AS(huffman_lengths({1.0}), InputError);
}

TEST_CASE("huffman is optimal on the 0.05 probability grid") {
    for (int n = 2; n <= 5; ++n) {
        std::vector<int> prefix;
        compositions(20, n, prefix, [&](const std::vector<int>& parts) {
            std::vector<double> pmf;
            for (int v : parts) pmf.push_back(v / 20.0);
            const auto lengths = huffman_lengths(pmf).lengths;
            double cost = 0.0;
            for (std::size_t i = 0; i < pmf.size(); ++i)
                cost += pmf[i] * static_cast<double>(lengths[i]);
            CHECK(cost == doctest::Approx(optimal_code_cost(pmf)).epsilon(1e-9));
        });
    }
}

TEST_CASE("huffman mean length sits in [H, H+1)") {
    std::mt19937 rng(101);
    std::uniform_int_distribution<int> mdist(2, 14);
    for (int trial = 0; trial < 500; ++trial) {
        const auto pmf = random_pmf(rng, mdist(rng));
        const auto lengths = huffman_lengths(pmf).lengths;
        double mean = 0.0;
        for (std::size_t i = 0; i < pmf.size(); ++i)
            mean += pmf[i] * static_cast<double>(lengths[i]);
        const double h = entropy(pmf);
        CHECK(mean >= h - 1e-12);
        CHECK(mean < h + 1.0);
    }
}

TEST_CASE("scaling worked examples") {
    CHECK(scale_to_budget({{1, 2, 2}}, 10) == std::vector<long long>{2, 4, 4});
    CHECK(scale_to_budget({{1, 2, 2}}, 7) == std::vector<long long>{1, 3, 3});
    CHECK(scale_to_budget({{2, 2, 2, 2}}, 8) == std::vector<long long>{2, 2, 2, 2});
    CHECK_THROWS_AS(scale_to_budget({{1, 2}}, 1), InputError);
}

TEST_CASE("scaling is exact, positive and order preserving") {
    std::mt19937 rng(303);
    std::uniform_int_distribution<int> mdist(2, 12);
    std::uniform_int_distribution<long long> ldist(1, 9);
    for (int trial = 0; trial < 800; ++trial) {
        const int m = mdist(rng);
        CodeLengths code;
        for (int i = 0; i < m; ++i) code.lengths.push_back(ldist(rng));
        std::uniform_int_distribution<long long> budget_dist(m, 400);
        const long long budget = budget_dist(rng);
        const auto times = scale_to_budget(code, budget);

        long long sum = 0;
        for (long long t : times) {
            CHECK(t >= 1);
            sum += t;
        }
        CHECK(sum == budget);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j)
                if (code.lengths[static_cast<std::size_t>(i)] <
                    code.lengths[static_cast<std::size_t>(j)])
                    CHECK(times[static_cast<std::size_t>(i)] <=
                          times[static_cast<std::size_t>(j)]);
    }
}
