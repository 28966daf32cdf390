// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Criterion 11 drives the installed CLI binary twice and compares
// the outputs byte for byte.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "chronosense/allocation.hpp"
#include "chronosense/coding.hpp"
#include "chronosense/numerics.hpp"
#include "chronosense/stochastic.hpp"
#include "chronosense/varmatrix.hpp"

using namespace chronosense;

namespace {

int g_failures = 0;

void criterion(int number, const std::string& name, bool pass) {
    std::printf("%s criterion %2d: %s\n", pass ? "PASS" : "FAIL", number, name.c_str());
    if (!pass) ++g_failures;
}

bool near(double a, double b, double tol) { return std::fabs(a - b) <= tol; }

std::vector<double> random_pmf(std::mt19937& rng, int n, bool sorted) {
    std::uniform_real_distribution<double> u(0.05, 1.0);
    std::vector<double> p(static_cast<std::size_t>(n));
    double sum = 0.0;
    for (double& v : p) {
        v = u(rng);
        sum += v;
    }
    for (double& v : p) v /= sum;
    if (sorted) std::sort(p.begin(), p.end());
    return p;
}

long long sum_of(const std::vector<long long>& v) {
    long long s = 0;
    for (long long x : v) s += x;
    return s;
}

// ---------------------------------------------------------------------------
// criteria
// ---------------------------------------------------------------------------

bool ap_case_one() {
    const auto schemes = allocation::ap_solutions(10, 100);
    if (schemes.size() != 1 || schemes[0].t1 != 1 || schemes[0].d != 2) return false;
    const auto times = allocation::expand_scheme(schemes[0], 10);
    return times.front() == 1 && times.back() == 19 && sum_of(times) == 100;
}

bool ap_case_two() {
    const auto schemes = allocation::ap_solutions(15, 900);
    if (schemes.size() != 8) return false;
    for (long long t = 0; t < 8; ++t) {
        const auto& s = schemes[static_cast<std::size_t>(t)];
        if (s.t1 != 4 + 7 * t || s.d != 8 - t) return false;
        if (sum_of(allocation::expand_scheme(s, 15)) != 900) return false;
    }
    return true;
}

bool gp_divisibility() {
    for (int m = 2; m <= 10; ++m) {
        const long long mersenne = (1LL << m) - 1;
        for (long long budget = 1; budget <= 5000; ++budget) {
            bool has_d2 = false;
            for (const auto& s : allocation::gp_solutions(m, budget))
                if (s.d == 2) {
                    has_d2 = true;
                    if (sum_of(allocation::expand_scheme(s, m)) != budget) return false;
                }
            if (has_d2 != (budget % mersenne == 0)) return false;
        }
    }
    return true;
}

bool kraft_ladder() {
    for (long long t1 = 1; t1 <= 10; ++t1)
        for (int m = 1; m <= 20; ++m) {
            std::vector<long long> times;
            for (int j = 0; j < m; ++j) times.push_back(t1 + j);
            const double sum = coding::kraft_sum(times);
            if (sum > 1.0) return false;
            if (t1 == 1 && sum != 1.0 - std::ldexp(1.0, -m)) return false;
            const double closed = std::ldexp(1.0, static_cast<int>(1 - t1)) -
                                  std::ldexp(1.0, static_cast<int>(1 - t1 - m));
            if (sum != closed) return false;
        }
    return true;
}

bool entropy_bound() {
    std::mt19937 rng(20240615);
    std::uniform_int_distribution<int> mdist(2, 12);
    std::uniform_int_distribution<long long> bump(0, 5);
    for (int trial = 0; trial < 10000; ++trial) {
        const int m = mdist(rng);
        auto lengths = coding::huffman_lengths(random_pmf(rng, m, false)).lengths;
        for (long long& l : lengths) l += bump(rng);
        if (coding::kraft_sum(lengths) > 1.0) return false;
        const auto pmf = random_pmf(rng, m, false);
        double mean = 0.0;
        for (int i = 0; i < m; ++i)
            mean += static_cast<double>(lengths[static_cast<std::size_t>(i)]) *
                    pmf[static_cast<std::size_t>(i)];
        if (mean < coding::entropy(pmf) - 1e-12) return false;
    }
    return true;
}

bool closed_form_moments() {
    std::mt19937 rng(987654);
    std::uniform_int_distribution<int> mdist(2, 8);
    std::uniform_int_distribution<long long> pdist(0, 20);
    auto ok = [](const stochastic::MomentSummary& a, const stochastic::MomentSummary& b) {
        auto rel = [](double x, double y) {
            return std::fabs(x - y) <= 1e-12 * std::max({1.0, std::fabs(x), std::fabs(y)});
        };
        return rel(a.mean, b.mean) && rel(a.second_moment, b.second_moment) &&
               rel(a.variance, b.variance);
    };
    for (int trial = 0; trial < 10000; ++trial) {
        const int m = mdist(rng);
        const auto p = random_pmf(rng, m, true);
        const long long t1 = pdist(rng), d = pdist(rng), r = pdist(rng);
        using allocation::AllocationScheme;
        using allocation::expand_scheme;
        if (!ok(stochastic::ap_moments(static_cast<double>(t1), static_cast<double>(d), p),
                stochastic::moments(expand_scheme(AllocationScheme::ap(t1, d), m), p)))
            return false;
        if (!ok(stochastic::gp_moments(static_cast<double>(t1), static_cast<double>(d), p),
                stochastic::moments(expand_scheme(AllocationScheme::gp(t1, d), m), p)))
            return false;
        if (!ok(stochastic::agp_moments(static_cast<double>(t1), static_cast<double>(d),
                                        static_cast<double>(r), p),
                stochastic::moments(expand_scheme(AllocationScheme::agp(t1, d, r), m), p)))
            return false;
    }
    return true;
}

bool ap_fixed_point_criterion() {
    const std::vector<double> p{0.2, 0.3, 0.5};
    const double dstar = stochastic::ap_fixed_point(1.0, p);
    if (!near(dstar, 2.7314, 1e-4)) return false;
    // unique positive root: the companion root must be negative
    const auto w = stochastic::sorted_prob_weights(p);
    const double a = w.alpha - w.mu * w.mu;
    const double other = (w.mu - std::sqrt(w.mu * w.mu + 4 * a)) / (2 * a);
    if (other >= 0.0) return false;
    const auto m = stochastic::ap_moments(1.0, dstar, p);
    return std::fabs(m.mean - m.variance) <= 1e-9;
}

bool gp_fixed_point_criterion() {
    const std::vector<double> p{0.5, 0.3, 0.2};
    const double dstar = stochastic::gp_fixed_point(1.0, p);
    if (!near(dstar, 2.205, 0.01)) return false;
    auto f = [&](double x) { return p[0] + p[1] * x + p[2] * x * x; };
    const double residual = f(dstar * dstar) - f(dstar) * f(dstar) - f(dstar);
    return std::fabs(residual) <= 1e-9;
}

bool partition_enumeration() {
    const auto parts = allocation::enumerate_partitions(3, 9, 0);
    const std::vector<std::vector<long long>> expected{{1, 2, 6}, {1, 3, 5}, {2, 3, 4}};
    if (parts != expected) return false;

    std::function<long long(long long, int, long long)> oracle =
        [&](long long lo, int k, long long remaining) -> long long {
        if (k == 0) return remaining == 0 ? 1 : 0;
        long long total = 0;
        for (long long v = lo; v <= remaining; ++v) total += oracle(v + 1, k - 1, remaining - v);
        return total;
    };
    for (int m = 1; m <= 5; ++m)
        for (long long budget = 1; budget <= 40; ++budget)
            if (static_cast<long long>(allocation::enumerate_partitions(m, budget, 0).size()) !=
                oracle(1, m, budget))
                return false;
    return true;
}

bool matrix_suite() {
    const varmatrix::VarianceMatrix vm = varmatrix::build_g({0.5, 0.3, 0.2});
    if (!near(varmatrix::g_trace(vm), 0.62, 1e-12)) return false;
    if (std::fabs(varmatrix::g_det(vm).determinant) > 1e-10) return false;

    const varmatrix::MatrixAnalysis a = varmatrix::analyze(vm);
    if (!near(a.eigenvalues[0], 0.0, 1e-5)) return false;
    if (!near(a.eigenvalues[1], 0.23190, 1e-5)) return false;
    if (!near(a.eigenvalues[2], 0.38810, 1e-5)) return false;
    if (a.spectral_radius > 0.5 + 1e-12) return false;
    if (!near(a.bounds.second, 0.5, 1e-12)) return false;

    const numerics::Matrix p = varmatrix::uniformize(vm);
    for (std::size_t i = 0; i < 3; ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < 3; ++j) {
            if (p(i, j) < 0.0) return false;
            row += p(i, j);
        }
        if (!near(row, 1.0, 1e-12)) return false;
    }

    const varmatrix::ChatPower chat = varmatrix::chat_power({0.5, 0.3, 0.2}, 2);
    if (!near(chat.alpha_power, 0.38, 1e-15)) return false;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) {
            const double direct = 0.38 * vm.probs[i] * vm.probs[j];
            if (!near(chat.matrix(i, j), direct, 1e-12)) return false;
        }

    // lower-bound counterexample: uniform pmf has rho = 1/3 < 4/9
    const double third = 1.0 / 3.0;
    const varmatrix::MatrixAnalysis u = varmatrix::analyze(varmatrix::build_g({third, third, third}));
    if (!near(u.bounds.first, 4.0 / 9.0, 1e-12)) return false;
    if (!near(u.spectral_radius, third, 1e-9)) return false;
    return u.spectral_radius < u.bounds.first;
}

bool cli_determinism() {
    const std::string cli = CHRONOSENSE_CLI_PATH;
    const std::string input = std::string(CHRONOSENSE_TEST_DATA_DIR) + "/traffic_m10.csv";
    const std::string args = " plan --input " + input +
                             " --budget 100 --strategy ap --policy min-min --format json";
    const std::string out1 = "acceptance_run1.json";
    const std::string out2 = "acceptance_run2.json";

    if (std::system((cli + args + " > " + out1).c_str()) != 0) return false;
    if (std::system((cli + args + " > " + out2).c_str()) != 0) return false;

    auto slurp = [](const std::string& path) {
        std::ifstream in(path, std::ios::binary);
        std::ostringstream buf;
        buf << in.rdbuf();
        return buf.str();
    };
    const std::string a = slurp(out1);
    const std::string b = slurp(out2);
    std::remove(out1.c_str());
    std::remove(out2.c_str());
    return !a.empty() && a == b;
}

}  // namespace

int main() {
    criterion(1, "AP family for M=10, L=100 is exactly (1,2) summing to 100", ap_case_one());
    criterion(2, "AP family for M=15, L=900 is (4+7t, 8-t) for t=0..7", ap_case_two());
    criterion(3, "GP d=2 solutions exist iff (2^M - 1) | L for M<=10, L<=5000",
              gp_divisibility());
    criterion(4, "unit-difference ladders satisfy Kraft with the exact closed form",
              kraft_ladder());
    criterion(5, "10^4 Kraft-feasible allocations respect the entropy lower bound",
              entropy_bound());
    criterion(6, "closed-form moments match expanded-scheme moments on 10^4 cases",
              closed_form_moments());
    criterion(7, "AP fixed point at T1=1, p=(.2,.3,.5) is 2.7314 with E[Z]=Var[Z]",
              ap_fixed_point_criterion());
    criterion(8, "GP fixed point at T1=1, p=(.5,.3,.2) is 2.205 with residual <= 1e-9",
              gp_fixed_point_criterion());
    criterion(9, "partition enumeration matches the recursive oracle up to M=5, L=40",
              partition_enumeration());
    criterion(10, "variance-matrix suite for p=(.5,.3,.2) plus the uniform counterexample",
              matrix_suite());
    criterion(11, "plan CLI output is byte-identical across two invocations",
              cli_determinism());

    if (g_failures) {
        std::printf("%d criterion(s) failed\n", g_failures);
        return 1;
    }
    std::printf("all 11 criteria passed\n");
    return 0;
}
