#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "chronosense/traffic.hpp"

namespace chronosense::allocation {

enum class SchemeKind { Ap, Gp, Agp, Explicit };

// Parametric description of a sensing-time sequence. For Ap/Gp `d` is the
// common difference/ratio; Agp carries both a difference `d` and a ratio `r`.
struct AllocationScheme {
    SchemeKind kind = SchemeKind::Explicit;
    long long t1 = 0;
    long long d = 0;
    long long r = 0;
    std::vector<long long> times;

    static AllocationScheme ap(long long t1, long long d);
    static AllocationScheme gp(long long t1, long long d);
    static AllocationScheme agp(long long t1, long long d, long long r);
    static AllocationScheme explicit_times(std::vector<long long> times);

    std::string label() const;
};

struct Constraints {
    long long min_t1 = 1;
    // Family default when unset: AP 1, GP 2, AGP 1.
    std::optional<long long> min_d;
    long long max_enum = 1'000'000;
    bool gp_powers_of_two = false;

    long long min_d_for(SchemeKind kind) const;
};

// Solution family of a x + b y = c: x = x0 + t*x_step, y = y0 - t*y_step.
// The particular solution is canonicalized to 0 <= x0 < |x_step| when the
// x step is nonzero.
struct DiophantineSolution {
    long long gcd = 0;
    long long x0 = 0;
    long long y0 = 0;
    long long x_step = 0;  // b / gcd
    long long y_step = 0;  // a / gcd

    std::pair<long long, long long> at(long long t) const;
    std::optional<long long> parameter_for(long long x, long long y) const;
};

// Empty when gcd(a, b) does not divide c. (a, b) = (0, 0) is rejected.
std::optional<DiophantineSolution> solve_linear_diophantine(long long a, long long b, long long c);

// Parameter interval [lo, hi] with x(t) >= min_x and y(t) >= min_y.
std::optional<std::pair<long long, long long>> feasible_parameter_range(
    const DiophantineSolution& sol, long long min_x, long long min_y);

// All arithmetic-progression schemes with 2*M*t1 + M*(M-1)*d = 2*L under the
// constraints, ascending by t1. M = 1 degenerates to the single explicit
// allocation (L).
std::vector<AllocationScheme> ap_solutions(int bands, long long budget,
                                           const Constraints& constraints = {});

// All geometric-progression schemes with t1 * (d^M - 1) / (d - 1) = L,
// ascending by ratio.
std::vector<AllocationScheme> gp_solutions(int bands, long long budget,
                                           const Constraints& constraints = {});

// Arithmetico-geometric schemes summing to the budget. By default the ratio
// is tied to the difference (r = d); pass tie_ratio_to_difference = false to
// search over independent (d, r).
std::vector<AllocationScheme> agp_solutions(int bands, long long budget,
                                            const Constraints& constraints = {},
                                            bool tie_ratio_to_difference = true);

// Baseline ladder: min_time, min_time+gap, ..., and the remainder in the last
// slot. Result is sorted ascending. Throws InfeasibleError when the remainder
// would undercut min_time.
std::vector<long long> greedy_allocation(int bands, long long budget, long long min_time,
                                         long long gap);

// All strictly increasing M-tuples with every entry > floor_exclusive summing
// to the budget, lexicographically sorted. Throws when the result count would
// exceed max_results.
std::vector<std::vector<long long>> enumerate_partitions(int bands, long long budget,
                                                         long long floor_exclusive,
                                                         long long max_results = 1'000'000);

std::vector<long long> expand_scheme(const AllocationScheme& scheme, int bands);

// Band -> time assignment with moment annotations. Band order follows the
// occupancy profile.
struct SensingAllocation {
    std::vector<std::string> band_ids;
    std::vector<long long> times_by_band;
    long long budget = 0;
    AllocationScheme scheme;
    double mean = 0.0;
    double variance = 0.0;
};

// The band with the k-th largest probability receives the k-th smallest time;
// probability ties break by band id. `times` must be sorted ascending.
SensingAllocation assign_times(const traffic::OccupancyProfile& profile,
                               const std::vector<long long>& times,
                               const AllocationScheme& scheme);
SensingAllocation assign_times(const traffic::OccupancyProfile& profile,
                               const std::vector<long long>& times);

}  // namespace chronosense::allocation
