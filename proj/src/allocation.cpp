#include "chronosense/allocation.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <functional>
#include <numeric>

#include "chronosense/errors.hpp"

namespace chronosense::allocation {

namespace {

using int128 = __int128;

long long checked_ll(int128 v, const char* what) {
    if (v > static_cast<int128>(LLONG_MAX) || v < static_cast<int128>(LLONG_MIN))
        throw NumericError(std::string("integer overflow in ") + what);
    return static_cast<long long>(v);
}

// floor/ceil division with positive divisor
long long floor_div(long long a, long long b) {
    long long q = a / b;
    if (a % b != 0 && a < 0) --q;
    return q;
}

long long ceil_div(long long a, long long b) {
    long long q = a / b;
    if (a % b != 0 && a > 0) ++q;
    return q;
}

// g = |a| x + |b| y, iterative extended Euclid on magnitudes
void ext_gcd(long long a, long long b, long long& g, long long& x, long long& y) {
    long long old_r = a, r = b;
    long long old_s = 1, s = 0;
    long long old_t = 0, t = 1;
    while (r != 0) {
        const long long q = old_r / r;
        long long tmp = old_r - q * r;
        old_r = r;
        r = tmp;
        tmp = old_s - q * s;
        old_s = s;
        s = tmp;
        tmp = old_t - q * t;
        old_t = t;
        t = tmp;
    }
    g = old_r;
    x = old_s;
    y = old_t;
}

bool is_power_of_two(long long v) { return v > 0 && (v & (v - 1)) == 0; }

}  // namespace

AllocationScheme AllocationScheme::ap(long long t1, long long d) {
    AllocationScheme s;
    s.kind = SchemeKind::Ap;
    s.t1 = t1;
    s.d = d;
    return s;
}

AllocationScheme AllocationScheme::gp(long long t1, long long d) {
    AllocationScheme s;
    s.kind = SchemeKind::Gp;
    s.t1 = t1;
    s.d = d;
    return s;
}

AllocationScheme AllocationScheme::agp(long long t1, long long d, long long r) {
    AllocationScheme s;
    s.kind = SchemeKind::Agp;
    s.t1 = t1;
    s.d = d;
    s.r = r;
    return s;
}

AllocationScheme AllocationScheme::explicit_times(std::vector<long long> times) {
    AllocationScheme s;
    s.kind = SchemeKind::Explicit;
    s.times = std::move(times);
    return s;
}

std::string AllocationScheme::label() const {
    switch (kind) {
        case SchemeKind::Ap:
            return "AP(" + std::to_string(t1) + "," + std::to_string(d) + ")";
        case SchemeKind::Gp:
            return "GP(" + std::to_string(t1) + "," + std::to_string(d) + ")";
        case SchemeKind::Agp:
            return "AGP(" + std::to_string(t1) + "," + std::to_string(d) + "," +
                   std::to_string(r) + ")";
        case SchemeKind::Explicit:
            return "EXPLICIT";
    }
    return "?";
}

long long Constraints::min_d_for(SchemeKind kind) const {
    if (min_d) return *min_d;
    switch (kind) {
        case SchemeKind::Gp:
            return 2;
        default:
            return 1;
    }
}

std::pair<long long, long long> DiophantineSolution::at(long long t) const {
    return {x0 + t * x_step, y0 - t * y_step};
}

std::optional<long long> DiophantineSolution::parameter_for(long long x, long long y) const {
    if (x_step != 0) {
        const long long dx = x - x0;
        if (dx % x_step != 0) return std::nullopt;
        const long long t = dx / x_step;
        if (y0 - t * y_step != y) return std::nullopt;
        return t;
    }
    if (x != x0) return std::nullopt;
    const long long dy = y0 - y;
    if (y_step == 0 || dy % y_step != 0) return std::nullopt;
    return dy / y_step;
}

std::optional<DiophantineSolution> solve_linear_diophantine(long long a, long long b,
                                                            long long c) {
    if (a == 0 && b == 0) throw InputError("a and b cannot both be zero");

    long long g, xm, ym;
    ext_gcd(std::llabs(a), std::llabs(b), g, xm, ym);
    if (c % g != 0) return std::nullopt;

    const long long scale = c / g;
    int128 x0 = static_cast<int128>(xm) * (a < 0 ? -1 : 1) * scale;
    int128 y0 = static_cast<int128>(ym) * (b < 0 ? -1 : 1) * scale;

    DiophantineSolution sol;
    sol.gcd = g;
    sol.x_step = b / g;
    sol.y_step = a / g;

    // Canonical anchor: smallest non-negative x (or y when x is fixed).
    if (sol.x_step != 0) {
        const int128 m = sol.x_step > 0 ? sol.x_step : -sol.x_step;
        const int128 rem = ((x0 % m) + m) % m;
        const int128 t = (rem - x0) / sol.x_step;
        x0 = rem;
        y0 -= t * sol.y_step;
    } else if (sol.y_step != 0) {
        const int128 m = sol.y_step > 0 ? sol.y_step : -sol.y_step;
        const int128 rem = ((y0 % m) + m) % m;
        y0 = rem;
    }

    if (static_cast<int128>(a) * x0 + static_cast<int128>(b) * y0 != static_cast<int128>(c))
        throw NumericError("diophantine particular solution verification failed");

    sol.x0 = checked_ll(x0, "diophantine solution");
    sol.y0 = checked_ll(y0, "diophantine solution");
    return sol;
}

std::optional<std::pair<long long, long long>> feasible_parameter_range(
    const DiophantineSolution& sol, long long min_x, long long min_y) {
    long long lo = LLONG_MIN, hi = LLONG_MAX;

    if (sol.x_step > 0)
        lo = std::max(lo, ceil_div(min_x - sol.x0, sol.x_step));
    else if (sol.x_step < 0)
        hi = std::min(hi, floor_div(sol.x0 - min_x, -sol.x_step));
    else if (sol.x0 < min_x)
        return std::nullopt;

    if (sol.y_step > 0)
        hi = std::min(hi, floor_div(sol.y0 - min_y, sol.y_step));
    else if (sol.y_step < 0)
        lo = std::max(lo, ceil_div(min_y - sol.y0, -sol.y_step));
    else if (sol.y0 < min_y)
        return std::nullopt;

    if (lo > hi) return std::nullopt;
    return std::make_pair(lo, hi);
}

std::vector<AllocationScheme> ap_solutions(int bands, long long budget,
                                           const Constraints& constraints) {
    if (bands < 1) throw InputError("need at least 1 band");
    const long long min_t1 = constraints.min_t1;
    const long long min_d = constraints.min_d_for(SchemeKind::Ap);

    if (bands == 1) {
        if (budget >= min_t1) return {AllocationScheme::explicit_times({budget})};
        return {};
    }

    const long long m = bands;
    const auto sol = solve_linear_diophantine(2 * m, m * (m - 1), 2 * budget);
    if (!sol) return {};
    const auto range = feasible_parameter_range(*sol, min_t1, min_d);
    if (!range) return {};

    if (range->second - range->first + 1 > constraints.max_enum)
        throw InputError("arithmetic-progression family exceeds the enumeration bound");

    std::vector<AllocationScheme> out;
    for (long long t = range->first; t <= range->second; ++t) {
        const auto [t1, d] = sol->at(t);
        out.push_back(AllocationScheme::ap(t1, d));
    }
    // x_step > 0 here, so the family is already ascending in t1.
    return out;
}

std::vector<AllocationScheme> gp_solutions(int bands, long long budget,
                                           const Constraints& constraints) {
    if (bands < 2) throw InputError("geometric family needs at least 2 bands");
    const long long min_t1 = constraints.min_t1;
    const long long min_ratio = std::max<long long>(1, constraints.min_d_for(SchemeKind::Gp));

    std::vector<AllocationScheme> out;
    if (min_ratio == 1 && !constraints.gp_powers_of_two) {
        if (budget % bands == 0 && budget / bands >= min_t1)
            out.push_back(AllocationScheme::gp(budget / bands, 1));
    }
    for (long long d = std::max<long long>(2, min_ratio);; ++d) {
        int128 sum = 0, term = 1;
        for (int j = 0; j < bands && sum <= budget; ++j) {
            sum += term;
            term *= d;
        }
        if (sum > budget) break;
        if (constraints.gp_powers_of_two && !is_power_of_two(d)) continue;
        const auto s = static_cast<long long>(sum);
        if (budget % s == 0 && budget / s >= min_t1)
            out.push_back(AllocationScheme::gp(budget / s, d));
    }
    return out;
}

namespace {

// Geometric pieces of the arithmetico-geometric sum:
//   sum_j (t1 + (j-1)d) r^(j-1) = t1 * geo + d * weighted
// Returns false when either piece already exceeds `cap`.
bool agp_sum_pieces(int bands, long long r, int128 cap, int128& geo, int128& weighted) {
    geo = 0;
    weighted = 0;
    int128 power = 1;
    for (int j = 0; j < bands; ++j) {
        geo += power;
        weighted += static_cast<int128>(j) * power;
        if (geo > cap || weighted > cap) return false;
        power *= r;
    }
    return true;
}

}  // namespace

std::vector<AllocationScheme> agp_solutions(int bands, long long budget,
                                            const Constraints& constraints,
                                            bool tie_ratio_to_difference) {
    if (bands < 2) throw InputError("arithmetico-geometric family needs at least 2 bands");
    const long long min_t1 = constraints.min_t1;
    const long long min_d = std::max<long long>(tie_ratio_to_difference ? 1 : 0,
                                                constraints.min_d_for(SchemeKind::Agp));

    std::vector<AllocationScheme> out;
    auto emit = [&](long long t1, long long d, long long r) {
        out.push_back(AllocationScheme::agp(t1, d, r));
        if (static_cast<long long>(out.size()) > constraints.max_enum)
            throw InputError("arithmetico-geometric family exceeds the enumeration bound");
    };

    if (tie_ratio_to_difference) {
        for (long long d = std::max<long long>(1, min_d);; ++d) {
            int128 geo, weighted;
            if (!agp_sum_pieces(bands, d, budget, geo, weighted)) break;
            const int128 minimal = static_cast<int128>(min_t1) * geo + static_cast<int128>(d) * weighted;
            if (minimal > budget) break;
            const int128 rem = budget - static_cast<int128>(d) * weighted;
            if (rem >= static_cast<int128>(min_t1) * geo && rem % geo == 0)
                emit(static_cast<long long>(rem / geo), d, d);
        }
        return out;
    }

    for (long long r = 1;; ++r) {
        int128 geo, weighted;
        if (!agp_sum_pieces(bands, r, budget, geo, weighted)) break;
        if (static_cast<int128>(min_t1) * geo + static_cast<int128>(min_d) * weighted > budget)
            break;
        for (long long d = min_d;; ++d) {
            const int128 used = static_cast<int128>(d) * weighted;
            const int128 rem = budget - used;
            if (rem < static_cast<int128>(min_t1) * geo) break;
            if (rem % geo == 0) emit(static_cast<long long>(rem / geo), d, r);
        }
    }
    return out;
}

std::vector<long long> greedy_allocation(int bands, long long budget, long long min_time,
                                         long long gap) {
    if (bands < 1) throw InputError("need at least 1 band");
    if (min_time < 0 || gap < 0) throw InputError("min_time and gap must be non-negative");

    std::vector<long long> times;
    int128 used = 0;
    for (int j = 0; j + 1 < bands; ++j) {
        const long long slot = checked_ll(
            static_cast<int128>(min_time) + static_cast<int128>(j) * gap, "greedy slot");
        times.push_back(slot);
        used += slot;
    }
    const int128 last = static_cast<int128>(budget) - used;
    if (last < min_time)
        throw InfeasibleError("greedy allocation infeasible: remainder " +
                              std::to_string(static_cast<long long>(last)) +
                              " is below the minimum time " + std::to_string(min_time));
    times.push_back(checked_ll(last, "greedy remainder"));
    std::sort(times.begin(), times.end());
    return times;
}

std::vector<std::vector<long long>> enumerate_partitions(int bands, long long budget,
                                                         long long floor_exclusive,
                                                         long long max_results) {
    if (bands < 1) throw InputError("need at least 1 band");

    std::vector<std::vector<long long>> out;
    std::vector<long long> prefix;
    std::function<void(long long, int, long long)> walk = [&](long long lo, int k,
                                                              long long remaining) {
        if (k == 0) {
            if (remaining == 0) {
                if (static_cast<long long>(out.size()) >= max_results)
                    throw InputError("partition enumeration exceeds the configured bound");
                out.push_back(prefix);
            }
            return;
        }
        // k strictly increasing values from v need at least k*v + k(k-1)/2.
        const long long kk = k;
        const long long hi = floor_div(2 * remaining - kk * (kk - 1), 2 * kk);
        for (long long v = lo; v <= hi; ++v) {
            prefix.push_back(v);
            walk(v + 1, k - 1, remaining - v);
            prefix.pop_back();
        }
    };
    walk(std::max<long long>(floor_exclusive + 1, 1), bands, budget);
    return out;
}

std::vector<long long> expand_scheme(const AllocationScheme& scheme, int bands) {
    if (bands < 1) throw InputError("need at least 1 band");
    if (scheme.kind == SchemeKind::Explicit) {
        if (static_cast<int>(scheme.times.size()) != bands)
            throw InputError("explicit scheme has wrong length");
        return scheme.times;
    }
    if (scheme.t1 < 0 || scheme.d < 0 || scheme.r < 0)
        throw InputError("scheme parameters must be non-negative");

    std::vector<long long> times(static_cast<std::size_t>(bands));
    int128 power = 1;
    for (int j = 0; j < bands; ++j) {
        int128 value = 0;
        switch (scheme.kind) {
            case SchemeKind::Ap:
                value = static_cast<int128>(scheme.t1) + static_cast<int128>(j) * scheme.d;
                break;
            case SchemeKind::Gp:
                value = static_cast<int128>(scheme.t1) * power;
                power *= scheme.d;
                break;
            case SchemeKind::Agp:
                value = (static_cast<int128>(scheme.t1) + static_cast<int128>(j) * scheme.d) *
                        power;
                power *= scheme.r;
                break;
            case SchemeKind::Explicit:
                break;
        }
        times[static_cast<std::size_t>(j)] = checked_ll(value, "scheme expansion");
    }
    return times;
}

SensingAllocation assign_times(const traffic::OccupancyProfile& profile,
                               const std::vector<long long>& times,
                               const AllocationScheme& scheme) {
    const std::size_t m = profile.q.size();
    if (times.size() != m) throw InputError("time count does not match the number of bands");
    if (!std::is_sorted(times.begin(), times.end()))
        throw InputError("assign_times expects ascending times");

    // Rank bands by descending probability, ties by band id.
    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (profile.q[a] != profile.q[b]) return profile.q[a] > profile.q[b];
        return profile.band_ids[a] < profile.band_ids[b];
    });

    SensingAllocation alloc;
    alloc.band_ids = profile.band_ids;
    alloc.times_by_band.resize(m);
    alloc.scheme = scheme;
    for (std::size_t k = 0; k < m; ++k) alloc.times_by_band[order[k]] = times[k];

    long long total = 0;
    double mean = 0.0, second = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        total += alloc.times_by_band[i];
        const auto t = static_cast<double>(alloc.times_by_band[i]);
        mean += t * profile.q[i];
        second += t * t * profile.q[i];
    }
    alloc.budget = total;
    alloc.mean = mean;
    alloc.variance = second - mean * mean;
    return alloc;
}

SensingAllocation assign_times(const traffic::OccupancyProfile& profile,
                               const std::vector<long long>& times) {
    return assign_times(profile, times, AllocationScheme::explicit_times(times));
}

}  // namespace chronosense::allocation
