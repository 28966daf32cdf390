#include "chronosense/stochastic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <tuple>

#include "chronosense/errors.hpp"

namespace chronosense::stochastic {

namespace {

void validate_pmf(const std::vector<double>& probs) {
    if (probs.empty()) throw InputError("empty probability vector");
    double sum = 0.0;
    for (double p : probs) {
        if (!(p >= 0.0)) throw InputError("probabilities must be non-negative");
        sum += p;
    }
    if (std::fabs(sum - 1.0) > 1e-9) throw InputError("probabilities must sum to 1");
}

void validate_sorted_pmf(const std::vector<double>& probs) {
    validate_pmf(probs);
    if (!std::is_sorted(probs.begin(), probs.end()))
        throw InputError("closed-form moments need ascending sorted probabilities");
}

}  // namespace

MomentSummary moments(const std::vector<double>& times, const std::vector<double>& probs) {
    if (times.size() != probs.size()) throw InputError("times and probabilities length mismatch");
    validate_pmf(probs);
    MomentSummary m;
    for (std::size_t i = 0; i < times.size(); ++i) {
        m.mean += times[i] * probs[i];
        m.second_moment += times[i] * times[i] * probs[i];
    }
    m.variance = m.second_moment - m.mean * m.mean;
    return m;
}

MomentSummary moments(const std::vector<long long>& times, const std::vector<double>& probs) {
    return moments(std::vector<double>(times.begin(), times.end()), probs);
}

SortedProbWeights sorted_prob_weights(const std::vector<double>& sorted_probs) {
    validate_sorted_pmf(sorted_probs);
    SortedProbWeights w;
    for (std::size_t j = 0; j < sorted_probs.size(); ++j) {
        const auto k = static_cast<double>(j);
        w.mu += k * sorted_probs[j];
        w.alpha += k * k * sorted_probs[j];
    }
    return w;
}

MomentSummary ap_moments(double t1, double d, const std::vector<double>& sorted_probs) {
    const SortedProbWeights w = sorted_prob_weights(sorted_probs);
    MomentSummary m;
    m.mean = t1 + w.mu * d;
    m.second_moment = t1 * t1 + w.alpha * d * d + 2.0 * t1 * d * w.mu;
    m.variance = (w.alpha - w.mu * w.mu) * d * d;
    return m;
}

MomentSummary gp_moments(double t1, double d, const std::vector<double>& sorted_probs) {
    validate_sorted_pmf(sorted_probs);
    auto f = [&](double x) {
        double acc = 0.0, power = 1.0;
        for (double p : sorted_probs) {
            acc += power * p;
            power *= x;
        }
        return acc;
    };
    MomentSummary m;
    const double fd = f(d);
    const double fd2 = f(d * d);
    m.mean = t1 * fd;
    m.second_moment = t1 * t1 * fd2;
    m.variance = t1 * t1 * (fd2 - fd * fd);
    return m;
}

MomentSummary agp_moments(double t1, double d, double r,
                          const std::vector<double>& sorted_probs) {
    validate_sorted_pmf(sorted_probs);
    double f1 = 0.0, f2 = 0.0, f3 = 0.0, f4 = 0.0, f5 = 0.0;
    double power = 1.0;  // r^(j-1)
    for (std::size_t j = 0; j < sorted_probs.size(); ++j) {
        const double p = sorted_probs[j];
        const auto k = static_cast<double>(j);
        f1 += power * p;
        f2 += k * power * p;
        f3 += power * power * p;
        f4 += k * k * power * power * p;
        f5 += k * power * power * p;
        power *= r;
    }
    MomentSummary m;
    m.mean = t1 * f1 + d * f2;
    m.second_moment = t1 * t1 * f3 + d * d * f4 + 2.0 * t1 * d * f5;
    m.variance = m.second_moment - m.mean * m.mean;
    return m;
}

double ap_fixed_point(double t1, const std::vector<double>& sorted_probs) {
    if (t1 < 0.0) throw InputError("t1 must be non-negative");
    const SortedProbWeights w = sorted_prob_weights(sorted_probs);
    const double a = w.alpha - w.mu * w.mu;
    if (a <= 1e-14) throw NumericError("degenerate quadratic: alpha - mu^2 is zero");

    const double disc = w.mu * w.mu + 4.0 * a * t1;
    const double d = (w.mu + std::sqrt(disc)) / (2.0 * a);
    const MomentSummary m = ap_moments(t1, d, sorted_probs);
    if (std::fabs(m.mean - m.variance) > 1e-9 * std::max(1.0, std::fabs(m.mean)))
        throw NumericError("AP fixed point failed the E[Z] = Var[Z] residual check");
    return d;
}

numerics::Polynomial gp_fixed_point_polynomial(double t1,
                                               const std::vector<double>& sorted_probs) {
    // The pmf is consumed in the order given: p_j weights d^(j-1).
    validate_pmf(sorted_probs);
    const std::size_t m = sorted_probs.size();
    if (m < 2) throw InputError("GP fixed point needs at least 2 bands");

    // t1*f(d^2) - t1*f(d)^2 - f(d) with f(d) = sum p_j d^(j-1).
    std::vector<double> coeffs(2 * m - 1, 0.0);
    for (std::size_t j = 0; j < m; ++j) coeffs[2 * j] += t1 * sorted_probs[j];
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            coeffs[i + j] -= t1 * sorted_probs[i] * sorted_probs[j];
    for (std::size_t j = 0; j < m; ++j) coeffs[j] -= sorted_probs[j];
    return numerics::Polynomial(std::move(coeffs));
}

double gp_fixed_point(double t1, const std::vector<double>& sorted_probs) {
    const numerics::Polynomial poly = gp_fixed_point_polynomial(t1, sorted_probs);
    const std::vector<double> roots = numerics::real_roots(poly, 1e-12);
    auto f = [&](double x) {
        double acc = 0.0, power = 1.0;
        for (double p : sorted_probs) {
            acc += power * p;
            power *= x;
        }
        return acc;
    };
    for (double r : roots)
        if (r > 1.0) {
            const double mean = t1 * f(r);
            const double variance = t1 * t1 * (f(r * r) - f(r) * f(r));
            if (std::fabs(mean - variance) > 1e-6 * std::max(1.0, std::fabs(mean)))
                throw NumericError("GP fixed point failed the E[Z] = Var[Z] residual check");
            return r;
        }
    throw InfeasibleError("no fixed-point ratio greater than 1 exists");
}

double agp_fixed_point(double t1, const std::vector<double>& sorted_probs, double d_max) {
    validate_sorted_pmf(sorted_probs);
    if (sorted_probs.size() < 2) throw InputError("AGP fixed point needs at least 2 bands");
    if (!(d_max > 1.0)) throw InputError("d_max must exceed 1");

    auto gap = [&](double d) {
        const MomentSummary m = agp_moments(t1, d, d, sorted_probs);
        return m.mean - m.variance;
    };

    const int cells = 2048;
    double lo = 1.0 + 1e-9;
    double flo = gap(lo);
    double hi = lo;
    bool bracketed = false;
    for (int i = 1; i <= cells; ++i) {
        hi = 1.0 + (d_max - 1.0) * static_cast<double>(i) / cells;
        const double fhi = gap(hi);
        if (flo == 0.0) return lo;
        if ((flo < 0.0) != (fhi < 0.0)) {
            bracketed = true;
            break;
        }
        lo = hi;
        flo = fhi;
    }
    if (!bracketed)
        throw InfeasibleError("no sign change of E[Z] - Var[Z] on the bracketing interval");

    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double fm = gap(mid);
        if (fm == 0.0) return mid;
        if ((flo < 0.0) != (fm < 0.0))
            hi = mid;
        else {
            lo = mid;
            flo = fm;
        }
    }
    const double d = 0.5 * (lo + hi);
    const MomentSummary m = agp_moments(t1, d, d, sorted_probs);
    if (std::fabs(m.mean - m.variance) > 1e-6 * std::max(1.0, std::fabs(m.mean)))
        throw NumericError("AGP fixed point failed the E[Z] = Var[Z] residual check");
    return d;
}

std::vector<ParetoPoint> pareto_front(const std::vector<ParetoPoint>& points) {
    std::vector<ParetoPoint> sorted = points;
    std::sort(sorted.begin(), sorted.end(), [](const ParetoPoint& a, const ParetoPoint& b) {
        if (a.mean != b.mean) return a.mean < b.mean;
        if (a.variance != b.variance) return a.variance < b.variance;
        return a.index < b.index;
    });

    std::vector<ParetoPoint> front;
    double best_var = std::numeric_limits<double>::infinity();
    double best_mean = std::numeric_limits<double>::quiet_NaN();
    for (const ParetoPoint& p : sorted) {
        if (p.variance < best_var) {
            front.push_back(p);
            best_var = p.variance;
            best_mean = p.mean;
        } else if (p.variance == best_var && p.mean == best_mean) {
            front.push_back(p);  // exact duplicate of a kept point: not dominated
        }
    }
    return front;
}

namespace {

long long quantile(std::vector<long long> values, double fraction) {
    std::sort(values.begin(), values.end());
    const double pos = fraction * static_cast<double>(values.size() - 1);
    const auto idx = static_cast<std::size_t>(std::llround(pos));
    return values[std::min(idx, values.size() - 1)];
}

std::vector<allocation::AllocationScheme> trim_extremes(
    const std::vector<allocation::AllocationScheme>& solutions,
    const SelectionHeuristics& heuristics) {
    if (heuristics.trim_low <= 0.0 && heuristics.trim_high >= 1.0) return solutions;
    if (solutions.front().kind == allocation::SchemeKind::Explicit) return solutions;

    std::vector<long long> t1s, ds;
    for (const auto& s : solutions) {
        t1s.push_back(s.t1);
        ds.push_back(s.d);
    }
    const long long t1_lo = quantile(t1s, heuristics.trim_low);
    const long long t1_hi = quantile(t1s, heuristics.trim_high);
    const long long d_lo = quantile(ds, heuristics.trim_low);
    const long long d_hi = quantile(ds, heuristics.trim_high);

    std::vector<allocation::AllocationScheme> kept;
    for (const auto& s : solutions)
        if (s.t1 >= t1_lo && s.t1 <= t1_hi && s.d >= d_lo && s.d <= d_hi) kept.push_back(s);
    return kept.empty() ? solutions : kept;
}

}  // namespace

allocation::AllocationScheme select_solution(
    const std::vector<allocation::AllocationScheme>& solutions,
    const std::vector<double>& sorted_probs, SelectionPolicy policy,
    const SelectionHeuristics& heuristics) {
    if (solutions.empty()) throw InputError("cannot select from an empty solution list");
    for (const auto& s : solutions)
        if (s.kind != solutions.front().kind)
            throw InputError("selection needs a homogeneous solution family");

    const std::vector<allocation::AllocationScheme> pool = trim_extremes(solutions, heuristics);
    const bool parametric = pool.front().kind != allocation::SchemeKind::Explicit;

    switch (policy) {
        case SelectionPolicy::MinMin: {
            auto best = pool.begin();
            for (auto it = pool.begin(); it != pool.end(); ++it) {
                if (parametric) {
                    if (std::tie(it->t1, it->d, it->r) < std::tie(best->t1, best->d, best->r))
                        best = it;
                } else if (it->times < best->times) {
                    best = it;
                }
            }
            return *best;
        }
        case SelectionPolicy::MaxT1: {
            if (!parametric) throw InputError("max-t1 policy needs a parametric family");
            auto best = pool.begin();
            for (auto it = pool.begin(); it != pool.end(); ++it)
                if (it->t1 > best->t1 || (it->t1 == best->t1 && it->d < best->d)) best = it;
            return *best;
        }
        case SelectionPolicy::FixedPointRound: {
            if (!parametric) throw InputError("fixed-point policy needs a parametric family");
            long long min_t1 = pool.front().t1;
            for (const auto& s : pool) min_t1 = std::min(min_t1, s.t1);
            const auto t1_ref = static_cast<double>(min_t1);
            double dstar = 0.0;
            switch (pool.front().kind) {
                case allocation::SchemeKind::Ap:
                    dstar = ap_fixed_point(t1_ref, sorted_probs);
                    break;
                case allocation::SchemeKind::Gp:
                    dstar = gp_fixed_point(t1_ref, sorted_probs);
                    break;
                case allocation::SchemeKind::Agp:
                    dstar = agp_fixed_point(t1_ref, sorted_probs);
                    break;
                default:
                    throw InputError("fixed-point policy needs a parametric family");
            }
            const long long target = std::llround(dstar);
            auto best = pool.begin();
            for (auto it = pool.begin(); it != pool.end(); ++it) {
                const long long gap_it = std::llabs(it->d - target);
                const long long gap_best = std::llabs(best->d - target);
                if (std::tie(gap_it, it->t1, it->d) < std::tie(gap_best, best->t1, best->d))
                    best = it;
            }
            return *best;
        }
        case SelectionPolicy::ParetoMinMean: {
            const int bands = static_cast<int>(sorted_probs.size());
            std::vector<ParetoPoint> points;
            for (std::size_t i = 0; i < pool.size(); ++i) {
                const MomentSummary m =
                    moments(allocation::expand_scheme(pool[i], bands), sorted_probs);
                points.push_back({i, m.mean, m.variance});
            }
            const std::vector<ParetoPoint> front = pareto_front(points);
            return pool[front.front().index];
        }
    }
    throw InputError("unknown selection policy");
}

}  // namespace chronosense::stochastic
