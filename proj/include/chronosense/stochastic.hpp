#pragma once

#include <cstddef>
#include <vector>

#include "chronosense/allocation.hpp"
#include "chronosense/numerics.hpp"

namespace chronosense::stochastic {

// Moments of the sensing-time random variable Z (time T_j with probability p_j).
struct MomentSummary {
    double mean = 0.0;
    double second_moment = 0.0;
    double variance = 0.0;
};

// mu = sum (j-1) p_j and alpha = sum (j-1)^2 p_j over ascending probabilities.
// alpha - mu^2 is the variance of the index variable, hence never negative.
struct SortedProbWeights {
    double mu = 0.0;
    double alpha = 0.0;
};

struct ParetoPoint {
    std::size_t index = 0;  // position in the candidate list
    double mean = 0.0;
    double variance = 0.0;
};

MomentSummary moments(const std::vector<double>& times, const std::vector<double>& probs);
MomentSummary moments(const std::vector<long long>& times, const std::vector<double>& probs);

SortedProbWeights sorted_prob_weights(const std::vector<double>& sorted_probs);

// Closed-form moments for the three progression families, evaluated against
// ascending sorted probabilities (unsorted input is rejected, keeping the
// sort permutation explicit at the call site).
MomentSummary ap_moments(double t1, double d, const std::vector<double>& sorted_probs);
MomentSummary gp_moments(double t1, double d, const std::vector<double>& sorted_probs);
MomentSummary agp_moments(double t1, double d, double r, const std::vector<double>& sorted_probs);

// Unique positive difference with E[Z] = Var[Z] for the AP family:
// the positive root of (alpha - mu^2) d^2 - mu d - t1 = 0.
double ap_fixed_point(double t1, const std::vector<double>& sorted_probs);

// Polynomial in d for t1*f(d^2) - t1*f(d)^2 - f(d) = 0 with
// f(d) = sum d^(j-1) p_j, degree 2(M-1). Unlike the moment operations the
// pmf is consumed in the order given (position j weights d^(j-1)).
numerics::Polynomial gp_fixed_point_polynomial(double t1,
                                               const std::vector<double>& sorted_probs);

// Smallest real ratio d > 1 solving the equation above.
double gp_fixed_point(double t1, const std::vector<double>& sorted_probs);

// Smallest d > 1 with E[Z] = Var[Z] for the tied (r = d) arithmetico-geometric
// family, found by sign-change bracketing on (1, d_max].
double agp_fixed_point(double t1, const std::vector<double>& sorted_probs, double d_max = 64.0);

// Non-dominated subset, sorted by mean ascending (ties by variance, then
// candidate index).
std::vector<ParetoPoint> pareto_front(const std::vector<ParetoPoint>& points);

enum class SelectionPolicy {
    MinMin,           // lexicographically smallest (t1, d); explicit: smallest times
    FixedPointRound,  // d closest to the rounded E[Z]=Var[Z] ratio, ties to smaller t1
    ParetoMinMean,    // smallest-mean member of the Pareto front
    MaxT1,            // largest t1, ties to smaller d
};

// Optional percentile trim applied before selection: candidates whose t1 or d
// falls outside [trim_low, trim_high] (as quantile fractions) are dropped,
// unless that would drop everything.
struct SelectionHeuristics {
    double trim_low = 0.0;
    double trim_high = 1.0;
};

allocation::AllocationScheme select_solution(
    const std::vector<allocation::AllocationScheme>& solutions,
    const std::vector<double>& sorted_probs, SelectionPolicy policy,
    const SelectionHeuristics& heuristics = {});

}  // namespace chronosense::stochastic
