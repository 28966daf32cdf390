#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace chronosense::traffic {

struct Band {
    std::string id;
    std::vector<long long> counts;
};

// Per-band packet-count series, equal lengths, unique ids. Produced by the
// CSV loader in the planner; invariants are enforced there.
struct TrafficHistory {
    std::vector<Band> bands;
    std::string time_unit = "t";
};

// Fitted AR(p) model on the mean-removed series.
//
// Coefficient k (0-based) applies to the sample (p-1-k) steps before the
// prediction target, i.e. coefficients are ordered oldest-first across the
// regression window.
struct ARModel {
    int order = 0;
    std::vector<double> coefficients;
    double mean = 0.0;
    double innovation_variance = 0.0;
    bool degenerate = false;  // constant series; predictions fall back to the mean
};

// Band occupancy probabilities q (original band order) plus the ascending
// sorted view p_sorted and the permutation from sorted position to band index.
struct OccupancyProfile {
    std::vector<std::string> band_ids;
    std::vector<double> q;
    std::vector<double> p_sorted;
    std::vector<std::size_t> permutation;
    std::vector<double> n_raw;  // predictions the profile was built from
};

// Fits an AR(p) model: mean removal, biased (1/N) autocorrelation, then the
// Levinson recursion. A zero-variance series yields a degenerate model whose
// prediction is the constant itself.
ARModel fit_ar(const std::vector<long long>& counts, int order);
ARModel fit_ar(const std::vector<double>& series, int order);

// One-step-ahead prediction, clamped below at zero.
double predict_next(const ARModel& model, const std::vector<double>& series);
double predict_next(const ARModel& model, const std::vector<long long>& counts);

// q_i = (n_i + smoothing) / sum_j (n_j + smoothing). Rejects any band whose
// smoothed mass is zero, since downstream formulas need strictly positive
// probabilities.
OccupancyProfile occupancy_profile(const std::vector<std::string>& band_ids,
                                   const std::vector<double>& predictions, double smoothing);

}  // namespace chronosense::traffic
