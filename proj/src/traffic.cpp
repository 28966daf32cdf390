#include "chronosense/traffic.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "chronosense/errors.hpp"
#include "chronosense/numerics.hpp"

namespace chronosense::traffic {

ARModel fit_ar(const std::vector<double>& series, int order) {
    if (order < 1) throw InputError("AR order must be >= 1");
    const std::size_t n = series.size();
    if (n < static_cast<std::size_t>(10 * order))
        throw InputError("series too short: need at least 10*order samples");

    ARModel model;
    model.order = order;
    model.mean = std::accumulate(series.begin(), series.end(), 0.0) / static_cast<double>(n);

    std::vector<double> centered(n);
    for (std::size_t i = 0; i < n; ++i) centered[i] = series[i] - model.mean;

    std::vector<double> r(static_cast<std::size_t>(order) + 1, 0.0);
    for (std::size_t k = 0; k < r.size(); ++k) {
        double acc = 0.0;
        for (std::size_t t = k; t < n; ++t) acc += centered[t] * centered[t - k];
        r[k] = acc / static_cast<double>(n);
    }

    if (r[0] <= 1e-12 * (1.0 + model.mean * model.mean)) {
        model.degenerate = true;
        model.coefficients.assign(static_cast<std::size_t>(order), 0.0);
        model.innovation_variance = 0.0;
        return model;
    }

    const numerics::LevinsonResult lev = numerics::levinson_durbin(r);
    // Levinson yields lag order (most recent first); store oldest-first.
    model.coefficients.assign(lev.coefficients.rbegin(), lev.coefficients.rend());
    model.innovation_variance = std::max(0.0, lev.prediction_error);
    return model;
}

ARModel fit_ar(const std::vector<long long>& counts, int order) {
    for (long long c : counts)
        if (c < 0) throw InputError("packet counts must be non-negative");
    std::vector<double> series(counts.begin(), counts.end());
    return fit_ar(series, order);
}

double predict_next(const ARModel& model, const std::vector<double>& series) {
    if (model.degenerate) return std::max(0.0, model.mean);
    const auto p = static_cast<std::size_t>(model.order);
    if (series.size() < p) throw InputError("series shorter than the model order");

    double acc = model.mean;
    const std::size_t start = series.size() - p;
    for (std::size_t k = 0; k < p; ++k)
        acc += model.coefficients[k] * (series[start + k] - model.mean);
    return std::max(0.0, acc);
}

double predict_next(const ARModel& model, const std::vector<long long>& counts) {
    std::vector<double> series(counts.begin(), counts.end());
    return predict_next(model, series);
}

OccupancyProfile occupancy_profile(const std::vector<std::string>& band_ids,
                                   const std::vector<double>& predictions, double smoothing) {
    if (band_ids.size() != predictions.size())
        throw InputError("band ids and predictions must have equal length");
    if (predictions.size() < 2) throw InputError("occupancy profile needs at least 2 bands");
    if (smoothing < 0.0) throw InputError("smoothing must be non-negative");

    double denom = 0.0;
    for (double v : predictions) {
        if (v < 0.0) throw InputError("predictions must be non-negative");
        denom += v + smoothing;
    }
    if (!(denom > 0.0))
        throw InputError("undefined profile: all predictions zero with zero smoothing");

    OccupancyProfile profile;
    profile.band_ids = band_ids;
    profile.n_raw = predictions;
    profile.q.resize(predictions.size());
    for (std::size_t i = 0; i < predictions.size(); ++i) {
        profile.q[i] = (predictions[i] + smoothing) / denom;
        if (!(profile.q[i] > 0.0))
            throw InputError("band '" + band_ids[i] +
                             "' has zero occupancy probability; increase smoothing");
    }

    profile.permutation.resize(profile.q.size());
    std::iota(profile.permutation.begin(), profile.permutation.end(), std::size_t{0});
    std::stable_sort(profile.permutation.begin(), profile.permutation.end(),
                     [&](std::size_t a, std::size_t b) { return profile.q[a] < profile.q[b]; });
    profile.p_sorted.resize(profile.q.size());
    for (std::size_t k = 0; k < profile.permutation.size(); ++k)
        profile.p_sorted[k] = profile.q[profile.permutation[k]];
    return profile;
}

}  // namespace chronosense::traffic
