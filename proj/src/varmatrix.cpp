#include "chronosense/varmatrix.hpp"

#include <algorithm>
#include <cmath>

#include "chronosense/errors.hpp"

namespace chronosense::varmatrix {

namespace {

void validate_positive_pmf(const std::vector<double>& probs) {
    if (probs.empty()) throw InputError("empty probability vector");
    double sum = 0.0;
    for (double p : probs) {
        if (!(p > 0.0)) throw InputError("probabilities must be strictly positive");
        sum += p;
    }
    if (std::fabs(sum - 1.0) > 1e-9) throw InputError("probabilities must sum to 1");
}

}  // namespace

VarianceMatrix build_g(const std::vector<double>& probs) {
    validate_positive_pmf(probs);
    const std::size_t m = probs.size();
    VarianceMatrix vm;
    vm.probs = probs;
    vm.g = numerics::Matrix(m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            vm.g(i, j) = (i == j) ? probs[i] * (1.0 - probs[i]) : -probs[i] * probs[j];
    return vm;
}

double g_trace(const VarianceMatrix& vm) {
    double alpha = 0.0;
    for (double p : vm.probs) alpha += p * p;
    const double closed = 1.0 - alpha;
    if (std::fabs(closed - vm.g.trace()) > 1e-12)
        throw NumericError("trace identity 1 - sum p^2 failed");
    return closed;
}

DeterminantCheck g_det(const VarianceMatrix& vm) {
    const numerics::Polynomial chi = numerics::faddeev_leverrier(vm.g);
    const std::size_t m = vm.probs.size();
    DeterminantCheck check;
    check.determinant = ((m % 2 == 0) ? 1.0 : -1.0) * chi.coeffs[0];
    double mass = 0.0;
    for (double p : vm.probs) mass += p;
    check.rank_one_identity = 1.0 - mass;
    if (std::fabs(check.determinant) > 1e-10)
        throw NumericError("G must be singular: |det| exceeded 1e-10");
    return check;
}

std::pair<double, double> spectral_bounds(const VarianceMatrix& vm) {
    double lo = 2.0 * vm.probs[0] * (1.0 - vm.probs[0]);
    double hi = lo;
    for (double p : vm.probs) {
        const double v = 2.0 * p * (1.0 - p);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    return {lo, hi};
}

numerics::Matrix uniformize(const VarianceMatrix& vm) {
    const std::size_t m = vm.probs.size();
    double theta = 0.0;
    for (std::size_t i = 0; i < m; ++i) theta = std::max(theta, vm.g(i, i));
    if (!(theta > 0.0))
        throw NumericError("cannot uniformize: largest diagonal entry is zero");

    numerics::Matrix p(m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            p(i, j) = (i == j ? 1.0 : 0.0) - vm.g(i, j) / theta;
    return p;
}

ChatPower chat_power(const std::vector<double>& probs, int m) {
    validate_positive_pmf(probs);
    if (m < 1) throw InputError("power must be >= 1");
    double alpha = 0.0;
    for (double p : probs) alpha += p * p;

    ChatPower out;
    out.alpha_power = std::pow(alpha, m - 1);
    out.matrix = numerics::Matrix(probs.size());
    for (std::size_t i = 0; i < probs.size(); ++i)
        for (std::size_t j = 0; j < probs.size(); ++j)
            out.matrix(i, j) = out.alpha_power * probs[i] * probs[j];
    return out;
}

numerics::Matrix g_power(const VarianceMatrix& vm, int n) {
    if (n < 1) throw InputError("power must be >= 1");
    numerics::Matrix acc = vm.g;
    for (int k = 1; k < n; ++k) acc = acc * vm.g;
    return acc;
}

VarianceForm variance_form(const VarianceMatrix& vm, const std::vector<double>& times) {
    const std::size_t m = vm.probs.size();
    if (times.size() != m) throw InputError("time vector length mismatch");

    VarianceForm out;
    double mean = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        mean += vm.probs[i] * times[i];
        for (std::size_t j = 0; j < m; ++j) out.variance += times[i] * vm.g(i, j) * times[j];
    }
    out.objective = out.variance - mean;
    return out;
}

MinVariance min_nonzero_variance(const VarianceMatrix& vm) {
    const std::size_t m = vm.probs.size();
    if (m < 2) throw InputError("second-smallest eigenvalue needs dimension >= 2");
    const numerics::EigenSummary eig = numerics::sym_eigen(vm.g);

    MinVariance out;
    out.eigenvalue = eig.eigenvalues[1];
    out.max_eigenvalue = eig.eigenvalues[m - 1];
    out.eigenvector.resize(m);
    for (std::size_t i = 0; i < m; ++i) out.eigenvector[i] = eig.eigenvectors(i, 1);
    return out;
}

MatrixAnalysis analyze(const VarianceMatrix& vm) {
    MatrixAnalysis a;
    a.trace = g_trace(vm);
    a.det = g_det(vm);
    a.charpoly = numerics::faddeev_leverrier(vm.g).coeffs;

    const numerics::EigenSummary eig = numerics::sym_eigen(vm.g);
    a.eigenvalues = eig.eigenvalues;
    for (double ev : a.eigenvalues)
        if (ev < -1e-9 || ev > 0.5 + 1e-9)
            throw NumericError("eigenvalue outside the expected [0, 1/2] interval");
    a.spectral_radius = std::max(std::fabs(a.eigenvalues.front()), std::fabs(a.eigenvalues.back()));
    a.bounds = spectral_bounds(vm);
    a.lower_bound_holds = a.spectral_radius >= a.bounds.first - 1e-12;

    double theta = 0.0;
    for (std::size_t i = 0; i < vm.probs.size(); ++i) theta = std::max(theta, vm.g(i, i));
    a.theta = theta;
    a.second_smallest = vm.probs.size() >= 2 ? a.eigenvalues[1] : 0.0;
    return a;
}

}  // namespace chronosense::varmatrix
