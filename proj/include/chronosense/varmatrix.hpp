#pragma once

#include <utility>
#include <vector>

#include "chronosense/numerics.hpp"

namespace chronosense::varmatrix {

// G = diag(p) - p p^T for a strictly positive pmf p. Var[Z] = T^T G T for any
// time vector T; rows sum to zero and the spectrum sits in [0, 1/2].
struct VarianceMatrix {
    std::vector<double> probs;
    numerics::Matrix g;
};

VarianceMatrix build_g(const std::vector<double>& probs);

// 1 - sum p_i^2 (one minus the order-2 Tsallis entropy); equals trace(G).
double g_trace(const VarianceMatrix& vm);

struct DeterminantCheck {
    double determinant = 0.0;        // from the characteristic polynomial, always ~0
    double rank_one_identity = 0.0;  // det(I - D^-1 C C^T) = 1 - sum p_i, also ~0
};

DeterminantCheck g_det(const VarianceMatrix& vm);

// (min_j 2 p_j (1-p_j), max_j 2 p_j (1-p_j)). The upper value is a Gershgorin
// bound on the spectral radius; the lower value is a reported diagnostic only
// (it fails for the uniform pmf).
std::pair<double, double> spectral_bounds(const VarianceMatrix& vm);

// Row-stochastic P = I - G/theta with theta the largest diagonal entry of G.
numerics::Matrix uniformize(const VarianceMatrix& vm);

// (sum p_i^2)^(m-1) * C C^T, the closed form of the m-th power of C C^T.
struct ChatPower {
    double alpha_power = 0.0;
    numerics::Matrix matrix;
};

ChatPower chat_power(const std::vector<double>& probs, int m);

// G^n by repeated multiplication.
numerics::Matrix g_power(const VarianceMatrix& vm, int n);

// Var[Z] = T^T G T and the objective J(T) = Var[Z] - E[Z].
struct VarianceForm {
    double variance = 0.0;
    double objective = 0.0;
};

VarianceForm variance_form(const VarianceMatrix& vm, const std::vector<double>& times);

// Second-smallest eigenpair (the nonzero variance minimum on the unit sphere)
// plus the Rayleigh maximum.
struct MinVariance {
    double eigenvalue = 0.0;
    std::vector<double> eigenvector;
    double max_eigenvalue = 0.0;
};

MinVariance min_nonzero_variance(const VarianceMatrix& vm);

// Everything the report surface needs in one pass.
struct MatrixAnalysis {
    double trace = 0.0;
    DeterminantCheck det;
    std::vector<double> charpoly;  // ascending, monic
    std::vector<double> eigenvalues;
    double spectral_radius = 0.0;
    std::pair<double, double> bounds{0.0, 0.0};
    bool lower_bound_holds = false;
    double theta = 0.0;
    double second_smallest = 0.0;
};

MatrixAnalysis analyze(const VarianceMatrix& vm);

}  // namespace chronosense::varmatrix
