#pragma once

#include <cstddef>
#include <vector>

namespace chronosense::numerics {

// Central tolerance configuration. Every numeric kernel reads its thresholds
// from here so they can be tightened/loosened in one place.
struct Tolerances {
    double symmetry = 1e-12;           // max allowed |A(i,j) - A(j,i)|
    double jacobi_off = 1e-12;         // off-diagonal Frobenius target (relative)
    double eigen_residual = 1e-9;      // ||Av - lambda v|| <= eigen_residual * ||A||_F
    double root_residual = 1e-9;       // |p(x)| <= root_residual * (1 + max|coeff|)
    double yule_walker_condition = 1e12;
};

const Tolerances& default_tolerances();

// Dense real polynomial, coefficient k multiplies x^k.
struct Polynomial {
    std::vector<double> coeffs;

    Polynomial() = default;
    Polynomial(std::initializer_list<double> c) : coeffs(c) {}
    explicit Polynomial(std::vector<double> c) : coeffs(std::move(c)) {}

    std::size_t degree() const;  // of the normalized polynomial
    double operator()(double x) const;
    Polynomial derivative() const;
    // Strips leading coefficients that are zero relative to the largest one.
    Polynomial normalized() const;
    double max_abs_coeff() const;
};

// Small dense square matrix, row-major. Everything in this project is M x M
// with M in the tens, so no effort is spent on blocking or sparsity.
class Matrix {
public:
    Matrix() = default;
    explicit Matrix(std::size_t n, double fill = 0.0) : n_(n), a_(n * n, fill) {}

    static Matrix identity(std::size_t n);

    std::size_t dim() const { return n_; }
    double& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

    Matrix operator*(const Matrix& rhs) const;
    Matrix operator-(const Matrix& rhs) const;
    Matrix scaled(double s) const;

    double trace() const;
    double frobenius_norm() const;
    double max_asymmetry() const;  // max |A(i,j) - A(j,i)|

private:
    std::size_t n_ = 0;
    std::vector<double> a_;
};

struct EigenSummary {
    std::vector<double> eigenvalues;  // ascending
    Matrix eigenvectors;              // orthonormal columns, column k pairs with eigenvalues[k]
};

// Levinson-Durbin recursion on the autocorrelation sequence r[0..p].
// `coefficients` solve the Toeplitz system R a = r[1..p]; coefficient j
// applies to lag j+1. `prediction_error` is r[0] * prod(1 - k_i^2).
struct LevinsonResult {
    std::vector<double> coefficients;
    std::vector<double> reflection;
    double prediction_error = 0.0;
    double condition_estimate = 0.0;  // r[0] / prediction_error
};

LevinsonResult levinson_durbin(const std::vector<double>& autocorr,
                               const Tolerances& tol = default_tolerances());

// Coefficients a with R a = r[1..p] for the symmetric Toeplitz matrix built
// from r[0..p-1]. Throws NumericError when the system is near singular.
std::vector<double> solve_yule_walker(const std::vector<double>& autocorr,
                                      const Tolerances& tol = default_tolerances());

// All real roots, ascending. Bracketing on the monotone pieces between
// critical points (found recursively), then bisection with a Newton polish.
std::vector<double> real_roots(const Polynomial& poly, double tol,
                               const Tolerances& cfg = default_tolerances());

// real_roots plus an estimate of how many conjugate complex pairs remain.
struct RootScan {
    std::vector<double> roots;
    int complex_pairs = 0;
};

RootScan scan_real_roots(const Polynomial& poly, double tol,
                         const Tolerances& cfg = default_tolerances());

// Full spectrum of a symmetric matrix via cyclic Jacobi rotations.
EigenSummary sym_eigen(const Matrix& a, const Tolerances& tol = default_tolerances());

// Monic characteristic polynomial det(lambda I - A), ascending coefficients.
Polynomial faddeev_leverrier(const Matrix& a);

}  // namespace chronosense::numerics
