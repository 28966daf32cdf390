#include "chronosense/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "chronosense/errors.hpp"

namespace chronosense::numerics {

const Tolerances& default_tolerances() {
    static const Tolerances t{};
    return t;
}

std::size_t Polynomial::degree() const {
    Polynomial n = normalized();
    return n.coeffs.empty() ? 0 : n.coeffs.size() - 1;
}

double Polynomial::operator()(double x) const {
    double acc = 0.0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
    return acc;
}

Polynomial Polynomial::derivative() const {
    Polynomial d;
    if (coeffs.size() <= 1) {
        d.coeffs = {0.0};
        return d;
    }
    d.coeffs.resize(coeffs.size() - 1);
    for (std::size_t k = 1; k < coeffs.size(); ++k)
        d.coeffs[k - 1] = static_cast<double>(k) * coeffs[k];
    return d;
}

double Polynomial::max_abs_coeff() const {
    double m = 0.0;
    for (double c : coeffs) m = std::max(m, std::fabs(c));
    return m;
}

Polynomial Polynomial::normalized() const {
    const double cutoff = 1e-14 * max_abs_coeff();
    std::size_t n = coeffs.size();
    while (n > 1 && std::fabs(coeffs[n - 1]) <= cutoff) --n;
    Polynomial out;
    out.coeffs.assign(coeffs.begin(), coeffs.begin() + static_cast<std::ptrdiff_t>(n));
    if (out.coeffs.empty()) out.coeffs = {0.0};
    return out;
}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Matrix Matrix::operator*(const Matrix& rhs) const {
    if (n_ != rhs.n_) throw InputError("matrix dimension mismatch in multiply");
    Matrix out(n_);
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t k = 0; k < n_; ++k) {
            const double aik = (*this)(i, k);
            if (aik == 0.0) continue;
            for (std::size_t j = 0; j < n_; ++j) out(i, j) += aik * rhs(k, j);
        }
    return out;
}

Matrix Matrix::operator-(const Matrix& rhs) const {
    if (n_ != rhs.n_) throw InputError("matrix dimension mismatch in subtract");
    Matrix out(n_);
    for (std::size_t i = 0; i < a_.size(); ++i) out.a_[i] = a_[i] - rhs.a_[i];
    return out;
}

Matrix Matrix::scaled(double s) const {
    Matrix out = *this;
    for (double& v : out.a_) v *= s;
    return out;
}

double Matrix::trace() const {
    double t = 0.0;
    for (std::size_t i = 0; i < n_; ++i) t += (*this)(i, i);
    return t;
}

double Matrix::frobenius_norm() const {
    double s = 0.0;
    for (double v : a_) s += v * v;
    return std::sqrt(s);
}

double Matrix::max_asymmetry() const {
    double m = 0.0;
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = i + 1; j < n_; ++j)
            m = std::max(m, std::fabs((*this)(i, j) - (*this)(j, i)));
    return m;
}

LevinsonResult levinson_durbin(const std::vector<double>& r, const Tolerances& tol) {
    if (r.size() < 2) throw InputError("autocorrelation sequence must have length >= 2");
    if (!(r[0] > 0.0)) throw NumericError("autocorrelation at lag 0 must be positive");

    const std::size_t p = r.size() - 1;
    LevinsonResult res;
    res.coefficients.assign(p, 0.0);
    res.reflection.reserve(p);
    double err = r[0];

    std::vector<double> a(p, 0.0);
    for (std::size_t k = 1; k <= p; ++k) {
        double acc = r[k];
        for (std::size_t j = 1; j < k; ++j) acc -= a[j - 1] * r[k - j];
        if (!(err > 0.0) || !(r[0] / err < tol.yule_walker_condition))
            throw NumericError("ill-conditioned Toeplitz system in Levinson recursion");
        const double kappa = acc / err;
        std::vector<double> next = a;
        next[k - 1] = kappa;
        for (std::size_t j = 1; j < k; ++j) next[j - 1] = a[j - 1] - kappa * a[k - 1 - j];
        a = std::move(next);
        res.reflection.push_back(kappa);
        err *= (1.0 - kappa * kappa);
    }
    if (!(err >= 0.0) || !(r[0] / std::max(err, std::numeric_limits<double>::min()) <
                           tol.yule_walker_condition))
        throw NumericError("ill-conditioned Toeplitz system in Levinson recursion");

    res.coefficients = std::move(a);
    res.prediction_error = err;
    res.condition_estimate = r[0] / std::max(err, std::numeric_limits<double>::min());
    return res;
}

std::vector<double> solve_yule_walker(const std::vector<double>& autocorr, const Tolerances& tol) {
    return levinson_durbin(autocorr, tol).coefficients;
}

namespace {

// Refines a bracketed root of `poly` on [lo, hi] where the sign changes.
double bisect_root(const Polynomial& poly, double lo, double hi) {
    double flo = poly(lo);
    if (flo == 0.0) return lo;
    double fhi = poly(hi);
    if (fhi == 0.0) return hi;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;  // interval exhausted in floats
        const double fm = poly(mid);
        if (fm == 0.0) return mid;
        if ((flo < 0.0) != (fm < 0.0)) {
            hi = mid;
            fhi = fm;
        } else {
            lo = mid;
            flo = fm;
        }
    }
    double x = 0.5 * (lo + hi);
    // Newton polish, kept inside the bracket.
    const Polynomial d = poly.derivative();
    for (int it = 0; it < 4; ++it) {
        const double dv = d(x);
        if (dv == 0.0) break;
        const double nx = x - poly(x) / dv;
        if (nx < lo || nx > hi) break;
        x = nx;
    }
    return x;
}

}  // namespace

std::vector<double> real_roots(const Polynomial& poly, double tol, const Tolerances& cfg) {
    const Polynomial p = poly.normalized();
    const std::size_t deg = p.coeffs.size() - 1;
    if (deg == 0) throw InputError("degree 0 polynomial has no roots");
    const double snap = std::max(tol, cfg.root_residual) * (1.0 + p.max_abs_coeff());

    if (deg == 1) return {-p.coeffs[0] / p.coeffs[1]};

    // Cauchy bound: all real roots lie in [-B, B].
    const double lead = std::fabs(p.coeffs.back());
    double maxratio = 0.0;
    for (std::size_t k = 0; k + 1 < p.coeffs.size(); ++k)
        maxratio = std::max(maxratio, std::fabs(p.coeffs[k]) / lead);
    const double bound = 1.0 + maxratio;

    // Critical points split the line into monotone pieces.
    std::vector<double> breaks;
    if (deg >= 2) {
        const Polynomial d = p.derivative().normalized();
        if (d.coeffs.size() > 1) breaks = real_roots(d, tol, cfg);
    }
    std::vector<double> grid;
    grid.push_back(-bound);
    for (double b : breaks)
        if (b > -bound && b < bound) grid.push_back(b);
    grid.push_back(bound);

    std::vector<double> roots;
    auto push_root = [&](double x) {
        for (double r : roots)
            if (std::fabs(r - x) <= 1e-9 * (1.0 + std::fabs(x))) return;
        roots.push_back(x);
    };

    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        const double lo = grid[i], hi = grid[i + 1];
        const double flo = p(lo), fhi = p(hi);
        if (std::fabs(flo) <= snap) push_root(lo);
        if (std::fabs(fhi) <= snap) push_root(hi);
        if ((flo < 0.0) != (fhi < 0.0) && std::fabs(flo) > snap && std::fabs(fhi) > snap)
            push_root(bisect_root(p, lo, hi));
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

RootScan scan_real_roots(const Polynomial& poly, double tol, const Tolerances& cfg) {
    RootScan scan;
    scan.roots = real_roots(poly, tol, cfg);
    const auto deg = static_cast<std::ptrdiff_t>(poly.normalized().coeffs.size()) - 1;
    const auto unaccounted = deg - static_cast<std::ptrdiff_t>(scan.roots.size());
    scan.complex_pairs = static_cast<int>(std::max<std::ptrdiff_t>(0, unaccounted) / 2);
    return scan;
}

EigenSummary sym_eigen(const Matrix& input, const Tolerances& tol) {
    const std::size_t n = input.dim();
    if (n == 0) throw InputError("cannot eigendecompose an empty matrix");
    if (input.max_asymmetry() > tol.symmetry)
        throw InputError("matrix is not symmetric within tolerance");

    Matrix a = input;
    // Work on the symmetrized average so rotations stay exact.
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const double v = 0.5 * (a(i, j) + a(j, i));
            a(i, j) = v;
            a(j, i) = v;
        }

    Matrix v = Matrix::identity(n);
    const double scale = std::max(1.0, a.frobenius_norm());

    auto off_norm = [&]() {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) s += 2.0 * a(i, j) * a(i, j);
        return std::sqrt(s);
    };

    bool converged = (n == 1);
    for (int sweep = 0; sweep < 100 && !converged; ++sweep) {
        if (off_norm() <= tol.jacobi_off * scale) {
            converged = true;
            break;
        }
        for (std::size_t p = 0; p + 1 < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (std::fabs(apq) <= 1e-300) continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double t = (theta >= 0.0)
                                     ? 1.0 / (theta + std::sqrt(theta * theta + 1.0))
                                     : -1.0 / (-theta + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;

                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = a(k, p), akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = c * vkp - s * vkq;
                    v(k, q) = s * vkp + c * vkq;
                }
            }
    }
    if (!converged && off_norm() > tol.jacobi_off * scale)
        throw NumericError("Jacobi eigendecomposition did not converge");

    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t x, std::size_t y) { return a(x, x) < a(y, y); });

    EigenSummary out;
    out.eigenvalues.resize(n);
    out.eigenvectors = Matrix(n);
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t src = order[k];
        out.eigenvalues[k] = a(src, src);
        // Sign convention: the largest-magnitude component is positive.
        std::size_t imax = 0;
        for (std::size_t i = 1; i < n; ++i)
            if (std::fabs(v(i, src)) > std::fabs(v(imax, src))) imax = i;
        const double sign = (v(imax, src) < 0.0) ? -1.0 : 1.0;
        for (std::size_t i = 0; i < n; ++i) out.eigenvectors(i, k) = sign * v(i, src);
    }
    return out;
}

Polynomial faddeev_leverrier(const Matrix& a) {
    const std::size_t n = a.dim();
    if (n == 0) throw InputError("cannot take the characteristic polynomial of an empty matrix");

    std::vector<double> c(n + 1, 0.0);
    c[n] = 1.0;
    Matrix b = a;
    c[n - 1] = -b.trace();
    for (std::size_t k = 2; k <= n; ++k) {
        Matrix shifted = b;
        for (std::size_t i = 0; i < n; ++i) shifted(i, i) += c[n - k + 1];
        b = a * shifted;
        c[n - k] = -b.trace() / static_cast<double>(k);
    }
    return Polynomial(std::move(c));
}

}  // namespace chronosense::numerics
