// linalg.hpp -- dense complex Hermitian eigensolver.  Householder
// reduction to a real symmetric tridiagonal form followed by QL with
// implicit shifts, eigenvectors accumulated along the way.  Dimensions
// here stay small (N <= 129), so a dense O(n^3) path is the whole story.

#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace hypconc {

using complexd = std::complex<double>;

class HermitianMatrix {
  public:
    HermitianMatrix() = default;
    explicit HermitianMatrix(int n) : n_(n), a_(size_t(n) * n, 0.0) {}
    int dim() const { return n_; }
    complexd& at(int i, int j) { return a_[size_t(i) * n_ + j]; }
    const complexd& at(int i, int j) const { return a_[size_t(i) * n_ + j]; }
    const std::vector<complexd>& data() const { return a_; }
    std::vector<complexd>& data() { return a_; }

    double max_hermiticity_defect() const {
        double m = 0.0;
        for (int i = 0; i < n_; ++i)
            for (int j = i; j < n_; ++j)
                m = std::max(m, std::abs(at(i, j) - std::conj(at(j, i))));
        return m;
    }

  private:
    int n_ = 0;
    std::vector<complexd> a_;
};

struct EigResult {
    std::vector<double> values;     // ascending
    std::vector<complexd> vectors;  // vectors[k]: entries k*n .. k*n+n-1
    int n = 0;

    const complexd* vector(int k) const { return vectors.data() + size_t(k) * n; }
};

namespace detail {

inline double hypot2(double a, double b) { return std::hypot(a, b); }

// QL with implicit shifts on a real symmetric tridiagonal (d, e);
// z holds n complex vectors (row-major: z[i*n+j] = component i of vec j)
// that get rotated along.
inline void tql2(std::vector<double>& d, std::vector<double>& e,
                 std::vector<complexd>& z, int n) {
    for (int i = 1; i < n; ++i) e[i - 1] = e[i];
    e[n - 1] = 0.0;
    for (int l = 0; l < n; ++l) {
        int iter = 0;
        int m;
        do {
            for (m = l; m < n - 1; ++m) {
                const double dd = std::fabs(d[m]) + std::fabs(d[m + 1]);
                if (std::fabs(e[m]) <= 1e-300 ||
                    std::fabs(e[m]) <= 2.3e-16 * dd)
                    break;
            }
            if (m != l) {
                if (iter++ == 60)
                    throw std::runtime_error(
                        "hermitian_eigen: QL failed to converge; residual "
                        "subdiagonal " +
                        std::to_string(e[l]));
                double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
                double r = hypot2(g, 1.0);
                g = d[m] - d[l] + e[l] / (g + (g >= 0 ? std::fabs(r) : -std::fabs(r)));
                double s = 1.0, c = 1.0, p = 0.0;
                int i_break = l - 1;
                for (int i = m - 1; i >= l; --i) {
                    double f = s * e[i], b = c * e[i];
                    r = hypot2(f, g);
                    e[i + 1] = r;
                    if (r == 0.0) {
                        d[i + 1] -= p;
                        e[m] = 0.0;
                        i_break = i;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - p;
                    r = (d[i] - g) * s + 2.0 * c * b;
                    p = s * r;
                    d[i + 1] = g + p;
                    g = c * r - b;
                    for (int k = 0; k < n; ++k) {
                        const complexd fk = z[size_t(i + 1) * n + k];
                        z[size_t(i + 1) * n + k] =
                            s * z[size_t(i) * n + k] + c * fk;
                        z[size_t(i) * n + k] =
                            c * z[size_t(i) * n + k] - s * fk;
                    }
                }
                if (r == 0.0 && i_break >= l) continue;
                d[l] -= p;
                e[l] = g;
                e[m] = 0.0;
            }
        } while (m != l);
    }
}

}  // namespace detail

inline EigResult hermitian_eigen(const HermitianMatrix& input) {
    const int n = input.dim();
    if (n < 1) throw std::invalid_argument("hermitian_eigen: empty matrix");
    HermitianMatrix A = input;

    // Accumulated unitary, row-major q[i*n+j] = <e_i, Q e_j>.
    std::vector<complexd> q(size_t(n) * n, 0.0);
    for (int i = 0; i < n; ++i) q[size_t(i) * n + i] = 1.0;

    std::vector<complexd> v(n), p(n), w(n);

    // Householder reduction: zero column k below the first subdiagonal.
    for (int k = 0; k + 2 < n; ++k) {
        double colnorm = 0.0;
        for (int i = k + 1; i < n; ++i) colnorm += std::norm(A.at(i, k));
        colnorm = std::sqrt(colnorm);
        if (colnorm < 1e-300) continue;
        const complexd x0 = A.at(k + 1, k);
        const complexd phase =
            std::abs(x0) > 1e-300 ? x0 / std::abs(x0) : complexd(1.0);
        const complexd alpha = -phase * colnorm;
        double vnorm2 = 0.0;
        for (int i = k + 1; i < n; ++i) {
            v[i] = A.at(i, k);
            if (i == k + 1) v[i] -= alpha;
            vnorm2 += std::norm(v[i]);
        }
        if (vnorm2 == 0.0) continue;
        const double tau = 2.0 / vnorm2;

        // p = tau * A v on the trailing block
        for (int i = k + 1; i < n; ++i) {
            complexd acc = 0.0;
            for (int j = k + 1; j < n; ++j) acc += A.at(i, j) * v[j];
            p[i] = tau * acc;
        }
        complexd vp = 0.0;
        for (int i = k + 1; i < n; ++i) vp += std::conj(v[i]) * p[i];
        const complexd K = 0.5 * tau * vp;
        for (int i = k + 1; i < n; ++i) w[i] = p[i] - K * v[i];

        // A <- A - v w^* - w v^*
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j)
                A.at(i, j) -= v[i] * std::conj(w[j]) + w[i] * std::conj(v[j]);
        A.at(k + 1, k) = alpha;
        A.at(k, k + 1) = std::conj(alpha);
        for (int i = k + 2; i < n; ++i) {
            A.at(i, k) = 0.0;
            A.at(k, i) = 0.0;
        }

        // Q <- Q H, H = I - tau v v^*
        for (int r = 0; r < n; ++r) {
            complexd acc = 0.0;
            for (int j = k + 1; j < n; ++j) acc += q[size_t(r) * n + j] * v[j];
            acc *= tau;
            for (int j = k + 1; j < n; ++j)
                q[size_t(r) * n + j] -= acc * std::conj(v[j]);
        }
    }

    // Phase-scale so the subdiagonal is real nonnegative.
    std::vector<double> d(n), e(n, 0.0);
    std::vector<complexd> u(n, 1.0);
    for (int j = 0; j + 1 < n; ++j) {
        const complexd ej = A.at(j + 1, j);
        const double m = std::abs(ej);
        u[j + 1] = m > 1e-300 ? u[j] * (ej / m) : u[j];
        e[j + 1] = m;
    }
    for (int j = 0; j < n; ++j) {
        d[j] = A.at(j, j).real();
        for (int r = 0; r < n; ++r) q[size_t(r) * n + j] *= u[j];
    }

    // Rotate eigenvector scaffold: store columns of Q as rows for tql2.
    std::vector<complexd> z(size_t(n) * n);
    for (int i = 0; i < n; ++i)
        for (int r = 0; r < n; ++r) z[size_t(i) * n + r] = q[size_t(r) * n + i];

    detail::tql2(d, e, z, n);

    // Sort ascending.
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return d[a] < d[b]; });

    EigResult res;
    res.n = n;
    res.values.resize(n);
    res.vectors.resize(size_t(n) * n);
    for (int k = 0; k < n; ++k) {
        res.values[k] = d[order[k]];
        for (int i = 0; i < n; ++i)
            res.vectors[size_t(k) * n + i] = z[size_t(order[k]) * n + i];
    }
    return res;
}

// Largest eigenpair residual ||A v - lambda v||.
inline double eigen_residual(const HermitianMatrix& A,
                             const std::vector<complexd>& v, double lambda) {
    const int n = A.dim();
    double r2 = 0.0;
    for (int i = 0; i < n; ++i) {
        complexd acc = 0.0;
        for (int j = 0; j < n; ++j) acc += A.at(i, j) * v[j];
        r2 += std::norm(acc - lambda * v[i]);
    }
    return std::sqrt(r2);
}

}  // namespace hypconc
