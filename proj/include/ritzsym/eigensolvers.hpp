#pragma once

#include <cmath>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "ritzsym/operators.hpp"

namespace ritzsym {

// Which eigenvector information to accumulate.
enum class EigenvectorMode { None, FirstRow, Full };

struct EigenDecomposition {
    std::vector<double> eigenvalues;        // ascending; exact ties keep original index order
    std::vector<double> first_components;   // first entry of each normalized eigenvector
    Matrix eigenvectors;                    // orthonormal columns; empty unless Full requested

    bool has_eigenvectors() const { return eigenvectors.rows > 0; }
};

// Dense work guard. RITZSYM_DENSE_CAP overrides the default of 2000.
inline std::size_t dense_cap() {
    if (const char* s = std::getenv("RITZSYM_DENSE_CAP")) {
        char* end = nullptr;
        unsigned long v = std::strtoul(s, &end, 10);
        if (end && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
    }
    return 2000;
}

namespace detail {

// Sort eigenvalues ascending, ties broken by original index, and apply the
// same ordering to whichever eigenvector data was accumulated.
inline void sort_eigen_ascending(std::vector<double>& d, std::vector<double>* first_row, Matrix* z) {
    const std::size_t n = d.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return d[a] < d[b]; });

    std::vector<double> ds(n);
    for (std::size_t k = 0; k < n; ++k) ds[k] = d[order[k]];
    d = std::move(ds);

    if (first_row) {
        std::vector<double> fs(n);
        for (std::size_t k = 0; k < n; ++k) fs[k] = (*first_row)[order[k]];
        *first_row = std::move(fs);
    }
    if (z && z->rows > 0) {
        Matrix zs(z->rows, z->cols);
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t i = 0; i < z->rows; ++i) zs(i, k) = (*z)(i, order[k]);
        *z = std::move(zs);
    }
}

// Fix each column's sign so its entry of largest magnitude is positive.
inline void normalize_column_signs(Matrix& z, std::vector<double>* first_row) {
    for (std::size_t k = 0; k < z.cols; ++k) {
        std::size_t imax = 0;
        double amax = -1.0;
        for (std::size_t i = 0; i < z.rows; ++i) {
            double a = std::fabs(z(i, k));
            if (a > amax) {
                amax = a;
                imax = i;
            }
        }
        if (z(imax, k) < 0.0) {
            for (std::size_t i = 0; i < z.rows; ++i) z(i, k) = -z(i, k);
            if (first_row) (*first_row)[k] = -(*first_row)[k];
        }
    }
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Symmetric tridiagonal eigensolver: implicit-shift QL with Wilkinson shift
// (the classic tql2 recurrence). In FirstRow mode only the first row of the
// eigenvector matrix is accumulated, which is all Golub-Welsch needs and
// keeps the cost at O(m^2).
// ---------------------------------------------------------------------------

inline EigenDecomposition tridiag_eigen(const TridiagonalMatrix& t,
                                        EigenvectorMode mode = EigenvectorMode::FirstRow) {
    const std::size_t n = t.size();
    std::vector<double> d = t.alphas;
    std::vector<double> e(n, 0.0);
    for (std::size_t i = 0; i + 1 < n; ++i) e[i] = t.betas[i];

    std::vector<double> row1;  // first row of the accumulated rotation product
    Matrix z;
    if (mode == EigenvectorMode::FirstRow) {
        row1.assign(n, 0.0);
        row1[0] = 1.0;
    } else if (mode == EigenvectorMode::Full) {
        z = Matrix::identity(n);
    }

    const int max_iter = 50;
    for (std::size_t l = 0; l < n; ++l) {
        int iter = 0;
        std::size_t m;
        do {
            for (m = l; m + 1 < n; ++m) {
                double dd = std::fabs(d[m]) + std::fabs(d[m + 1]);
                if (std::fabs(e[m]) <= std::numeric_limits<double>::epsilon() * dd) break;
            }
            if (m != l) {
                if (iter++ == max_iter)
                    throw ConvergenceError("tridiag_eigen: QL iteration cap reached", l);
                // Wilkinson shift from the leading 2x2 of the active block.
                double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
                double r = pythag(g, 1.0);
                g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
                double s = 1.0, c = 1.0, p = 0.0;
                bool deflated = false;
                for (std::size_t i = m; i-- > l;) {
                    double f = s * e[i];
                    double b = c * e[i];
                    r = pythag(f, g);
                    e[i + 1] = r;
                    if (r == 0.0) {  // split off a converged eigenvalue mid-sweep
                        d[i + 1] -= p;
                        e[m] = 0.0;
                        deflated = true;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - p;
                    r = (d[i] - g) * s + 2.0 * c * b;
                    p = s * r;
                    d[i + 1] = g + p;
                    g = c * r - b;
                    if (mode == EigenvectorMode::Full) {
                        for (std::size_t k = 0; k < n; ++k) {
                            f = z(k, i + 1);
                            z(k, i + 1) = s * z(k, i) + c * f;
                            z(k, i) = c * z(k, i) - s * f;
                        }
                    } else if (mode == EigenvectorMode::FirstRow) {
                        f = row1[i + 1];
                        row1[i + 1] = s * row1[i] + c * f;
                        row1[i] = c * row1[i] - s * f;
                    }
                }
                if (deflated) continue;
                d[l] -= p;
                e[l] = g;
                e[m] = 0.0;
            }
        } while (m != l);
    }

    EigenDecomposition out;
    out.eigenvalues = std::move(d);
    if (mode == EigenvectorMode::None) {
        detail::sort_eigen_ascending(out.eigenvalues, nullptr, nullptr);
        return out;
    }
    if (mode == EigenvectorMode::Full) {
        row1.resize(n);
        for (std::size_t k = 0; k < n; ++k) row1[k] = z(0, k);
        detail::sort_eigen_ascending(out.eigenvalues, &row1, &z);
        detail::normalize_column_signs(z, &row1);
        out.eigenvectors = std::move(z);
    } else {
        detail::sort_eigen_ascending(out.eigenvalues, &row1, nullptr);
    }
    out.first_components = std::move(row1);
    return out;
}

// ---------------------------------------------------------------------------
// Full symmetric eigendecomposition by cyclic Jacobi rotations. Dense-size
// guarded; used as the small-instance oracle throughout.
// ---------------------------------------------------------------------------

inline EigenDecomposition full_eigen(const SymmetricOperator& op, std::size_t cap = dense_cap()) {
    const std::size_t n = op.n();
    if (n > cap)
        throw DomainError("full_eigen: dimension " + std::to_string(n) +
                          " exceeds dense cap " + std::to_string(cap) +
                          " (set RITZSYM_DENSE_CAP to override)");

    Matrix a = op.to_dense();
    Matrix v = Matrix::identity(n);
    std::vector<double> d(n), b(n), zacc(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) d[i] = b[i] = a(i, i);

    const int max_sweeps = 60;
    for (int sweep = 1; sweep <= max_sweeps; ++sweep) {
        double sm = 0.0;
        for (std::size_t p = 0; p + 1 < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) sm += std::fabs(a(p, q));
        if (sm == 0.0) {
            EigenDecomposition out;
            out.eigenvalues = std::move(d);
            std::vector<double> row1(n);
            for (std::size_t k = 0; k < n; ++k) row1[k] = v(0, k);
            detail::sort_eigen_ascending(out.eigenvalues, &row1, &v);
            detail::normalize_column_signs(v, &row1);
            out.first_components = std::move(row1);
            out.eigenvectors = std::move(v);
            return out;
        }
        double thresh = sweep < 4 ? 0.2 * sm / (n * n) : 0.0;

        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                double g = 100.0 * std::fabs(a(p, q));
                if (sweep > 4 && std::fabs(d[p]) + g == std::fabs(d[p]) &&
                    std::fabs(d[q]) + g == std::fabs(d[q])) {
                    a(p, q) = 0.0;
                    continue;
                }
                if (std::fabs(a(p, q)) <= thresh) continue;

                double h = d[q] - d[p];
                double t;
                if (std::fabs(h) + g == std::fabs(h)) {
                    t = a(p, q) / h;
                } else {
                    double theta = 0.5 * h / a(p, q);
                    t = 1.0 / (std::fabs(theta) + std::sqrt(1.0 + theta * theta));
                    if (theta < 0.0) t = -t;
                }
                double c = 1.0 / std::sqrt(1.0 + t * t);
                double s = t * c;
                double tau = s / (1.0 + c);
                h = t * a(p, q);
                zacc[p] -= h;
                zacc[q] += h;
                d[p] -= h;
                d[q] += h;
                a(p, q) = 0.0;

                auto rotate = [&](Matrix& mm, std::size_t i1, std::size_t j1, std::size_t i2,
                                  std::size_t j2) {
                    double g1 = mm(i1, j1), h1 = mm(i2, j2);
                    mm(i1, j1) = g1 - s * (h1 + g1 * tau);
                    mm(i2, j2) = h1 + s * (g1 - h1 * tau);
                };
                for (std::size_t j = 0; j < p; ++j) rotate(a, j, p, j, q);
                for (std::size_t j = p + 1; j < q; ++j) rotate(a, p, j, j, q);
                for (std::size_t j = q + 1; j < n; ++j) rotate(a, p, j, q, j);
                for (std::size_t j = 0; j < n; ++j) rotate(v, j, p, j, q);
            }
        }
        for (std::size_t i = 0; i < n; ++i) {
            b[i] += zacc[i];
            d[i] = b[i];
            zacc[i] = 0.0;
        }
    }
    throw ConvergenceError("full_eigen: Jacobi sweep cap reached", n);
}

}  // namespace ritzsym
