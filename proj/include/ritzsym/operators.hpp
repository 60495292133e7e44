#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

#include "ritzsym/errors.hpp"

namespace ritzsym {

// ---------------------------------------------------------------------------
// Small vector helpers.
// ---------------------------------------------------------------------------

inline double dot(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size())
        throw InvalidInput("dot: length mismatch (" + std::to_string(a.size()) + " vs " +
                           std::to_string(b.size()) + ")");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline double norm2(std::span<const double> a) {
    double s = 0.0;
    for (double x : a) s += x * x;
    return std::sqrt(s);
}

// y += alpha * x
inline void axpy(double alpha, std::span<const double> x, std::span<double> y) {
    if (x.size() != y.size()) throw InvalidInput("axpy: length mismatch");
    for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

inline void scale_inplace(double alpha, std::span<double> x) {
    for (double& v : x) v *= alpha;
}

inline bool all_finite(std::span<const double> a) {
    return std::all_of(a.begin(), a.end(), [](double x) { return std::isfinite(x); });
}

// sqrt(a^2 + b^2) without overflow, and without std::hypot so that results
// stay bit-identical across libm versions.
inline double pythag(double a, double b) {
    double absa = std::fabs(a), absb = std::fabs(b);
    if (absa > absb) {
        double r = absb / absa;
        return absa * std::sqrt(1.0 + r * r);
    }
    if (absb == 0.0) return 0.0;
    double r = absa / absb;
    return absb * std::sqrt(1.0 + r * r);
}

// ---------------------------------------------------------------------------
// Dense row-major matrix.
// ---------------------------------------------------------------------------

struct Matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data;  // row-major, rows*cols entries

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c, double fill = 0.0) : rows(r), cols(c), data(r * c, fill) {}

    double& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    std::vector<double> column(std::size_t j) const {
        std::vector<double> c(rows);
        for (std::size_t i = 0; i < rows; ++i) c[i] = (*this)(i, j);
        return c;
    }

    void set_column(std::size_t j, std::span<const double> c) {
        for (std::size_t i = 0; i < rows; ++i) (*this)(i, j) = c[i];
    }
};

inline Matrix transpose(const Matrix& a) {
    Matrix t(a.cols, a.rows);
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t j = 0; j < a.cols; ++j) t(j, i) = a(i, j);
    return t;
}

inline Matrix matmul(const Matrix& a, const Matrix& b) {
    if (a.cols != b.rows) throw InvalidInput("matmul: inner dimensions differ");
    Matrix c(a.rows, b.cols);
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t k = 0; k < a.cols; ++k) {
            double aik = a(i, k);
            if (aik == 0.0) continue;
            for (std::size_t j = 0; j < b.cols; ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

inline std::vector<double> matvec(const Matrix& a, std::span<const double> x) {
    if (a.cols != x.size()) throw InvalidInput("matvec: dimension mismatch");
    std::vector<double> y(a.rows, 0.0);
    for (std::size_t i = 0; i < a.rows; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < a.cols; ++j) s += a(i, j) * x[j];
        y[i] = s;
    }
    return y;
}

// x^T * A, returned as a vector of length a.cols
inline std::vector<double> vecmat(std::span<const double> x, const Matrix& a) {
    if (a.rows != x.size()) throw InvalidInput("vecmat: dimension mismatch");
    std::vector<double> y(a.cols, 0.0);
    for (std::size_t i = 0; i < a.rows; ++i) {
        double xi = x[i];
        if (xi == 0.0) continue;
        for (std::size_t j = 0; j < a.cols; ++j) y[j] += xi * a(i, j);
    }
    return y;
}

// ---------------------------------------------------------------------------
// Symmetric operator: dense storage or coordinate-list sparse storage.
// Sparse entries are stored once per unordered (i,j) pair and mirrored
// when the operator is applied.
// ---------------------------------------------------------------------------

class SymmetricOperator {
public:
    struct Triplet {
        std::size_t row;
        std::size_t col;
        double value;
    };

    static SymmetricOperator dense(Matrix a) {
        if (a.rows != a.cols) throw InvalidInput("SymmetricOperator: matrix is not square");
        if (a.rows == 0) throw InvalidInput("SymmetricOperator: dimension must be >= 1");
        for (std::size_t i = 0; i < a.rows; ++i)
            for (std::size_t j = 0; j <= i; ++j) {
                if (!std::isfinite(a(i, j)))
                    throw InvalidInput("SymmetricOperator: non-finite entry at (" +
                                       std::to_string(i) + "," + std::to_string(j) + ")");
                if (a(i, j) != a(j, i))
                    throw InvalidInput("SymmetricOperator: stored matrix is not exactly symmetric at (" +
                                       std::to_string(i) + "," + std::to_string(j) + ")");
            }
        SymmetricOperator op;
        op.n_ = a.rows;
        op.dense_ = std::move(a);
        op.sparse_backed_ = false;
        return op;
    }

    static SymmetricOperator sparse(std::size_t n, std::vector<Triplet> entries) {
        if (n == 0) throw InvalidInput("SymmetricOperator: dimension must be >= 1");
        std::unordered_set<std::uint64_t> seen;
        seen.reserve(entries.size());
        for (const Triplet& t : entries) {
            if (t.row >= n || t.col >= n)
                throw InvalidInput("SymmetricOperator: sparse index out of range");
            if (!std::isfinite(t.value)) throw InvalidInput("SymmetricOperator: non-finite sparse entry");
            std::uint64_t lo = std::min(t.row, t.col), hi = std::max(t.row, t.col);
            if (!seen.insert(lo * static_cast<std::uint64_t>(n) + hi).second)
                throw InvalidInput("SymmetricOperator: duplicate sparse entry for pair (" +
                                   std::to_string(t.row) + "," + std::to_string(t.col) + ")");
        }
        SymmetricOperator op;
        op.n_ = n;
        op.triplets_ = std::move(entries);
        op.sparse_backed_ = true;
        return op;
    }

    static SymmetricOperator identity(std::size_t n) { return diagonal(std::vector<double>(n, 1.0)); }

    static SymmetricOperator diagonal(std::vector<double> d) {
        Matrix a(d.size(), d.size());
        for (std::size_t i = 0; i < d.size(); ++i) a(i, i) = d[i];
        return dense(std::move(a));
    }

    std::size_t n() const { return n_; }
    bool is_sparse() const { return sparse_backed_; }
    const std::vector<Triplet>& triplets() const { return triplets_; }

    std::vector<double> apply(std::span<const double> x) const {
        if (x.size() != n_)
            throw InvalidInput("matvec: vector length " + std::to_string(x.size()) +
                               " does not match dimension " + std::to_string(n_));
        std::vector<double> y(n_, 0.0);
        if (!sparse_backed_) {
            for (std::size_t i = 0; i < n_; ++i) {
                double s = 0.0;
                const double* row = &dense_.data[i * n_];
                for (std::size_t j = 0; j < n_; ++j) s += row[j] * x[j];
                y[i] = s;
            }
        } else {
            for (const Triplet& t : triplets_) {
                y[t.row] += t.value * x[t.col];
                if (t.row != t.col) y[t.col] += t.value * x[t.row];
            }
        }
        return y;
    }

    Matrix to_dense() const {
        if (!sparse_backed_) return dense_;
        Matrix a(n_, n_);
        for (const Triplet& t : triplets_) {
            a(t.row, t.col) += t.value;
            if (t.row != t.col) a(t.col, t.row) += t.value;
        }
        return a;
    }

    double trace() const {
        double s = 0.0;
        if (!sparse_backed_) {
            for (std::size_t i = 0; i < n_; ++i) s += dense_(i, i);
        } else {
            for (const Triplet& t : triplets_)
                if (t.row == t.col) s += t.value;
        }
        return s;
    }

    double frobenius_norm() const {
        double s = 0.0;
        if (!sparse_backed_) {
            for (double v : dense_.data) s += v * v;
        } else {
            for (const Triplet& t : triplets_) s += (t.row == t.col) ? t.value * t.value : 2.0 * t.value * t.value;
        }
        return std::sqrt(s);
    }

private:
    std::size_t n_ = 0;
    bool sparse_backed_ = false;
    Matrix dense_;
    std::vector<Triplet> triplets_;
};

inline std::vector<double> matvec(const SymmetricOperator& a, std::span<const double> x) {
    return a.apply(x);
}

// ---------------------------------------------------------------------------
// Symmetric tridiagonal (Jacobi) matrix: diagonal alphas, off-diagonal betas.
// ---------------------------------------------------------------------------

struct TridiagonalMatrix {
    std::vector<double> alphas;
    std::vector<double> betas;  // size alphas.size() - 1

    TridiagonalMatrix() = default;
    TridiagonalMatrix(std::vector<double> a, std::vector<double> b)
        : alphas(std::move(a)), betas(std::move(b)) {
        if (alphas.empty()) throw InvalidInput("TridiagonalMatrix: empty diagonal");
        if (betas.size() + 1 != alphas.size())
            throw InvalidInput("TridiagonalMatrix: need exactly size-1 off-diagonal entries");
        if (!all_finite(alphas) || !all_finite(betas))
            throw InvalidInput("TridiagonalMatrix: non-finite entry");
    }

    std::size_t size() const { return alphas.size(); }

    Matrix to_dense() const {
        Matrix t(size(), size());
        for (std::size_t i = 0; i < size(); ++i) t(i, i) = alphas[i];
        for (std::size_t i = 0; i + 1 < size(); ++i) {
            t(i, i + 1) = betas[i];
            t(i + 1, i) = betas[i];
        }
        return t;
    }

    double trace() const { return std::accumulate(alphas.begin(), alphas.end(), 0.0); }
};

}  // namespace ritzsym
