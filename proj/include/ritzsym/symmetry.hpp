#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "ritzsym/eigensolvers.hpp"
#include "ritzsym/operators.hpp"
#include "ritzsym/quadrature.hpp"

namespace ritzsym {

// ---------------------------------------------------------------------------
// Discrete Riemann-Stieltjes measure: the step function with jump mu_j^2 at
// eigenvalue lambda_j, where mu = Q^T v.
// ---------------------------------------------------------------------------

struct SpectralMeasure {
    struct Jump {
        double location;
        double mass;
    };
    std::vector<Jump> jumps;  // ascending in location; repeated eigenvalues keep separate jumps
    double total_mass = 0.0;
    bool input_was_normalized = true;  // false when v had to be normalized first
};

inline SpectralMeasure spectral_measure(const SymmetricOperator& a, std::span<const double> v,
                                        std::size_t cap = dense_cap()) {
    if (v.size() != a.n()) throw InvalidInput("spectral_measure: vector length mismatch");
    double nv = norm2(v);
    if (nv == 0.0) throw InvalidInput("spectral_measure: zero vector");

    SpectralMeasure out;
    std::vector<double> vn(v.begin(), v.end());
    out.input_was_normalized = std::fabs(nv - 1.0) <= 1e-12;
    if (!out.input_was_normalized) scale_inplace(1.0 / nv, vn);

    EigenDecomposition eig = full_eigen(a, cap);
    std::vector<double> mu = vecmat(vn, eig.eigenvectors);
    out.jumps.reserve(mu.size());
    for (std::size_t j = 0; j < mu.size(); ++j) {
        out.jumps.push_back({eig.eigenvalues[j], mu[j] * mu[j]});
        out.total_mass += mu[j] * mu[j];
    }
    return out;
}

// ---------------------------------------------------------------------------
// Palindrome and spectrum-symmetry detectors.
// ---------------------------------------------------------------------------

struct PalindromeCheck {
    bool is_palindrome = false;
    double max_deviation = 0.0;  // max_i | |w_i| - |w_{n+1-i}| |
};

inline PalindromeCheck is_absolute_palindrome(std::span<const double> w, double tol) {
    PalindromeCheck out;
    const std::size_t n = w.size();
    for (std::size_t i = 0; i < n / 2; ++i) {
        double dev = std::fabs(std::fabs(w[i]) - std::fabs(w[n - 1 - i]));
        out.max_deviation = std::max(out.max_deviation, dev);
    }
    out.is_palindrome = out.max_deviation <= tol;
    return out;
}

// Returns (lambda_1 + lambda_n)/2 when every pair sums to the same value
// within tol, nothing otherwise.
inline std::optional<double> spectrum_symmetry_center(std::span<const double> eigs_ascending,
                                                      double tol) {
    const std::size_t n = eigs_ascending.size();
    if (n == 0) return std::nullopt;
    const double s = eigs_ascending.front() + eigs_ascending.back();
    for (std::size_t i = 0; i < (n + 1) / 2; ++i)
        if (std::fabs(eigs_ascending[i] + eigs_ascending[n - 1 - i] - s) > tol) return std::nullopt;
    return 0.5 * s;
}

// ---------------------------------------------------------------------------
// The symmetry report: hypotheses of the sufficient condition on one side,
// the observed Ritz-value/weight symmetry on the other.
// ---------------------------------------------------------------------------

struct NodePair {
    double theta_low;
    double theta_high;
    double deviation;  // |theta_low + theta_high - 2*center|
};

struct SymmetryReport {
    // Condition part: hypotheses of the sufficient condition.
    bool condition_evaluated = false;
    std::optional<double> spectrum_center;  // set when the spectrum is symmetric
    bool spectrum_symmetric = false;
    bool mu_palindrome = false;
    double mu_palindrome_deviation = std::numeric_limits<double>::quiet_NaN();

    // Conclusion part: symmetry of the quadrature rule itself.
    bool ritz_evaluated = false;
    bool ritz_symmetric = false;
    bool nodes_symmetric = false;
    bool weights_pair_equal = false;
    double center_estimate = std::numeric_limits<double>::quiet_NaN();  // (theta_1 + theta_m)/2
    std::vector<NodePair> node_pairs;
    double max_node_pair_deviation = 0.0;
    double middle_node_deviation = 0.0;  // odd m: |theta_mid - center|
    double weight_pair_deviation = 0.0;  // max |tau_low - tau_high|
    double constant_diagonal_deviation = 0.0;  // max_k |alpha_k - center|
};

struct SymmetryOptions {
    // Absolute tolerance on node sums and weight pairs; node comparisons are
    // additionally scaled by the spectral radius of the rule.
    double tol = 1e-8;
};

// Evaluates the two hypotheses of the sufficient condition: a spectrum
// symmetric about some center, and mu = Q^T v an absolute palindrome.
inline SymmetryReport check_sufficient_condition(const SymmetricOperator& a,
                                                 std::span<const double> v,
                                                 SymmetryOptions opts = {},
                                                 std::size_t cap = dense_cap()) {
    if (v.size() != a.n()) throw InvalidInput("check_sufficient_condition: vector length mismatch");
    double nv = norm2(v);
    if (nv == 0.0) throw InvalidInput("check_sufficient_condition: zero vector");
    std::vector<double> vn(v.begin(), v.end());
    scale_inplace(1.0 / nv, vn);

    EigenDecomposition eig = full_eigen(a, cap);
    double radius = std::max(std::fabs(eig.eigenvalues.front()), std::fabs(eig.eigenvalues.back()));
    double scale = std::max(1.0, radius);

    SymmetryReport rep;
    rep.condition_evaluated = true;
    rep.spectrum_center = spectrum_symmetry_center(eig.eigenvalues, opts.tol * scale);
    rep.spectrum_symmetric = rep.spectrum_center.has_value();

    std::vector<double> mu = vecmat(vn, eig.eigenvectors);
    PalindromeCheck pc = is_absolute_palindrome(mu, opts.tol);
    rep.mu_palindrome = pc.is_palindrome;
    rep.mu_palindrome_deviation = pc.max_deviation;
    return rep;
}

// Checks the conclusion of the sufficient condition on a computed rule:
// node k pairs with node m+1-k about the center, paired weights are equal,
// and the Jacobi diagonal is constant. The center defaults to the mean of
// the extreme nodes; when the caller knows the spectrum center it is used
// instead and both are reported.
inline SymmetryReport ritz_symmetry_check(const QuadratureRule& rule, const TridiagonalMatrix& t,
                                          SymmetryOptions opts = {},
                                          std::optional<double> center_hint = std::nullopt) {
    const std::size_t m = rule.size();
    if (m == 0 || t.size() != m)
        throw InvalidInput("ritz_symmetry_check: rule and Jacobi matrix sizes differ");

    SymmetryReport rep;
    rep.ritz_evaluated = true;
    rep.center_estimate = 0.5 * (rule.nodes.front() + rule.nodes.back());
    if (center_hint) rep.spectrum_center = center_hint;
    const double center = center_hint.value_or(rep.center_estimate);

    double radius = std::max(std::fabs(rule.nodes.front()), std::fabs(rule.nodes.back()));
    double scale = std::max(1.0, radius);
    const double node_tol = opts.tol * scale;
    const double weight_tol = opts.tol * scale;

    for (std::size_t k = 0; k < m / 2; ++k) {
        double lo = rule.nodes[k], hi = rule.nodes[m - 1 - k];
        double dev = std::fabs(lo + hi - 2.0 * center);
        rep.node_pairs.push_back({lo, hi, dev});
        rep.max_node_pair_deviation = std::max(rep.max_node_pair_deviation, dev);
        rep.weight_pair_deviation = std::max(
            rep.weight_pair_deviation, std::fabs(rule.weights[k] - rule.weights[m - 1 - k]));
    }
    if (m % 2 == 1) rep.middle_node_deviation = std::fabs(rule.nodes[m / 2] - center);

    for (double alpha : t.alphas)
        rep.constant_diagonal_deviation =
            std::max(rep.constant_diagonal_deviation, std::fabs(alpha - center));

    rep.nodes_symmetric =
        rep.max_node_pair_deviation <= node_tol && rep.middle_node_deviation <= node_tol;
    rep.weights_pair_equal = rep.weight_pair_deviation <= weight_tol;
    rep.ritz_symmetric = rep.nodes_symmetric && rep.weights_pair_equal;
    return rep;
}

// Builds v = Q xi where xi is a signed mirror of the given leading
// coefficients, so that Q^T v is an absolute palindrome by construction.
// xi_head holds coefficients for indices 1..ceil(n/2); signs holds one sign
// per mirrored pair (floor(n/2) entries, each +1 or -1).
inline std::vector<double> palindrome_vector_sample(const Matrix& q,
                                                    std::span<const double> xi_head,
                                                    std::span<const int> signs) {
    const std::size_t n = q.rows;
    if (q.cols != n) throw InvalidInput("palindrome_vector_sample: Q must be square");
    if (xi_head.size() != (n + 1) / 2)
        throw InvalidInput("palindrome_vector_sample: need ceil(n/2) coefficients, got " +
                           std::to_string(xi_head.size()));
    if (signs.size() != n / 2)
        throw InvalidInput("palindrome_vector_sample: need floor(n/2) signs, got " +
                           std::to_string(signs.size()));

    std::vector<double> xi(n, 0.0);
    for (std::size_t i = 0; i < (n + 1) / 2; ++i) xi[i] = xi_head[i];
    for (std::size_t i = 0; i < n / 2; ++i) {
        if (signs[i] != 1 && signs[i] != -1)
            throw InvalidInput("palindrome_vector_sample: signs must be +1 or -1");
        xi[n - 1 - i] = signs[i] * xi_head[i];
    }
    double nx = norm2(xi);
    if (nx == 0.0) throw InvalidInput("palindrome_vector_sample: zero coefficient vector");
    scale_inplace(1.0 / nx, xi);
    return matvec(q, xi);
}

// ---------------------------------------------------------------------------
// Jordan-Wielandt constructions: [[gamma I, B], [B^T, gamma I]] and its
// analytic eigenpairs from the singular triplets of B.
// ---------------------------------------------------------------------------

inline SymmetricOperator jordan_wielandt_assemble(const Matrix& b, double gamma) {
    const std::size_t n1 = b.rows, n2 = b.cols;
    if (n1 + n2 == 0) throw InvalidInput("jordan_wielandt_assemble: empty block");
    if (!all_finite(b.data) || !std::isfinite(gamma))
        throw InvalidInput("jordan_wielandt_assemble: non-finite input");
    Matrix a(n1 + n2, n1 + n2);
    for (std::size_t i = 0; i < n1 + n2; ++i) a(i, i) = gamma;
    for (std::size_t i = 0; i < n1; ++i)
        for (std::size_t j = 0; j < n2; ++j) {
            a(i, n1 + j) = b(i, j);
            a(n1 + j, i) = b(i, j);
        }
    return SymmetricOperator::dense(std::move(a));
}

struct EigenPair {
    double value;
    std::vector<double> vector;
};

// Eigenpairs (gamma +/- sigma_i, [u_i; +/- v_i]/sqrt(2)) for each singular
// triplet of B, plus gamma repeated n1+n2-2r times on null-space directions.
// Sigmas at or below the rank cut are treated as zero. The cut is floored at
// 1e-7 * sigma_max: the Gram-matrix route cannot certify singular values
// below ~sqrt(machine eps), so exact zeros surface around 1e-8 * sigma_max.
inline std::vector<EigenPair> jordan_wielandt_eigenpairs(const Matrix& b, double gamma,
                                                         double rank_tol_factor = 1e-12) {
    const std::size_t n1 = b.rows, n2 = b.cols;
    if (n1 + n2 == 0) throw InvalidInput("jordan_wielandt_eigenpairs: empty block");

    std::vector<EigenPair> pairs;
    pairs.reserve(n1 + n2);
    auto embed = [&](std::span<const double> top, std::span<const double> bottom, double scale_top,
                     double scale_bottom) {
        std::vector<double> z(n1 + n2, 0.0);
        for (std::size_t i = 0; i < top.size(); ++i) z[i] = scale_top * top[i];
        for (std::size_t j = 0; j < bottom.size(); ++j) z[n1 + j] = scale_bottom * bottom[j];
        return z;
    };
    const std::vector<double> empty;
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);

    double sigma_max = 0.0;
    std::vector<double> sigmas;           // descending
    std::vector<std::vector<double>> vs;  // right singular vectors matching sigmas

    if (n2 > 0 && n1 > 0) {
        Matrix g = matmul(transpose(b), b);  // n2 x n2
        EigenDecomposition ge = full_eigen(SymmetricOperator::dense(std::move(g)));
        for (std::size_t j = ge.eigenvalues.size(); j-- > 0;) {
            double s2 = std::max(ge.eigenvalues[j], 0.0);
            sigmas.push_back(std::sqrt(s2));
            vs.push_back(ge.eigenvectors.column(j));
        }
        if (!sigmas.empty()) sigma_max = sigmas.front();
    }
    const double rank_cut = std::max(rank_tol_factor, 1e-7) * sigma_max;

    std::size_t r = 0;
    for (; r < sigmas.size(); ++r)
        if (!(sigmas[r] > rank_cut)) break;

    for (std::size_t i = 0; i < r; ++i) {
        std::vector<double> u = matvec(b, vs[i]);
        scale_inplace(1.0 / sigmas[i], u);
        pairs.push_back({gamma + sigmas[i], embed(u, vs[i], inv_sqrt2, inv_sqrt2)});
        pairs.push_back({gamma - sigmas[i], embed(u, vs[i], inv_sqrt2, -inv_sqrt2)});
    }
    // Null-space directions of B carry eigenvalue gamma on the second block.
    for (std::size_t i = r; i < sigmas.size(); ++i)
        pairs.push_back({gamma, embed(empty, vs[i], 0.0, 1.0)});
    // Null-space directions of B^T carry eigenvalue gamma on the first block:
    // the n1 - r smallest eigenvectors of B B^T.
    if (n1 > 0 && n2 == 0) {
        for (std::size_t i = 0; i < n1; ++i) {
            std::vector<double> u(n1, 0.0);
            u[i] = 1.0;
            pairs.push_back({gamma, embed(u, empty, 1.0, 0.0)});
        }
    } else if (n1 > r) {
        Matrix h = matmul(b, transpose(b));  // n1 x n1
        EigenDecomposition he = full_eigen(SymmetricOperator::dense(std::move(h)));
        for (std::size_t j = 0; j < n1 - r; ++j)
            pairs.push_back({gamma, embed(he.eigenvectors.column(j), empty, 1.0, 0.0)});
    }
    if (n1 == 0) {
        for (std::size_t j = 0; j < n2; ++j) {
            std::vector<double> v(n2, 0.0);
            v[j] = 1.0;
            pairs.push_back({gamma, embed(empty, v, 0.0, 1.0)});
        }
    }

    std::stable_sort(pairs.begin(), pairs.end(),
                     [](const EigenPair& a, const EigenPair& b2) { return a.value < b2.value; });
    return pairs;
}

// ---------------------------------------------------------------------------
// Red-black rearrangement: a constant-diagonal tridiagonal matrix permuted
// odd-then-even becomes [[gamma I_{n1}, B], [B^T, gamma I_{n2}]].
// ---------------------------------------------------------------------------

struct RedBlackForm {
    std::vector<std::size_t> permutation;  // new position -> original index
    Matrix b;                              // n1 x n2 bipartite block
    std::size_t n1 = 0;                    // ceil(m/2), odd original positions
    std::size_t n2 = 0;                    // floor(m/2), even original positions
    double gamma = 0.0;
};

inline RedBlackForm red_black_permute(const TridiagonalMatrix& t, double tol = 1e-10) {
    const std::size_t m = t.size();
    double gamma = t.trace() / static_cast<double>(m);
    double dev = 0.0;
    for (double a : t.alphas) dev = std::max(dev, std::fabs(a - gamma));
    double scale = std::max(1.0, std::fabs(gamma));
    if (dev > tol * scale)
        throw DomainError("red_black_permute: diagonal is not constant (max deviation " +
                          std::to_string(dev) + ")");

    RedBlackForm out;
    out.gamma = gamma;
    out.n1 = (m + 1) / 2;
    out.n2 = m / 2;
    out.permutation.reserve(m);
    for (std::size_t i = 0; i < m; i += 2) out.permutation.push_back(i);
    for (std::size_t i = 1; i < m; i += 2) out.permutation.push_back(i);

    // Row i holds original position 2i, column j original position 2j+1;
    // the tridiagonal couples 2i to 2i-1 and 2i+1 only.
    out.b = Matrix(out.n1, out.n2);
    for (std::size_t i = 0; i < out.n1; ++i) {
        if (i > 0) out.b(i, i - 1) = t.betas[2 * i - 1];
        if (2 * i + 1 <= m - 1) out.b(i, i) = t.betas[2 * i];
    }
    return out;
}

}  // namespace ritzsym
