#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "ritzsym/eigensolvers.hpp"
#include "ritzsym/operators.hpp"

namespace ritzsym {

enum class Reorth { Full, None };

struct LanczosOptions {
    Reorth reorth = Reorth::Full;
    bool keep_basis = false;
    // Breakdown threshold is this factor times ||A||_F (scale-aware).
    double breakdown_tol_factor = 1e-12;
};

struct LanczosResult {
    TridiagonalMatrix T;
    std::optional<Matrix> basis;  // n x steps_completed, columns v_1..v_k
    std::size_t steps_completed = 0;
    bool breakdown = false;
    std::size_t breakdown_step = 0;  // steps completed when ||u_k|| fell below tolerance
};

// m-step Lanczos three-term recurrence. A breakdown (||u_k|| below the
// scale-aware tolerance) signals an invariant Krylov subspace: the run stops
// early with a valid smaller T and the breakdown flag set.
inline LanczosResult lanczos(const SymmetricOperator& a, std::span<const double> u, std::size_t m,
                             LanczosOptions opts = {}) {
    const std::size_t n = a.n();
    if (u.size() != n) throw InvalidInput("lanczos: vector length does not match dimension");
    if (m == 0) throw InvalidInput("lanczos: m must be positive");
    if (m > n) throw InvalidInput("lanczos: m = " + std::to_string(m) + " exceeds dimension " +
                                  std::to_string(n));
    if (!all_finite(u)) throw InvalidInput("lanczos: non-finite entry in start vector");

    const double unorm = norm2(u);
    if (unorm == 0.0) throw InvalidInput("lanczos: start vector is zero");
    const double breakdown_tol = opts.breakdown_tol_factor * a.frobenius_norm();

    std::vector<std::vector<double>> basis;
    basis.reserve(m);
    std::vector<double> v(u.begin(), u.end());
    scale_inplace(1.0 / unorm, v);
    basis.push_back(v);

    std::vector<double> alphas, betas;
    alphas.reserve(m);
    bool breakdown = false;
    std::size_t steps = 0;

    std::vector<double> w;
    for (std::size_t k = 0; k < m; ++k) {
        const std::vector<double>& vk = basis[k];
        w = a.apply(vk);
        double alpha = dot(vk, w);
        if (!std::isfinite(alpha)) throw DomainError("lanczos: non-finite recurrence value");
        alphas.push_back(alpha);
        ++steps;
        if (k + 1 == m) break;

        axpy(-alpha, vk, w);
        if (k > 0) axpy(-betas[k - 1], basis[k - 1], w);
        if (opts.reorth == Reorth::Full) {
            // Two passes of classical Gram-Schmidt against the whole basis.
            for (int pass = 0; pass < 2; ++pass)
                for (const auto& vj : basis) axpy(-dot(vj, w), vj, w);
        }

        double beta = norm2(w);
        if (!std::isfinite(beta)) throw DomainError("lanczos: non-finite recurrence value");
        if (beta <= breakdown_tol) {
            breakdown = true;
            break;
        }
        betas.push_back(beta);
        scale_inplace(1.0 / beta, w);
        basis.push_back(w);
    }

    LanczosResult out;
    out.T = TridiagonalMatrix(std::move(alphas), std::move(betas));
    out.steps_completed = steps;
    out.breakdown = breakdown;
    out.breakdown_step = breakdown ? steps : 0;
    if (opts.keep_basis) {
        Matrix vmat(n, steps);
        for (std::size_t k = 0; k < steps; ++k) vmat.set_column(k, basis[k]);
        out.basis = std::move(vmat);
    }
    return out;
}

inline LanczosResult lanczos(const SymmetricOperator& a, std::span<const double> u, std::size_t m,
                             Reorth reorth, bool keep_basis = false) {
    LanczosOptions opts;
    opts.reorth = reorth;
    opts.keep_basis = keep_basis;
    return lanczos(a, u, m, opts);
}

// Projected Lanczos vectors mu_k = Q^T v_k, for palindrome diagnostics.
// Needs the dense eigendecomposition, so the dense cap applies.
inline std::vector<std::vector<double>> lanczos_mu_sequence(const SymmetricOperator& a,
                                                            std::span<const double> u, std::size_t m,
                                                            std::size_t cap = dense_cap()) {
    EigenDecomposition eig = full_eigen(a, cap);
    LanczosOptions opts;
    opts.keep_basis = true;
    LanczosResult run = lanczos(a, u, m, opts);

    std::vector<std::vector<double>> mus;
    mus.reserve(run.steps_completed);
    for (std::size_t k = 0; k < run.steps_completed; ++k)
        mus.push_back(vecmat(run.basis->column(k), eig.eigenvectors));
    return mus;
}

}  // namespace ritzsym
