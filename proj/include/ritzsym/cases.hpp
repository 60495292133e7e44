#pragma once

#include <cmath>
#include <filesystem>
#include <string>
#include <vector>

#include "ritzsym/matrix_market.hpp"
#include "ritzsym/operators.hpp"

namespace ritzsym {

// The four experiment cases. Cases 1-3 build the reproducible 50x50 matrix
// A = H Lambda H^T with the rank-one Householder reflector H; case 4 loads a
// local copy of the nd3k matrix.
struct CaseSpec {
    int case_id = 1;
    std::filesystem::path matrix_path;  // case 4 only

    static CaseSpec of(int id, std::filesystem::path path = {}) {
        if (id < 1 || id > 4) throw InvalidInput("CaseSpec: case id must be in 1..4");
        if (id == 4 && path.empty())
            throw InvalidInput("CaseSpec: case 4 needs a local matrix file path (nd3k from the "
                               "SuiteSparse collection)");
        CaseSpec s;
        s.case_id = id;
        s.matrix_path = std::move(path);
        return s;
    }
};

struct CaseData {
    SymmetricOperator A;
    std::vector<double> v;
    std::string description;
};

// H = I - (2/n) * ones * ones^T, symmetric and orthonormal.
inline Matrix householder_reflector(std::size_t n) {
    Matrix h(n, n, -2.0 / static_cast<double>(n));
    for (std::size_t i = 0; i < n; ++i) h(i, i) += 1.0;
    return h;
}

namespace detail {

// A = H diag(lambda) H^T. Each (i,j) entry is a sum over k in the same
// order for both triangle halves, so the result is exactly symmetric.
inline SymmetricOperator householder_similarity(const std::vector<double>& lambda) {
    const std::size_t n = lambda.size();
    Matrix h = householder_reflector(n);
    Matrix a(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j <= i; ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k < n; ++k) s += lambda[k] * h(i, k) * h(j, k);
            a(i, j) = s;
            a(j, i) = s;
        }
    return SymmetricOperator::dense(std::move(a));
}

}  // namespace detail

inline CaseData build_case(const CaseSpec& spec) {
    constexpr std::size_t kCaseN = 50;
    switch (spec.case_id) {
        case 1: {
            std::vector<double> lambda(kCaseN);
            for (std::size_t i = 0; i < kCaseN; ++i) lambda[i] = static_cast<double>(i + 1) / 50.0;
            std::vector<double> v(kCaseN, 1.0 / std::sqrt(50.0));
            return {detail::householder_similarity(lambda), std::move(v),
                    "case 1: lambda_i = i/50, v = ones/sqrt(50)"};
        }
        case 2: {
            std::vector<double> lambda(kCaseN);
            for (std::size_t i = 0; i < kCaseN; ++i) lambda[i] = 1.0 / (51.0 - (i + 1.0));
            std::vector<double> v(kCaseN, 1.0 / std::sqrt(50.0));
            return {detail::householder_similarity(lambda), std::move(v),
                    "case 2: lambda_i = 1/(51-i), v = ones/sqrt(50)"};
        }
        case 3: {
            std::vector<double> lambda(kCaseN);
            for (std::size_t i = 0; i < kCaseN; ++i) lambda[i] = static_cast<double>(i + 1) / 50.0;
            std::vector<double> v(kCaseN);
            for (std::size_t i = 0; i < kCaseN; ++i) v[i] = static_cast<double>(i + 1);
            scale_inplace(1.0 / norm2(v), v);
            return {detail::householder_similarity(lambda), std::move(v),
                    "case 3: lambda_i = i/50, v = (1,...,50)/||.||"};
        }
        case 4: {
            SymmetricOperator a = read_matrix_market(spec.matrix_path);
            const std::size_t n = a.n();
            // First half +1, second half -1 (balanced split), normalized.
            std::vector<double> v(n);
            const double scale = 1.0 / std::sqrt(static_cast<double>(n));
            for (std::size_t i = 0; i < n; ++i) v[i] = (i < (n + 1) / 2 ? scale : -scale);
            return {std::move(a), std::move(v),
                    "case 4: " + spec.matrix_path.string() + ", v = (1,...,1,-1,...,-1)/sqrt(n)"};
        }
        default:
            throw InvalidInput("build_case: case id must be in 1..4");
    }
}

}  // namespace ritzsym
