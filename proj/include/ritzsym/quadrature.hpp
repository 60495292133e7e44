#pragma once

#include <cmath>
#include <complex>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ritzsym/eigensolvers.hpp"
#include "ritzsym/lanczos.hpp"
#include "ritzsym/operators.hpp"

namespace ritzsym {

// ---------------------------------------------------------------------------
// Gauss quadrature rule extracted from a Jacobi matrix: the nodes are the
// eigenvalues of T, the weights the squared first components of its
// normalized eigenvectors.
// ---------------------------------------------------------------------------

struct QuadratureRule {
    std::vector<double> nodes;    // ascending
    std::vector<double> weights;  // nonnegative, sums to 1

    std::size_t size() const { return nodes.size(); }
};

inline QuadratureRule golub_welsch(const TridiagonalMatrix& t) {
    EigenDecomposition eig = tridiag_eigen(t, EigenvectorMode::FirstRow);
    QuadratureRule rule;
    rule.nodes = std::move(eig.eigenvalues);
    rule.weights.resize(rule.nodes.size());
    for (std::size_t k = 0; k < rule.weights.size(); ++k)
        rule.weights[k] = eig.first_components[k] * eig.first_components[k];
    return rule;
}

// ---------------------------------------------------------------------------
// Scalar matrix functions with pointwise domain guards. Complex evaluation
// is used when sampling Bernstein-ellipse boundaries.
// ---------------------------------------------------------------------------

class MatrixFunction {
public:
    enum class Kind { Exp, Log, Inverse, Sqrt, Power, Polynomial, ScaledExp };

    static MatrixFunction exp() { return MatrixFunction(Kind::Exp); }
    static MatrixFunction log() { return MatrixFunction(Kind::Log); }
    static MatrixFunction inverse() { return MatrixFunction(Kind::Inverse); }
    static MatrixFunction sqrt() { return MatrixFunction(Kind::Sqrt); }
    static MatrixFunction power(double p) {
        MatrixFunction f(Kind::Power);
        f.param_ = p;
        return f;
    }
    static MatrixFunction polynomial(std::vector<double> coeffs) {
        if (coeffs.empty()) throw InvalidInput("MatrixFunction: empty coefficient list");
        if (!all_finite(coeffs)) throw InvalidInput("MatrixFunction: non-finite coefficient");
        MatrixFunction f(Kind::Polynomial);
        f.coeffs_ = std::move(coeffs);
        return f;
    }
    static MatrixFunction scaled_exp(double beta) {
        MatrixFunction f(Kind::ScaledExp);
        f.param_ = beta;
        return f;
    }

    // Accepts: exp | log | inv | inverse | sqrt | power:<p> | poly:<c0,c1,...> | scaled-exp:<beta>
    static MatrixFunction parse(const std::string& spec) {
        auto colon = spec.find(':');
        std::string head = spec.substr(0, colon);
        std::string tail = colon == std::string::npos ? std::string() : spec.substr(colon + 1);
        if (head == "exp" && tail.empty()) return exp();
        if (head == "log" && tail.empty()) return log();
        if ((head == "inv" || head == "inverse") && tail.empty()) return inverse();
        if (head == "sqrt" && tail.empty()) return sqrt();
        if (head == "power" || head == "pow") return power(parse_double(tail, spec));
        if (head == "scaled-exp" || head == "scaled_exp") return scaled_exp(parse_double(tail, spec));
        if (head == "poly" || head == "polynomial") {
            std::vector<double> cs;
            std::stringstream ss(tail);
            std::string tok;
            while (std::getline(ss, tok, ',')) cs.push_back(parse_double(tok, spec));
            return polynomial(std::move(cs));
        }
        throw InvalidInput("MatrixFunction: cannot parse '" + spec + "'");
    }

    Kind kind() const { return kind_; }
    double param() const { return param_; }
    const std::vector<double>& coefficients() const { return coeffs_; }

    bool in_domain(double x) const {
        switch (kind_) {
            case Kind::Exp:
            case Kind::ScaledExp:
            case Kind::Polynomial:
                return true;
            case Kind::Log:
            case Kind::Inverse:
                return x > 0.0;
            case Kind::Sqrt:
                return x >= 0.0;
            case Kind::Power: {
                if (param_ == std::floor(param_))  // integer exponent
                    return param_ >= 0.0 || x != 0.0;
                return param_ >= 0.0 ? x >= 0.0 : x > 0.0;
            }
        }
        return false;
    }

    double operator()(double x) const {
        if (!in_domain(x))
            throw DomainError("MatrixFunction: " + name() + " undefined at " + std::to_string(x));
        switch (kind_) {
            case Kind::Exp: return std::exp(x);
            case Kind::Log: return std::log(x);
            case Kind::Inverse: return 1.0 / x;
            case Kind::Sqrt: return std::sqrt(x);
            case Kind::Power: return std::pow(x, param_);
            case Kind::Polynomial: return horner(x);
            case Kind::ScaledExp: return std::exp(param_ * x);
        }
        return 0.0;
    }

    std::complex<double> eval(std::complex<double> z) const {
        switch (kind_) {
            case Kind::Exp: return std::exp(z);
            case Kind::Log: return std::log(z);
            case Kind::Inverse: return 1.0 / z;
            case Kind::Sqrt: return std::sqrt(z);
            case Kind::Power: return std::pow(z, param_);
            case Kind::Polynomial: {
                std::complex<double> acc(0.0, 0.0);
                for (std::size_t i = coeffs_.size(); i-- > 0;) acc = acc * z + coeffs_[i];
                return acc;
            }
            case Kind::ScaledExp: return std::exp(param_ * z);
        }
        return {};
    }

    // True when the function has a singularity or branch cut on (-inf, 0],
    // which a Bernstein ellipse must then avoid.
    bool restricted_to_positive_axis() const {
        switch (kind_) {
            case Kind::Exp:
            case Kind::ScaledExp:
            case Kind::Polynomial:
                return false;
            case Kind::Log:
            case Kind::Inverse:
            case Kind::Sqrt:
                return true;
            case Kind::Power:
                return !(param_ == std::floor(param_) && param_ >= 0.0);
        }
        return false;
    }

    std::string name() const {
        switch (kind_) {
            case Kind::Exp: return "exp";
            case Kind::Log: return "log";
            case Kind::Inverse: return "inv";
            case Kind::Sqrt: return "sqrt";
            case Kind::Power: return "power:" + std::to_string(param_);
            case Kind::ScaledExp: return "scaled-exp:" + std::to_string(param_);
            case Kind::Polynomial: {
                std::string s = "poly:";
                for (std::size_t i = 0; i < coeffs_.size(); ++i)
                    s += (i ? "," : "") + std::to_string(coeffs_[i]);
                return s;
            }
        }
        return "?";
    }

private:
    explicit MatrixFunction(Kind k) : kind_(k) {}

    static double parse_double(const std::string& s, const std::string& ctx) {
        try {
            std::size_t pos = 0;
            double v = std::stod(s, &pos);
            if (pos != s.size() || !std::isfinite(v)) throw std::invalid_argument(s);
            return v;
        } catch (const std::exception&) {
            throw InvalidInput("MatrixFunction: bad number '" + s + "' in '" + ctx + "'");
        }
    }

    double horner(double x) const {
        double acc = 0.0;
        for (std::size_t i = coeffs_.size(); i-- > 0;) acc = acc * x + coeffs_[i];
        return acc;
    }

    Kind kind_;
    double param_ = 0.0;
    std::vector<double> coeffs_;
};

// ---------------------------------------------------------------------------
// Quadratic form estimation ||u||^2 sum_k tau_k f(theta_k), plus the
// dense-eigendecomposition reference used as the small-instance oracle.
// ---------------------------------------------------------------------------

struct QuadraticFormEstimate {
    double value = 0.0;
    double norm_u_squared = 0.0;
    QuadratureRule rule;
    TridiagonalMatrix T;
    std::size_t steps_completed = 0;
    bool breakdown = false;
};

inline QuadraticFormEstimate estimate_quadratic_form(const SymmetricOperator& a,
                                                     std::span<const double> u,
                                                     const MatrixFunction& f, std::size_t m,
                                                     Reorth reorth = Reorth::Full) {
    LanczosOptions opts;
    opts.reorth = reorth;
    LanczosResult run = lanczos(a, u, m, opts);

    QuadraticFormEstimate out;
    out.T = run.T;
    out.steps_completed = run.steps_completed;
    out.breakdown = run.breakdown;
    out.rule = golub_welsch(run.T);
    out.norm_u_squared = dot(u, u);

    double s = 0.0;
    for (std::size_t k = 0; k < out.rule.size(); ++k) {
        double node = out.rule.nodes[k];
        if (!f.in_domain(node))
            throw DomainError("estimate_quadratic_form: " + f.name() + " undefined at Ritz node " +
                              std::to_string(node));
        s += out.rule.weights[k] * f(node);
    }
    out.value = out.norm_u_squared * s;
    return out;
}

// Exact-by-eigendecomposition value of u^T f(A) u.
inline double quadratic_form_oracle(const SymmetricOperator& a, std::span<const double> u,
                                    const MatrixFunction& f, std::size_t cap = dense_cap()) {
    if (u.size() != a.n()) throw InvalidInput("quadratic_form_oracle: vector length mismatch");
    EigenDecomposition eig = full_eigen(a, cap);
    double uu = dot(u, u);
    if (uu == 0.0) throw InvalidInput("quadratic_form_oracle: zero vector");
    std::vector<double> v(u.begin(), u.end());
    scale_inplace(1.0 / std::sqrt(uu), v);
    std::vector<double> mu = vecmat(v, eig.eigenvectors);

    double s = 0.0;
    for (std::size_t j = 0; j < mu.size(); ++j) {
        double lambda = eig.eigenvalues[j];
        if (!f.in_domain(lambda))
            throw DomainError("quadratic_form_oracle: " + f.name() + " undefined at eigenvalue " +
                              std::to_string(lambda));
        s += mu[j] * mu[j] * f(lambda);
    }
    return uu * s;
}

}  // namespace ritzsym
