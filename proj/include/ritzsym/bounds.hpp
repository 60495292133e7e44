#pragma once

#include <cmath>
#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "ritzsym/quadrature.hpp"

namespace ritzsym {

// rho = (sqrt(kappa) + 1) / (sqrt(kappa) - 1), the elliptical radius induced
// by the condition number. Diverges as kappa -> 1, hence the guard.
inline double rho_from_kappa(double kappa) {
    if (!(kappa > 1.0 + 1e-12))
        throw DomainError("rho_from_kappa: kappa must exceed 1 + 1e-12, got " +
                          std::to_string(kappa));
    double sk = std::sqrt(kappa);
    return (sk + 1.0) / (sk - 1.0);
}

// Bernstein ellipse with foci +/-1 and radius rho, composed with the affine
// map h : [-1,1] -> [lambda_min, lambda_max].
struct BernsteinEllipse {
    double rho;
    double lambda_min;
    double lambda_max;

    BernsteinEllipse(double rho_, double lmin, double lmax)
        : rho(rho_), lambda_min(lmin), lambda_max(lmax) {
        if (!(rho > 1.0)) throw DomainError("BernsteinEllipse: rho must exceed 1");
        if (!(0.0 < lmin && lmin < lmax))
            throw DomainError("BernsteinEllipse: need 0 < lambda_min < lambda_max");
    }

    static BernsteinEllipse from_kappa(double kappa, double lambda_min_value = 1.0) {
        return BernsteinEllipse(rho_from_kappa(kappa), lambda_min_value, kappa * lambda_min_value);
    }

    double center() const { return 0.5 * (lambda_min + lambda_max); }
    double half_length() const { return 0.5 * (lambda_max - lambda_min); }
    // Semi-axes of the image ellipse.
    double semi_major() const { return half_length() * 0.5 * (rho + 1.0 / rho); }
    double semi_minor() const { return half_length() * 0.5 * (rho - 1.0 / rho); }

    // Boundary point h((w + 1/w)/2) for w = rho * e^{i phi}.
    std::complex<double> boundary_point(double phi) const {
        std::complex<double> w = std::polar(rho, phi);
        std::complex<double> t = 0.5 * (w + 1.0 / w);
        return std::complex<double>(center(), 0.0) + half_length() * t;
    }
};

struct MRhoResult {
    double sampled_max = 0.0;
    std::optional<double> analytic;  // closed-form boundary maximum when the catalog provides one

    double value() const { return analytic ? std::max(*analytic, sampled_max) : sampled_max; }
};

// Maximum of |f(h(.))| over the Bernstein ellipse boundary, by uniform
// phase sampling. Functions with a singularity or branch cut on (-inf, 0]
// require the image ellipse to stay right of zero.
inline MRhoResult m_rho(const MatrixFunction& f, const BernsteinEllipse& e,
                        std::size_t samples = 4096) {
    if (samples == 0) throw InvalidInput("m_rho: need at least one sample");
    const double leftmost = e.center() - e.semi_major();
    if (f.restricted_to_positive_axis() && leftmost <= 0.0)
        throw DomainError("m_rho: ellipse for " + f.name() +
                          " reaches the nonpositive axis (leftmost point " +
                          std::to_string(leftmost) + ")");

    MRhoResult out;
    const double two_pi = 2.0 * std::acos(-1.0);
    for (std::size_t j = 0; j < samples; ++j) {
        double phi = two_pi * static_cast<double>(j) / static_cast<double>(samples);
        double mag = std::abs(f.eval(e.boundary_point(phi)));
        if (!std::isfinite(mag))
            throw DomainError("m_rho: " + f.name() + " not finite on the ellipse boundary");
        out.sampled_max = std::max(out.sampled_max, mag);
    }

    // Monotone-modulus catalog: |g| peaks at a real endpoint of the ellipse.
    const double rightmost = e.center() + e.semi_major();
    switch (f.kind()) {
        case MatrixFunction::Kind::Exp:
            out.analytic = std::exp(rightmost);
            break;
        case MatrixFunction::Kind::ScaledExp:
            out.analytic = std::exp(f.param() * (f.param() >= 0.0 ? rightmost : leftmost));
            break;
        case MatrixFunction::Kind::Sqrt:
            out.analytic = std::sqrt(rightmost);
            break;
        case MatrixFunction::Kind::Inverse:
            out.analytic = 1.0 / leftmost;
            break;
        case MatrixFunction::Kind::Power:
            out.analytic = std::pow(f.param() >= 0.0 ? rightmost : leftmost, f.param());
            break;
        case MatrixFunction::Kind::Polynomial: {
            bool nonneg = true;
            for (double c : f.coefficients()) nonneg = nonneg && c >= 0.0;
            if (nonneg) out.analytic = f(rightmost);
            break;
        }
        case MatrixFunction::Kind::Log:
            break;  // no simple closed form; sampling only
    }
    return out;
}

// Minimum-iteration floors guaranteeing |I - I_m| <= epsilon, for the
// symmetric-node and asymmetric-node error bounds.
struct IterationFloor {
    double raw;       // right-hand side of the bound, as a real
    long long floor;  // ceil(raw): the admissible integer iteration count
};

namespace detail {
inline IterationFloor iteration_floor(double m_rho_value, double rho, double epsilon,
                                      bool asymmetric) {
    if (!(rho > 1.0)) throw DomainError("iteration floor: rho must exceed 1");
    if (!(epsilon > 0.0)) throw DomainError("iteration floor: epsilon must be positive");
    if (!(m_rho_value > 0.0)) throw DomainError("iteration floor: M_rho must be positive");
    const double denom_term =
        asymmetric ? std::log1p(-1.0 / rho) : std::log1p(-1.0 / (rho * rho));
    double raw = (std::log(4.0 * m_rho_value) - denom_term - std::log(epsilon)) /
                 (2.0 * std::log(rho));
    return {raw, static_cast<long long>(std::ceil(raw))};
}
}  // namespace detail

inline IterationFloor m_floor_sym(double m_rho_value, double rho, double epsilon) {
    return detail::iteration_floor(m_rho_value, rho, epsilon, false);
}

inline IterationFloor m_floor_asym(double m_rho_value, double rho, double epsilon) {
    return detail::iteration_floor(m_rho_value, rho, epsilon, true);
}

// The gap m* = log(1 + 1/rho) / (2 log rho) between the asymmetric and
// symmetric floors, with its condition-number sandwich
// (sqrt(k)-1)^2 / (8 sqrt(k)) <= m* <= (sqrt(k)-1)/4.
struct MStarGap {
    double kappa;
    double rho;
    double exact;
    double lower;
    double upper;

    double average() const { return 0.5 * (lower + upper); }
};

inline MStarGap m_star(double kappa) {
    double rho = rho_from_kappa(kappa);
    double sk = std::sqrt(kappa);
    MStarGap g;
    g.kappa = kappa;
    g.rho = rho;
    g.exact = std::log1p(1.0 / rho) / (2.0 * std::log(rho));
    g.lower = (sk - 1.0) * (sk - 1.0) / (8.0 * sk);
    g.upper = (sk - 1.0) / 4.0;
    return g;
}

inline std::vector<MStarGap> kappa_sweep(std::span<const double> kappas) {
    std::vector<MStarGap> rows;
    rows.reserve(kappas.size());
    for (double k : kappas) rows.push_back(m_star(k));
    return rows;
}

// kappa = 10, 50, 100, 500, ..., 5*10^4, 10^5
inline std::vector<double> paper_kappa_grid() {
    return {10.0, 50.0, 100.0, 500.0, 1000.0, 5000.0, 10000.0, 50000.0, 100000.0};
}

// Everything the bounds CLI reports for one (kappa, f, epsilon) row.
struct BoundsReport {
    double kappa = 0.0;
    double rho = 0.0;
    double m_rho_value = 0.0;
    double epsilon = 0.0;
    IterationFloor sym{0.0, 0};
    IterationFloor asym{0.0, 0};
    MStarGap gap{};
};

// The gap columns always use the canonical rho of Eq.-style kappa coupling;
// the floors honor an override. With the canonical rho the image ellipse's
// left vertex sits exactly at zero, so functions with a singularity on
// (-inf, 0] need a smaller rho to admit a finite M_rho.
inline BoundsReport bounds_report(double kappa, const MatrixFunction& f, double epsilon,
                                  double lambda_min_value = 1.0, std::size_t samples = 4096,
                                  std::optional<double> rho_override = std::nullopt) {
    BoundsReport rep;
    rep.kappa = kappa;
    rep.gap = m_star(kappa);
    rep.rho = rho_override.value_or(rep.gap.rho);
    rep.epsilon = epsilon;
    BernsteinEllipse e(rep.rho, lambda_min_value, kappa * lambda_min_value);
    rep.m_rho_value = m_rho(f, e, samples).value();
    rep.sym = m_floor_sym(rep.m_rho_value, rep.rho, epsilon);
    rep.asym = m_floor_asym(rep.m_rho_value, rep.rho, epsilon);
    return rep;
}

}  // namespace ritzsym
