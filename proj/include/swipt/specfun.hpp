#pragma once

// Special functions and adaptive quadrature used by the closed forms.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "swipt/errors.hpp"

namespace swipt::specfun {

struct QuadratureSpec {
    double rel_tol = 1e-8;
    double abs_tol = 0.0;
    int max_subdivisions = 500;

    /// Defaults used for the nested two-dimensional rule.
    static QuadratureSpec sector() { return {1e-6, 0.0, 500}; }

    void validate() const {
        if (!(rel_tol > 0.0)) throw DomainError("QuadratureSpec: rel_tol must be > 0");
        if (!(abs_tol >= 0.0)) throw DomainError("QuadratureSpec: abs_tol must be >= 0");
        if (max_subdivisions < 1) throw DomainError("QuadratureSpec: max_subdivisions must be >= 1");
    }
};

struct QuadratureResult {
    double value = 0.0;
    double abs_error = 0.0;
    std::size_t evaluations = 0;
    bool converged = true;
};

namespace detail {

// Gauss-Kronrod 7/15 abscissae and weights on [-1, 1] (QUADPACK qk15).
inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights for the odd Kronrod nodes (1, 3, 5, 7).
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double a;
    double b;
    double value;
    double error;
};

template <class F>
Panel gauss_kronrod_15(F& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = f(center);
    double kronrod = fc * kKronrodWeights[7];
    double gauss = fc * kGaussWeights[3];
    for (std::size_t j = 0; j < 7; ++j) {
        const double dx = half * kKronrodNodes[j];
        const double sum = f(center - dx) + f(center + dx);
        kronrod += kKronrodWeights[j] * sum;
        if (j % 2 == 1) gauss += kGaussWeights[j / 2] * sum;
    }
    kronrod *= half;
    gauss *= half;
    return {a, b, kronrod, std::abs(kronrod - gauss)};
}

}  // namespace detail

/// Globally adaptive Gauss-Kronrod integration of f over [a, b]. Always returns;
/// `converged` is false when the subdivision budget ran out first.
template <class F>
QuadratureResult integrate_1d_adaptive(F&& f, double a, double b, const QuadratureSpec& spec = {}) {
    spec.validate();
    if (!(a <= b)) throw DomainError("integrate_1d: requires a <= b");
    if (a == b) return {};

    std::vector<detail::Panel> panels;
    panels.reserve(static_cast<std::size_t>(spec.max_subdivisions) + 1);
    panels.push_back(detail::gauss_kronrod_15(f, a, b));
    std::size_t evaluations = 15;

    auto totals = [&] {
        double value = 0.0, error = 0.0;
        for (const auto& p : panels) {
            value += p.value;
            error += p.error;
        }
        return std::pair{value, error};
    };

    constexpr double kRoundoff = 50.0 * std::numeric_limits<double>::epsilon();
    auto [value, error] = totals();
    int subdivisions = 0;
    while (true) {
        const double target = std::max(spec.abs_tol, spec.rel_tol * std::abs(value));
        if (error <= target || error <= kRoundoff * std::abs(value)) break;
        if (subdivisions >= spec.max_subdivisions) {
            return {value, error, evaluations, false};
        }
        auto worst = std::max_element(panels.begin(), panels.end(),
                                      [](const auto& l, const auto& r) { return l.error < r.error; });
        const double lo = worst->a, hi = worst->b, mid = 0.5 * (lo + hi);
        if (!(mid > lo && mid < hi)) {
            // panel can no longer be split in double precision
            return {value, error, evaluations, false};
        }
        *worst = detail::gauss_kronrod_15(f, lo, mid);
        panels.push_back(detail::gauss_kronrod_15(f, mid, hi));
        evaluations += 30;
        ++subdivisions;
        std::tie(value, error) = totals();
    }
    return {value, error, evaluations, true};
}

/// Like integrate_1d_adaptive but throws QuadratureError on non-convergence.
template <class F>
double integrate_1d(F&& f, double a, double b, const QuadratureSpec& spec = {}) {
    const auto r = integrate_1d_adaptive(f, a, b, spec);
    if (!r.converged) {
        throw QuadratureError("integrate_1d: tolerance not met within subdivision budget", r.value,
                              r.abs_error);
    }
    return r.value;
}

/// Integral of f(r, theta) * r over the sector r in [r_lo, r_hi], theta in
/// [-theta0, theta0]. Integrands must be even in theta: only the upper half is
/// integrated and the result doubled.
template <class F>
QuadratureResult integrate_sector_adaptive(F&& f, double r_lo, double r_hi, double theta0,
                                           const QuadratureSpec& spec = QuadratureSpec::sector()) {
    spec.validate();
    if (!(r_lo >= 0.0)) throw DomainError("integrate_sector: requires r_lo >= 0");
    if (!(r_hi >= r_lo)) throw DomainError("integrate_sector: requires r_hi >= r_lo");
    if (!(theta0 > 0.0 && theta0 <= std::numbers::pi)) {
        throw DomainError("integrate_sector: requires 0 < theta0 <= pi");
    }
    if (r_hi == r_lo) return {};

    // Inner tolerance is tighter so the outer rule sees a smooth function.
    QuadratureSpec inner = spec;
    inner.rel_tol = spec.rel_tol * 0.1;
    inner.abs_tol = spec.abs_tol * 0.1 / (r_hi - r_lo);

    std::size_t evaluations = 0;
    bool inner_ok = true;
    auto radial = [&](double theta) {
        auto g = [&](double r) { return f(r, theta) * r; };
        const auto res = integrate_1d_adaptive(g, r_lo, r_hi, inner);
        evaluations += res.evaluations;
        inner_ok = inner_ok && res.converged;
        return res.value;
    };
    QuadratureSpec outer = spec;
    outer.abs_tol = 0.5 * spec.abs_tol;
    auto res = integrate_1d_adaptive(radial, 0.0, theta0, outer);
    res.value *= 2.0;
    res.abs_error *= 2.0;
    res.evaluations = evaluations;
    res.converged = res.converged && inner_ok;
    return res;
}

template <class F>
double integrate_sector(F&& f, double r_lo, double r_hi, double theta0,
                        const QuadratureSpec& spec = QuadratureSpec::sector()) {
    const auto r = integrate_sector_adaptive(f, r_lo, r_hi, theta0, spec);
    if (!r.converged) {
        throw QuadratureError("integrate_sector: tolerance not met within subdivision budget",
                              r.value, r.abs_error);
    }
    return r.value;
}

/// Lower incomplete gamma function gamma(n, beta) = int_0^beta y^(n-1) e^(-y) dy.
/// Series below beta = n + 1, continued fraction for the complement above.
inline double lower_incomplete_gamma(double n, double beta) {
    if (!(n > 0.0)) throw DomainError("lower_incomplete_gamma: shape n must be > 0");
    if (!(beta >= 0.0)) throw DomainError("lower_incomplete_gamma: beta must be >= 0");
    if (beta == 0.0) return 0.0;
    if (std::isinf(beta)) return std::tgamma(n);

    constexpr double kEps = std::numeric_limits<double>::epsilon();
    constexpr int kMaxIter = 10000;
    const double prefactor = std::exp(-beta + n * std::log(beta));

    if (beta < n + 1.0) {
        double ap = n;
        double term = 1.0 / n;
        double sum = term;
        for (int i = 0; i < kMaxIter; ++i) {
            ap += 1.0;
            term *= beta / ap;
            sum += term;
            if (std::abs(term) < std::abs(sum) * kEps) return sum * prefactor;
        }
        throw DomainError("lower_incomplete_gamma: series failed to converge");
    }

    // Modified Lentz evaluation of the upper-gamma continued fraction.
    constexpr double kTiny = 1e-300;
    double b = beta + 1.0 - n;
    double c = 1.0 / kTiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= kMaxIter; ++i) {
        const double an = -i * (i - n);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < kTiny) d = kTiny;
        c = b + an / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < kEps) return std::tgamma(n) - prefactor * h;
    }
    throw DomainError("lower_incomplete_gamma: continued fraction failed to converge");
}

}  // namespace swipt::specfun
