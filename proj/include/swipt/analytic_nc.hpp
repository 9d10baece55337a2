#pragma once

// Closed-form metrics of the non-cooperative protocol.

#include <cmath>
#include <limits>
#include <numbers>

#include "swipt/errors.hpp"
#include "swipt/model.hpp"
#include "swipt/specfun.hpp"

namespace swipt {

/// How interferers inside the r0 disk around the receiver enter the Laplace
/// transform. PaperMean raises exp(-s r0^-alpha) to the mean count of that disk;
/// ExactPoisson uses the Poisson generating functional of the count.
enum class NearFieldMode { PaperMean, ExactPoisson };

struct AnalyticReportNC {
    double outage = 0.0;
    double floor = 0.0;
    double energy = 0.0;
    double laplace_at_threshold = 1.0;
};

namespace detail {

// Laplace transform of the normalized interference of a PPP with the given
// density, seen from a receiver with path-loss floor z.
inline double laplace_kernel(double s, double density, double z, double alpha, NearFieldMode mode) {
    if (!(s >= 0.0)) throw DomainError("laplace_interference: s must be >= 0");
    if (!(density >= 0.0)) throw DomainError("laplace_interference: density must be >= 0");
    if (s == 0.0 || density == 0.0) return 1.0;

    const double near_arg = s * std::pow(z, -alpha);  // s z^-alpha
    const double far = std::expm1(-near_arg) * z * z +
                       std::pow(s, 2.0 / alpha) *
                           specfun::lower_incomplete_gamma(1.0 - 2.0 / alpha, near_arg);
    const double pi_density = std::numbers::pi * density;
    double exponent = -pi_density * far;
    if (mode == NearFieldMode::PaperMean) {
        exponent -= pi_density * z * z * near_arg;
    } else {
        exponent += pi_density * z * z * std::expm1(-near_arg);
    }
    return std::exp(exponent);
}

}  // namespace detail

/// E[exp(-s I)] for the interference I of a PPP of the given density at the
/// typical receiver.
inline double laplace_interference(double s, double density, const SystemParams& params,
                                   NearFieldMode mode = NearFieldMode::PaperMean) {
    return detail::laplace_kernel(s, density, params.r0(), params.alpha(), mode);
}

/// Interference factor of the success probability for a link of length y and a
/// path-loss floor z: the Laplace transform evaluated at s = omega y^alpha.
inline double xi(double density, double y, double z, const SystemParams& params,
                 NearFieldMode mode = NearFieldMode::PaperMean) {
    if (!(y > 0.0)) throw DomainError("xi: y must be > 0");
    if (!(z >= 1.0)) throw DomainError("xi: z must be >= 1");
    const double s = params.omega() * std::pow(y, params.alpha());
    return detail::laplace_kernel(s, density, z, params.alpha(), mode);
}

/// Mean normalized interference, pi x r0^(2-alpha) alpha / (alpha - 2).
inline double mean_interference(double density, const SystemParams& params) {
    if (!(density >= 0.0)) throw DomainError("mean_interference: density must be >= 0");
    const double a = params.alpha();
    return std::numbers::pi * density * std::pow(params.r0(), 2.0 - a) * a / (a - 2.0);
}

/// Outage probability of the direct link with split ratio nu_d and power p_t.
/// p_t = +inf yields the interference-limited floor.
inline double outage_nc(const SystemParams& params, double nu_d, double p_t,
                        NearFieldMode mode = NearFieldMode::PaperMean) {
    if (!(p_t > 0.0)) throw DomainError("outage_nc: p_t must be > 0");
    if (!(nu_d > 0.0 && nu_d <= 1.0)) throw DomainError("outage_nc: nu_d must be in (0, 1]");
    const double scale = params.omega() * std::pow(params.d0(), params.alpha());
    double noise = scale * params.sigma2() / p_t;
    if (params.sigma_c2() > 0.0) noise += scale * params.sigma_c2() / (nu_d * p_t);
    return 1.0 - std::exp(-noise) * xi(params.lambda(), params.d0(), params.r0(), params, mode);
}

inline double outage_nc_floor(const SystemParams& params,
                              NearFieldMode mode = NearFieldMode::PaperMean) {
    return 1.0 - xi(params.lambda(), params.d0(), params.r0(), params, mode);
}

/// Average harvested energy (1 - nu_d) P_t [d0^-alpha + Psi(lambda)], scaled by zeta.
inline double energy_nc(const SystemParams& params, double nu_d, double p_t) {
    if (!(p_t >= 0.0)) throw DomainError("energy_nc: p_t must be >= 0");
    if (!(nu_d >= 0.0 && nu_d <= 1.0)) throw DomainError("energy_nc: nu_d must be in [0, 1]");
    return params.zeta() * (1.0 - nu_d) * p_t *
           (std::pow(params.d0(), -params.alpha()) + mean_interference(params.lambda(), params));
}

/// Share of the harvested energy contributed by the direct link.
inline double direct_energy_fraction(const SystemParams& params) {
    const double direct = std::pow(params.d0(), -params.alpha());
    return direct / (direct + mean_interference(params.lambda(), params));
}

inline AnalyticReportNC evaluate_nc(const SystemParams& params, double nu_d, double p_t,
                                    NearFieldMode mode = NearFieldMode::PaperMean) {
    AnalyticReportNC r;
    r.outage = outage_nc(params, nu_d, p_t, mode);
    r.floor = outage_nc_floor(params, mode);
    r.energy = energy_nc(params, nu_d, p_t);
    r.laplace_at_threshold = xi(params.lambda(), params.d0(), params.r0(), params, mode);
    return r;
}

}  // namespace swipt
