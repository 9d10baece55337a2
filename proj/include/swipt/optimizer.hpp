#pragma once

// Minimum transmit power under an outage ceiling and a harvest floor for the
// non-cooperative protocol.
//
// With G0 = ln(Xi / (1 - C_I)), G1 = C_H / (d0^-alpha + Psi), G2 = Omega d0^alpha sigma^2
// and G3 = Omega d0^alpha sigma_C^2 the two constraints read
//   outage:  P_t >= (G2 + G3 / nu) / G0
//   harvest: P_t >= G1 / (1 - nu)
// Feasibility requires G0 > 0, i.e. the interference floor lies below C_I.

#include <algorithm>
#include <cmath>
#include <optional>

#include "swipt/analytic_nc.hpp"
#include "swipt/model.hpp"

namespace swipt {

struct BindingSet {
    bool outage = false;
    bool harvest = false;
};

struct OptimizationResult {
    bool feasible = false;
    std::optional<double> p_t_star;
    std::optional<double> nu_d_star;
    BindingSet binding;
    double achieved_outage = 0.0;
    double achieved_energy = 0.0;
    /// False when the optimum is an infimum approached as nu_d -> 0+ (only with
    /// sigma_C^2 = 0, where the outage constraint no longer depends on nu_d).
    bool attained = true;
    double floor = 0.0;
};

struct OptimizerConstants {
    double g0;
    double g1;
    double g2;
    double g3;
};

/// Boundary guard: C_I within this of the floor is treated as infeasible.
inline constexpr double kFeasibilityGuard = 1e-12;
/// Relative slack under which a constraint branch counts as binding.
inline constexpr double kBindingTolerance = 1e-9;

inline OptimizerConstants optimizer_constants(const SystemParams& params, const ConstraintSpec& spec,
                                              NearFieldMode mode = NearFieldMode::PaperMean) {
    const double x = xi(params.lambda(), params.d0(), params.r0(), params, mode);
    const double scale = params.omega() * std::pow(params.d0(), params.alpha());
    const double gain = params.zeta() * (std::pow(params.d0(), -params.alpha()) +
                                         mean_interference(params.lambda(), params));
    return {std::log(x / (1.0 - spec.c_i())), spec.c_h() / gain, scale * params.sigma2(),
            scale * params.sigma_c2()};
}

namespace detail {

inline OptimizationResult finish(const SystemParams& params, OptimizationResult r, NearFieldMode mode) {
    // With sigma_C^2 = 0 the outage is independent of nu_d; evaluate at nu_d = 1.
    const double nu_eval = (*r.nu_d_star > 0.0) ? *r.nu_d_star : 1.0;
    r.achieved_outage = outage_nc(params, nu_eval, *r.p_t_star, mode);
    r.achieved_energy = energy_nc(params, *r.nu_d_star, *r.p_t_star);
    return r;
}

inline bool infeasible(const SystemParams& params, const ConstraintSpec& spec, NearFieldMode mode,
                       OptimizationResult& r) {
    r.floor = outage_nc_floor(params, mode);
    return !(r.floor < spec.c_i() - kFeasibilityGuard);
}

}  // namespace detail

/// Minimum power for a fixed split ratio nu0.
inline OptimizationResult min_power_fixed_split(const SystemParams& params, const ConstraintSpec& spec,
                                                NearFieldMode mode = NearFieldMode::PaperMean) {
    if (spec.mode() != SplitMode::Fixed) {
        throw DomainError("min_power_fixed_split: constraint spec must be in fixed-split mode");
    }
    OptimizationResult r;
    if (detail::infeasible(params, spec, mode, r)) return r;

    const auto g = optimizer_constants(params, spec, mode);
    const double nu0 = spec.nu0();
    const double harvest_power = g.g1 / (1.0 - nu0);
    const double outage_power = (g.g2 + g.g3 / nu0) / g.g0;
    const double p = std::max(harvest_power, outage_power);

    r.feasible = true;
    r.p_t_star = p;
    r.nu_d_star = nu0;
    r.binding.harvest = harvest_power >= p * (1.0 - kBindingTolerance);
    r.binding.outage = outage_power >= p * (1.0 - kBindingTolerance);
    return detail::finish(params, r, mode);
}

/// Minimum power over both P_t and nu_d. Both constraints bind at the optimum,
/// so nu_d solves G2 nu^2 + (G0 G1 - G2 + G3) nu - G3 = 0 on (0, 1).
inline OptimizationResult min_power_joint(const SystemParams& params, const ConstraintSpec& spec,
                                          NearFieldMode mode = NearFieldMode::PaperMean) {
    if (spec.mode() != SplitMode::Joint) {
        throw DomainError("min_power_joint: constraint spec must be in joint mode");
    }
    OptimizationResult r;
    if (detail::infeasible(params, spec, mode, r)) return r;

    const auto g = optimizer_constants(params, spec, mode);
    r.feasible = true;

    if (g.g3 == 0.0) {
        // Outage constraint reduces to P_t >= G2 / G0 for every nu_d.
        const double outage_power = g.g2 / g.g0;
        if (outage_power > g.g1) {
            r.p_t_star = outage_power;
            r.nu_d_star = 1.0 - g.g1 / outage_power;
            r.binding = {true, true};
        } else {
            r.p_t_star = g.g1;
            r.nu_d_star = 0.0;
            r.attained = false;
            r.binding = {outage_power >= g.g1 * (1.0 - kBindingTolerance), true};
        }
        return detail::finish(params, r, mode);
    }

    // Pick the root form without cancellation; the rationalized one also covers G2 = 0.
    const double b = g.g0 * g.g1 - g.g2 + g.g3;
    const double disc = std::sqrt(b * b + 4.0 * g.g2 * g.g3);
    const double nu = b >= 0.0 ? 2.0 * g.g3 / (b + disc) : (disc - b) / (2.0 * g.g2);
    r.nu_d_star = nu;
    r.p_t_star = g.g1 / (1.0 - nu);
    r.binding = {true, true};
    return detail::finish(params, r, mode);
}

inline OptimizationResult optimize(const SystemParams& params, const ConstraintSpec& spec,
                                   NearFieldMode mode = NearFieldMode::PaperMean) {
    return spec.mode() == SplitMode::Fixed ? min_power_fixed_split(params, spec, mode)
                                           : min_power_joint(params, spec, mode);
}

}  // namespace swipt
