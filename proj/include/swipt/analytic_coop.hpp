#pragma once

// Quadrature-backed metrics of the cooperative protocol: empty relay set,
// relay-hop outage, selection-combining outage and two-slot harvested energy.
//
// Geometry: the selection sector of a transmitter has radius eta and half-angle
// theta0 around the direction of its receiver. A relay at polar position (r, theta)
// relative to the transmitter is at distance c = sqrt(r^2 + d0^2 - 2 r d0 cos theta)
// from the receiver.

#include <algorithm>
#include <cmath>
#include <limits>

#include "swipt/analytic_nc.hpp"
#include "swipt/errors.hpp"
#include "swipt/model.hpp"
#include "swipt/specfun.hpp"

namespace swipt {

struct SectorGeometry {
    double eta;
    double theta0;
    double theta_max;
};

enum class ZMethod { ExactQuadrature, Jensen };

struct AnalyticReportCoop {
    double pi_c = 1.0;
    double pi_r = 0.0;
    double outage = 0.0;
    double floor = 0.0;
    double energy = 0.0;
    double z_exact = 0.0;
    double z_jensen = 0.0;
};

inline constexpr double kInfinitePower = std::numeric_limits<double>::infinity();

/// Largest sector half-angle keeping every relay closer to the receiver than d0.
inline double theta_max(double eta, double d0) {
    if (!(eta > 0.0)) throw DomainError("theta_max: eta must be > 0");
    if (!(d0 > 0.0)) throw DomainError("theta_max: d0 must be > 0");
    if (eta > 2.0 * d0) throw DomainError("theta_max: undefined for eta > 2 d0");
    return std::acos(eta / (2.0 * d0));
}

inline SectorGeometry sector_geometry(const CoopParams& coop) {
    const double d0 = coop.base().d0();
    const double bound = coop.eta() <= 2.0 * d0 ? theta_max(coop.eta(), d0)
                                                : std::numeric_limits<double>::quiet_NaN();
    return {coop.eta(), coop.theta0(), bound};
}

inline double relay_receiver_distance(double r, double theta, double d0) {
    return std::sqrt(std::max(0.0, r * r + d0 * d0 - 2.0 * r * d0 * std::cos(theta)));
}

/// Density of relays at distance r from the transmitter that decode the first
/// slot. Relays run no harvester, so only sigma^2 enters. p_t = +inf drops noise.
inline double relay_decode_intensity(double r, const CoopParams& coop, double p_t,
                                     NearFieldMode mode = NearFieldMode::PaperMean) {
    if (!(r >= 0.0)) throw DomainError("relay_decode_intensity: r must be >= 0");
    if (!(p_t > 0.0)) throw DomainError("relay_decode_intensity: p_t must be > 0");
    if (coop.lambda_r() == 0.0) return 0.0;
    const auto& sys = coop.base();
    const double dist = std::max(r, sys.r0());
    const double noise = sys.sigma2() * sys.omega() * std::pow(dist, sys.alpha()) / p_t;
    return coop.lambda_r() * std::exp(-noise) * xi(sys.lambda(), dist, sys.r0(), sys, mode);
}

/// Probability that no relay in the sector decodes the first slot.
inline double pi_c(const CoopParams& coop, double p_t, NearFieldMode mode = NearFieldMode::PaperMean,
                   const specfun::QuadratureSpec& quad = specfun::QuadratureSpec::sector()) {
    if (!(p_t > 0.0)) throw DomainError("pi_c: p_t must be > 0");
    if (coop.lambda_r() == 0.0) return 1.0;
    const double r0 = coop.base().r0();
    auto intensity = [&](double r, double) { return relay_decode_intensity(r, coop, p_t, mode); };
    const double annulus = specfun::integrate_sector(intensity, r0, coop.eta(), coop.theta0(), quad);
    // Relays inside r0 all see the path-loss floor; closed term over area theta0 r0^2.
    const double inner = coop.theta0() * r0 * r0 * relay_decode_intensity(r0, coop, p_t, mode);
    return std::exp(-(annulus + inner));
}

inline double pi_c_floor(const CoopParams& coop, NearFieldMode mode = NearFieldMode::PaperMean,
                         const specfun::QuadratureSpec& quad = specfun::QuadratureSpec::sector()) {
    return pi_c(coop, kInfinitePower, mode, quad);
}

/// Outage of the relay-to-receiver hop, averaged uniformly over the sector
/// annulus. Second-slot interferers are the selected relays of the other
/// transmitters, a PPP of density lambda (1 - empty_set_prob).
inline double pi_r(const CoopParams& coop, double nu_r, double p_r, double empty_set_prob,
                   NearFieldMode mode = NearFieldMode::PaperMean,
                   const specfun::QuadratureSpec& quad = specfun::QuadratureSpec::sector()) {
    if (!(p_r > 0.0)) throw DomainError("pi_r: p_r must be > 0");
    if (!(nu_r > 0.0 && nu_r <= 1.0)) throw DomainError("pi_r: nu_r must be in (0, 1]");
    if (!(empty_set_prob >= 0.0 && empty_set_prob <= 1.0)) {
        throw DomainError("pi_r: empty_set_prob must be in [0, 1]");
    }
    const auto& sys = coop.base();
    const double d0 = sys.d0();
    const double r0 = sys.r0();
    const double density = sys.lambda() * (1.0 - empty_set_prob);
    auto success = [&](double r, double theta) {
        const double c = std::max(relay_receiver_distance(r, theta, d0), r0);
        const double ca = sys.omega() * std::pow(c, sys.alpha());
        double noise = sys.sigma2() * ca / p_r;
        if (sys.sigma_c2() > 0.0) noise += sys.sigma_c2() * ca / (nu_r * p_r);
        return std::exp(-noise) * xi(density, c, r0, sys, mode);
    };
    const double mass = specfun::integrate_sector(success, r0, coop.eta(), coop.theta0(), quad);
    return std::clamp(1.0 - mass / coop.annulus_area(), 0.0, 1.0);
}

/// Mean relay-to-receiver attenuation E[c^-alpha] over the sector annulus.
/// Jensen gives the closed-form approximation, which bounds the exact value
/// from below.
inline double z_mean_attenuation(const CoopParams& coop, ZMethod method,
                                 const specfun::QuadratureSpec& quad = specfun::QuadratureSpec::sector()) {
    const auto& sys = coop.base();
    const double d0 = sys.d0();
    const double r0 = sys.r0();
    const double eta = coop.eta();
    const double th = coop.theta0();
    const double delta = sys.delta();
    if (method == ZMethod::Jensen) {
        const double mid = 0.5 * (r0 + eta);
        return std::pow(mid * mid + d0 * d0 - 2.0 * d0 * mid * std::sin(th) / th, -delta);
    }
    if (!(eta < d0)) throw DomainError("z_mean_attenuation: exact form requires eta < d0");
    auto attenuation = [&](double r, double theta) {
        return std::pow(r * r + d0 * d0 - 2.0 * r * d0 * std::cos(theta), -delta);
    };
    return specfun::integrate_sector(attenuation, r0, eta, th, quad) / coop.annulus_area();
}

/// End-to-end outage with selection combining of the direct and relayed copies.
inline double outage_co(const CoopParams& coop, double nu_d, double nu_r, double p_t, double p_r,
                        NearFieldMode mode = NearFieldMode::PaperMean,
                        const specfun::QuadratureSpec& quad = specfun::QuadratureSpec::sector()) {
    const double direct = outage_nc(coop.base(), nu_d, p_t, mode);
    const double empty = pi_c(coop, p_t, mode, quad);
    if (empty == 1.0) return direct;
    const double relay = pi_r(coop, nu_r, p_r, empty, mode, quad);
    return direct * (empty + (1.0 - empty) * relay);
}

/// Interference-limited floor as p_t, p_r -> inf. The relay hop uses the
/// limiting empty-set probability for its interferer density.
inline double outage_co_floor(const CoopParams& coop, NearFieldMode mode = NearFieldMode::PaperMean,
                              const specfun::QuadratureSpec& quad = specfun::QuadratureSpec::sector()) {
    const double direct = outage_nc_floor(coop.base(), mode);
    const double empty = pi_c_floor(coop, mode, quad);
    if (empty == 1.0) return direct;
    const double relay = pi_r(coop, 1.0, kInfinitePower, empty, mode, quad);
    return direct * (empty + (1.0 - empty) * relay);
}

/// Average energy harvested over both slots. Without a decoding relay the
/// receiver harvests the whole second slot; otherwise it splits with nu_r.
inline double energy_co(const CoopParams& coop, double nu_d, double nu_r, double p_t, double p_r,
                        NearFieldMode mode = NearFieldMode::PaperMean, ZMethod z = ZMethod::Jensen,
                        const specfun::QuadratureSpec& quad = specfun::QuadratureSpec::sector()) {
    if (!(p_r >= 0.0)) throw DomainError("energy_co: p_r must be >= 0");
    if (!(nu_r >= 0.0 && nu_r <= 1.0)) throw DomainError("energy_co: nu_r must be in [0, 1]");
    const auto& sys = coop.base();
    const double first = energy_nc(sys, nu_d, p_t);
    // energy_nc accepts p_t = 0; pi_c needs a positive power.
    const double empty = p_t > 0.0 ? pi_c(coop, p_t, mode, quad) : 1.0;
    const double psi2 = mean_interference(sys.lambda() * (1.0 - empty), sys);
    const double attenuation = empty < 1.0 ? z_mean_attenuation(coop, z, quad) : 0.0;
    const double second =
        empty * p_r * psi2 + (1.0 - empty) * (1.0 - nu_r) * p_r * (attenuation + psi2);
    return first + sys.zeta() * second;
}

inline AnalyticReportCoop evaluate_coop(const CoopParams& coop, double nu_d, double nu_r, double p_t,
                                        double p_r, NearFieldMode mode = NearFieldMode::PaperMean,
                                        const specfun::QuadratureSpec& quad =
                                            specfun::QuadratureSpec::sector()) {
    AnalyticReportCoop r;
    r.pi_c = pi_c(coop, p_t, mode, quad);
    r.pi_r = pi_r(coop, nu_r, p_r, r.pi_c, mode, quad);
    r.outage = outage_nc(coop.base(), nu_d, p_t, mode) * (r.pi_c + (1.0 - r.pi_c) * r.pi_r);
    r.floor = outage_co_floor(coop, mode, quad);
    r.energy = energy_co(coop, nu_d, nu_r, p_t, p_r, mode, ZMethod::Jensen, quad);
    r.z_jensen = z_mean_attenuation(coop, ZMethod::Jensen, quad);
    r.z_exact = coop.eta() < coop.base().d0() ? z_mean_attenuation(coop, ZMethod::ExactQuadrature, quad)
                                              : std::numeric_limits<double>::quiet_NaN();
    return r;
}

}  // namespace swipt
