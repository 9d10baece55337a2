#pragma once

// Oracle-vs-analytic suite behind the `validate` subcommand.

#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include <boost/math/distributions/chi_squared.hpp>
#include <fmt/format.h>

#include "cli/commands.hpp"
#include "cli/output.hpp"
#include "swipt/swipt.hpp"

namespace swipt::cli {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

namespace detail {

inline sim::SimScenario nc_scenario(const SystemParams& sys, double nu_d, double p_t,
                                    NearFieldMode nf = NearFieldMode::PaperMean) {
    sim::SimScenario sc;
    sc.system = sys;
    sc.nu_d = nu_d;
    sc.p_t = p_t;
    sc.nearfield = nf;
    return sc;
}

inline sim::SimScenario coop_scenario(const CoopParams& coop, double p) {
    sim::SimScenario sc;
    sc.system = coop.base();
    sc.coop = coop;
    sc.p_t = p;
    sc.p_r = p;
    sc.nu_d = 0.3;
    sc.nu_r = coop.nu_r();
    return sc;
}

inline CheckResult z_check(const std::string& name, double z, double limit = 3.0) {
    return {name, std::abs(z) <= limit, fmt::format("z = {:+.3f}", z)};
}

}  // namespace detail

/// Runs every check with `reps` replications per Monte Carlo estimate.
inline std::vector<CheckResult> run_validation(std::uint64_t reps, std::uint64_t seed) {
    using detail::coop_scenario;
    using detail::nc_scenario;
    std::vector<CheckResult> out;
    std::uint32_t group = 0;
    auto mc = [&](const Metric& m, const sim::SimScenario& sc) { return estimate(m, sc, reps, seed, group++); };

    const SystemParams base;
    {
        SystemParams::Fields f;
        f.lambda = 0.0;
        f.sigmaC2 = 0.0;
        const SystemParams sys(f);
        const double p = 1e5;
        const double expected = 1.0 - std::exp(-sys.omega() * std::pow(sys.d0(), sys.alpha()) * sys.sigma2() / p);
        out.push_back(detail::z_check("noise-only outage (Rayleigh closed form)",
                                      proportion_z(mc(Metric::outage(), nc_scenario(sys, 0.3, p)), expected)));
    }
    for (double lambda : {1e-5, 1e-3}) {
        for (auto nf : {NearFieldMode::PaperMean, NearFieldMode::ExactPoisson}) {
            const auto sys = base.with_lambda(lambda);
            const double s = 160.0;
            const auto e = mc(Metric::laplace(s), nc_scenario(sys, 0.3, 1e6, nf));
            out.push_back(detail::z_check(
                fmt::format("laplace transform s={} lambda={:g} nearfield={}", s, lambda, to_string(nf)),
                mean_z(e, laplace_interference(s, lambda, sys, nf))));
        }
    }
    {
        const auto sys = base.with_lambda(1e-3);
        const auto e = mc(Metric::mean_interference(), nc_scenario(sys, 0.3, 1e6, NearFieldMode::ExactPoisson));
        const double psi = mean_interference(1e-3, sys);
        out.push_back(detail::z_check("mean interference vs Campbell (lambda=1e-3)", mean_z(e, psi)));
    }
    for (double lambda : {1e-5, 1e-4, 1e-3}) {
        const auto sys = base.with_lambda(lambda);
        const double p = db_to_linear(40.0);
        out.push_back(detail::z_check(fmt::format("direct outage at 40 dB (lambda={:g})", lambda),
                                      proportion_z(mc(Metric::outage(), nc_scenario(sys, 0.3, p)),
                                                   outage_nc(sys, 0.3, p))));
        const double q = db_to_linear(45.0);
        out.push_back(detail::z_check(fmt::format("harvested energy at 45 dB (lambda={:g})", lambda),
                                      mean_z(mc(Metric::energy(), nc_scenario(sys, 0.3, q)), energy_nc(sys, 0.3, q))));
    }
    {
        const CoopParams coop(base, {});
        const double p = 1e6;
        const double r = 6.0;
        const auto e = mc(Metric::relay_decode(r), coop_scenario(coop, p));
        out.push_back(detail::z_check("relay decode intensity at r=6",
                                      proportion_z(e, relay_decode_intensity(r, coop, p) / coop.lambda_r())));
        const double empty = pi_c(coop, p);
        out.push_back(detail::z_check("empty relay set probability",
                                      proportion_z(mc(Metric::empty_relay_set(), coop_scenario(coop, p)), empty)));
        out.push_back(detail::z_check(
            "relay link outage (paper-model second slot)",
            proportion_z(mc(Metric::relay_link_outage(), coop_scenario(coop, p)), pi_r(coop, 0.3, p, empty))));
        out.push_back(detail::z_check("cooperative outage at 60 dB",
                                      proportion_z(mc(Metric::outage(), coop_scenario(coop, p)),
                                                   outage_co(coop, 0.3, 0.3, p, p))));
    }
    {
        // Poisson counts of a disk window against their law.
        const double density = 1e-5;
        const double radius = 2000.0;
        const double mean = density * std::numbers::pi * radius * radius;
        const std::uint32_t draws = 10000;
        std::vector<std::uint64_t> counts(draws);
        for (std::uint32_t i = 0; i < draws; ++i) {
            rng::Stream st(seed, i, 0xC0FFEEu, 0);
            counts[i] = sim::sample_ppp(density, {20.0, 0.0}, radius, st).size();
        }
        const auto [stat, dof] = poisson_chi_square(counts, mean);
        const double p_value = boost::math::cdf(boost::math::complement(boost::math::chi_squared(dof), stat));
        out.push_back({"Poisson count goodness of fit", p_value > 0.01,
                       fmt::format("chi2 = {:.2f}, dof = {}, p = {:.3f}", stat, dof, p_value)});
    }
    {
        bool ok = true;
        int n = 0;
        for (double eta : {5.0, 8.0, 12.0}) {
            for (double theta : {0.2, std::numbers::pi / 3.0, std::numbers::pi}) {
                for (double alpha : {3.0, 4.0}) {
                    SystemParams::Fields f;
                    f.alpha = alpha;
                    CoopParams::Fields cf;
                    cf.eta = eta;
                    cf.theta0 = theta;
                    const CoopParams coop(SystemParams(f), cf);
                    ok = ok && z_mean_attenuation(coop, ZMethod::ExactQuadrature) >=
                                   z_mean_attenuation(coop, ZMethod::Jensen);
                    ++n;
                }
            }
        }
        out.push_back({"Jensen direction of the relay attenuation", ok, fmt::format("{} grid points", n)});
    }
    {
        bool ok = true;
        int n = 0;
        for (double lambda : {1e-5, 1e-3}) {
            for (double lambda_r : {1e-3, 1e-1}) {
                for (double p_db : {20.0, 50.0, 80.0}) {
                    CoopParams::Fields cf;
                    cf.lambda_r = lambda_r;
                    const CoopParams coop(base.with_lambda(lambda), cf);
                    const double p = db_to_linear(p_db);
                    ok = ok && outage_co(coop, 0.3, 0.3, p, p) <= outage_nc(coop.base(), 0.3, p);
                    ++n;
                }
            }
        }
        out.push_back({"cooperative outage never exceeds direct outage", ok, fmt::format("{} grid points", n)});
    }
    {
        bool ok = true;
        for (auto [c_i, c_h] : {std::pair{1e-3, 1e3}, std::pair{1e-2, 1e-1}}) {
            const auto fixed = optimize(base, ConstraintSpec::fixed(c_i, c_h, 0.5));
            const auto joint = optimize(base, ConstraintSpec::joint(c_i, c_h));
            ok = ok && fixed.feasible && joint.feasible && *joint.p_t_star <= *fixed.p_t_star;
        }
        out.push_back({"joint optimum never needs more power than fixed split", ok, "reference constraint sets"});
    }
    return out;
}

inline int cmd_validate(const Options& o) {
    const std::uint64_t reps = o.reps.value_or(100000);
    const std::uint64_t seed = o.seed.value_or(1);
    if (reps < kMinReplications) throw ConfigError("--reps must be >= 100");
    const auto results = run_validation(reps, seed);
    Table t;
    t.columns = {"check", "result", "detail"};
    bool all = true;
    for (const auto& r : results) {
        t.rows.push_back({r.name, r.pass ? "PASS" : "FAIL", r.detail});
        all = all && r.pass;
    }
    std::size_t width = 0;
    for (const auto& r : results) width = std::max(width, r.name.size());
    for (const auto& r : results) {
        std::cout << fmt::format("{:<{}}  {}  {}\n", r.name, width, r.pass ? "PASS" : "FAIL", r.detail);
    }
    if (!o.out.empty()) {
        RunHeader h{"validate", "-", seed, {{"n_reps", std::to_string(reps)}}};
        emit(o.out, "csv", h, t);
    }
    return all ? 0 : 1;
}

}  // namespace swipt::cli
