#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "cli/config.hpp"
#include "cli/output.hpp"
#include "swipt/swipt.hpp"

namespace swipt::cli {

/// Quadrature failure surfaced under --strict; maps to exit code 3.
class NumericalFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> reps;
    std::optional<std::string> slot2;
    std::optional<std::string> nearfield;
    bool strict = false;
    std::string out;
};

inline ScenarioConfig load_config(const Options& o) {
    ScenarioConfig c;
    if (!o.config_path.empty()) {
        std::ifstream in(o.config_path);
        if (!in) throw ConfigError("cannot open config '" + o.config_path + "'");
        c = parse_config(in);
    }
    if (o.nearfield) c.nearfield = parse_nearfield(*o.nearfield);
    if (o.seed || o.reps || o.slot2) {
        if (!c.sim) c.sim = SimBlock{};
        if (o.seed) c.sim->seed = *o.seed;
        if (o.reps) {
            if (*o.reps < kMinReplications) throw ConfigError("--reps must be >= 100");
            c.sim->n_reps = *o.reps;
        }
        if (o.slot2) c.sim->slot2 = parse_slot2(*o.slot2);
    }
    if (!o.out.empty()) c.out_path = o.out;
    return c;
}

inline std::string axis_name(const ScenarioConfig& c) { return c.sweep ? c.sweep->variable : "point"; }

struct AnalyticValues {
    double pi_nc = NAN;
    double pi_nc_floor = NAN;
    double e_nc = NAN;
    double pi_c = NAN;
    double pi_r = NAN;
    double pi_co = NAN;
    double pi_co_floor = NAN;
    double e_co = NAN;
    double z_exact = NAN;
    double z_jensen = NAN;
    bool ok = true;
};

/// Closed-form metrics of one point. Quadrature failures leave NaNs and clear
/// `ok`, or throw NumericalFailure when `strict`.
inline AnalyticValues analytic_values(const ResolvedPoint& p, NearFieldMode mode, bool strict) {
    AnalyticValues v;
    const double nu = p.nu_d > 0.0 ? p.nu_d : 1.0;
    v.pi_nc = outage_nc(p.system, nu, p.p_t, mode);
    v.pi_nc_floor = outage_nc_floor(p.system, mode);
    v.e_nc = energy_nc(p.system, p.nu_d, p.p_t);
    if (!p.coop) return v;
    try {
        const auto r = evaluate_coop(*p.coop, nu, p.nu_r, p.p_t, p.p_r, mode);
        v.pi_c = r.pi_c;
        v.pi_r = r.pi_r;
        v.pi_co = r.outage;
        v.pi_co_floor = r.floor;
        v.e_co = r.energy;
        v.z_exact = r.z_exact;
        v.z_jensen = r.z_jensen;
    } catch (const QuadratureError& e) {
        if (strict) throw NumericalFailure(e.what());
        v.ok = false;
    }
    return v;
}

inline sim::SimScenario make_scenario(const ResolvedPoint& p, const ScenarioConfig& c) {
    sim::SimScenario sc;
    sc.system = p.system;
    sc.coop = p.coop;
    sc.nu_d = p.nu_d;
    sc.p_t = p.p_t;
    sc.nu_r = p.nu_r;
    sc.p_r = p.p_r;
    sc.nearfield = c.nearfield;
    if (c.sim) {
        sc.slot2 = c.sim->slot2;
        sc.window = c.sim->window;
    }
    return sc;
}

/// Score statistic of a proportion estimate against a hypothesized probability.
inline double proportion_z(const MetricEstimate& e, double p) {
    const double n = static_cast<double>(e.replications);
    const double se = std::sqrt(p * (1.0 - p) / n);
    if (se == 0.0) return e.mean == p ? 0.0 : INFINITY;
    return (e.mean - p) / se;
}

inline double mean_z(const MetricEstimate& e, double mu) {
    if (e.std_error == 0.0) return e.mean == mu ? 0.0 : INFINITY;
    return (e.mean - mu) / e.std_error;
}

inline RunHeader make_header(const std::string& command, const ScenarioConfig& c) {
    RunHeader h{command, config_hash(c), c.sim ? c.sim->seed : 0, {}};
    h.extra.emplace_back("nearfield", to_string(c.nearfield));
    if (c.sim) h.extra.emplace_back("slot2_mode", to_string(c.sim->slot2));
    return h;
}

inline Table analytic_table(const ScenarioConfig& c, bool strict) {
    Table t;
    t.columns = {axis_name(c), "pi_nc", "pi_nc_floor", "e_nc", "pi_c", "pi_r", "pi_co",
                 "pi_co_floor", "e_co", "z_exact", "z_jensen", "status"};
    const std::size_t n = point_count(c);
    std::vector<AnalyticValues> values(n);
    std::vector<ResolvedPoint> points;
    for (std::size_t i = 0; i < n; ++i) points.push_back(resolve(c, i));
    parallel_for(n, [&](std::size_t i) { values[i] = analytic_values(points[i], c.nearfield, strict); });
    auto opt = [](bool coop, double v) { return coop ? Cell(v) : Cell(""); };
    for (std::size_t i = 0; i < n; ++i) {
        const auto& v = values[i];
        const bool coop = points[i].coop.has_value() && v.ok;
        t.rows.push_back({c.sweep ? Cell(points[i].axis) : Cell(static_cast<double>(i)), v.pi_nc,
                          v.pi_nc_floor, v.e_nc, opt(coop, v.pi_c), opt(coop, v.pi_r), opt(coop, v.pi_co),
                          opt(coop, v.pi_co_floor), opt(coop, v.e_co), opt(coop, v.z_exact),
                          opt(coop, v.z_jensen), v.ok ? "ok" : "quadrature_failed"});
    }
    return t;
}

inline Table simulate_table(const ScenarioConfig& c, bool strict) {
    if (!c.sim) throw ConfigError("simulate needs a [sim] section or --reps");
    Table t;
    t.columns = {axis_name(c),    "outage_mean",    "outage_ci_low",    "outage_ci_high", "energy_mean",
                 "energy_ci_low", "energy_ci_high", "energy_std_error", "n_reps",         "seed",
                 "outage_analytic", "energy_analytic", "z_outage",      "z_energy"};
    const Metric metrics[] = {Metric::outage(), Metric::energy()};
    for (std::size_t i = 0; i < point_count(c); ++i) {
        const auto p = resolve(c, i);
        const sim::PreparedScenario prep(make_scenario(p, c));
        const auto est = estimate_many(prep, metrics, c.sim->n_reps, c.sim->seed, static_cast<std::uint32_t>(i));
        const auto a = analytic_values(p, c.nearfield, strict);
        const double out_a = p.coop ? a.pi_co : a.pi_nc;
        const double en_a = p.coop ? a.e_co : a.e_nc;
        t.rows.push_back({c.sweep ? Cell(p.axis) : Cell(static_cast<double>(i)), est[0].mean, est[0].ci_low,
                          est[0].ci_high, est[1].mean, est[1].ci_low, est[1].ci_high, est[1].std_error,
                          static_cast<double>(est[0].replications), fmt::format("{}", c.sim->seed), out_a, en_a,
                          proportion_z(est[0], out_a), mean_z(est[1], en_a)});
    }
    return t;
}

inline std::string binding_text(const BindingSet& b) {
    if (b.outage && b.harvest) return "outage+harvest";
    if (b.outage) return "outage";
    if (b.harvest) return "harvest";
    return "none";
}

inline Table optimize_table(const ScenarioConfig& c) {
    if (!c.constraints) throw ConfigError("optimize needs a [constraints] section");
    if (c.coop) throw ConfigError("optimize applies to the non-cooperative protocol; remove [coop]");
    Table t;
    t.columns = {axis_name(c),      "mode",     "c_i",     "c_h",   "feasible", "p_t_star", "nu_d_star",
                 "achieved_outage", "achieved_energy", "binding", "attained", "floor"};
    const auto& b = *c.constraints;
    for (std::size_t i = 0; i < point_count(c); ++i) {
        const auto p = resolve(c, i);
        for (const auto& [c_i, c_h] : b.targets) {
            std::vector<std::pair<std::string, ConstraintSpec>> specs;
            if (b.fixed) specs.emplace_back("fixed", ConstraintSpec::fixed(c_i, c_h, b.nu0));
            if (b.joint) specs.emplace_back("joint", ConstraintSpec::joint(c_i, c_h));
            for (const auto& [name, spec] : specs) {
                const auto r = optimize(p.system, spec, c.nearfield);
                const Cell axis = c.sweep ? Cell(p.axis) : Cell(static_cast<double>(i));
                if (!r.feasible) {
                    t.rows.push_back({axis, name, c_i, c_h, "false", "", "", "", "", "", "", r.floor});
                    continue;
                }
                t.rows.push_back({axis, name, c_i, c_h, "true", *r.p_t_star, *r.nu_d_star, r.achieved_outage,
                                  r.achieved_energy, binding_text(r.binding), r.attained ? "true" : "false",
                                  r.floor});
            }
        }
    }
    return t;
}

inline int cmd_analytic(const Options& o) {
    const auto c = load_config(o);
    emit(c.out_path, c.format, make_header("analytic", c), analytic_table(c, o.strict));
    return 0;
}

inline int cmd_simulate(const Options& o) {
    const auto c = load_config(o);
    const auto t = simulate_table(c, o.strict);
    emit(c.out_path, c.format, make_header("simulate", c), t);
    double worst = 0.0;
    for (const auto& row : t.rows) {
        worst = std::max({worst, std::abs(row[12].number), std::abs(row[13].number)});
    }
    std::cerr << fmt::format("simulate: {} point(s), max |z| = {:.3f}\n", t.rows.size(), worst);
    return 0;
}

inline int cmd_optimize(const Options& o) {
    const auto c = load_config(o);
    emit(c.out_path, c.format, make_header("optimize", c), optimize_table(c));
    return 0;
}

}  // namespace swipt::cli
