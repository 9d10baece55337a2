#pragma once

// Figure and table presets for the `reproduce` subcommand. Each preset is a
// list of series sharing one sweep axis; every row carries the analytic curve
// and a Monte Carlo marker for the same operating point.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <fmt/format.h>

#include "cli/commands.hpp"
#include "cli/config.hpp"
#include "cli/output.hpp"
#include "json.hpp"

namespace swipt::cli {

inline const std::vector<std::string>& figure_ids() {
    static const std::vector<std::string> ids = {"fig1a", "fig1b", "fig2a", "fig2b", "fig3a",
                                                 "fig3b", "fig4",  "fig5",  "table1"};
    return ids;
}

/// Modeling choices recorded in every manifest.
inline std::vector<std::string> model_choices() {
    return {
        "laplace exponent: s^(2/alpha) with lower incomplete gamma of order 1 - 2/alpha",
        "near-field factor: exp(-s pi lambda r0^(2-alpha)) with unit coefficient (nearfield=paper)",
        "optimizer constants G2, G3 scale with d0^alpha",
        "joint split ratio: root of G2 nu^2 + (G0 G1 - G2 + G3) nu - G3 = 0",
        "relay-hop interferers: PPP of density lambda (1 - Pi_c) evaluated at the same P_t",
        "relay-hop floor uses the limiting empty-set probability",
        "cooperative energy uses the Jensen form of the mean relay attenuation",
    };
}

struct Series {
    std::vector<std::pair<std::string, Cell>> labels;
    ScenarioConfig config;
};

enum class FigureMetric { Outage, Energy };

struct Figure {
    std::string id;
    FigureMetric metric = FigureMetric::Outage;
    std::vector<Series> series;
};

namespace detail {

inline const std::vector<double>& figure_densities() {
    static const std::vector<double> v = {1e-5, 5e-5, 1e-4, 1e-3};
    return v;
}

inline SweepSpec sweep_of(const std::string& variable, double lo, double hi, double step, bool decibel) {
    SweepSpec s{variable, {}, {}};
    const auto n = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
    for (std::size_t i = 0; i < n; ++i) {
        const double v = lo + static_cast<double>(i) * step;
        s.display.push_back(v);
        s.linear.push_back(decibel ? db_to_linear(v) : v);
    }
    return s;
}

inline ScenarioConfig baseline(std::uint64_t reps, std::uint64_t seed, NearFieldMode nf, sim::Slot2Mode slot2) {
    ScenarioConfig c;
    c.nearfield = nf;
    c.sim = SimBlock{reps, seed, std::nullopt, slot2};
    return c;
}

inline Cell theta_label(double theta) {
    if (theta == std::numbers::pi) return Cell("pi");
    return Cell(fmt::format("pi/{:g}", std::round(std::numbers::pi / theta)));
}

}  // namespace detail

/// Builds the preset for `id` with the given simulation settings.
inline Figure make_figure(const std::string& id, std::uint64_t reps, std::uint64_t seed, NearFieldMode nf,
                          sim::Slot2Mode slot2) {
    using detail::baseline;
    using detail::sweep_of;
    Figure f{id, FigureMetric::Outage, {}};
    const auto power_axis = sweep_of("p_t_db", 20.0, 80.0, 5.0, true);
    const auto split_axis = sweep_of("nu_d", 0.05, 0.95, 0.05, false);

    if (id == "fig1a" || id == "fig1b" || id == "fig2a" || id == "fig2b" || id == "fig3a" || id == "fig3b") {
        const bool coop = id[3] == '3';
        const bool split = id[3] == '2';
        f.metric = id.back() == 'a' ? FigureMetric::Outage : FigureMetric::Energy;
        for (double lambda : detail::figure_densities()) {
            auto c = baseline(reps, seed, nf, slot2);
            c.system.lambda = lambda;
            if (split) c.p_t = db_to_linear(45.0);
            if (coop) c.coop = CoopParams::Fields{};
            c.sweep = split ? split_axis : power_axis;
            f.series.push_back({{{"lambda", lambda}}, c});
        }
        return f;
    }
    if (id == "fig4" || id == "fig5") {
        f.metric = id == "fig4" ? FigureMetric::Outage : FigureMetric::Energy;
        for (double lambda_r : {1e-1, 1e-2, 1e-3}) {
            for (double theta0 : {std::numbers::pi / 3.0, std::numbers::pi / 2.0, std::numbers::pi}) {
                auto c = baseline(reps, seed, nf, slot2);
                CoopParams::Fields cf;
                cf.lambda_r = lambda_r;
                cf.theta0 = theta0;
                c.coop = cf;
                c.sweep = power_axis;
                f.series.push_back({{{"lambda_r", lambda_r}, {"theta0", detail::theta_label(theta0)}}, c});
            }
        }
        return f;
    }
    if (id == "table1") {
        auto c = baseline(reps, seed, nf, slot2);
        c.sim.reset();
        c.constraints = ConstraintBlock{{{1e-3, 1e3}, {1e-2, 1e-1}}, true, true, 0.5};
        f.series.push_back({{}, c});
        return f;
    }
    throw ConfigError("unknown figure id '" + id + "'");
}

inline Table figure_table(const Figure& f, bool strict) {
    Table t;
    if (f.id == "table1") return optimize_table(f.series.front().config);

    const auto& first = f.series.front();
    for (const auto& [name, value] : first.labels) t.columns.push_back(name);
    t.columns.push_back(first.config.sweep->variable);
    const bool coop = first.config.coop.has_value();
    const std::string m = f.metric == FigureMetric::Outage ? "outage" : "energy";
    t.columns.push_back(m + "_analytic");
    if (f.metric == FigureMetric::Outage) {
        t.columns.push_back("outage_floor");
        if (coop) t.columns.push_back("outage_nc_analytic");
    } else {
        t.columns.push_back(coop ? "energy_nc_analytic" : "direct_fraction");
    }
    for (const char* s : {"_mc", "_ci_low", "_ci_high", "_z"}) t.columns.push_back(m + s);

    const Metric metric[] = {f.metric == FigureMetric::Outage ? Metric::outage() : Metric::energy()};
    for (std::size_t s = 0; s < f.series.size(); ++s) {
        const auto& series = f.series[s];
        const auto& c = series.config;
        const std::size_t n = point_count(c);
        std::vector<ResolvedPoint> points;
        for (std::size_t i = 0; i < n; ++i) points.push_back(resolve(c, i));
        std::vector<AnalyticValues> values(n);
        parallel_for(n, [&](std::size_t i) { values[i] = analytic_values(points[i], c.nearfield, strict); });
        for (std::size_t i = 0; i < n; ++i) {
            const auto& p = points[i];
            const auto& v = values[i];
            const auto group = static_cast<std::uint32_t>(s * 1000 + i);
            const sim::PreparedScenario prep(make_scenario(p, c));
            const auto e = estimate_many(prep, metric, c.sim->n_reps, c.sim->seed, group).front();
            std::vector<Cell> row;
            for (const auto& [name, value] : series.labels) row.push_back(value);
            row.emplace_back(p.axis);
            double analytic = 0.0;
            if (f.metric == FigureMetric::Outage) {
                analytic = coop ? v.pi_co : v.pi_nc;
                row.emplace_back(analytic);
                row.emplace_back(coop ? v.pi_co_floor : v.pi_nc_floor);
                if (coop) row.emplace_back(v.pi_nc);
            } else {
                analytic = coop ? v.e_co : v.e_nc;
                row.emplace_back(analytic);
                row.emplace_back(coop ? v.e_nc : direct_energy_fraction(p.system));
            }
            const double z = f.metric == FigureMetric::Outage ? proportion_z(e, analytic) : mean_z(e, analytic);
            row.insert(row.end(), {Cell(e.mean), Cell(e.ci_low), Cell(e.ci_high), Cell(z)});
            t.rows.push_back(std::move(row));
        }
    }
    return t;
}

inline nlohmann::ordered_json canonical_json(const ScenarioConfig& c) {
    nlohmann::ordered_json j;
    std::istringstream lines(canonical_form(c));
    std::string line;
    while (std::getline(lines, line)) {
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            j["flags"].push_back(line);
            continue;
        }
        const std::string key = line.substr(0, eq);
        const std::string value = line.substr(eq + 1);
        auto& slot = j[key];
        if (slot.is_null()) {
            slot = value;
        } else {
            if (!slot.is_array()) slot = nlohmann::ordered_json::array({slot});
            slot.push_back(value);
        }
    }
    return j;
}

/// Writes <out>/<id>.csv and <out>/<id>.manifest.json.
inline void reproduce_figure(const std::string& id, const std::string& out_dir, std::uint64_t reps,
                             std::uint64_t seed, NearFieldMode nf, sim::Slot2Mode slot2, bool strict) {
    const Figure f = make_figure(id, reps, seed, nf, slot2);
    const Table t = figure_table(f, strict);

    std::string all_forms;
    for (const auto& s : f.series) all_forms += canonical_form(s.config);
    const std::string hash = fmt::format("{:016x}", fnv1a(all_forms));
    const bool has_sim = f.id != "table1";

    RunHeader h{"reproduce " + id, hash, has_sim ? seed : 0, {}};
    h.extra.emplace_back("nearfield", to_string(nf));
    if (has_sim) {
        h.extra.emplace_back("slot2_mode", to_string(slot2));
        h.extra.emplace_back("n_reps", std::to_string(reps));
    }
    const std::filesystem::path dir(out_dir);
    const auto csv = dir / (id + ".csv");
    emit(csv.string(), "csv", h, t);

    nlohmann::ordered_json m;
    m["figure"] = id;
    m["version"] = kVersion;
    m["config_hash"] = hash;
    m["seed"] = has_sim ? seed : 0;
    m["n_reps"] = has_sim ? reps : 0;
    m["nearfield"] = to_string(nf);
    m["slot2_mode"] = to_string(slot2);
    m["model_choices"] = model_choices();
    m["outputs"] = {csv.filename().string()};
    auto& series = m["series"] = nlohmann::ordered_json::array();
    for (std::size_t s = 0; s < f.series.size(); ++s) {
        nlohmann::ordered_json entry;
        for (const auto& [name, value] : f.series[s].labels) {
            entry["labels"][name] = value.numeric ? nlohmann::ordered_json(value.number)
                                                  : nlohmann::ordered_json(value.text);
        }
        entry["stream_group_base"] = s * 1000;
        entry["parameters"] = canonical_json(f.series[s].config);
        series.push_back(std::move(entry));
    }
    std::ofstream mf(dir / (id + ".manifest.json"), std::ios::binary);
    if (!mf) throw std::runtime_error("cannot write manifest in " + out_dir);
    mf << m.dump(2) << '\n';

    if (id == "fig4") {
        // Report which (lambda_r, theta0) series has the lowest interference-limited floor.
        double best = std::numeric_limits<double>::infinity();
        std::string best_label;
        for (const auto& row : t.rows) {
            if (row[4].number < best) {
                best = row[4].number;
                best_label = fmt::format("lambda_r={} theta0={}", render(row[0]), render(row[1]));
            }
        }
        std::cerr << fmt::format("fig4: lowest outage floor {:.4g} at {}\n", best, best_label);
    }
    if (id == "fig1b") {
        for (const auto& row : t.rows) {
            if (row[0].number == 1e-3) {
                std::cerr << fmt::format("fig1b: direct-link share at lambda=1e-3 is {:.3f}%\n", 100.0 * row[3].number);
                break;
            }
        }
    }
}

}  // namespace swipt::cli
