#pragma once

// INI scenario configuration. All dB quantities are converted to linear
// values here, once, and nowhere else.

#include <array>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <functional>
#include <iterator>
#include <map>
#include <numbers>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/algorithm/string.hpp>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <fmt/format.h>

#include "swipt/swipt.hpp"

namespace swipt::cli {

/// Raised for malformed or out-of-range configuration; maps to exit code 2.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct SweepSpec {
    std::string variable;         ///< name as written, e.g. "p_t_db"
    std::vector<double> display;  ///< values in the units of `variable`
    std::vector<double> linear;   ///< values applied to the scenario
};

struct SimBlock {
    std::uint64_t n_reps = 100000;
    std::uint64_t seed = 1;
    std::optional<double> window;
    sim::Slot2Mode slot2 = sim::Slot2Mode::PaperModel;
};

struct ConstraintBlock {
    std::vector<std::pair<double, double>> targets;  ///< (C_I, C_H) pairs
    bool fixed = true;
    bool joint = true;
    double nu0 = 0.5;
};

struct ScenarioConfig {
    SystemParams::Fields system;
    double nu_d = 0.3;
    double p_t = 1e6;
    std::optional<CoopParams::Fields> coop;
    bool p_r_follows_p_t = true;
    std::optional<SweepSpec> sweep;
    std::optional<SimBlock> sim;
    std::optional<ConstraintBlock> constraints;
    NearFieldMode nearfield = NearFieldMode::PaperMean;
    std::string out_path;
    std::string format = "csv";
};

/// One fully resolved operating point of a sweep.
struct ResolvedPoint {
    double axis = 0.0;
    SystemParams system;
    std::optional<CoopParams> coop;
    double nu_d = 0.3;
    double p_t = 1e6;
    double nu_r = 0.3;
    double p_r = 1e6;
};

inline std::string to_string(NearFieldMode m) { return m == NearFieldMode::PaperMean ? "paper" : "exact"; }
inline std::string to_string(sim::Slot2Mode m) { return m == sim::Slot2Mode::PaperModel ? "paper" : "full"; }

inline NearFieldMode parse_nearfield(const std::string& s) {
    if (s == "paper") return NearFieldMode::PaperMean;
    if (s == "exact") return NearFieldMode::ExactPoisson;
    throw ConfigError("nearfield must be 'paper' or 'exact', got '" + s + "'");
}

inline sim::Slot2Mode parse_slot2(const std::string& s) {
    if (s == "paper") return sim::Slot2Mode::PaperModel;
    if (s == "full") return sim::Slot2Mode::FullGeometry;
    throw ConfigError("slot2_mode must be 'paper' or 'full', got '" + s + "'");
}

/// Parses a real number; accepts "inf", "pi", "pi/3", "2*pi/3" and "2pi".
inline double parse_number(std::string text) {
    boost::algorithm::trim(text);
    boost::algorithm::to_lower(text);
    auto plain = [](const std::string& s) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(s, &used);
        } catch (const std::exception&) {
            throw ConfigError("not a number: '" + s + "'");
        }
        if (used != s.size()) throw ConfigError("not a number: '" + s + "'");
        return v;
    };
    const auto pi_at = text.find("pi");
    if (pi_at == std::string::npos) return plain(text);

    std::string factor = text.substr(0, pi_at);
    std::string rest = text.substr(pi_at + 2);
    boost::algorithm::trim(factor);
    boost::algorithm::trim(rest);
    if (!factor.empty() && factor.back() == '*') factor.pop_back();
    double value = std::numbers::pi * (factor.empty() ? 1.0 : plain(factor));
    if (!rest.empty()) {
        if (rest.front() != '/') throw ConfigError("not a number: '" + text + "'");
        value /= plain(rest.substr(1));
    }
    return value;
}

inline std::vector<double> parse_list(const std::string& text) {
    std::vector<std::string> parts;
    boost::algorithm::split(parts, text, boost::is_any_of(","));
    std::vector<double> out;
    for (auto& p : parts) {
        boost::algorithm::trim(p);
        if (!p.empty()) out.push_back(parse_number(p));
    }
    if (out.empty()) throw ConfigError("empty value list");
    return out;
}

namespace detail {

struct VariableInfo {
    bool decibel = false;
    bool coop = false;
    std::function<void(ScenarioConfig&, double)> set;
};

inline const std::map<std::string, VariableInfo>& variables() {
    static const std::map<std::string, VariableInfo> table = [] {
        std::map<std::string, VariableInfo> t;
        auto sys = [&](const std::string& name, double SystemParams::Fields::*field, bool db_form) {
            t[name] = {false, false, [field](ScenarioConfig& c, double v) { c.system.*field = v; }};
            if (db_form) {
                t[name + "_db"] = {true, false, [field](ScenarioConfig& c, double v) { c.system.*field = v; }};
            }
        };
        sys("lambda", &SystemParams::Fields::lambda, false);
        sys("d0", &SystemParams::Fields::d0, false);
        sys("r0", &SystemParams::Fields::r0, false);
        sys("alpha", &SystemParams::Fields::alpha, false);
        sys("sigma2", &SystemParams::Fields::sigma2, true);
        sys("sigmaC2", &SystemParams::Fields::sigmaC2, true);
        sys("omega", &SystemParams::Fields::omega, true);
        sys("zeta", &SystemParams::Fields::zeta, false);
        t["nu_d"] = {false, false, [](ScenarioConfig& c, double v) { c.nu_d = v; }};
        auto set_pt = [](ScenarioConfig& c, double v) {
            c.p_t = v;
            if (c.coop && c.p_r_follows_p_t) c.coop->p_r = v;
        };
        t["p_t"] = {false, false, set_pt};
        t["p_t_db"] = {true, false, set_pt};
        auto coop = [&](const std::string& name, double CoopParams::Fields::*field, bool db_form) {
            auto setter = [field](ScenarioConfig& c, double v) { c.coop.value().*field = v; };
            t[name] = {false, true, setter};
            if (db_form) t[name + "_db"] = {true, true, setter};
        };
        coop("lambda_r", &CoopParams::Fields::lambda_r, false);
        coop("eta", &CoopParams::Fields::eta, false);
        coop("theta0", &CoopParams::Fields::theta0, false);
        coop("nu_r", &CoopParams::Fields::nu_r, false);
        coop("p_r", &CoopParams::Fields::p_r, true);
        return t;
    }();
    return table;
}

inline const VariableInfo& variable(const std::string& name) {
    const auto& t = variables();
    const auto it = t.find(name);
    if (it == t.end()) throw ConfigError("unknown sweep variable '" + name + "'");
    return it->second;
}

class SectionReader {
public:
    SectionReader(const boost::property_tree::ptree& tree, std::string name)
        : tree_(tree), name_(std::move(name)) {}

    std::optional<std::string> text(const std::string& key) {
        seen_.insert(key);
        if (auto v = tree_.get_optional<std::string>(key)) return strip_comment(*v);
        return std::nullopt;
    }

    std::optional<double> number(const std::string& key) {
        if (auto v = text(key)) {
            try {
                return parse_number(*v);
            } catch (const ConfigError& e) {
                throw ConfigError(fmt::format("[{}] {}: {}", name_, key, e.what()));
            }
        }
        return std::nullopt;
    }

    // Linear value from either `key` or `key_db`, never both.
    std::optional<double> power(const std::string& key) {
        const auto lin = number(key);
        const auto db = number(key + "_db");
        if (lin && db) throw ConfigError(fmt::format("[{}] give {} or {}_db, not both", name_, key, key));
        if (db) return db_to_linear(*db);
        return lin;
    }

    void reject_unknown() const {
        for (const auto& [key, value] : tree_) {
            if (!seen_.count(key)) throw ConfigError(fmt::format("[{}] unknown key '{}'", name_, key));
        }
    }

private:
    // Trailing "; note" or "# note" after whitespace is a comment.
    static std::string strip_comment(const std::string& raw) {
        std::size_t cut = raw.size();
        for (std::size_t i = 1; i < raw.size(); ++i) {
            if ((raw[i] == ';' || raw[i] == '#') && std::isspace(static_cast<unsigned char>(raw[i - 1]))) {
                cut = i;
                break;
            }
        }
        return boost::algorithm::trim_copy(raw.substr(0, cut));
    }

    const boost::property_tree::ptree& tree_;
    std::string name_;
    std::set<std::string> seen_;
};

inline SweepSpec parse_sweep(SectionReader& r) {
    SweepSpec s;
    const auto var = r.text("variable");
    if (!var) throw ConfigError("[sweep] variable is required");
    s.variable = *var;
    const auto& info = variable(s.variable);
    const auto values = r.text("values");
    const auto range = r.text("range");
    const auto logrange = r.text("logrange");
    if (int(values.has_value()) + int(range.has_value()) + int(logrange.has_value()) != 1) {
        throw ConfigError("[sweep] give exactly one of values, range, logrange");
    }
    auto triple = [](const std::string& text) {
        std::vector<std::string> parts;
        boost::algorithm::split(parts, text, boost::is_any_of(":"));
        if (parts.size() != 3) throw ConfigError("[sweep] ranges are written start:stop:step");
        return std::array<double, 3>{parse_number(parts[0]), parse_number(parts[1]), parse_number(parts[2])};
    };
    if (values) {
        s.display = parse_list(*values);
    } else if (range) {
        const auto [lo, hi, step] = triple(*range);
        if (!(step > 0.0) || hi < lo) throw ConfigError("[sweep] range needs step > 0 and stop >= start");
        const auto n = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
        for (std::size_t i = 0; i < n; ++i) s.display.push_back(lo + static_cast<double>(i) * step);
    } else {
        const auto [lo, hi, count] = triple(*logrange);
        if (!(lo > 0.0 && hi >= lo) || count < 1.0 || count != std::floor(count)) {
            throw ConfigError("[sweep] logrange is start:stop:count with 0 < start <= stop");
        }
        const auto n = static_cast<std::size_t>(count);
        for (std::size_t i = 0; i < n; ++i) {
            const double t = n == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(n - 1);
            s.display.push_back(lo * std::pow(hi / lo, t));
        }
    }
    for (double v : s.display) s.linear.push_back(info.decibel ? db_to_linear(v) : v);
    return s;
}

}  // namespace detail

inline std::size_t point_count(const ScenarioConfig& c) { return c.sweep ? c.sweep->linear.size() : 1; }

/// Applies sweep point `i` and validates the resulting parameter sets.
inline ResolvedPoint resolve(const ScenarioConfig& base, std::size_t i) {
    ScenarioConfig c = base;
    double axis = 0.0;
    if (c.sweep) {
        const auto& info = detail::variable(c.sweep->variable);
        if (info.coop && !c.coop) throw ConfigError("sweep variable '" + c.sweep->variable + "' needs [coop]");
        info.set(c, c.sweep->linear.at(i));
        axis = c.sweep->display.at(i);
    }
    try {
        ResolvedPoint p{axis, SystemParams(c.system), std::nullopt, c.nu_d, c.p_t, 0.3, c.p_t};
        if (!(c.nu_d >= 0.0 && c.nu_d <= 1.0)) throw DomainError("nu_d must be in [0, 1]");
        if (!(c.p_t > 0.0)) throw DomainError("p_t must be > 0");
        if (c.coop) {
            p.coop = CoopParams(p.system, *c.coop);
            p.nu_r = c.coop->nu_r;
            p.p_r = c.coop->p_r;
            if (!(p.p_r > 0.0)) throw DomainError("p_r must be > 0");
        }
        return p;
    } catch (const std::domain_error& e) {
        throw ConfigError(e.what());
    }
}

inline ScenarioConfig parse_config(std::istream& in) {
    const std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    boost::property_tree::ptree tree;
    try {
        std::istringstream body(text);
        boost::property_tree::ini_parser::read_ini(body, tree);
    } catch (const boost::property_tree::ini_parser_error& e) {
        throw ConfigError(std::string("malformed config: ") + e.what());
    }
    static const std::set<std::string> sections = {"system", "link",  "coop",        "sweep",
                                                   "sim",    "model", "constraints", "output"};
    for (const auto& [name, body] : tree) {
        if (!sections.count(name)) throw ConfigError("unknown section [" + name + "]");
        if (!body.data().empty()) throw ConfigError("key '" + name + "' outside any section");
    }
    // The INI reader drops sections without keys, yet a bare [coop] still selects the protocol.
    static const boost::property_tree::ptree no_keys;
    std::set<std::string> headers;
    {
        std::istringstream lines(text);
        for (std::string line; std::getline(lines, line);) {
            boost::algorithm::trim(line);
            if (line.size() > 2 && line.front() == '[' && line.back() == ']') {
                headers.insert(boost::algorithm::trim_copy(line.substr(1, line.size() - 2)));
            }
        }
    }
    for (const auto& h : headers) {
        if (!sections.count(h)) throw ConfigError("unknown section [" + h + "]");
    }
    auto section = [&](const std::string& name) -> const boost::property_tree::ptree* {
        const auto it = tree.find(name);
        if (it != tree.not_found()) return &it->second;
        return headers.count(name) ? &no_keys : nullptr;
    };

    ScenarioConfig c;
    static const boost::property_tree::ptree empty;
    {
        detail::SectionReader r(section("system") ? *section("system") : empty, "system");
        auto& s = c.system;
        if (auto v = r.number("lambda")) s.lambda = *v;
        if (auto v = r.number("d0")) s.d0 = *v;
        if (auto v = r.number("r0")) s.r0 = *v;
        if (auto v = r.number("alpha")) s.alpha = *v;
        if (auto v = r.power("sigma2")) s.sigma2 = *v;
        if (auto v = r.power("sigmaC2")) s.sigmaC2 = *v;
        if (auto v = r.power("omega")) s.omega = *v;
        if (auto v = r.number("zeta")) s.zeta = *v;
        r.reject_unknown();
    }
    {
        detail::SectionReader r(section("link") ? *section("link") : empty, "link");
        if (auto v = r.number("nu_d")) c.nu_d = *v;
        if (auto v = r.power("p_t")) c.p_t = *v;
        r.reject_unknown();
    }
    if (const auto* t = section("coop")) {
        detail::SectionReader r(*t, "coop");
        CoopParams::Fields f;
        if (auto v = r.number("lambda_r")) f.lambda_r = *v;
        if (auto v = r.number("eta")) f.eta = *v;
        if (auto v = r.number("theta0")) f.theta0 = *v;
        if (auto v = r.number("nu_r")) f.nu_r = *v;
        if (auto v = r.power("p_r")) {
            f.p_r = *v;
            c.p_r_follows_p_t = false;
        } else {
            f.p_r = c.p_t;
        }
        r.reject_unknown();
        c.coop = f;
    }
    if (const auto* t = section("sweep")) {
        detail::SectionReader r(*t, "sweep");
        c.sweep = detail::parse_sweep(r);
        r.reject_unknown();
    }
    if (const auto* t = section("sim")) {
        detail::SectionReader r(*t, "sim");
        SimBlock s;
        if (auto v = r.number("n_reps")) {
            if (*v < 100 || *v != std::floor(*v)) throw ConfigError("[sim] n_reps must be an integer >= 100");
            s.n_reps = static_cast<std::uint64_t>(*v);
        }
        if (auto v = r.text("seed")) {
            try {
                std::size_t used = 0;
                s.seed = std::stoull(*v, &used, 0);
                if (used != v->size()) throw std::invalid_argument("trailing");
            } catch (const std::exception&) {
                throw ConfigError("[sim] seed must be an unsigned 64-bit integer");
            }
        }
        if (auto v = r.number("window")) s.window = *v;
        if (auto v = r.text("slot2_mode")) s.slot2 = parse_slot2(*v);
        r.reject_unknown();
        c.sim = s;
    }
    if (const auto* t = section("model")) {
        detail::SectionReader r(*t, "model");
        if (auto v = r.text("nearfield")) c.nearfield = parse_nearfield(*v);
        r.reject_unknown();
    }
    if (const auto* t = section("constraints")) {
        detail::SectionReader r(*t, "constraints");
        ConstraintBlock b;
        const auto ci = r.text("c_i");
        const auto ch = r.text("c_h");
        if (!ci || !ch) throw ConfigError("[constraints] c_i and c_h are required");
        const auto ci_list = parse_list(*ci);
        const auto ch_list = parse_list(*ch);
        if (ci_list.size() != ch_list.size()) throw ConfigError("[constraints] c_i and c_h lists differ in length");
        for (std::size_t i = 0; i < ci_list.size(); ++i) b.targets.emplace_back(ci_list[i], ch_list[i]);
        if (auto v = r.text("mode")) {
            if (*v == "fixed") {
                b.joint = false;
            } else if (*v == "joint") {
                b.fixed = false;
            } else if (*v != "both") {
                throw ConfigError("[constraints] mode must be fixed, joint or both");
            }
        }
        if (auto v = r.number("nu0")) b.nu0 = *v;
        r.reject_unknown();
        try {
            for (const auto& [c_i, c_h] : b.targets) {
                if (b.fixed) ConstraintSpec::fixed(c_i, c_h, b.nu0);
                if (b.joint) ConstraintSpec::joint(c_i, c_h);
            }
        } catch (const std::domain_error& e) {
            throw ConfigError(e.what());
        }
        c.constraints = b;
    }
    if (const auto* t = section("output")) {
        detail::SectionReader r(*t, "output");
        if (auto v = r.text("path")) c.out_path = *v;
        if (auto v = r.text("format")) {
            if (*v != "csv" && *v != "json" && *v != "both") throw ConfigError("[output] format must be csv, json or both");
            c.format = *v;
        }
        r.reject_unknown();
    }
    for (std::size_t i = 0; i < point_count(c); ++i) resolve(c, i);
    return c;
}

inline ScenarioConfig parse_config_text(const std::string& text) {
    std::istringstream in(text);
    return parse_config(in);
}

/// Stable textual form of every resolved parameter, used for the config hash.
inline std::string canonical_form(const ScenarioConfig& c) {
    std::string out;
    auto put = [&](const std::string& key, double v) { out += fmt::format("{}={:.17g}\n", key, v); };
    const auto& s = c.system;
    put("lambda", s.lambda);
    put("d0", s.d0);
    put("r0", s.r0);
    put("alpha", s.alpha);
    put("sigma2", s.sigma2);
    put("sigmaC2", s.sigmaC2);
    put("omega", s.omega);
    put("zeta", s.zeta);
    put("nu_d", c.nu_d);
    put("p_t", c.p_t);
    if (c.coop) {
        put("lambda_r", c.coop->lambda_r);
        put("eta", c.coop->eta);
        put("theta0", c.coop->theta0);
        put("nu_r", c.coop->nu_r);
        if (c.p_r_follows_p_t) {
            out += "p_r=p_t\n";
        } else {
            put("p_r", c.coop->p_r);
        }
    }
    if (c.sweep) {
        out += "sweep=" + c.sweep->variable + "\n";
        for (double v : c.sweep->display) put("sweep_value", v);
    }
    if (c.sim) {
        out += fmt::format("n_reps={}\n", c.sim->n_reps);
        if (c.sim->window) put("window", *c.sim->window);
        out += "slot2_mode=" + to_string(c.sim->slot2) + "\n";
    }
    if (c.constraints) {
        for (const auto& [ci, ch] : c.constraints->targets) {
            put("c_i", ci);
            put("c_h", ch);
        }
        out += fmt::format("fixed={} joint={}\n", c.constraints->fixed, c.constraints->joint);
        put("nu0", c.constraints->nu0);
    }
    out += "nearfield=" + to_string(c.nearfield) + "\n";
    return out;
}

/// 64-bit FNV-1a.
inline std::uint64_t fnv1a(const std::string& text) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 0x100000001b3ull;
    }
    return h;
}

inline std::string config_hash(const ScenarioConfig& c) { return fmt::format("{:016x}", fnv1a(canonical_form(c))); }

}  // namespace swipt::cli
