#pragma once

// Monte Carlo simulation of both protocols on sampled Poisson networks.
//
// Coordinates: the typical transmitter x0 sits at the origin and its receiver at
// (d0, 0). Interferers are sampled in a disk window centered at the receiver.
// Desired links (x0 -> receiver, x0 -> relay, relay -> receiver) carry unit-mean
// exponential fades; interference links are path loss only.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <span>
#include <vector>

#include "swipt/analytic_coop.hpp"
#include "swipt/analytic_nc.hpp"
#include "swipt/errors.hpp"
#include "swipt/model.hpp"
#include "swipt/rng.hpp"

namespace swipt::sim {

struct Point {
    double x = 0.0;
    double y = 0.0;
};

inline double distance_sq(Point a, Point b) {
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    return dx * dx + dy * dy;
}

inline double distance(Point a, Point b) { return std::sqrt(distance_sq(a, b)); }

/// Second-slot interferer model. PaperModel draws the selected relays of other
/// pairs as an independent PPP of density lambda (1 - Pi_c); FullGeometry runs
/// decode-and-select for every sampled transmitter.
enum class Slot2Mode { PaperModel, FullGeometry };

/// Appends a PPP sample on the annulus r_in <= |p - center| < r_out.
inline void sample_ppp_annulus(double density, Point center, double r_in, double r_out,
                               rng::Stream& stream, std::vector<Point>& out) {
    if (!(density >= 0.0)) throw DomainError("sample_ppp: density must be >= 0");
    if (!(r_out >= r_in && r_in >= 0.0)) throw DomainError("sample_ppp: invalid annulus");
    if (density == 0.0 || r_out == r_in) return;
    const double a2 = r_in * r_in;
    const double span = r_out * r_out - a2;
    const std::uint64_t count = stream.poisson(density * std::numbers::pi * span);
    for (std::uint64_t i = 0; i < count; ++i) {
        const double rho = std::sqrt(a2 + stream.uniform() * span);
        const double phi = 2.0 * std::numbers::pi * stream.uniform();
        out.push_back({center.x + rho * std::cos(phi), center.y + rho * std::sin(phi)});
    }
}

/// Homogeneous PPP on the disk of the given radius around `center`.
inline std::vector<Point> sample_ppp(double density, Point center, double window_radius,
                                     rng::Stream& stream) {
    if (!(window_radius > 0.0)) throw DomainError("sample_ppp: window_radius must be > 0");
    std::vector<Point> out;
    sample_ppp_annulus(density, center, 0.0, window_radius, stream, out);
    return out;
}

/// Window large enough that the interference beyond it has mean below 1e-3 of
/// Psi(lambda): W = r0 (2000 / alpha)^(1 / (alpha - 2)), and never below 10 d0.
inline double default_window_radius(const SystemParams& sys) {
    const double a = sys.alpha();
    const double tail = sys.r0() * std::pow(2000.0 / a, 1.0 / (a - 2.0));
    return std::max(10.0 * sys.d0(), tail);
}

/// Mean interference left outside a window of radius w, 2 pi lambda w^(2-alpha) / (alpha - 2).
inline double truncated_interference(double density, double w, const SystemParams& sys) {
    const double a = sys.alpha();
    return 2.0 * std::numbers::pi * density * std::pow(w, 2.0 - a) / (a - 2.0);
}

struct RelayNode {
    Point position;
    double fade = 1.0;
    /// Index of the serving transmitter in NetworkRealization::transmitters, or kTypical.
    std::uint32_t owner = 0;
};

inline constexpr std::uint32_t kTypical = std::numeric_limits<std::uint32_t>::max();

struct NetworkRealization {
    std::vector<Point> transmitters;       ///< interferers; x0 itself is not listed
    std::vector<double> orientations;      ///< receiver bearing per transmitter (full geometry)
    std::vector<double> selection_draws;   ///< per-transmitter uniform used to pick a relay
    std::vector<RelayNode> relays;
    std::vector<Point> slot2_interferers;  ///< paper-model second-slot PPP
    double transmitter_density = 0.0;
    double slot2_density = 0.0;
    double window_radius = 0.0;
    double direct_fade = 1.0;
    double second_slot_fade = 1.0;
    double typical_selection = 0.0;

    void clear() {
        transmitters.clear();
        orientations.clear();
        selection_draws.clear();
        relays.clear();
        slot2_interferers.clear();
    }
};

struct SlotOutcome {
    double sinr = 0.0;          ///< selection-combined SINR
    bool outage = true;
    double harvested = 0.0;     ///< energy over both slots [W]
    bool relay_active = false;  ///< b
    std::optional<Point> selected_relay;
    double direct_sinr = 0.0;
    double relay_sinr = 0.0;
    bool direct_outage = true;
    double interference = 0.0;  ///< normalized slot-1 interference at the receiver
};

/// Complete description of one simulated operating point.
struct SimScenario {
    SystemParams system;
    std::optional<CoopParams> coop;
    double nu_d = 0.3;
    double p_t = 1e6;
    double nu_r = 0.3;
    double p_r = 1e6;
    Slot2Mode slot2 = Slot2Mode::PaperModel;
    NearFieldMode nearfield = NearFieldMode::PaperMean;
    std::optional<double> window;
};

namespace detail {

inline double attenuation_from_sq(double d2, double alpha) {
    if (alpha == 4.0) return 1.0 / (d2 * d2);
    return std::pow(d2, -0.5 * alpha);
}

// Normalized interference at `at` from `points` (skipping index `skip`), plus
// the typical transmitter when `include_origin`. In PaperMean mode the points
// inside r0 are replaced by their mean count lambda pi r0^2 at r0^-alpha, which
// is the configuration the PaperMean closed form averages over.
inline double interference_at(std::span<const Point> points, Point at, double density,
                              const SystemParams& sys, NearFieldMode mode,
                              std::size_t skip = std::numeric_limits<std::size_t>::max(),
                              bool include_origin = false) {
    const double r0 = sys.r0();
    const double r0_sq = r0 * r0;
    const double alpha = sys.alpha();
    const double floor_value = std::pow(r0, -alpha);
    const bool mean_field = mode == NearFieldMode::PaperMean;
    double sum = 0.0;
    auto add = [&](Point p) {
        const double d2 = distance_sq(p, at);
        if (d2 > r0_sq) {
            sum += attenuation_from_sq(d2, alpha);
        } else if (!mean_field) {
            sum += floor_value;
        }
    };
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (i != skip) add(points[i]);
    }
    if (include_origin) add(Point{});
    if (mean_field) sum += density * std::numbers::pi * r0_sq * floor_value;
    return sum;
}

// SINR of a power-split receiver, divided through by the transmit power so
// that p = +inf gives the interference-limited value.
inline double split_sinr(double gain, double interference, double sigma2, double sigma_c2,
                         double nu, double p) {
    double denom = interference + sigma2 / p;
    if (sigma_c2 > 0.0) denom += sigma_c2 / (nu * p);
    return gain / denom;
}

inline bool in_sector(Point p, Point apex, double bearing, double eta, double theta0) {
    const double dx = p.x - apex.x;
    const double dy = p.y - apex.y;
    if (dx * dx + dy * dy > eta * eta) return false;
    double angle = std::atan2(dy, dx) - bearing;
    angle = std::remainder(angle, 2.0 * std::numbers::pi);
    return std::abs(angle) <= theta0;
}

inline void sample_sector(double density, Point apex, double bearing, double eta, double theta0,
                          rng::Stream& stream, std::vector<Point>& out) {
    const std::uint64_t count = stream.poisson(density * theta0 * eta * eta);
    for (std::uint64_t i = 0; i < count; ++i) {
        const double r = eta * std::sqrt(stream.uniform());
        const double theta = bearing + theta0 * (2.0 * stream.uniform() - 1.0);
        out.push_back({apex.x + r * std::cos(theta), apex.y + r * std::sin(theta)});
    }
}

// Disk sampled in concentric shells [0, base], [base, 2 base], [2 base, 4 base]...
// each from its own substream. Growing the window only adds outer points.
inline void sample_window(double density, Point center, double window, double base,
                          std::uint64_t seed, std::uint32_t rep, std::uint32_t group,
                          std::uint32_t first_sub, std::vector<Point>& out) {
    double inner = 0.0;
    double outer = std::min(base, window);
    for (std::uint32_t shell = 0; inner < window; ++shell) {
        rng::Stream stream(seed, rep, group, first_sub + shell);
        sample_ppp_annulus(density, center, inner, outer, stream, out);
        inner = outer;
        outer = std::min(2.0 * outer, window);
    }
}

}  // namespace detail

/// Scenario with its derived quantities resolved once.
struct PreparedScenario {
    SimScenario scenario;
    double window = 0.0;
    double shell_base = 0.0;
    /// Density of the second-slot interferers in paper-model mode.
    double slot2_density = 0.0;

    explicit PreparedScenario(SimScenario sc) : scenario(std::move(sc)) {
        const auto& sys = scenario.system;
        window = scenario.window.value_or(default_window_radius(sys));
        if (!(window > sys.d0())) throw DomainError("simulation window must exceed d0");
        shell_base = 10.0 * sys.d0();
        if (scenario.coop) {
            if (scenario.coop->base().fields().lambda != sys.lambda()) {
                throw DomainError("SimScenario: coop base parameters differ from system parameters");
            }
            if (scenario.slot2 == Slot2Mode::PaperModel) {
                const double empty = pi_c(*scenario.coop, scenario.p_t, scenario.nearfield);
                slot2_density = sys.lambda() * (1.0 - empty);
            }
        }
    }

    bool cooperative() const { return scenario.coop.has_value(); }
};

/// Draws the realization of replication `rep` into `out`.
inline void sample_realization(const PreparedScenario& prep, std::uint64_t seed, std::uint32_t rep,
                               std::uint32_t group, NetworkRealization& out) {
    using namespace rng::substream;
    const auto& sc = prep.scenario;
    const auto& sys = sc.system;
    const Point receiver{sys.d0(), 0.0};
    out.clear();
    out.transmitter_density = sys.lambda();
    out.window_radius = prep.window;

    detail::sample_window(sys.lambda(), receiver, prep.window, prep.shell_base, seed, rep, group,
                          kTransmitterShell, out.transmitters);
    {
        rng::Stream fades(seed, rep, group, kDirectFade);
        out.direct_fade = fades.exponential();
    }
    if (!sc.coop) return;

    const auto& coop = *sc.coop;
    {
        rng::Stream f(seed, rep, group, kSecondSlotFade);
        out.second_slot_fade = f.exponential();
    }
    rng::Stream relays(seed, rep, group, kRelays);
    rng::Stream relay_fades(seed, rep, group, kRelayFades);
    rng::Stream selection(seed, rep, group, kSelection);
    out.typical_selection = selection.uniform();
    std::vector<Point> candidates;

    if (sc.slot2 == Slot2Mode::PaperModel) {
        detail::sample_sector(coop.lambda_r(), Point{}, 0.0, coop.eta(), coop.theta0(), relays,
                              candidates);
        for (const auto& p : candidates) out.relays.push_back({p, relay_fades.exponential(), kTypical});
        out.slot2_density = prep.slot2_density;
        detail::sample_window(prep.slot2_density, receiver, prep.window, prep.shell_base, seed, rep,
                              group, kSlot2Shell, out.slot2_interferers);
        return;
    }

    // Full geometry: every transmitter gets a receiver bearing and a sector.
    rng::Stream bearings(seed, rep, group, kOrientation);
    const std::size_t n = out.transmitters.size();
    out.orientations.resize(n);
    out.selection_draws.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        out.orientations[j] = 2.0 * std::numbers::pi * bearings.uniform();
        out.selection_draws[j] = selection.uniform();
    }
    auto apex = [&](std::uint32_t owner) { return owner == kTypical ? Point{} : out.transmitters[owner]; };
    auto bearing = [&](std::uint32_t owner) { return owner == kTypical ? 0.0 : out.orientations[owner]; };
    // A relay covered by several sectors serves the nearest covering transmitter.
    auto keeps = [&](Point p, std::uint32_t owner) {
        const double own = distance_sq(p, apex(owner));
        auto beats = [&](std::uint32_t other) {
            if (other == owner) return false;
            const double d2 = distance_sq(p, apex(other));
            if (d2 > own || (d2 == own && other > owner)) return false;
            return detail::in_sector(p, apex(other), bearing(other), coop.eta(), coop.theta0());
        };
        if (beats(kTypical)) return false;
        for (std::uint32_t j = 0; j < n; ++j) {
            if (beats(j)) return false;
        }
        return true;
    };
    auto add_sector = [&](std::uint32_t owner) {
        candidates.clear();
        detail::sample_sector(coop.lambda_r(), apex(owner), bearing(owner), coop.eta(), coop.theta0(),
                              relays, candidates);
        for (const auto& p : candidates) {
            const double fade = relay_fades.exponential();
            if (keeps(p, owner)) out.relays.push_back({p, fade, owner});
        }
    };
    add_sector(kTypical);
    for (std::uint32_t j = 0; j < n; ++j) add_sector(j);
}

/// Direct-link slot: SINR, outage and harvested energy at the typical receiver.
inline SlotOutcome simulate_noncoop(const SystemParams& sys, double nu_d, double p_t,
                                    const NetworkRealization& real,
                                    NearFieldMode mode = NearFieldMode::PaperMean) {
    const Point receiver{sys.d0(), 0.0};
    SlotOutcome o;
    o.interference = detail::interference_at(real.transmitters, receiver, real.transmitter_density,
                                             sys, mode);
    const double gain = real.direct_fade * bounded_pathloss(sys.d0(), sys);
    o.direct_sinr = detail::split_sinr(gain, o.interference, sys.sigma2(), sys.sigma_c2(), nu_d, p_t);
    o.direct_outage = o.direct_sinr < sys.omega();
    o.sinr = o.direct_sinr;
    o.outage = o.direct_outage;
    o.harvested = sys.zeta() * (1.0 - nu_d) * p_t * (gain + o.interference);
    return o;
}

/// Two-slot cooperative protocol with selection combining at the receiver.
inline SlotOutcome simulate_coop(const CoopParams& coop, double nu_d, double nu_r, double p_t,
                                 double p_r, const NetworkRealization& real, Slot2Mode slot2,
                                 NearFieldMode mode = NearFieldMode::PaperMean) {
    const auto& sys = coop.base();
    const Point receiver{sys.d0(), 0.0};
    SlotOutcome o = simulate_noncoop(sys, nu_d, p_t, real, mode);

    auto decodes = [&](const RelayNode& relay) {
        const bool typical = relay.owner == kTypical;
        const Point source = typical ? Point{} : real.transmitters[relay.owner];
        const double interference = detail::interference_at(
            real.transmitters, relay.position, real.transmitter_density, sys, mode,
            typical ? std::numeric_limits<std::size_t>::max() : relay.owner, !typical);
        const double gain = relay.fade * bounded_pathloss(distance(source, relay.position), sys);
        return detail::split_sinr(gain, interference, sys.sigma2(), 0.0, 1.0, p_t) >= sys.omega();
    };

    // Selected relay of each transmitter: uniform over its decode set.
    std::vector<const RelayNode*> decoded;
    auto select = [&](std::uint32_t owner, double draw) -> const RelayNode* {
        decoded.clear();
        for (const auto& relay : real.relays) {
            if (relay.owner == owner && decodes(relay)) decoded.push_back(&relay);
        }
        if (decoded.empty()) return nullptr;
        const auto idx = std::min(decoded.size() - 1,
                                  static_cast<std::size_t>(draw * static_cast<double>(decoded.size())));
        return decoded[idx];
    };

    const RelayNode* chosen = select(kTypical, real.typical_selection);

    double slot2_interference = 0.0;
    if (slot2 == Slot2Mode::PaperModel) {
        slot2_interference = detail::interference_at(real.slot2_interferers, receiver,
                                                     real.slot2_density, sys, mode);
    } else {
        std::vector<Point> active;
        for (std::uint32_t j = 0; j < real.transmitters.size(); ++j) {
            if (const RelayNode* r = select(j, real.selection_draws[j])) active.push_back(r->position);
        }
        slot2_interference = detail::interference_at(active, receiver, 0.0, sys,
                                                     NearFieldMode::ExactPoisson);
    }

    if (chosen) {
        o.relay_active = true;
        o.selected_relay = chosen->position;
        const double gain =
            real.second_slot_fade * bounded_pathloss(distance(chosen->position, receiver), sys);
        o.relay_sinr =
            detail::split_sinr(gain, slot2_interference, sys.sigma2(), sys.sigma_c2(), nu_r, p_r);
        o.harvested += sys.zeta() * (1.0 - nu_r) * p_r * (gain + slot2_interference);
    } else {
        o.harvested += sys.zeta() * p_r * slot2_interference;
    }
    o.sinr = std::max(o.direct_sinr, o.relay_sinr);
    o.outage = o.sinr < sys.omega();
    return o;
}

/// Decode indicator of a probe relay at distance r from x0 on the x0-receiver axis.
inline bool probe_relay_decodes(const SystemParams& sys, double r, double p_t,
                                const NetworkRealization& real, double fade,
                                NearFieldMode mode = NearFieldMode::PaperMean) {
    const Point at{r, 0.0};
    const double interference =
        detail::interference_at(real.transmitters, at, real.transmitter_density, sys, mode);
    const double gain = fade * bounded_pathloss(r, sys);
    return detail::split_sinr(gain, interference, sys.sigma2(), 0.0, 1.0, p_t) >= sys.omega();
}

}  // namespace swipt::sim
