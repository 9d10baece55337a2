#pragma once

// Replicated Monte Carlo estimation. Replications are grouped in fixed blocks
// that are reduced in block order, so every estimate is bit-identical for any
// worker count.

#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "swipt/errors.hpp"
#include "swipt/parallel.hpp"
#include "swipt/rng.hpp"
#include "swipt/sim.hpp"
#include "swipt/stats.hpp"

namespace swipt {

enum class MetricKind {
    Outage,            ///< combined outage indicator
    DirectOutage,      ///< direct-link outage indicator
    Energy,            ///< harvested energy over the protocol
    Laplace,           ///< exp(-s I) of the slot-1 interference at the receiver
    MeanInterference,  ///< slot-1 interference at the receiver
    EmptyRelaySet,     ///< no relay decoded slot 1
    RelayLinkOutage,   ///< relay hop outage, conditional on an active relay
    RelayDecode,       ///< decode indicator of a probe relay at distance `param`
};

struct Metric {
    MetricKind kind = MetricKind::Outage;
    double param = 0.0;

    static Metric outage() { return {MetricKind::Outage}; }
    static Metric direct_outage() { return {MetricKind::DirectOutage}; }
    static Metric energy() { return {MetricKind::Energy}; }
    static Metric laplace(double s) { return {MetricKind::Laplace, s}; }
    static Metric mean_interference() { return {MetricKind::MeanInterference}; }
    static Metric empty_relay_set() { return {MetricKind::EmptyRelaySet}; }
    static Metric relay_link_outage() { return {MetricKind::RelayLinkOutage}; }
    static Metric relay_decode(double r) { return {MetricKind::RelayDecode, r}; }

    bool is_proportion() const {
        return kind != MetricKind::Energy && kind != MetricKind::Laplace &&
               kind != MetricKind::MeanInterference;
    }
    bool needs_coop() const {
        return kind == MetricKind::EmptyRelaySet || kind == MetricKind::RelayLinkOutage;
    }
};

inline std::string to_string(MetricKind kind) {
    switch (kind) {
        case MetricKind::Outage: return "outage";
        case MetricKind::DirectOutage: return "direct_outage";
        case MetricKind::Energy: return "energy";
        case MetricKind::Laplace: return "laplace";
        case MetricKind::MeanInterference: return "mean_interference";
        case MetricKind::EmptyRelaySet: return "empty_relay_set";
        case MetricKind::RelayLinkOutage: return "relay_link_outage";
        case MetricKind::RelayDecode: return "relay_decode";
    }
    return "unknown";
}

inline constexpr std::uint64_t kMinReplications = 100;
inline constexpr std::uint64_t kBlockSize = 1024;

namespace detail {

struct Tally {
    std::uint64_t hits = 0;
    std::uint64_t trials = 0;
    RunningMoments moments;
};

inline void record(const Metric& m, const sim::SlotOutcome& o, const sim::PreparedScenario& prep,
                   const sim::NetworkRealization& real, std::uint64_t seed, std::uint32_t rep,
                   std::uint32_t group, Tally& t) {
    switch (m.kind) {
        case MetricKind::Outage:
            ++t.trials;
            t.hits += o.outage;
            break;
        case MetricKind::DirectOutage:
            ++t.trials;
            t.hits += o.direct_outage;
            break;
        case MetricKind::Energy:
            t.moments.add(o.harvested);
            break;
        case MetricKind::Laplace:
            t.moments.add(std::exp(-m.param * o.interference));
            break;
        case MetricKind::MeanInterference:
            t.moments.add(o.interference);
            break;
        case MetricKind::EmptyRelaySet:
            ++t.trials;
            t.hits += !o.relay_active;
            break;
        case MetricKind::RelayLinkOutage:
            if (o.relay_active) {
                ++t.trials;
                t.hits += o.relay_sinr < prep.scenario.system.omega();
            }
            break;
        case MetricKind::RelayDecode: {
            rng::Stream probe(seed, rep, group, rng::substream::kProbeFade);
            ++t.trials;
            t.hits += sim::probe_relay_decodes(prep.scenario.system, m.param, prep.scenario.p_t, real,
                                               probe.exponential(), prep.scenario.nearfield);
            break;
        }
    }
}

}  // namespace detail

/// Estimates several metrics from the same replications. `group` separates
/// the random streams of different scenarios sharing a seed.
inline std::vector<MetricEstimate> estimate_many(const sim::PreparedScenario& prep,
                                                 std::span<const Metric> metrics, std::uint64_t n_reps,
                                                 std::uint64_t seed, std::uint32_t group = 0,
                                                 unsigned workers = worker_count()) {
    if (n_reps < kMinReplications) throw DomainError("estimate: n_reps must be >= 100");
    if (n_reps > std::uint64_t{UINT32_MAX}) throw DomainError("estimate: n_reps too large");
    for (const auto& m : metrics) {
        if (m.needs_coop() && !prep.cooperative()) {
            throw DomainError("estimate: metric " + to_string(m.kind) + " needs a cooperative scenario");
        }
    }
    const auto& sc = prep.scenario;
    const std::size_t n_blocks = (n_reps + kBlockSize - 1) / kBlockSize;
    std::vector<std::vector<detail::Tally>> blocks(n_blocks, std::vector<detail::Tally>(metrics.size()));

    parallel_for(
        n_blocks,
        [&](std::size_t b) {
            sim::NetworkRealization real;
            auto& tallies = blocks[b];
            const std::uint64_t end = std::min(n_reps, (b + 1) * kBlockSize);
            for (std::uint64_t i = b * kBlockSize; i < end; ++i) {
                const auto rep = static_cast<std::uint32_t>(i);
                sim::sample_realization(prep, seed, rep, group, real);
                const sim::SlotOutcome o =
                    sc.coop ? sim::simulate_coop(*sc.coop, sc.nu_d, sc.nu_r, sc.p_t, sc.p_r, real,
                                                 sc.slot2, sc.nearfield)
                            : sim::simulate_noncoop(sc.system, sc.nu_d, sc.p_t, real, sc.nearfield);
                for (std::size_t k = 0; k < metrics.size(); ++k) {
                    detail::record(metrics[k], o, prep, real, seed, rep, group, tallies[k]);
                }
            }
        },
        workers);

    std::vector<MetricEstimate> out;
    out.reserve(metrics.size());
    for (std::size_t k = 0; k < metrics.size(); ++k) {
        detail::Tally total;
        for (const auto& block : blocks) {
            total.hits += block[k].hits;
            total.trials += block[k].trials;
            total.moments.merge(block[k].moments);
        }
        MetricEstimate e = metrics[k].is_proportion()
                               ? wilson_estimate(static_cast<double>(total.hits), total.trials)
                               : t_estimate(total.moments);
        e.seed = seed;
        out.push_back(e);
    }
    return out;
}

inline MetricEstimate estimate(const Metric& metric, const sim::PreparedScenario& prep,
                               std::uint64_t n_reps, std::uint64_t seed, std::uint32_t group = 0,
                               unsigned workers = worker_count()) {
    const Metric one[] = {metric};
    return estimate_many(prep, one, n_reps, seed, group, workers).front();
}

inline MetricEstimate estimate(const Metric& metric, const sim::SimScenario& scenario,
                               std::uint64_t n_reps, std::uint64_t seed, std::uint32_t group = 0,
                               unsigned workers = worker_count()) {
    return estimate(metric, sim::PreparedScenario(scenario), n_reps, seed, group, workers);
}

}  // namespace swipt
