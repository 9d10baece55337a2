#pragma once

// Counter-based random streams. Every replication owns an independent Philox
// stream addressed by (seed, replication, group, substream), so results do not
// depend on how replications are scheduled across threads.

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>

namespace swipt::rng {

/// Philox4x32 with 10 rounds (Salmon et al., SC'11).
class Philox4x32 {
public:
    using Counter = std::array<std::uint32_t, 4>;
    using Key = std::array<std::uint32_t, 2>;

    static Counter generate(Counter ctr, Key key) {
        for (int round = 0; round < 10; ++round) {
            if (round > 0) {
                key[0] += kWeyl0;
                key[1] += kWeyl1;
            }
            const std::uint64_t p0 = std::uint64_t{kMul0} * ctr[0];
            const std::uint64_t p1 = std::uint64_t{kMul1} * ctr[2];
            const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
            const auto lo0 = static_cast<std::uint32_t>(p0);
            const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
            const auto lo1 = static_cast<std::uint32_t>(p1);
            ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
        }
        return ctr;
    }

private:
    static constexpr std::uint32_t kMul0 = 0xD2511F53u;
    static constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
    static constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
    static constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;
};

/// Substream identifiers of one network realization.
namespace substream {
inline constexpr std::uint32_t kTransmitterShell = 0;   // + shell index
inline constexpr std::uint32_t kDirectFade = 64;
inline constexpr std::uint32_t kRelays = 65;
inline constexpr std::uint32_t kRelayFades = 66;
inline constexpr std::uint32_t kSelection = 67;
inline constexpr std::uint32_t kSecondSlotFade = 68;
inline constexpr std::uint32_t kOrientation = 69;
inline constexpr std::uint32_t kProbeFade = 70;
inline constexpr std::uint32_t kSlot2Shell = 128;       // + shell index
}  // namespace substream

/// Uniform random bit generator over one Philox counter range.
class Stream {
public:
    using result_type = std::uint64_t;

    Stream(std::uint64_t seed, std::uint32_t replication, std::uint32_t group, std::uint32_t sub)
        : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
          ctr_{replication, group, sub, 0u} {}

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()() {
        if (next_ == 4) refill();
        const std::uint64_t lo = block_[next_];
        const std::uint64_t hi = block_[next_ + 1];
        next_ += 2;
        return (hi << 32) | lo;
    }

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

    /// Uniform on the open interval (0, 1).
    double uniform_open() { return (static_cast<double>((*this)() >> 11) + 0.5) * 0x1.0p-53; }

    /// Unit-mean exponential draw, strictly positive.
    double exponential() { return -std::log(uniform_open()); }

    std::uint64_t poisson(double mean) {
        if (!(mean > 0.0)) return 0;
        std::poisson_distribution<std::uint64_t> dist(mean);
        return dist(*this);
    }

private:
    void refill() {
        block_ = Philox4x32::generate(ctr_, key_);
        ++ctr_[3];
        next_ = 0;
    }

    Philox4x32::Key key_;
    Philox4x32::Counter ctr_;
    Philox4x32::Counter block_{};
    int next_ = 4;
};

}  // namespace swipt::rng
