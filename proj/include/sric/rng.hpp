#pragma once

#include <cstdint>
#include <limits>

namespace sric {

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Counter-based bit generator: the n-th output is mix64(key + (n + 1) * gamma).
/// Satisfies UniformRandomBitGenerator, so it plugs into <random> distributions.
class ReplicationStream {
public:
    using result_type = std::uint64_t;

    explicit constexpr ReplicationStream(std::uint64_t key) noexcept : key_(key) {}

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    constexpr result_type operator()() noexcept {
        counter_ += kGamma;
        return mix64(key_ + counter_);
    }

    constexpr std::uint64_t key() const noexcept { return key_; }

private:
    static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

/// Master seed. Replication r always draws from stream(r), so results do not
/// depend on how replications are scheduled across workers.
struct RngSpec {
    std::uint64_t master_seed = 0;

    ReplicationStream stream(std::uint64_t replication) const noexcept {
        return ReplicationStream(mix64(master_seed ^ mix64(replication + 0x632be59bd9b4e019ULL)));
    }

    /// Independent sub-seed for a named part of a larger run.
    RngSpec derive(std::uint64_t tag) const noexcept {
        return RngSpec{mix64(mix64(master_seed) + 0xd1b54a32d192ed03ULL * (tag + 1))};
    }
};

}  // namespace sric
