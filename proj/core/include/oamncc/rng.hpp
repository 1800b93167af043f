#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace oamncc::sim {

/**
 * RngStream: named, seeded pseudo-random stream.
 *
 * Each stream is identified by (seed, stream id). The same (seed, id, draw
 * index) always produces the same value, on every platform, independent of
 * the standard library's distribution implementations. Distinct stream ids
 * hash to unrelated splitmix64 states, so streams never share a draw
 * sequence in practice.
 *
 * Value-like: copy a stream to fork its remaining sequence.
 */
class RngStream {
public:
    RngStream() : RngStream(0, "default") {}
    RngStream(std::uint64_t seed, std::string_view stream_id);

    std::uint64_t next_u64();

    /// Uniform draw in [0, 1).
    double uniform();
    /// Uniform draw in [lo, hi).
    double uniform(double lo, double hi);
    /// True with probability p (p clamped to [0, 1]).
    bool bernoulli(double p);
    /// Normal draw via Box-Muller; consumes exactly two uniforms.
    double normal(double mean, double sd);

    std::uint64_t seed() const { return seed_; }
    const std::string& stream_id() const { return id_; }

private:
    std::uint64_t state_ = 0;
    std::uint64_t seed_ = 0;
    std::string id_;
};

/// Factory matching the stream contract above.
RngStream seeded_rng(std::uint64_t master_seed, std::string_view stream_id);

/// Stable per-index seed derivation (used for per-trial seeds in batches).
std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t index);

} // namespace oamncc::sim
