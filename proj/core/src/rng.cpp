#include "oamncc/rng.hpp"

#include <cmath>

namespace oamncc::sim {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

std::uint64_t splitmix64_step(std::uint64_t& x)
{
    x += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

std::uint64_t fnv1a64(std::string_view s)
{
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

} // namespace

RngStream::RngStream(std::uint64_t seed, std::string_view stream_id)
    : seed_(seed), id_(stream_id)
{
    // Mix the seed and the stream label through independent avalanche
    // rounds before use; keeps low-entropy seeds and ids apart.
    std::uint64_t s = seed;
    std::uint64_t a = splitmix64_step(s);
    std::uint64_t b = fnv1a64(stream_id);
    state_ = a ^ (b + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2));
    (void)splitmix64_step(state_);
}

std::uint64_t RngStream::next_u64()
{
    return splitmix64_step(state_);
}

double RngStream::uniform()
{
    // 53-bit mantissa yields values in [0, 1).
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngStream::uniform(double lo, double hi)
{
    return lo + uniform() * (hi - lo);
}

bool RngStream::bernoulli(double p)
{
    if (p <= 0.0) {
        (void)uniform(); // keep draw indices aligned regardless of p
        return false;
    }
    if (p >= 1.0) {
        (void)uniform();
        return true;
    }
    return uniform() < p;
}

double RngStream::normal(double mean, double sd)
{
    double u1 = uniform();
    double u2 = uniform();
    if (u1 <= 0.0) {
        u1 = 0x1.0p-53;
    }
    const double r = std::sqrt(-2.0 * std::log(u1));
    return mean + sd * r * std::cos(kTwoPi * u2);
}

RngStream seeded_rng(std::uint64_t master_seed, std::string_view stream_id)
{
    return RngStream(master_seed, stream_id);
}

std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t index)
{
    std::uint64_t x = master_seed ^ (0x632be59bd9b4e019ULL * (index + 1));
    std::uint64_t s = x;
    std::uint64_t out = splitmix64_step(s);
    return out ^ splitmix64_step(s);
}

} // namespace oamncc::sim
