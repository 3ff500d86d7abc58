#pragma once

#include <cstdint>
#include <random>

namespace harmony {

/// SplitMix64 finalizer. Used to derive independent per-agent stream seeds
/// from a trial seed so that spawn order does not perturb any agent's draws.
constexpr std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Portable random stream. std::mt19937_64 has a standardized output
/// sequence; the floating point mapping is done here rather than through
/// std::uniform_real_distribution, whose output is implementation-defined.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

    /// Stream for agent `id` within trial `seed`.
    static RandomStream forAgent(std::uint64_t seed, std::uint64_t id)
    {
        return RandomStream(splitmix64(splitmix64(seed) ^ splitmix64(id + 0x5851F42D4C957F2DULL)));
    }

    /// Uniform in [0, 1) with 53 bits of precision.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform integer in [0, n). Rejection sampling keeps it unbiased.
    std::uint64_t index(std::uint64_t n)
    {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t r = engine_();
        while (r >= limit) {
            r = engine_();
        }
        return r % n;
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace harmony
