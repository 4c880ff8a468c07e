#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace hvnsim {

/// Named, independently seeded random streams.
///
/// Every subsystem draws from its own stream keyed by (seed, name, instance),
/// so changing how many numbers one subsystem consumes does not perturb any
/// other. This is what makes A/B comparisons of schemes under identical
/// mobility possible: the mobility stream of vehicle i depends only on the
/// run seed and i.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::string_view name, std::uint64_t instance = 0)
        : eng_(mix(seed, name, instance)) {}

    std::uint64_t next_u64() { return eng_(); }

    /// Uniform double in [0, 1). Derived from the top 53 bits so the value
    /// stream is identical across standard library implementations.
    double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    /// Uniform double in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    static std::uint64_t fnv1a(std::string_view s) {
        std::uint64_t h = 1469598103934665603ull;
        for (unsigned char c : s) {
            h ^= c;
            h *= 1099511628211ull;
        }
        return h;
    }

    static std::uint64_t splitmix64(std::uint64_t x) {
        x += 0x9e3779b97f4a7c15ull;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
        return x ^ (x >> 31);
    }

private:
    static std::uint64_t mix(std::uint64_t seed, std::string_view name, std::uint64_t instance) {
        return splitmix64(splitmix64(seed ^ fnv1a(name)) + instance);
    }

    std::mt19937_64 eng_;
};

} // namespace hvnsim
