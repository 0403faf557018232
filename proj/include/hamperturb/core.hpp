#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

namespace hamperturb {

inline constexpr const char* tool_version = "0.1.0";

/// Deterministic 64-bit stream. All samplers take one of these explicitly;
/// there is no global randomness anywhere in the library.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform on [0, bound). Rejection against the last partial block, so the
    /// result only depends on the stream, never on the platform's
    /// distribution implementation.
    std::uint64_t below(std::uint64_t bound) {
        if (bound == 0) throw std::logic_error("Rng::below: bound must be positive");
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t x;
        do {
            x = next();
        } while (x >= limit);
        return x % bound;
    }

    int below_int(int bound) { return static_cast<int>(below(static_cast<std::uint64_t>(bound))); }

    /// Uniform real in [0, 1) with 53 random bits.
    double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    bool coin() { return (next() & 1u) != 0; }

private:
    std::mt19937_64 engine_;
};

/// splitmix64 finalizer; used to decorrelate derived seeds.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Seed of the independent stream for trial `index` under master seed
/// `seed`. Counter-based: trial k's stream never depends on how many trials
/// ran before it or on which worker picked it up.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
    return mix64(mix64(seed) ^ mix64(index * 0x9e3779b97f4a7c15ULL + 0x2545f4914f6cdd1dULL));
}

inline Rng derive_stream(std::uint64_t seed, std::uint64_t index) {
    return Rng(derive_seed(seed, index));
}

/// FNV-1a over a string; stable across runs and platforms. Used to stamp
/// outputs with a hash of the effective configuration.
inline std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

} // namespace hamperturb
