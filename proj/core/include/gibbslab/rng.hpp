#pragma once

#include <cstdint>
#include <random>

namespace gibbslab {

/// Seeded uniform source. Uniforms are the top 53 bits of mt19937_64
/// scaled by 2^-53, so streams are identical on every platform.
class Rng {
public:
    static constexpr const char* kAlgorithm = "mt19937_64/v1";

    explicit Rng(std::uint64_t seed) : engine_(seed) {}
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    /// Uniform integer in [0, n) by rejection.
    std::uint64_t below(std::uint64_t n);
    std::uint64_t next() { return engine_(); }

private:
    std::mt19937_64 engine_;
};

inline std::uint64_t Rng::below(std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
        x = engine_();
    } while (x >= limit);
    return x % n;
}

}  // namespace gibbslab
