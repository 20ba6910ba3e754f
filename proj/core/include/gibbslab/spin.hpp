#pragma once

#include <bit>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "gibbslab/lattice.hpp"

namespace gibbslab {

/// Ising spin value, +1 or -1.
using Spin = std::int8_t;

/// Configurations of a small ordered site list are encoded as binary
/// counters: bit k describes the k-th site (lexicographic order), with a
/// set bit meaning spin -1. Code 0 is therefore the all-plus configuration.
using ConfigCode = std::uint64_t;

inline constexpr Spin spinOfBit(std::uint64_t bit) { return bit ? Spin{-1} : Spin{1}; }
inline constexpr std::uint64_t bitOfSpin(Spin s) { return s < 0 ? 1u : 0u; }
inline constexpr Spin spinAt(ConfigCode code, std::size_t k) { return spinOfBit((code >> k) & 1u); }

/// Bitstring with the first site leftmost ('1' = spin -1).
std::string codeToBitstring(ConfigCode code, std::size_t nSites);

/// Spins on a finite volume, one bit per site, with a single spin value
/// assigned to every site outside the volume.
class SpinConfiguration {
public:
    SpinConfiguration() = default;
    SpinConfiguration(SiteSet volume, Spin fill, Spin outside = 1);
    static SpinConfiguration fromCode(SiteSet volume, ConfigCode code, Spin outside = 1);
    static SpinConfiguration fromSpins(SiteSet volume, std::span<const Spin> spins, Spin outside = 1);

    const SiteSet& volume() const { return volume_; }
    std::size_t size() const { return volume_.size(); }
    Spin outside() const { return outside_; }

    Spin spin(std::size_t i) const { return spinOfBit((words_[i >> 6] >> (i & 63)) & 1u); }
    Spin spinAt(const Point& x) const;
    void set(std::size_t i, Spin s);
    void flip(std::size_t i) { words_[i >> 6] ^= (std::uint64_t{1} << (i & 63)); }

    /// Sum of spins over the volume.
    long long magnetization() const;
    std::size_t minusCount() const;
    ConfigCode code() const;  // requires size() <= 64
    std::vector<Spin> spins() const;

    friend bool operator==(const SpinConfiguration&, const SpinConfiguration&) = default;

private:
    SiteSet volume_;
    std::vector<std::uint64_t> words_;
    Spin outside_ = 1;
};

}  // namespace gibbslab
