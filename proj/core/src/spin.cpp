#include "gibbslab/spin.hpp"

#include <stdexcept>

namespace gibbslab {

std::string codeToBitstring(ConfigCode code, std::size_t nSites) {
    std::string s(nSites, '0');
    for (std::size_t k = 0; k < nSites; ++k) {
        if ((code >> k) & 1u) s[k] = '1';
    }
    return s;
}

SpinConfiguration::SpinConfiguration(SiteSet volume, Spin fill, Spin outside)
    : volume_(std::move(volume)), words_((volume_.size() + 63) / 64, 0), outside_(outside) {
    if (fill < 0) {
        for (std::size_t i = 0; i < volume_.size(); ++i) set(i, -1);
    }
}

SpinConfiguration SpinConfiguration::fromCode(SiteSet volume, ConfigCode code, Spin outside) {
    if (volume.size() > 64) throw std::invalid_argument("fromCode: volume exceeds 64 sites");
    SpinConfiguration c(std::move(volume), 1, outside);
    if (!c.words_.empty()) {
        const std::size_t n = c.size();
        c.words_[0] = n == 64 ? code : (code & ((std::uint64_t{1} << n) - 1));
    }
    return c;
}

SpinConfiguration SpinConfiguration::fromSpins(SiteSet volume, std::span<const Spin> spins, Spin outside) {
    if (spins.size() != volume.size()) throw std::invalid_argument("fromSpins: size mismatch");
    SpinConfiguration c(std::move(volume), 1, outside);
    for (std::size_t i = 0; i < spins.size(); ++i) c.set(i, spins[i]);
    return c;
}

Spin SpinConfiguration::spinAt(const Point& x) const {
    const auto i = volume_.indexOf(x);
    return i < 0 ? outside_ : spin(static_cast<std::size_t>(i));
}

void SpinConfiguration::set(std::size_t i, Spin s) {
    const std::uint64_t mask = std::uint64_t{1} << (i & 63);
    if (s < 0) words_[i >> 6] |= mask; else words_[i >> 6] &= ~mask;
}

std::size_t SpinConfiguration::minusCount() const {
    std::size_t n = 0;
    for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
}

long long SpinConfiguration::magnetization() const {
    return static_cast<long long>(size()) - 2 * static_cast<long long>(minusCount());
}

ConfigCode SpinConfiguration::code() const {
    if (size() > 64) throw std::logic_error("code: volume exceeds 64 sites");
    return words_.empty() ? 0 : words_[0];
}

std::vector<Spin> SpinConfiguration::spins() const {
    std::vector<Spin> out(size());
    for (std::size_t i = 0; i < size(); ++i) out[i] = spin(i);
    return out;
}

}  // namespace gibbslab
