#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace ubb {

std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// FNV-1a over the bytes of `text`; used to fold labels into seeds.
std::uint64_t stable_hash(std::string_view text) noexcept;

/// Seedable random stream. Output depends only on the seed: the engine is
/// std::mt19937_64 (fully specified by the standard) and every derived
/// quantity below is computed here rather than by std distributions, whose
/// algorithms differ between standard libraries.
class RandomSource {
public:
    explicit RandomSource(std::uint64_t seed);

    /// Independent child stream for (seed, index); does not touch this stream.
    static RandomSource derive(std::uint64_t seed, std::uint64_t index);
    RandomSource split(std::uint64_t index) const { return derive(seed_, index); }

    std::uint64_t seed() const noexcept { return seed_; }

    std::uint64_t next_u64() { return engine_(); }
    /// Uniform in [0, bound); bound must be positive.
    std::uint64_t below(std::uint64_t bound);
    /// Uniform in [0, 1) with 53 random bits.
    double unit();
    bool bernoulli(double p) { return unit() < p; }
    std::uint64_t binomial(std::uint64_t trials, double p);

private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

} // namespace ubb
