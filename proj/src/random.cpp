#include "ubb/random.hpp"

#include <bit>
#include <stdexcept>

namespace ubb {

std::uint64_t splitmix64(std::uint64_t x) noexcept
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t stable_hash(std::string_view text) noexcept
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

RandomSource::RandomSource(std::uint64_t seed) : seed_(seed), engine_(splitmix64(seed)) {}

RandomSource RandomSource::derive(std::uint64_t seed, std::uint64_t index)
{
    return RandomSource(splitmix64(splitmix64(seed) ^ splitmix64(index + 0x632be59bd9b4e019ULL)));
}

std::uint64_t RandomSource::below(std::uint64_t bound)
{
    if (bound == 0)
        throw std::invalid_argument("RandomSource::below: bound must be positive");
    if (std::has_single_bit(bound))
        return engine_() & (bound - 1);
    // Rejection on the largest multiple of bound keeps the draw exactly uniform.
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t v;
    do {
        v = engine_();
    } while (v >= limit);
    return v % bound;
}

double RandomSource::unit()
{
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

std::uint64_t RandomSource::binomial(std::uint64_t trials, double p)
{
    if (p <= 0.0)
        return 0;
    if (p >= 1.0)
        return trials;
    std::uint64_t hits = 0;
    if (p == 0.5) {
        for (; trials >= 64; trials -= 64)
            hits += std::popcount(engine_());
        if (trials > 0)
            hits += std::popcount(engine_() & ((std::uint64_t{1} << trials) - 1));
        return hits;
    }
    for (std::uint64_t i = 0; i < trials; ++i)
        hits += bernoulli(p) ? 1 : 0;
    return hits;
}

} // namespace ubb
