#include "ubb/samplers.hpp"

#include "ubb/blackbox.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <limits>
#include <stdexcept>
#include <string>

namespace ubb {

namespace {

constexpr std::size_t field_bits = 7;
constexpr std::size_t max_keyed = 9; // 9 * 7 = 63 bits

std::uint64_t low_mask(std::size_t bits)
{
    return bits >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << bits) - 1;
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k)
{
    if (k > n)
        return 0;
    k = std::min(k, n - k);
    std::uint64_t r = 1;
    for (std::uint64_t i = 1; i <= k; ++i)
        r = r * (n - k + i) / i;
    return r;
}

// Picks `take` distinct entries of `pool` uniformly (partial Fisher-Yates).
void choose(std::vector<std::size_t>& pool, std::size_t take, RandomSource& rng)
{
    for (std::size_t t = 0; t < take; ++t)
        std::swap(pool[t], pool[t + static_cast<std::size_t>(rng.below(pool.size() - t))]);
}

int matches(std::uint64_t a, std::uint64_t b, std::uint64_t mask)
{
    return std::popcount(~(a ^ b) & mask);
}

} // namespace

const char* to_string(SamplerMode mode) noexcept
{
    return mode == SamplerMode::pure ? "pure" : "hack";
}

SamplerMode parse_sampler_mode(std::string_view text)
{
    if (text == "pure")
        return SamplerMode::pure;
    if (text == "hack")
        return SamplerMode::hack;
    throw std::invalid_argument("unknown sampler mode '" + std::string(text) + "' (expected pure or hack)");
}

SampleHistory::SampleHistory(std::size_t ell) : ell_(ell)
{
    if (ell_ == 0 || ell_ > max_block_length)
        throw std::invalid_argument("SampleHistory: block length " + std::to_string(ell_) + " outside [1, " +
                                    std::to_string(max_block_length) + "]");
}

void SampleHistory::append(Constraint c)
{
    if (c.w.size() != ell_)
        throw std::invalid_argument("SampleHistory::append: probe length " + std::to_string(c.w.size()) +
                                    " differs from l = " + std::to_string(ell_));
    constraints_.push_back(std::move(c));
}

ConsistentSet::ConsistentSet(std::size_t ell, ConsistencyOptions options)
    : ell_(ell), mask_(low_mask(ell)), options_(options), low_bits_(ell / 2), high_bits_(ell - ell / 2)
{
    if (ell_ == 0 || ell_ > max_block_length)
        throw std::invalid_argument("ConsistentSet: block length " + std::to_string(ell_) + " outside [1, " +
                                    std::to_string(max_block_length) + "]");
}

void ConsistentSet::add(const Constraint& c)
{
    if (c.w.size() != ell_)
        throw std::invalid_argument("ConsistentSet::add: probe length " + std::to_string(c.w.size()) +
                                    " differs from l = " + std::to_string(ell_));
    add(c.w.to_word(), c.f);
}

void ConsistentSet::add(std::uint64_t w, int f)
{
    w &= mask_;
    if (contradiction_)
        return;
    if (f < 0 || static_cast<std::size_t>(f) > ell_) {
        contradiction_ = true;
        survivors_.clear();
        cached_count_.reset();
        return;
    }
    // (w, f) and (~w, l - f) describe the same set; keep one representative.
    if (w & 1U) {
        w = ~w & mask_;
        f = static_cast<int>(ell_) - f;
    }
    for (const auto& c : constraints_) {
        if (c.w == w) {
            if (c.f != f) {
                contradiction_ = true;
                survivors_.clear();
                cached_count_.reset();
            }
            return;
        }
    }
    constraints_.push_back({w, f});
    cached_count_.reset();
    if (materialized_)
        std::erase_if(survivors_, [&](std::uint64_t z) { return matches(z, w, mask_) != f; });
}

std::uint64_t ConsistentSet::materialize_bound() const
{
    const std::uint64_t join_cost = std::uint64_t{4} << std::max(low_bits_, high_bits_);
    return std::min(options_.materialize_threshold, std::max<std::uint64_t>(4096, join_cost));
}

std::uint64_t ConsistentSet::count()
{
    if (contradiction_)
        return 0;
    if (materialized_)
        return survivors_.size();
    if (cached_count_)
        return *cached_count_;

    const std::uint64_t bound = materialize_bound();
    if ((std::uint64_t{1} << ell_) <= bound || constraints_.size() > max_keyed) {
        materialize();
        return survivors_.size();
    }
    std::uint64_t c = 0;
    if (constraints_.size() <= 2) {
        c = closed_form_count();
    } else {
        ensure_halves();
        join([&](std::size_t h, std::size_t l) {
            c += std::uint64_t{high_.size(h)} * low_.size(l);
            return true;
        });
    }
    cached_count_ = c;
    if (c <= bound)
        materialize();
    return c;
}

std::uint64_t ConsistentSet::unique()
{
    const auto c = count();
    if (c != 1)
        throw ContractViolation("ConsistentSet::unique: " + std::to_string(c) + " candidates remain");
    return survivors_.front();
}

std::uint64_t ConsistentSet::sample(RandomSource& rng)
{
    const auto c = count();
    if (c == 0)
        throw std::logic_error("ConsistentSet::sample: no consistent candidate (inconsistent history)");
    if (materialized_)
        return survivors_[static_cast<std::size_t>(rng.below(survivors_.size()))];
    if (constraints_.size() <= 2)
        return closed_form_sample(rng);

    ensure_halves();
    std::uint64_t r = rng.below(c);
    std::optional<std::uint64_t> picked;
    join([&](std::size_t h, std::size_t l) {
        const std::uint64_t lows = low_.size(l);
        const std::uint64_t pairs = high_.size(h) * lows;
        if (r >= pairs) {
            r -= pairs;
            return true;
        }
        const std::uint64_t hi = high_.order[high_.starts[h] + r / lows];
        const std::uint64_t lo = low_.order[low_.starts[l] + r % lows];
        picked = (hi << low_bits_) | lo;
        return false;
    });
    if (!picked)
        throw std::logic_error("ConsistentSet::sample: join walk fell off the end");
    return *picked;
}

bool ConsistentSet::contains(std::uint64_t z) const
{
    if (contradiction_)
        return false;
    z &= mask_;
    return std::all_of(constraints_.begin(), constraints_.end(),
                       [&](const Canonical& c) { return matches(z, c.w, mask_) == c.f; });
}

std::vector<std::uint64_t> ConsistentSet::enumerate()
{
    if (contradiction_)
        return {};
    if (!materialized_)
        materialize();
    return survivors_;
}

std::uint64_t ConsistentSet::closed_form_count() const
{
    const auto m = constraints_.size();
    if (m == 0)
        return std::uint64_t{1} << ell_;
    if (m == 1)
        return binomial(ell_, static_cast<std::uint64_t>(constraints_[0].f));
    const auto& c1 = constraints_[0];
    const auto& c2 = constraints_[1];
    const auto same = static_cast<std::int64_t>(matches(c1.w, c2.w, mask_));
    const auto diff = static_cast<std::int64_t>(ell_) - same;
    // i positions agreeing with both on the common part, j agreeing with c1 on the rest:
    // f1 = i + j, f2 = i + (diff - j).
    const std::int64_t twice_i = c1.f + c2.f - diff;
    if (twice_i < 0 || twice_i % 2 != 0)
        return 0;
    const std::int64_t i = twice_i / 2;
    const std::int64_t j = c1.f - i;
    if (i > same || j < 0 || j > diff)
        return 0;
    return binomial(static_cast<std::uint64_t>(same), static_cast<std::uint64_t>(i)) *
           binomial(static_cast<std::uint64_t>(diff), static_cast<std::uint64_t>(j));
}

std::uint64_t ConsistentSet::closed_form_sample(RandomSource& rng) const
{
    const auto m = constraints_.size();
    if (m == 0)
        return rng.next_u64() & mask_;
    if (m == 1) {
        const auto& c = constraints_[0];
        std::vector<std::size_t> pool(ell_);
        for (std::size_t t = 0; t < ell_; ++t)
            pool[t] = t;
        choose(pool, static_cast<std::size_t>(c.f), rng);
        std::uint64_t z = ~c.w & mask_;
        for (std::size_t t = 0; t < static_cast<std::size_t>(c.f); ++t)
            z ^= std::uint64_t{1} << pool[t];
        return z;
    }
    const auto& c1 = constraints_[0];
    const auto& c2 = constraints_[1];
    std::vector<std::size_t> common, differing;
    for (std::size_t t = 0; t < ell_; ++t)
        (((c1.w ^ c2.w) >> t) & 1U ? differing : common).push_back(t);
    const auto i = static_cast<std::size_t>((c1.f + c2.f - static_cast<int>(differing.size())) / 2);
    const auto j = static_cast<std::size_t>(c1.f) - i;
    choose(common, i, rng);
    choose(differing, j, rng);
    std::uint64_t z = ~c1.w & mask_;
    for (std::size_t t = 0; t < i; ++t)
        z ^= std::uint64_t{1} << common[t];
    for (std::size_t t = 0; t < j; ++t)
        z ^= std::uint64_t{1} << differing[t];
    return z;
}

void ConsistentSet::Half::reset(std::size_t half_bits)
{
    bits = half_bits;
    const std::size_t n = std::size_t{1} << bits;
    order.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        order[i] = static_cast<std::uint32_t>(i);
    keys.assign(1, 0);
    starts.assign({0, static_cast<std::uint32_t>(n)});
}

// Splits every group by the partial match count against w; members keep
// their relative order and the new field becomes the least significant one,
// so groups stay sorted by key.
void ConsistentSet::Half::refine(std::uint64_t w, std::size_t shift)
{
    const std::uint64_t mask = low_mask(bits);
    const std::size_t n = order.size();
    partial.resize(n);
    for (std::size_t p = 0; p < n; ++p)
        partial[p] = static_cast<std::uint8_t>(matches(order[p], w, mask));

    next_order.resize(n);
    next_keys.clear();
    next_starts.clear();
    std::array<std::uint32_t, 64> counts{};
    std::array<std::uint32_t, 64> cursor{};
    for (std::size_t g = 0; g < keys.size(); ++g) {
        const std::uint32_t first = starts[g];
        const std::uint32_t last = starts[g + 1];
        if (last - first == 1) {
            next_order[first] = order[first];
            next_starts.push_back(first);
            next_keys.push_back(keys[g] | (std::uint64_t{partial[first]} << shift));
            continue;
        }
        if (last - first <= 16) {
            // Stable insertion sort by partial count, then emit the runs.
            std::array<std::pair<std::uint8_t, std::uint32_t>, 16> items;
            const std::uint32_t size = last - first;
            for (std::uint32_t i = 0; i < size; ++i) {
                std::pair<std::uint8_t, std::uint32_t> item{partial[first + i], order[first + i]};
                std::uint32_t j = i;
                for (; j > 0 && items[j - 1].first > item.first; --j)
                    items[j] = items[j - 1];
                items[j] = item;
            }
            for (std::uint32_t i = 0; i < size; ++i) {
                if (i == 0 || items[i].first != items[i - 1].first) {
                    next_starts.push_back(first + i);
                    next_keys.push_back(keys[g] | (std::uint64_t{items[i].first} << shift));
                }
                next_order[first + i] = items[i].second;
            }
            continue;
        }
        std::fill_n(counts.begin(), bits + 1, 0U);
        for (std::uint32_t p = first; p < last; ++p)
            ++counts[partial[p]];
        std::uint32_t offset = first;
        for (std::size_t v = 0; v <= bits; ++v) {
            cursor[v] = offset;
            if (counts[v] != 0) {
                next_starts.push_back(offset);
                next_keys.push_back(keys[g] | (std::uint64_t{v} << shift));
                offset += counts[v];
            }
        }
        for (std::uint32_t p = first; p < last; ++p)
            next_order[cursor[partial[p]]++] = order[p];
    }
    next_starts.push_back(static_cast<std::uint32_t>(n));
    order.swap(next_order);
    keys.swap(next_keys);
    starts.swap(next_starts);
}

void ConsistentSet::ensure_halves()
{
    if (!halves_ready_) {
        low_.reset(low_bits_);
        high_.reset(high_bits_);
        keyed_ = 0;
        halves_ready_ = true;
    }
    const std::size_t target = std::min(constraints_.size(), max_keyed);
    for (; keyed_ < target; ++keyed_) {
        const auto& c = constraints_[keyed_];
        low_.refine(c.w & low_mask(low_bits_), field_shift(keyed_));
        high_.refine(c.w >> low_bits_, field_shift(keyed_));
    }
}

std::size_t ConsistentSet::field_shift(std::size_t index)
{
    return field_bits * (max_keyed - 1 - index);
}

std::uint64_t ConsistentSet::packed_targets_values() const
{
    std::uint64_t packed = 0;
    for (std::size_t i = 0; i < keyed_; ++i)
        packed |= static_cast<std::uint64_t>(constraints_[i].f) << field_shift(i);
    return packed;
}

// Keyed targets with a guard bit above each field so that per-field
// subtraction never borrows across fields; a cleared guard marks f_i < partial.
std::uint64_t ConsistentSet::packed_targets() const
{
    std::uint64_t guards = 0;
    for (std::size_t i = 0; i < keyed_; ++i)
        guards |= std::uint64_t{1} << (field_shift(i) + field_bits - 1);
    return packed_targets_values() | guards;
}

// Calls visit(high group, low group) for every pair whose partial counts add
// up to the keyed targets. High keys are walked downwards, so the required
// low keys ascend and one forward pointer over the low groups suffices.
template <class Visit>
void ConsistentSet::join(Visit&& visit) const
{
    const std::uint64_t targets = packed_targets();
    const std::uint64_t guards = targets & ~packed_targets_values();
    std::size_t l = 0;
    const std::size_t lows = low_.groups();
    for (std::size_t h = high_.groups(); h-- > 0;) {
        const std::uint64_t need = targets - high_.keys[h];
        if ((need & guards) != guards)
            continue;
        const std::uint64_t key = need & ~guards;
        while (l < lows && low_.keys[l] < key)
            ++l;
        if (l == lows)
            return;
        if (low_.keys[l] == key && !visit(h, l))
            return;
    }
}

void ConsistentSet::materialize()
{
    survivors_.clear();
    materialized_ = true;
    if (contradiction_)
        return;
    ensure_halves();
    if (cached_count_)
        survivors_.reserve(static_cast<std::size_t>(*cached_count_));
    join([&](std::size_t h, std::size_t l) {
        for (auto hp = high_.starts[h]; hp < high_.starts[h + 1]; ++hp) {
            const std::uint64_t hi = std::uint64_t{high_.order[hp]} << low_bits_;
            for (auto lp = low_.starts[l]; lp < low_.starts[l + 1]; ++lp) {
                const std::uint64_t z = hi | low_.order[lp];
                bool ok = true;
                for (std::size_t i = keyed_; i < constraints_.size() && ok; ++i)
                    ok = matches(z, constraints_[i].w, mask_) == constraints_[i].f;
                if (ok)
                    survivors_.push_back(z);
            }
        }
        return true;
    });
    // The halves are no longer needed once the survivors are listed.
    low_ = {};
    high_ = {};
    halves_ready_ = false;
}

std::uint64_t count_consistent(const SampleHistory& history)
{
    ConsistentSet set(history.ell());
    for (const auto& c : history.constraints())
        set.add(c);
    return set.count();
}

BitString get_consistent(const SampleHistory& history)
{
    ConsistentSet set(history.ell());
    for (const auto& c : history.constraints())
        set.add(c);
    return BitString::from_word(set.unique(), history.ell());
}

BitString sample_next(const SampleHistory& history, SamplerMode mode, RandomSource& rng)
{
    if (mode == SamplerMode::pure)
        return random_bitstring(history.ell(), rng);
    ConsistentSet set(history.ell());
    for (const auto& c : history.constraints())
        set.add(c);
    return BitString::from_word(set.sample(rng), history.ell());
}

UnrestrictedResult solve_unrestricted(const BlockOracle& oracle, std::size_t ell, SamplerMode mode,
                                      std::span<const Constraint> seeds, RandomSource& rng,
                                      const UnrestrictedOptions& options)
{
    ConsistentSet set(ell, options.consistency);
    UnrestrictedResult result;
    for (const auto& s : seeds) {
        set.add(s);
        if (options.stop_on_optimum && static_cast<std::size_t>(s.f) == ell) {
            result.w_opt = s.w;
            result.optimum_observed = true;
            return result;
        }
    }
    while (true) {
        const auto c = set.count();
        if (c == 0)
            throw std::logic_error("solve_unrestricted: no candidate is consistent with the observed fitnesses");
        if (c == 1)
            break;
        BitString w = mode == SamplerMode::pure ? random_bitstring(ell, rng)
                                                : BitString::from_word(set.sample(rng), ell);
        const auto f = oracle(w);
        ++result.queries;
        if (!f) {
            result.w_opt = std::move(w);
            result.terminated = true;
            return result;
        }
        set.add(w.to_word(), *f);
        if (options.stop_on_optimum && static_cast<std::size_t>(*f) == ell) {
            result.w_opt = std::move(w);
            result.optimum_observed = true;
            return result;
        }
    }
    result.w_opt = BitString::from_word(set.unique(), ell);
    return result;
}

} // namespace ubb
