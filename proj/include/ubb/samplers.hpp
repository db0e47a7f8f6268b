#pragma once

#include "ubb/bitstring.hpp"
#include "ubb/random.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace ubb {

enum class SamplerMode { pure, hack };

const char* to_string(SamplerMode mode) noexcept;
SamplerMode parse_sampler_mode(std::string_view text);

/// A probe w with its observed block fitness f; candidate z is consistent
/// iff match_count(z, w) = f.
struct Constraint {
    BitString w;
    int f = 0;
};

class SampleHistory {
public:
    explicit SampleHistory(std::size_t ell);

    void append(Constraint c);
    std::size_t ell() const noexcept { return ell_; }
    std::span<const Constraint> constraints() const noexcept { return constraints_; }
    std::size_t size() const noexcept { return constraints_.size(); }

private:
    std::size_t ell_;
    std::vector<Constraint> constraints_;
};

/// Largest block the consistency engine handles (two 20-bit halves).
inline constexpr std::size_t max_block_length = 40;

struct ConsistencyOptions {
    /// Upper bound on the survivor count at which the set is materialized.
    std::uint64_t materialize_threshold = std::uint64_t{1} << 20;
};

/// Exact set of l-bit strings consistent with a list of constraints.
///
/// Stays implicit while large: counts come from closed forms (up to two
/// constraints) or from a meet-in-the-middle join over the low and high
/// halves of the block, keyed by the packed per-constraint partial match
/// counts. Once the count drops below the materialization bound the
/// survivors are listed and each further constraint filters that list.
/// Candidates are held as words: bit t of the word is position t of w.
class ConsistentSet {
public:
    explicit ConsistentSet(std::size_t ell, ConsistencyOptions options = {});

    void add(const Constraint& c);
    void add(std::uint64_t w, int f);

    std::size_t ell() const noexcept { return ell_; }
    bool materialized() const noexcept { return materialized_; }

    std::uint64_t count();
    /// The single survivor; ContractViolation unless count() == 1.
    std::uint64_t unique();
    /// Uniform among survivors; std::logic_error if the set is empty.
    std::uint64_t sample(RandomSource& rng);
    bool contains(std::uint64_t z) const;
    std::vector<std::uint64_t> enumerate();

private:
    struct Canonical {
        std::uint64_t w;
        int f;
    };

    // One half of the block: its strings grouped by packed partial match
    // counts against the keyed constraints, groups ascending by key.
    struct Half {
        std::size_t bits = 0;
        std::vector<std::uint32_t> order;
        std::vector<std::uint64_t> keys;
        std::vector<std::uint32_t> starts; // groups() + 1 entries
        std::vector<std::uint8_t> partial;
        std::vector<std::uint32_t> next_order;
        std::vector<std::uint64_t> next_keys;
        std::vector<std::uint32_t> next_starts;

        void reset(std::size_t half_bits);
        void refine(std::uint64_t w, std::size_t shift);
        std::size_t groups() const noexcept { return keys.size(); }
        std::uint32_t size(std::size_t g) const noexcept { return starts[g + 1] - starts[g]; }
    };

    std::uint64_t closed_form_count() const;
    std::uint64_t closed_form_sample(RandomSource& rng) const;
    void ensure_halves();
    static std::size_t field_shift(std::size_t index);
    std::uint64_t packed_targets() const;
    std::uint64_t packed_targets_values() const;
    template <class Visit>
    void join(Visit&& visit) const;
    void materialize();
    std::uint64_t materialize_bound() const;

    std::size_t ell_;
    std::uint64_t mask_;
    ConsistencyOptions options_;
    std::vector<Canonical> constraints_;
    bool contradiction_ = false;
    bool materialized_ = false;
    std::vector<std::uint64_t> survivors_;
    std::optional<std::uint64_t> cached_count_;

    // Meet-in-the-middle state.
    std::size_t low_bits_;
    std::size_t high_bits_;
    std::size_t keyed_ = 0;
    bool halves_ready_ = false;
    Half low_;
    Half high_;
};

std::uint64_t count_consistent(const SampleHistory& history);
BitString get_consistent(const SampleHistory& history);
/// Pure: uniform over all 2^l strings. Hack: uniform over the consistent set.
BitString sample_next(const SampleHistory& history, SamplerMode mode, RandomSource& rng);

/// Block oracle w -> f. Returns nullopt once the enclosing run has hit its
/// global optimum, which ends the search immediately.
using BlockOracle = std::function<std::optional<int>(const BitString& w)>;

struct UnrestrictedOptions {
    /// Return as soon as a probe scores l. With this off the loop only stops
    /// once a single candidate remains.
    bool stop_on_optimum = true;
    ConsistencyOptions consistency;
};

struct UnrestrictedResult {
    BitString w_opt;
    std::uint64_t queries = 0;
    bool optimum_observed = false;
    bool terminated = false;
};

UnrestrictedResult solve_unrestricted(const BlockOracle& oracle, std::size_t ell, SamplerMode mode,
                                      std::span<const Constraint> seeds, RandomSource& rng,
                                      const UnrestrictedOptions& options = {});

} // namespace ubb
