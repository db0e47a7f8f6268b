#include "doctest.h"

#include "ubb/blackbox.hpp"
#include "ubb/samplers.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <set>
#include <vector>

using namespace ubb;

namespace {

SampleHistory history(std::size_t ell, std::initializer_list<std::pair<const char*, int>> entries)
{
    SampleHistory h(ell);
    for (const auto& [w, f] : entries)
        h.append({BitString::from_string(w), f});
    return h;
}

// Direct scan over all 2^l candidates.
std::vector<std::uint64_t> brute_force(std::size_t ell, const std::vector<std::pair<std::uint64_t, int>>& cs)
{
    std::vector<std::uint64_t> out;
    const std::uint64_t mask = (std::uint64_t{1} << ell) - 1;
    for (std::uint64_t z = 0; z <= mask; ++z) {
        bool ok = true;
        for (const auto& [w, f] : cs)
            ok = ok && std::popcount(~(z ^ w) & mask) == f;
        if (ok)
            out.push_back(z);
    }
    return out;
}

int score(std::uint64_t w, std::uint64_t target, std::size_t ell)
{
    return std::popcount(~(w ^ target) & ((std::uint64_t{1} << ell) - 1));
}

} // namespace

TEST_CASE("count examples")
{
    CHECK(count_consistent(SampleHistory(2)) == 4);
    CHECK(count_consistent(history(2, {{"00", 1}})) == 2);
    CHECK(count_consistent(history(3, {{"000", 1}, {"111", 2}})) == 3);
}

TEST_CASE("get_consistent examples")
{
    CHECK(get_consistent(history(2, {{"00", 1}, {"01", 2}})).to_string() == "01");
    CHECK(get_consistent(history(1, {{"0", 0}})).to_string() == "1");
    CHECK(get_consistent(history(3, {{"000", 0}})).to_string() == "111");
    CHECK_THROWS_AS(get_consistent(history(2, {{"00", 1}})), ContractViolation);
}

TEST_CASE("contradictory histories have no candidate")
{
    CHECK(count_consistent(history(3, {{"000", 1}, {"000", 2}})) == 0);
    CHECK(count_consistent(history(3, {{"000", 1}, {"111", 1}})) == 0);
    CHECK(count_consistent(history(3, {{"010", 4}})) == 0);
    RandomSource rng(1);
    CHECK_THROWS_AS(sample_next(history(3, {{"000", 1}, {"111", 1}}), SamplerMode::hack, rng), std::logic_error);
}

TEST_CASE("history rejects probes of the wrong length")
{
    SampleHistory h(3);
    CHECK_THROWS_AS(h.append({BitString(2), 1}), std::invalid_argument);
    CHECK_THROWS_AS(SampleHistory(0), std::invalid_argument);
    CHECK_THROWS_AS(SampleHistory(max_block_length + 1), std::invalid_argument);
}

TEST_CASE("pure sampling is uniform over all strings")
{
    RandomSource rng(2);
    std::map<std::string, int> seen;
    const SampleHistory h(2);
    for (int i = 0; i < 10000; ++i)
        ++seen[sample_next(h, SamplerMode::pure, rng).to_string()];
    REQUIRE(seen.size() == 4);
    for (const auto& [w, c] : seen) {
        CHECK(c >= 2300);
        CHECK(c <= 2700);
    }
}

TEST_CASE("hack sampling stays inside the consistent set")
{
    RandomSource rng(3);
    const auto h = history(2, {{"00", 1}});
    std::set<std::string> seen;
    for (int i = 0; i < 1000; ++i)
        seen.insert(sample_next(h, SamplerMode::hack, rng).to_string());
    CHECK(seen == std::set<std::string>{"01", "10"});
    const auto unique = history(2, {{"00", 1}, {"01", 2}});
    CHECK(sample_next(unique, SamplerMode::hack, rng).to_string() == "01");
}

TEST_CASE("hack sampling is uniform over survivors in the implicit regime")
{
    // l = 24 keeps 3 constraints implicit; compare against the brute-force set.
    const std::size_t ell = 24;
    RandomSource rng(4);
    const std::uint64_t target = rng.below(std::uint64_t{1} << ell);
    std::vector<std::pair<std::uint64_t, int>> cs;
    ConsistencyOptions small;
    small.materialize_threshold = 16;
    ConsistentSet set(ell, small);
    for (int i = 0; i < 4; ++i) {
        const auto w = rng.below(std::uint64_t{1} << ell);
        cs.emplace_back(w, score(w, target, ell));
        set.add(w, cs.back().second);
    }
    const auto all = brute_force(ell, cs);
    REQUIRE(set.count() == all.size());
    REQUIRE(all.size() > 16);
    REQUIRE_FALSE(set.materialized());
    std::map<std::uint64_t, int> seen;
    const int draws = static_cast<int>(all.size()) * 20;
    for (int i = 0; i < draws; ++i)
        ++seen[set.sample(rng)];
    for (const auto& [z, c] : seen)
        REQUIRE(std::binary_search(all.begin(), all.end(), z));
    double chi2 = 0;
    for (auto z : all) {
        const double d = seen[z] - 20.0;
        chi2 += d * d / 20.0;
    }
    const double df = static_cast<double>(all.size() - 1);
    // Normal approximation of the chi-square tail, 5 standard deviations.
    CHECK(chi2 < df + 5 * std::sqrt(2 * df));
}

TEST_CASE("engine agrees with brute force on random truthful histories")
{
    RandomSource rng(5);
    for (std::size_t ell = 1; ell <= 12; ++ell) {
        for (int run = 0; run < 60; ++run) {
            const std::uint64_t target = rng.below(std::uint64_t{1} << ell);
            ConsistencyOptions options;
            // Force the implicit path now and then.
            options.materialize_threshold = run % 2 ? 1 : std::uint64_t{1} << 20;
            ConsistentSet set(ell, options);
            std::vector<std::pair<std::uint64_t, int>> cs;
            std::uint64_t last = std::uint64_t{1} << ell;
            const int steps = 1 + static_cast<int>(rng.below(2 * ell));
            for (int s = 0; s < steps; ++s) {
                const auto w = rng.below(std::uint64_t{1} << ell);
                cs.emplace_back(w, score(w, target, ell));
                set.add(w, cs.back().second);
                const auto expected = brute_force(ell, cs);
                const auto c = set.count();
                REQUIRE(c == expected.size());
                REQUIRE(c <= last);
                REQUIRE(set.contains(target));
                last = c;
            }
            auto listed = set.enumerate();
            std::sort(listed.begin(), listed.end());
            REQUIRE(listed == brute_force(ell, cs));
        }
    }
}

TEST_CASE("large blocks: the target survives and counts shrink")
{
    RandomSource rng(6);
    for (std::size_t ell : {31, 32, 40}) {
        const std::uint64_t target = rng.below(std::uint64_t{1} << ell);
        ConsistentSet set(ell);
        std::uint64_t last = ~std::uint64_t{0};
        while (set.count() > 1) {
            const auto w = set.sample(rng);
            set.add(w, score(w, target, ell));
            REQUIRE(set.count() <= last);
            REQUIRE(set.contains(target));
            last = set.count();
        }
        CHECK(set.unique() == target);
    }
}

TEST_CASE("solve_unrestricted finds the target in both modes")
{
    RandomSource rng(7);
    for (auto mode : {SamplerMode::pure, SamplerMode::hack})
        for (std::size_t ell = 1; ell <= 16; ++ell)
            for (int run = 0; run < 20; ++run) {
                const auto target = random_bitstring(ell, rng);
                std::uint64_t calls = 0;
                const BlockOracle oracle = [&](const BitString& w) -> std::optional<int> {
                    ++calls;
                    return static_cast<int>(match_count(w, target));
                };
                UnrestrictedOptions options;
                options.stop_on_optimum = run % 2 == 0;
                const auto r = solve_unrestricted(oracle, ell, mode, {}, rng, options);
                REQUIRE(r.w_opt == target);
                REQUIRE(r.queries == calls);
                REQUIRE_FALSE(r.terminated);
            }
}

TEST_CASE("solve_unrestricted: one bit needs at most one probe")
{
    RandomSource rng(8);
    for (int run = 0; run < 50; ++run) {
        const auto target = random_bitstring(1, rng);
        const BlockOracle oracle = [&](const BitString& w) -> std::optional<int> {
            return static_cast<int>(match_count(w, target));
        };
        const auto r = solve_unrestricted(oracle, 1, SamplerMode::hack, {}, rng);
        CHECK(r.queries <= 1);
        CHECK(r.w_opt == target);
    }
}

TEST_CASE("solve_unrestricted: pinning seeds cost nothing")
{
    RandomSource rng(9);
    const auto target = BitString::from_string("0110");
    const std::vector<Constraint> seeds{{BitString::from_string("0000"), 2}, {BitString::from_string("0100"), 3},
                                        {BitString::from_string("0010"), 3}};
    const BlockOracle oracle = [&](const BitString&) -> std::optional<int> {
        FAIL("oracle must not be called");
        return std::nullopt;
    };
    const auto r = solve_unrestricted(oracle, 4, SamplerMode::pure, seeds, rng);
    CHECK(r.queries == 0);
    CHECK(r.w_opt == target);
}

TEST_CASE("solve_unrestricted stops when the oracle reports termination")
{
    RandomSource rng(10);
    int calls = 0;
    const BlockOracle oracle = [&](const BitString&) -> std::optional<int> {
        if (++calls == 2)
            return std::nullopt;
        return 3;
    };
    const auto r = solve_unrestricted(oracle, 8, SamplerMode::pure, {}, rng);
    CHECK(r.terminated);
    CHECK(r.queries == 2);
}

TEST_CASE("hack is not worse than pure at l = 16")
{
    RandomSource rng(11);
    double totals[2] = {0, 0};
    const int runs = 2000;
    for (int m = 0; m < 2; ++m)
        for (int run = 0; run < runs; ++run) {
            const auto target = random_bitstring(16, rng);
            const BlockOracle oracle = [&](const BitString& w) -> std::optional<int> {
                return static_cast<int>(match_count(w, target));
            };
            totals[m] += static_cast<double>(
                solve_unrestricted(oracle, 16, m == 0 ? SamplerMode::pure : SamplerMode::hack, {}, rng).queries);
        }
    CHECK(totals[1] <= totals[0]);
}

TEST_CASE("sampler mode names round trip")
{
    CHECK(parse_sampler_mode("pure") == SamplerMode::pure);
    CHECK(parse_sampler_mode(to_string(SamplerMode::hack)) == SamplerMode::hack);
    CHECK_THROWS_AS(parse_sampler_mode("other"), std::invalid_argument);
}
