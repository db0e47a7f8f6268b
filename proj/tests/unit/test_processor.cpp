#include "doctest.h"

#include "ubb/operators.hpp"
#include "ubb/processor.hpp"

#include <map>
#include <numeric>
#include <vector>

using namespace ubb;

namespace {

OperatorSpec constant(std::string name, int arity, std::vector<Count> d)
{
    return OperatorSpec(std::move(name), arity, [d](std::span<const Count>, RandomSource&) { return d; });
}

} // namespace

TEST_CASE("unary partition is a single group")
{
    const std::vector<BitString> args{BitString::from_string("0110")};
    const auto p = partition_groups(args);
    CHECK(p.sizes == std::vector<Count>{4});
    CHECK(p.members(0) == std::vector<std::size_t>{0, 1, 2, 3});
}

TEST_CASE("binary partition splits agreeing and differing positions")
{
    const std::vector<BitString> args{BitString::from_string("0000"), BitString::from_string("0101")};
    const auto p = partition_groups(args);
    CHECK(p.members(0) == std::vector<std::size_t>{0, 2});
    CHECK(p.members(1) == std::vector<std::size_t>{1, 3});
}

TEST_CASE("group index counts argument t with weight 2^(t-1)")
{
    // One position whose differences from the first argument are (1, 1, 0, 1).
    const std::vector<BitString> args{BitString::from_string("0"), BitString::from_string("1"),
                                      BitString::from_string("1"), BitString::from_string("0"),
                                      BitString::from_string("1")};
    const auto p = partition_groups(args);
    CHECK(p.group_of[0] == 11);
    CHECK(p.sizes.size() == 16);
    CHECK(p.sizes[11] == 1);
}

TEST_CASE("partition errors")
{
    CHECK_THROWS_AS(partition_groups(std::span<const BitString>{}), std::invalid_argument);
    const std::vector<BitString> bad{BitString(3), BitString(4)};
    CHECK_THROWS_AS(partition_groups(bad), std::invalid_argument);
}

TEST_CASE("partition is invariant under a common xor and equivariant under permutations")
{
    RandomSource rng(31);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t n = 1 + rng.below(12);
        const int k = 1 + static_cast<int>(rng.below(5));
        std::vector<BitString> args;
        for (int i = 0; i < k; ++i)
            args.push_back(random_bitstring(n, rng));
        const auto base = partition_groups(args);

        const auto z = random_bitstring(n, rng);
        std::vector<BitString> masked;
        for (const auto& a : args)
            masked.push_back(a ^ z);
        REQUIRE(partition_groups(masked).group_of == base.group_of);

        std::vector<std::size_t> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        for (std::size_t i = n; i > 1; --i)
            std::swap(perm[i - 1], perm[rng.below(i)]);
        std::vector<BitString> moved;
        for (const auto& a : args) {
            BitString b(n);
            for (std::size_t i = 0; i < n; ++i)
                b.set(perm[i], a.test(i));
            moved.push_back(b);
        }
        const auto permuted = partition_groups(moved);
        for (std::size_t i = 0; i < n; ++i)
            REQUIRE(permuted.group_of[perm[i]] == base.group_of[i]);
        REQUIRE(std::accumulate(base.sizes.begin(), base.sizes.end(), Count{0}) == static_cast<Count>(n));
    }
}

TEST_CASE("all-zero flips return the first argument")
{
    RandomSource rng(1);
    const std::vector<BitString> args{BitString::from_string("10110"), BitString::from_string("00111")};
    CHECK(apply_operator(constant("Id", 2, {0, 0}), args, rng) == args[0]);
}

TEST_CASE("flips land d_j times inside each group")
{
    RandomSource rng(2);
    for (int trial = 0; trial < 500; ++trial) {
        const std::size_t n = 1 + rng.below(14);
        const int k = 1 + static_cast<int>(rng.below(4));
        std::vector<BitString> args;
        for (int i = 0; i < k; ++i)
            args.push_back(random_bitstring(n, rng));
        const auto part = partition_groups(args);
        std::vector<Count> d(part.sizes.size());
        for (std::size_t j = 0; j < d.size(); ++j)
            d[j] = static_cast<Count>(rng.below(static_cast<std::uint64_t>(part.sizes[j]) + 1));
        const auto out = apply_operator(constant("Fixed", k, d), args, rng);
        std::vector<Count> flipped(d.size(), 0);
        for (std::size_t i = 0; i < n; ++i)
            if (out.test(i) != args[0].test(i))
                ++flipped[part.group_of[i]];
        REQUIRE(flipped == d);
    }
}

TEST_CASE("out-of-range flip counts are contract violations")
{
    RandomSource rng(3);
    const std::vector<BitString> args{BitString::from_string("0000"), BitString::from_string("0011")};
    CHECK_THROWS_AS(apply_operator(constant("TooMany", 2, {3, 0}), args, rng), ContractViolation);
    CHECK_THROWS_AS(apply_operator(constant("Negative", 2, {0, -1}), args, rng), ContractViolation);
    CHECK_THROWS_AS(apply_operator(constant("Short", 2, {0}), args, rng), ContractViolation);
    CHECK_THROWS_AS(apply_operator(constant("Unary", 1, {0}), args, rng), std::invalid_argument);
}

TEST_CASE("each subset of a group is equally likely")
{
    // Group 0 has 5 positions, d_0 = 2: C(5, 2) = 10 subsets.
    RandomSource rng(4);
    const std::vector<BitString> args{BitString(5)};
    const auto op = constant("Two", 1, {2});
    std::map<std::string, int> seen;
    const int draws = 50000;
    for (int i = 0; i < draws; ++i)
        ++seen[apply_operator(op, args, rng).to_string()];
    REQUIRE(seen.size() == 10);
    double chi2 = 0;
    for (const auto& [key, c] : seen)
        chi2 += (c - draws / 10.0) * (c - draws / 10.0) / (draws / 10.0);
    // 9 degrees of freedom; the 1e-4 critical value is about 33.7.
    CHECK(chi2 < 33.7);
}

TEST_CASE("subset uniformity for every group size up to 5")
{
    RandomSource rng(5);
    for (std::size_t size = 1; size <= 5; ++size)
        for (Count d = 0; d <= static_cast<Count>(size); ++d) {
            const std::vector<BitString> args{BitString(size)};
            const auto op = constant("D", 1, {d});
            std::map<std::string, int> seen;
            const int draws = 20000;
            for (int i = 0; i < draws; ++i)
                ++seen[apply_operator(op, args, rng).to_string()];
            std::size_t subsets = 1;
            for (Count t = 0; t < d; ++t)
                subsets = subsets * (size - static_cast<std::size_t>(t)) / static_cast<std::size_t>(t + 1);
            REQUIRE(seen.size() == subsets);
            const double expected = static_cast<double>(draws) / static_cast<double>(subsets);
            double chi2 = 0;
            for (const auto& [key, c] : seen)
                chi2 += (c - expected) * (c - expected) / expected;
            // Generous bound: df <= 9, p far below 1e-4 beyond 40.
            CHECK(chi2 < 40);
        }
}

TEST_CASE("processor queries every produced point and enforces its arity cap")
{
    RandomSource rng(6);
    auto inst = OneMaxInstance::random(10, rng);
    Processor proc(inst, rng, 2);
    const auto x = proc.random_point();
    const auto y = proc.apply(ops::single_bit_mutation(), {x});
    CHECK(proc.queries() == 2);
    const auto z = proc.apply(ops::uniform_crossover(), {x, y});
    CHECK(z.valid());
    CHECK(proc.max_arity_used() == 2);
    CHECK_THROWS_AS(proc.apply(ops::xor3(), {x, y, z}), ContractViolation);
    CHECK(proc.queries() == 3);
    const EvaluatedPoint pair[] = {x, y};
    CHECK(proc.group_sizes(pair)[1] == 1);
    CHECK(proc.queries() == 3);
}
