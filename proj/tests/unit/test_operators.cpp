#include "doctest.h"

#include "ubb/operators.hpp"

#include <set>
#include <vector>

using namespace ubb;

namespace {

std::vector<Count> flips(const OperatorSpec& op, std::vector<Count> sizes)
{
    RandomSource rng(1);
    return op.flips(sizes, rng);
}

} // namespace

TEST_CASE("flip counts of the deterministic catalog entries")
{
    CHECK(flips(ops::single_bit_mutation(), {7}) == std::vector<Count>{1});
    CHECK(flips(ops::inversion(), {7}) == std::vector<Count>{7});
    CHECK(flips(ops::flip_one_differing(), {3, 2}) == std::vector<Count>{0, 1});
    CHECK(flips(ops::same_x(2), {3, 2}) == std::vector<Count>{2, 0});
    CHECK(flips(ops::flip_ell_same(3), {7, 2}) == std::vector<Count>{3, 0});
    CHECK(flips(ops::flip_ell_same(3), {2, 5}) == std::vector<Count>{2, 0});
    CHECK(flips(ops::flip_one_where_same(), {4, 4}) == std::vector<Count>{1, 0});
    CHECK(flips(ops::flip_upper_half(3), {5, 3, 2, 0}) == std::vector<Count>{0, 2, 1, 0});
    CHECK(flips(ops::one_where_equal(), {2, 2, 2, 2}) == std::vector<Count>{1, 0, 0, 0});
    CHECK(flips(ops::one_where_2nd_differs(), {2, 2, 2, 2}) == std::vector<Count>{0, 1, 0, 0});
    CHECK(flips(ops::one_where_3rd_differs(), {2, 2, 2, 2}) == std::vector<Count>{0, 0, 1, 0});
    CHECK(flips(ops::two_where_3rd_differs(), {2, 2, 2, 2}) == std::vector<Count>{0, 0, 2, 0});
    CHECK(flips(ops::complicated(), {4, 1, 0, 2}) == std::vector<Count>{0, 1, 0, 1});
    CHECK(flips(ops::xor3(), {4, 1, 3, 2}) == std::vector<Count>{0, 1, 3, 0});
}

TEST_CASE("operators that need more positions than exist are contract violations")
{
    CHECK_THROWS_AS(flips(ops::single_bit_mutation(), {0}), ContractViolation);
    CHECK_THROWS_AS(flips(ops::same_x(3), {2, 5}), ContractViolation);
    CHECK_THROWS_AS(flips(ops::complicated(), {4, 1, 0, 0}), ContractViolation);
}

TEST_CASE("randomized catalog entries stay within their groups")
{
    RandomSource rng(2);
    for (int i = 0; i < 2000; ++i) {
        const Count n0 = static_cast<Count>(rng.below(12));
        const Count n1 = static_cast<Count>(rng.below(12));
        const auto u = ops::uniform_crossover().flips(std::vector<Count>{n0, n1}, rng);
        REQUIRE(u[0] <= n0);
        REQUIRE(u[1] <= n1);
        const auto s = ops::standard_bit_mutation().flips(std::vector<Count>{n0}, rng);
        REQUIRE(s[0] <= n0);
    }
}

TEST_CASE("Xor3 is the bitwise exclusive or, exhaustively up to length 8")
{
    RandomSource rng(3);
    const auto op = ops::xor3();
    {
        const std::vector<BitString> args{BitString::from_string("0011"), BitString::from_string("0101"),
                                          BitString::from_string("0110")};
        CHECK(apply_operator(op, args, rng).to_string() == "0000");
    }
    for (std::size_t len = 1; len <= 8; ++len) {
        const std::uint64_t size = std::uint64_t{1} << len;
        // Every (a, b, c) for len <= 5; all (b, c) for a fixed random a above that.
        const bool full = len <= 5;
        for (std::uint64_t a = 0; a < (full ? size : 1); ++a)
            for (std::uint64_t b = 0; b < size; ++b)
                for (std::uint64_t c = 0; c < size; ++c) {
                    const std::uint64_t aa = full ? a : rng.below(size);
                    const std::vector<BitString> args{BitString::from_word(aa, len), BitString::from_word(b, len),
                                                      BitString::from_word(c, len)};
                    REQUIRE(apply_operator(op, args, rng).to_word() == (aa ^ b ^ c));
                }
    }
}

TEST_CASE("catalog names are unique and cover the roster")
{
    std::set<std::string> names;
    for (const auto& op : ops::catalog())
        CHECK(names.insert(op.name()).second);
    for (const char* name : {"SingleBitMutation", "Inversion", "StandardBitMutation", "UniformCrossover",
                             "FlipOneDiffering", "Same1", "Same2", "Same3", "FlipOneWhereSame", "OneWhereEqual",
                             "OneWhere2ndDiffers", "OneWhere3rdDiffers", "TwoWhere3rdDiffers", "Complicated", "Xor3"})
        CHECK_MESSAGE(names.count(name) == 1, name);
}
