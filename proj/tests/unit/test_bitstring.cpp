#include "doctest.h"

#include "ubb/bitstring.hpp"
#include "ubb/random.hpp"

#include <stdexcept>
#include <vector>

using namespace ubb;

namespace {

std::size_t scan_matches(const BitString& a, const BitString& b)
{
    std::size_t m = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        m += a.test(i) == b.test(i);
    return m;
}

} // namespace

TEST_CASE("text round trip uses the leftmost character as the first position")
{
    const auto b = BitString::from_string("1011");
    CHECK(b.size() == 4);
    CHECK(b.test(0));
    CHECK_FALSE(b.test(1));
    CHECK(b.to_string() == "1011");
    CHECK(BitString::from_word(0b1101, 4).to_string() == "1011");
    CHECK(BitString::from_word(0b1101, 4).to_word() == 0b1101);
    CHECK_THROWS_AS(BitString::from_string("10a"), std::invalid_argument);
}

TEST_CASE("complement and xor keep the tail of the last word clear")
{
    const auto a = BitString::from_string(std::string(70, '1'));
    const auto z = ~a;
    CHECK(z.popcount() == 0);
    CHECK((~z).popcount() == 70);
    CHECK((a ^ z).popcount() == 70);
    CHECK_THROWS_AS(a ^ BitString(69), std::invalid_argument);
}

TEST_CASE("hamming distance examples")
{
    CHECK(hamming_distance(BitString::from_string("0000"), BitString::from_string("0000")) == 0);
    CHECK(hamming_distance(BitString::from_string("0011"), BitString::from_string("0101")) == 2);
    CHECK_THROWS_AS(hamming_distance(BitString(3), BitString(4)), std::invalid_argument);
}

TEST_CASE("match count examples")
{
    CHECK(match_count(BitString::from_string("101"), BitString::from_string("101")) == 3);
    CHECK(match_count(BitString::from_string("000"), BitString::from_string("111")) == 0);
    CHECK(match_count(BitString::from_string("0110"), BitString::from_string("0101")) == 2);
    CHECK_THROWS_AS(match_count(BitString(3), BitString(4)), std::invalid_argument);
}

TEST_CASE("match count plus distance is the length, exhaustively up to length 8")
{
    for (std::size_t len = 1; len <= 8; ++len)
        for (std::uint64_t a = 0; a < (1u << len); ++a)
            for (std::uint64_t b = 0; b < (1u << len); ++b) {
                const auto x = BitString::from_word(a, len);
                const auto y = BitString::from_word(b, len);
                REQUIRE(match_count(x, y) == scan_matches(x, y));
                REQUIRE(hamming_distance(x, y) + match_count(x, y) == len);
            }
}

TEST_CASE("distance at length 31 equals 31 minus matches")
{
    RandomSource rng(3);
    for (int i = 0; i < 1000; ++i) {
        const auto a = random_bitstring(31, rng);
        const auto b = random_bitstring(31, rng);
        REQUIRE(hamming_distance(a, b) == 31 - match_count(a, b));
    }
}

TEST_CASE("hamming distance is symmetric and obeys the triangle inequality")
{
    RandomSource rng(4);
    for (int i = 0; i < 2000; ++i) {
        const std::size_t len = 1 + rng.below(16);
        const auto a = random_bitstring(len, rng);
        const auto b = random_bitstring(len, rng);
        const auto c = random_bitstring(len, rng);
        REQUIRE(hamming_distance(a, b) == hamming_distance(b, a));
        REQUIRE(hamming_distance(a, c) <= hamming_distance(a, b) + hamming_distance(b, c));
    }
}

TEST_CASE("flip_at examples and errors")
{
    const auto zero = BitString::from_string("0000");
    CHECK(flip_at(zero, {}) == zero);
    const std::vector<std::size_t> first_third{0, 2};
    CHECK(flip_at(zero, first_third).to_string() == "1010");
    const std::vector<std::size_t> outside{4};
    CHECK_THROWS_AS(flip_at(zero, outside), std::out_of_range);
    const std::vector<std::size_t> twice{1, 1};
    CHECK_THROWS_AS(flip_at(zero, twice), std::invalid_argument);
}

TEST_CASE("flip_at is an involution, exhaustively up to length 8")
{
    for (std::size_t len = 1; len <= 8; ++len)
        for (std::uint64_t a = 0; a < (1u << len); a += 3)
            for (std::uint64_t s = 0; s < (1u << len); ++s) {
                std::vector<std::size_t> positions;
                for (std::size_t t = 0; t < len; ++t)
                    if ((s >> t) & 1)
                        positions.push_back(t);
                const auto x = BitString::from_word(a, len);
                const auto once = flip_at(x, positions);
                REQUIRE(hamming_distance(x, once) == positions.size());
                REQUIRE(flip_at(once, positions) == x);
            }
}

TEST_CASE("random bitstrings: one bit is fair")
{
    RandomSource rng(11);
    int ones = 0;
    for (int i = 0; i < 10000; ++i)
        ones += random_bitstring(1, rng).test(0);
    // 4.5 standard deviations of Bin(10^4, 1/2).
    CHECK(ones > 5000 - 225);
    CHECK(ones < 5000 + 225);
}

TEST_CASE("random bitstrings: reproducible by seed")
{
    RandomSource a(99), b(99);
    CHECK(random_bitstring(4, a) == random_bitstring(4, b));
    CHECK_THROWS_AS(random_bitstring(0, a), std::invalid_argument);
}

TEST_CASE("random bitstrings: mean popcount at length 16")
{
    RandomSource rng(12);
    double total = 0;
    for (int i = 0; i < 10000; ++i)
        total += static_cast<double>(random_bitstring(16, rng).popcount());
    const double mean = total / 10000;
    CHECK(mean >= 7.8);
    CHECK(mean <= 8.2);
}

TEST_CASE("bit access is range checked")
{
    BitString b(5);
    CHECK_THROWS_AS(b.test(5), std::out_of_range);
    CHECK_THROWS_AS(b.set(5, true), std::out_of_range);
    b.flip(4);
    CHECK(b.to_string() == "00001");
}
