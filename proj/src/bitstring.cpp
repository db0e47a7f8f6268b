#include "ubb/bitstring.hpp"

#include "ubb/random.hpp"

#include <bit>
#include <stdexcept>

namespace ubb {

namespace {

constexpr std::size_t word_count(std::size_t bits) { return (bits + 63) / 64; }

void require_same_length(const BitString& a, const BitString& b, const char* what)
{
    if (a.size() != b.size())
        throw std::invalid_argument(std::string(what) + ": length mismatch (" +
                                    std::to_string(a.size()) + " vs " + std::to_string(b.size()) + ")");
}

} // namespace

BitString::BitString(std::size_t length) : length_(length), words_(word_count(length), 0) {}

BitString BitString::from_string(std::string_view bits)
{
    BitString out(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i] == '1')
            out.set(i, true);
        else if (bits[i] != '0')
            throw std::invalid_argument("BitString::from_string: unexpected character '" +
                                        std::string(1, bits[i]) + "'");
    }
    return out;
}

BitString BitString::from_word(std::uint64_t value, std::size_t length)
{
    if (length > 64)
        throw std::invalid_argument("BitString::from_word: length exceeds 64");
    BitString out(length);
    if (length > 0) {
        out.words_[0] = value;
        out.clear_tail();
    }
    return out;
}

BitString BitString::ones(std::size_t length)
{
    BitString out(length);
    for (auto& w : out.words_)
        w = ~std::uint64_t{0};
    out.clear_tail();
    return out;
}

bool BitString::test(std::size_t pos) const
{
    if (pos >= length_)
        throw std::out_of_range("BitString::test: position " + std::to_string(pos) + " out of range");
    return (words_[pos / 64] >> (pos % 64)) & 1U;
}

void BitString::set(std::size_t pos, bool value)
{
    if (pos >= length_)
        throw std::out_of_range("BitString::set: position " + std::to_string(pos) + " out of range");
    const std::uint64_t mask = std::uint64_t{1} << (pos % 64);
    if (value)
        words_[pos / 64] |= mask;
    else
        words_[pos / 64] &= ~mask;
}

void BitString::flip(std::size_t pos)
{
    if (pos >= length_)
        throw std::out_of_range("BitString::flip: position " + std::to_string(pos) + " out of range");
    words_[pos / 64] ^= std::uint64_t{1} << (pos % 64);
}

std::size_t BitString::popcount() const noexcept
{
    std::size_t total = 0;
    for (auto w : words_)
        total += static_cast<std::size_t>(std::popcount(w));
    return total;
}

std::string BitString::to_string() const
{
    std::string out(length_, '0');
    for (std::size_t i = 0; i < length_; ++i)
        if ((words_[i / 64] >> (i % 64)) & 1U)
            out[i] = '1';
    return out;
}

std::uint64_t BitString::to_word() const
{
    if (length_ > 64)
        throw std::logic_error("BitString::to_word: length exceeds 64");
    return words_.empty() ? 0 : words_[0];
}

BitString BitString::operator^(const BitString& other) const
{
    require_same_length(*this, other, "BitString::operator^");
    BitString out(*this);
    for (std::size_t i = 0; i < words_.size(); ++i)
        out.words_[i] ^= other.words_[i];
    return out;
}

BitString BitString::operator~() const
{
    BitString out(*this);
    for (auto& w : out.words_)
        w = ~w;
    out.clear_tail();
    return out;
}

void BitString::clear_tail() noexcept
{
    if (length_ % 64 != 0 && !words_.empty())
        words_.back() &= (std::uint64_t{1} << (length_ % 64)) - 1;
}

BitString random_bitstring(std::size_t length, RandomSource& rng)
{
    if (length == 0)
        throw std::invalid_argument("random_bitstring: length must be positive");
    BitString out(length);
    for (auto& w : out.words())
        w = rng.next_u64();
    if (length % 64 != 0)
        out.words().back() &= (std::uint64_t{1} << (length % 64)) - 1;
    return out;
}

std::size_t hamming_distance(const BitString& a, const BitString& b)
{
    require_same_length(a, b, "hamming_distance");
    std::size_t total = 0;
    auto aw = a.words();
    auto bw = b.words();
    for (std::size_t i = 0; i < aw.size(); ++i)
        total += static_cast<std::size_t>(std::popcount(aw[i] ^ bw[i]));
    return total;
}

std::size_t match_count(const BitString& a, const BitString& b)
{
    require_same_length(a, b, "match_count");
    return a.size() - hamming_distance(a, b);
}

BitString flip_at(const BitString& a, std::span<const std::size_t> positions)
{
    BitString out(a);
    BitString seen(a.size());
    for (auto pos : positions) {
        if (pos >= a.size())
            throw std::out_of_range("flip_at: position " + std::to_string(pos) + " out of range");
        if (seen.test(pos))
            throw std::invalid_argument("flip_at: duplicate position " + std::to_string(pos));
        seen.set(pos, true);
        out.flip(pos);
    }
    return out;
}

} // namespace ubb
