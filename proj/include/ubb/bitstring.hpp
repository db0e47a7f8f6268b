#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ubb {

class RandomSource;

/// Fixed-length bit vector. Positions are 0-based here; text formats and
/// docs use the 1-based convention [1..n] and convert at the boundary.
class BitString {
public:
    BitString() = default;
    explicit BitString(std::size_t length);

    /// Parses a string of '0'/'1' characters, leftmost character = position 1.
    static BitString from_string(std::string_view bits);
    /// Low `length` bits of `value`, bit t of the value at position t.
    static BitString from_word(std::uint64_t value, std::size_t length);
    static BitString ones(std::size_t length);

    std::size_t size() const noexcept { return length_; }
    bool empty() const noexcept { return length_ == 0; }

    bool test(std::size_t pos) const;
    void set(std::size_t pos, bool value);
    void flip(std::size_t pos);

    std::size_t popcount() const noexcept;
    std::string to_string() const;
    /// Only valid for size() <= 64.
    std::uint64_t to_word() const;

    std::span<const std::uint64_t> words() const noexcept { return words_; }
    std::span<std::uint64_t> words() noexcept { return words_; }

    BitString operator^(const BitString& other) const;
    BitString operator~() const;

    friend bool operator==(const BitString&, const BitString&) = default;

private:
    void clear_tail() noexcept;

    std::size_t length_ = 0;
    std::vector<std::uint64_t> words_;
};

BitString random_bitstring(std::size_t length, RandomSource& rng);

std::size_t hamming_distance(const BitString& a, const BitString& b);
std::size_t match_count(const BitString& a, const BitString& b);

/// Copy of `a` with the given (0-based, distinct) positions flipped.
BitString flip_at(const BitString& a, std::span<const std::size_t> positions);

} // namespace ubb
