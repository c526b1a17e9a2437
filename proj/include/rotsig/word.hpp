#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "rotsig/common.hpp"

namespace rotsig {

/// A word over the two-letter alphabet {1, 2}, packed as (level, bits):
/// letter 1 -> bit 0, letter 2 -> bit 1, most significant bit first. Within
/// a level, integer order on the bit pattern equals lexicographic order
/// (1 < 2), and word concatenation is a shift-or.
class Word {
public:
    constexpr Word() = default;  // the empty word, level 0

    constexpr Word(int level, std::uint32_t bits) : level_(level), bits_(bits) {}

    static constexpr Word empty() { return Word{}; }

    /// Parse a digit string such as "121"; "" is the empty word.
    static Word from_string(const std::string& digits) {
        if (static_cast<int>(digits.size()) > kMaxOrder)
            throw ContractViolation("word longer than max order: " + digits);
        std::uint32_t bits = 0;
        for (char c : digits) {
            if (c != '1' && c != '2')
                throw ContractViolation("word letters must be 1 or 2: " + digits);
            bits = (bits << 1) | static_cast<std::uint32_t>(c - '1');
        }
        return Word(static_cast<int>(digits.size()), bits);
    }

    constexpr int level() const { return level_; }
    constexpr std::uint32_t bits() const { return bits_; }

    /// Letter at position i (0-based from the front), returns 1 or 2.
    constexpr int letter(int i) const {
        return 1 + static_cast<int>((bits_ >> (level_ - 1 - i)) & 1u);
    }

    /// Concatenation u.v; O(1) on the packed representation.
    constexpr Word concat(Word v) const {
        return Word(level_ + v.level_, (bits_ << v.level_) | v.bits_);
    }

    /// Word with the last letter removed (valid for level >= 1).
    constexpr Word parent() const { return Word(level_ - 1, bits_ >> 1); }

    /// Word extended by one letter (1 or 2) at the end.
    constexpr Word child(int letter) const {
        return Word(level_ + 1, (bits_ << 1) | static_cast<std::uint32_t>(letter - 1));
    }

    int count_letter(int letter) const {
        int ones = 0;
        for (int i = 0; i < level_; ++i) ones += static_cast<int>((bits_ >> i) & 1u);
        return letter == 2 ? ones : level_ - ones;
    }

    std::string str() const {
        std::string s(static_cast<std::size_t>(level_), '1');
        for (int i = 0; i < level_; ++i)
            s[static_cast<std::size_t>(i)] = static_cast<char>('0' + letter(i));
        return s;
    }

    friend constexpr bool operator==(Word a, Word b) = default;
    // (level, bits) order == order by level then lexicographic.
    friend constexpr auto operator<=>(Word a, Word b) {
        if (auto c = a.level_ <=> b.level_; c != 0) return c;
        return a.bits_ <=> b.bits_;
    }

private:
    int level_ = 0;
    std::uint32_t bits_ = 0;
};

/// All words of one level in lexicographic order.
inline std::vector<Word> words_of_level(int level) {
    check_order(level);
    std::vector<Word> out;
    out.reserve(std::size_t{1} << level);
    for (std::uint32_t b = 0; b < (std::uint32_t{1} << level); ++b)
        out.emplace_back(level, b);
    return out;
}

}  // namespace rotsig
