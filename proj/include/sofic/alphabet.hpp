#ifndef SOFIC_ALPHABET_HPP
#define SOFIC_ALPHABET_HPP

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sofic/errors.hpp"

namespace sofic {

/// Index of a symbol in its alphabet. The alphabet order is total and fixed;
/// it is the tie-breaking order used by every search and enumeration.
using Sym = std::uint32_t;

/// An ordered finite set of symbol tokens (each a nonempty string).
class Alphabet {
public:
    explicit Alphabet(std::vector<std::string> tokens);
    Alphabet(std::initializer_list<std::string> tokens)
        : Alphabet(std::vector<std::string>(tokens)) {}

    std::size_t size() const { return tokens_.size(); }
    const std::string& token(Sym s) const { return tokens_.at(s); }
    std::optional<Sym> find(std::string_view token) const;

    /// True when every token is a single character; words then print without
    /// separators.
    bool single_char() const { return single_char_; }

    bool operator==(const Alphabet& other) const { return tokens_ == other.tokens_; }

private:
    std::vector<std::string> tokens_;
    std::map<std::string, Sym, std::less<>> index_;
    bool single_char_;
};

/// A finite word: a sequence of symbol indices. The empty word is permitted.
/// Comparison is lexicographic in the alphabet order.
class Word {
public:
    Word() = default;
    explicit Word(std::vector<Sym> syms) : syms_(std::move(syms)) {}

    std::size_t size() const { return syms_.size(); }
    bool empty() const { return syms_.empty(); }
    Sym operator[](std::size_t i) const { return syms_[i]; }
    const std::vector<Sym>& syms() const { return syms_; }
    auto begin() const { return syms_.begin(); }
    auto end() const { return syms_.end(); }

    void push_back(Sym s) { syms_.push_back(s); }
    void pop_back() { syms_.pop_back(); }

    Word subword(std::size_t pos, std::size_t len) const;
    Word operator+(const Word& other) const;
    Word repeated(std::size_t times) const;
    /// Left rotation by j positions (rotated(1) of "abc" is "bca").
    Word rotated(std::size_t j) const;

    /// A word is primitive when it is not a power of a strictly shorter word.
    bool is_primitive() const;
    Word primitive_root() const;
    /// Lexicographically least rotation; canonical representative of a cycle.
    Word least_rotation() const;

    /// True when the length-i prefix equals the length-i suffix (a border).
    bool has_border(std::size_t i) const;
    /// Largest i in (0, |w|) with a border, or 0 when the word is unbordered.
    std::size_t max_border() const;

    bool operator==(const Word& other) const { return syms_ == other.syms_; }
    auto operator<=>(const Word& other) const { return syms_ <=> other.syms_; }

private:
    std::vector<Sym> syms_;
};

/// Shortest-then-lexicographic order, the tie-break used by all searches.
bool shortlex_less(const Word& a, const Word& b);

/// Parses a word over `a`: single-char alphabets read one symbol per
/// character, otherwise tokens are whitespace-separated. Throws ParseError.
Word parse_word(const Alphabet& a, std::string_view text);

/// Renders a word with the alphabet's tokens.
std::string format_word(const Alphabet& a, const Word& w);

} // namespace sofic

#endif
