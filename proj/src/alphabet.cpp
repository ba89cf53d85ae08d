#include "sofic/alphabet.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace sofic {

Alphabet::Alphabet(std::vector<std::string> tokens) : tokens_(std::move(tokens)) {
    if (tokens_.empty())
        throw ParseError("alphabet must be nonempty");
    single_char_ = true;
    for (Sym i = 0; i < tokens_.size(); ++i) {
        const auto& t = tokens_[i];
        if (t.empty())
            throw ParseError("alphabet tokens must be nonempty");
        if (!index_.emplace(t, i).second)
            throw ParseError("duplicate alphabet token: \"" + t + "\"");
        if (t.size() != 1)
            single_char_ = false;
    }
}

std::optional<Sym> Alphabet::find(std::string_view token) const {
    auto it = index_.find(token);
    if (it == index_.end())
        return std::nullopt;
    return it->second;
}

Word Word::subword(std::size_t pos, std::size_t len) const {
    return Word(std::vector<Sym>(syms_.begin() + pos, syms_.begin() + pos + len));
}

Word Word::operator+(const Word& other) const {
    std::vector<Sym> out = syms_;
    out.insert(out.end(), other.syms_.begin(), other.syms_.end());
    return Word(std::move(out));
}

Word Word::repeated(std::size_t times) const {
    std::vector<Sym> out;
    out.reserve(size() * times);
    for (std::size_t i = 0; i < times; ++i)
        out.insert(out.end(), syms_.begin(), syms_.end());
    return Word(std::move(out));
}

Word Word::rotated(std::size_t j) const {
    if (empty())
        return *this;
    j %= size();
    std::vector<Sym> out(syms_.begin() + j, syms_.end());
    out.insert(out.end(), syms_.begin(), syms_.begin() + j);
    return Word(std::move(out));
}

bool Word::is_primitive() const {
    if (empty())
        return false;
    for (std::size_t d = 1; d * 2 <= size(); ++d) {
        if (size() % d != 0)
            continue;
        bool power = true;
        for (std::size_t i = d; i < size() && power; ++i)
            power = syms_[i] == syms_[i - d];
        if (power)
            return false;
    }
    return true;
}

Word Word::primitive_root() const {
    for (std::size_t d = 1; d <= size(); ++d) {
        if (size() % d != 0)
            continue;
        bool power = true;
        for (std::size_t i = d; i < size() && power; ++i)
            power = syms_[i] == syms_[i - d];
        if (power)
            return subword(0, d);
    }
    return *this;
}

Word Word::least_rotation() const {
    Word best = *this;
    for (std::size_t j = 1; j < size(); ++j) {
        Word r = rotated(j);
        if (r < best)
            best = r;
    }
    return best;
}

bool Word::has_border(std::size_t i) const {
    if (i == 0 || i >= size())
        return false;
    for (std::size_t t = 0; t < i; ++t)
        if (syms_[t] != syms_[size() - i + t])
            return false;
    return true;
}

std::size_t Word::max_border() const {
    for (std::size_t i = size() > 0 ? size() - 1 : 0; i > 0; --i)
        if (has_border(i))
            return i;
    return 0;
}

bool shortlex_less(const Word& a, const Word& b) {
    if (a.size() != b.size())
        return a.size() < b.size();
    return a < b;
}

Word parse_word(const Alphabet& a, std::string_view text) {
    std::vector<Sym> syms;
    if (a.single_char()) {
        for (char c : text) {
            if (c == ' ' || c == '\t')
                continue;
            auto s = a.find(std::string_view(&c, 1));
            if (!s)
                throw ParseError("unknown symbol '" + std::string(1, c) + "'");
            syms.push_back(*s);
        }
    } else {
        std::istringstream in{std::string(text)};
        std::string tok;
        while (in >> tok) {
            auto s = a.find(tok);
            if (!s)
                throw ParseError("unknown symbol \"" + tok + "\"");
            syms.push_back(*s);
        }
    }
    return Word(std::move(syms));
}

std::string format_word(const Alphabet& a, const Word& w) {
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i > 0 && !a.single_char())
            out += ' ';
        out += a.token(w[i]);
    }
    return out;
}

} // namespace sofic
