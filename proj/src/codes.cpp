#include "sofic/codes.hpp"

#include <algorithm>
#include <cassert>

namespace sofic {

Word RuleKernel::apply_word(const Word& w, int radius) const {
    std::vector<Sym> out;
    const std::size_t win = 2 * static_cast<std::size_t>(radius) + 1;
    out.reserve(w.size() - win + 1);
    std::span<const Sym> all(w.syms());
    for (std::size_t i = 0; i + win <= w.size(); ++i)
        out.push_back(eval(all.subspan(i, win)));
    return Word(std::move(out));
}

void RuleKernel::append_salient(const FischerCover&, int, std::vector<Word>&) const {}

bool RuleKernel::structurally_endomorphic(const FischerCover&) const { return false; }

namespace {

class ShiftKernel final : public RuleKernel {
public:
    explicit ShiftKernel(int j) : j_(j) {}
    Sym eval(std::span<const Sym> w) const override {
        const std::size_t r = (w.size() - 1) / 2;
        return w[r + j_];
    }
    Word apply_word(const Word& w, int radius) const override {
        const std::size_t win = 2 * static_cast<std::size_t>(radius) + 1;
        std::vector<Sym> out;
        for (std::size_t i = 0; i + win <= w.size(); ++i)
            out.push_back(w[i + static_cast<std::size_t>(radius + j_)]);
        return Word(std::move(out));
    }
    bool structurally_endomorphic(const FischerCover&) const override { return true; }
    std::string describe() const override {
        return j_ == 0 ? "id" : "sigma^" + std::to_string(j_);
    }

private:
    int j_;
};

class TableKernel final : public RuleKernel {
public:
    TableKernel(std::map<Word, Sym> table, std::string name)
        : table_(std::move(table)), name_(std::move(name)) {}
    Sym eval(std::span<const Sym> w) const override {
        auto it = table_.find(Word(std::vector<Sym>(w.begin(), w.end())));
        if (it == table_.end())
            throw Error("rule queried outside the allowable windows");
        return it->second;
    }
    std::string describe() const override { return name_; }

private:
    std::map<Word, Sym> table_;
    std::string name_;
};

class CompositionKernel final : public RuleKernel {
public:
    CompositionKernel(BlockCode outer, BlockCode inner)
        : outer_(std::move(outer)), inner_(std::move(inner)) {}
    Sym eval(std::span<const Sym> w) const override {
        Word mid = inner_.kernel().apply_word(Word(std::vector<Sym>(w.begin(), w.end())),
                                              inner_.radius());
        return outer_.eval(std::span<const Sym>(mid.syms()));
    }
    Word apply_word(const Word& w, int) const override {
        return outer_.kernel().apply_word(inner_.kernel().apply_word(w, inner_.radius()),
                                          outer_.radius());
    }
    void append_salient(const FischerCover& c, int radius, std::vector<Word>& out) const override {
        // Extend the factors' salient windows to the composed width.
        std::vector<Word> part;
        outer_.kernel().append_salient(c, outer_.radius(), part);
        inner_.kernel().append_salient(c, inner_.radius(), part);
        const std::size_t win = 2 * static_cast<std::size_t>(radius) + 1;
        for (const auto& w : part) {
            if (w.size() > win)
                continue;
            // Pad on both sides through the cover, preferring low symbols.
            Word padded = w;
            while (padded.size() < win) {
                bool grew = false;
                for (Sym s = 0; s < c.alphabet().size() && !grew; ++s) {
                    Word cand = padded + Word({s});
                    if (c.is_allowable(cand)) {
                        padded = cand;
                        grew = true;
                    }
                }
                if (!grew)
                    break;
                if (padded.size() == win)
                    break;
                grew = false;
                for (Sym s = 0; s < c.alphabet().size() && !grew; ++s) {
                    Word cand = Word({s}) + padded;
                    if (c.is_allowable(cand)) {
                        padded = cand;
                        grew = true;
                    }
                }
                if (!grew)
                    break;
            }
            if (padded.size() == win)
                out.push_back(padded);
        }
    }
    bool structurally_endomorphic(const FischerCover& c) const override {
        return outer_.kernel().structurally_endomorphic(c) &&
               inner_.kernel().structurally_endomorphic(c);
    }
    std::string describe() const override {
        return "(" + outer_.describe() + " . " + inner_.describe() + ")";
    }

private:
    BlockCode outer_;
    BlockCode inner_;
};

} // namespace

Word BlockCode::apply(const Word& w) const {
    if (w.size() < window())
        throw TooShortError(w.size(), window());
    return kernel_->apply_word(w, radius_);
}

EvPeriodicPoint BlockCode::apply(const EvPeriodicPoint& x) const {
    const long R = radius_;
    const long kl = static_cast<long>(x.left().size());
    const long kr = static_cast<long>(x.right().size());
    if (x.is_periodic()) {
        // Image of the periodic pattern, window-aligned at position 0.
        Word in = x.slice(-R, kl + R);
        Word img = apply(in);
        return EvPeriodicPoint::periodic(img);
    }
    const long brk = x.break_index();
    const long right_start = brk + static_cast<long>(x.center().size());
    // The image is left-periodic (period kl) strictly below brk - R and
    // right-periodic (period kr) from right_start + R on; hand the
    // normalizer one full period on each side around the explicit middle.
    const long lo = brk - R - kl;
    const long hi = right_start + R + kr;
    Word in = x.slice(lo - R, hi + R);
    Word img = apply(in);
    std::vector<Sym> mid(img.begin(), img.end());
    Word lw(std::vector<Sym>(mid.begin(), mid.begin() + kl));
    Word cw(std::vector<Sym>(mid.begin() + kl, mid.end() - kr));
    Word rw(std::vector<Sym>(mid.end() - kr, mid.end()));
    return EvPeriodicPoint::make(lw, cw, rw, lo + kl);
}

PeriodicPoint BlockCode::apply(const FischerCover& c, const PeriodicPoint& x) const {
    EvPeriodicPoint img = apply(EvPeriodicPoint::periodic(x.word()));
    return PeriodicPoint::make(c, img.left());
}

BlockCode BlockCode::shift_power(int j, const Alphabet&) {
    return BlockCode(std::abs(j), std::make_shared<ShiftKernel>(j));
}

BlockCode BlockCode::from_table(int radius, std::map<Word, Sym> table, std::string name) {
    return BlockCode(radius, std::make_shared<TableKernel>(std::move(table), std::move(name)));
}

BlockCode compose(const BlockCode& g, const BlockCode& h) {
    return BlockCode(g.radius() + h.radius(), std::make_shared<CompositionKernel>(g, h));
}

std::optional<bool> rule_is_shift_power(const FischerCover& c, const BlockCode& g, int j,
                                        std::uint64_t budget) {
    if (std::abs(j) > g.radius())
        return false;
    const int n = 2 * g.radius() + 1;
    if (c.word_count(n) > budget)
        return std::nullopt;
    bool equal = true;
    const std::size_t center = static_cast<std::size_t>(g.radius());
    c.for_each_word(n, [&](const Word& w) {
        if (g.eval(std::span<const Sym>(w.syms())) != w[center + j]) {
            equal = false;
            return false;
        }
        return true;
    });
    return equal;
}

std::optional<bool> rule_is_identity(const FischerCover& c, const BlockCode& g,
                                     std::uint64_t budget) {
    return rule_is_shift_power(c, g, 0, budget);
}

int cocycle_alpha(const BlockCode& g, const QkPoint& x) {
    EvPeriodicPoint y = g.apply(x.point());
    // Automorphisms preserve non-periodicity, so the break is defined.
    return static_cast<int>(y.break_index()) - x.k();
}

QkPoint dot_action(const BlockCode& g, const QkPoint& x) {
    EvPeriodicPoint y = g.apply(x.point());
    return QkPoint::normalize(y, x.k());
}

} // namespace sofic
