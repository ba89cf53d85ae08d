#include "sofic/markers.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>

namespace sofic {

namespace {

int lcm_int(int a, int b) { return a / std::gcd(a, b) * b; }

// Kernel of a marker automorphism. The radius equals the special-word length,
// so any occurrence whose data slot covers the window's center fits entirely
// inside the window; the overlap condition makes the covering occurrence
// unique.
class MarkerKernel final : public RuleKernel {
public:
    explicit MarkerKernel(MarkerSystem ms) : ms_(std::move(ms)) {
        ls_ = static_cast<long>(ms_.special_length());
        ml_ = static_cast<long>(ms_.left_marker.size());
        n_ = ms_.data_length();
    }

    const MarkerSystem& system() const { return ms_; }

    Sym eval(std::span<const Sym> w) const override {
        const long R = (static_cast<long>(w.size()) - 1) / 2;
        long lo = std::max<long>(0, R - ml_ - n_ + 1);
        long hi = std::min<long>(R - ml_, static_cast<long>(w.size()) - ls_);
        for (long s = lo; s <= hi; ++s) {
            int d = match_at(w, s);
            if (d >= 0)
                return ms_.data[static_cast<std::size_t>(ms_.perm[d])]
                               [static_cast<std::size_t>(R - s - ml_)];
        }
        return w[static_cast<std::size_t>(R)];
    }

    Word apply_word(const Word& w, int radius) const override {
        const long R = radius;
        const long len = static_cast<long>(w.size());
        std::span<const Sym> all(w.syms());
        // data-slot map over the whole word; slots of distinct occurrences
        // are disjoint by the overlap condition
        std::vector<int> slot(w.size(), -1);
        std::vector<long> occ_start(w.size(), -1);
        for (long s = 0; s + ls_ <= len; ++s) {
            int d = match_at(all, s);
            if (d < 0)
                continue;
            for (long t = s + ml_; t < s + ml_ + n_; ++t) {
                slot[static_cast<std::size_t>(t)] = d;
                occ_start[static_cast<std::size_t>(t)] = s;
            }
        }
        std::vector<Sym> out;
        for (long cpos = R; cpos + R < len; ++cpos) {
            int d = slot[static_cast<std::size_t>(cpos)];
            if (d < 0) {
                out.push_back(w[static_cast<std::size_t>(cpos)]);
            } else {
                long off = cpos - occ_start[static_cast<std::size_t>(cpos)] - ml_;
                out.push_back(ms_.data[static_cast<std::size_t>(ms_.perm[d])]
                                      [static_cast<std::size_t>(off)]);
            }
        }
        return Word(std::move(out));
    }

    void append_salient(const FischerCover& c, int radius,
                        std::vector<Word>& out) const override {
        const long R = radius;
        for (std::size_t d = 0; d < ms_.data.size(); ++d) {
            Word sp = ms_.special(d);
            for (long i = 0; i < n_; ++i) {
                // Window whose center sits at data offset i of an occurrence.
                long left_pad = R - ml_ - i;
                long right_pad = 2 * R + 1 - left_pad - ls_;
                if (left_pad < 0 || right_pad < 0)
                    continue;
                Word w = sp;
                bool ok = true;
                for (long t = 0; t < left_pad && ok; ++t) {
                    bool grew = false;
                    for (Sym s = 0; s < c.alphabet().size() && !grew; ++s) {
                        Word cand = Word({s}) + w;
                        if (c.is_allowable(cand)) {
                            w = cand;
                            grew = true;
                        }
                    }
                    ok = grew;
                }
                for (long t = 0; t < right_pad && ok; ++t) {
                    bool grew = false;
                    for (Sym s = 0; s < c.alphabet().size() && !grew; ++s) {
                        Word cand = w + Word({s});
                        if (c.is_allowable(cand)) {
                            w = cand;
                            grew = true;
                        }
                    }
                    ok = grew;
                }
                if (ok && w.size() == 2 * static_cast<std::size_t>(R) + 1)
                    out.push_back(w);
            }
        }
    }

    bool structurally_endomorphic(const FischerCover& c) const override {
        return !validate_marker_system(c, ms_).has_value();
    }

    std::string describe() const override { return "marker"; }

private:
    int match_at(std::span<const Sym> w, long s) const {
        for (std::size_t d = 0; d < ms_.data.size(); ++d) {
            const Word sp = ms_.special(d);
            bool hit = true;
            for (long t = 0; t < ls_ && hit; ++t)
                hit = w[static_cast<std::size_t>(s + t)] == sp[static_cast<std::size_t>(t)];
            if (hit)
                return static_cast<int>(d);
        }
        return -1;
    }

    MarkerSystem ms_;
    long ls_, ml_;
    int n_;
};

} // namespace

int MarkerSystem::perm_order() const {
    int order = 1;
    std::vector<bool> seen(perm.size(), false);
    for (std::size_t i = 0; i < perm.size(); ++i) {
        if (seen[i])
            continue;
        int len = 0;
        std::size_t j = i;
        while (!seen[j]) {
            seen[j] = true;
            j = static_cast<std::size_t>(perm[j]);
            ++len;
        }
        order = lcm_int(order, len);
    }
    return order;
}

MarkerSystem MarkerSystem::inverted() const {
    MarkerSystem inv = *this;
    for (std::size_t i = 0; i < perm.size(); ++i)
        inv.perm[static_cast<std::size_t>(perm[i])] = static_cast<int>(i);
    return inv;
}

std::string MarkerViolation::message(const Alphabet& alpha) const {
    switch (kind) {
    case Kind::NonSynchronizingMarker:
        return "marker \"" + format_word(alpha, a) + "\" is not synchronizing";
    case Kind::NotAllowable:
        return "special word \"" + format_word(alpha, a) + "\" is not allowable";
    case Kind::UnequalDataLength:
        return "data word \"" + format_word(alpha, a) + "\" has a different length";
    case Kind::OverlapViolation:
        return "special words of \"" + format_word(alpha, a) + "\" and \"" +
               format_word(alpha, b) + "\" overlap with length " + std::to_string(overlap);
    case Kind::BadPermutation:
        return "perm is not a permutation of the data words";
    }
    return "unknown violation";
}

std::optional<MarkerViolation> validate_marker_system(const FischerCover& c,
                                                      const MarkerSystem& ms) {
    using K = MarkerViolation::Kind;
    for (const Word* m : {&ms.left_marker, &ms.right_marker})
        if (!c.is_allowable(*m) || !c.is_synchronizing(*m))
            return MarkerViolation{K::NonSynchronizingMarker, *m, {}, 0};
    if (ms.data.empty() || ms.perm.size() != ms.data.size())
        return MarkerViolation{K::BadPermutation, {}, {}, 0};
    {
        std::vector<int> sorted = ms.perm;
        std::sort(sorted.begin(), sorted.end());
        for (std::size_t i = 0; i < sorted.size(); ++i)
            if (sorted[i] != static_cast<int>(i))
                return MarkerViolation{K::BadPermutation, {}, {}, 0};
        std::set<Word> distinct(ms.data.begin(), ms.data.end());
        if (distinct.size() != ms.data.size())
            return MarkerViolation{K::BadPermutation, {}, {}, 0};
    }
    const std::size_t n = ms.data[0].size();
    for (const Word& d : ms.data)
        if (d.size() != n)
            return MarkerViolation{K::UnequalDataLength, d, {}, 0};
    for (const Word& d : ms.data) {
        Word sp = ms.left_marker + d + ms.right_marker;
        if (!c.is_allowable(sp))
            return MarkerViolation{K::NotAllowable, sp, {}, 0};
    }
    const long min_marker =
        static_cast<long>(std::min(ms.left_marker.size(), ms.right_marker.size()));
    const long ls = static_cast<long>(ms.special_length());
    for (std::size_t a = 0; a < ms.data.size(); ++a) {
        for (std::size_t b = 0; b < ms.data.size(); ++b) {
            Word wa = ms.special(a);
            Word wb = ms.special(b);
            for (long i = 1; i < ls; ++i) {
                bool match = true;
                for (long t = 0; t < i && match; ++t)
                    match = wa[static_cast<std::size_t>(ls - i + t)] ==
                            wb[static_cast<std::size_t>(t)];
                if (match && i > min_marker)
                    return MarkerViolation{K::OverlapViolation, ms.data[a], ms.data[b],
                                           static_cast<int>(i)};
            }
        }
    }
    return std::nullopt;
}

int max_nontrivial_overlap(const MarkerSystem& ms) {
    const long ls = static_cast<long>(ms.special_length());
    int best = 0;
    for (std::size_t a = 0; a < ms.data.size(); ++a)
        for (std::size_t b = 0; b < ms.data.size(); ++b) {
            Word wa = ms.special(a);
            Word wb = ms.special(b);
            for (long i = 1; i < ls; ++i) {
                bool match = true;
                for (long t = 0; t < i && match; ++t)
                    match = wa[static_cast<std::size_t>(ls - i + t)] ==
                            wb[static_cast<std::size_t>(t)];
                if (match)
                    best = std::max(best, static_cast<int>(i));
            }
        }
    return best;
}

Automorphism identity_automorphism(const Alphabet& a) {
    BlockCode id = BlockCode::shift_power(0, a);
    return Automorphism{id, id, {AutCertificate::Kind::FiniteOrder, 1, true, "identity"}};
}

Automorphism shift_automorphism(int j, const Alphabet& a) {
    return Automorphism{BlockCode::shift_power(j, a), BlockCode::shift_power(-j, a),
                        {AutCertificate::Kind::InverseChecked, 0, true,
                         "shift power " + std::to_string(j)}};
}

Automorphism compose_autos(const Automorphism& a, const Automorphism& b) {
    return Automorphism{compose(a.code, b.code), compose(b.inverse, a.inverse),
                        {AutCertificate::Kind::InverseChecked, 0, false,
                         "composition of certified automorphisms"}};
}

Automorphism inverse_of(const Automorphism& a) {
    AutCertificate cert = a.certificate;
    return Automorphism{a.inverse, a.code, cert};
}

Automorphism marker_to_code(const FischerCover& c, const MarkerSystem& ms) {
    if (auto violation = validate_marker_system(c, ms))
        throw Error("invalid marker system: " + violation->message(c.alphabet()));
    const int radius = static_cast<int>(ms.special_length());
    BlockCode code(radius, std::make_shared<MarkerKernel>(ms));
    BlockCode inverse(radius, std::make_shared<MarkerKernel>(ms.inverted()));
    AutCertificate cert{AutCertificate::Kind::FiniteOrder, ms.perm_order(), false,
                        "marker automorphism; order = permutation order"};
    return Automorphism{std::move(code), std::move(inverse), cert};
}

bool is_endomorphism(const FischerCover& c, const BlockCode& g, std::uint64_t budget) {
    const int r2 = 2 * g.radius();
    if (c.word_count(r2) <= budget) {
        // Image-language NFA: states are the allowable windows of length 2R,
        // an edge reads one more input symbol and outputs the rule's value.
        std::vector<Word> windows = c.enumerate_words(r2);
        std::map<Word, int> idx;
        for (const auto& w : windows)
            idx.emplace(w, static_cast<int>(idx.size()));
        std::set<std::pair<int, StateSet>> seen;
        std::deque<std::pair<int, StateSet>> queue;
        for (int q = 0; q < static_cast<int>(windows.size()); ++q) {
            auto key = std::make_pair(q, c.all_states());
            seen.insert(key);
            queue.push_back(key);
        }
        while (!queue.empty()) {
            auto [q, followers] = queue.front();
            queue.pop_front();
            for (Sym s = 0; s < c.alphabet().size(); ++s) {
                Word ext = windows[static_cast<std::size_t>(q)] + Word({s});
                if (!c.is_allowable(ext))
                    continue;
                Sym out = g.eval(std::span<const Sym>(ext.syms()));
                StateSet next = c.advance(followers, Word({out}));
                if (next.empty())
                    return false;
                Word suffix = ext.subword(1, static_cast<std::size_t>(r2));
                auto key = std::make_pair(idx.at(suffix), std::move(next));
                if (seen.insert(key).second)
                    queue.push_back(key);
            }
        }
        return true;
    }
    if (g.kernel().structurally_endomorphic(c))
        return true;
    throw SearchExhaustedError(static_cast<long>(budget), "endomorphism check");
}

Automorphism certify_automorphism(const FischerCover& c, const BlockCode& g,
                                  const std::optional<BlockCode>& inverse_hint,
                                  int order_bound, std::uint64_t budget) {
    if (!is_endomorphism(c, g, budget))
        throw Error("code is not an endomorphism of the shift");
    if (inverse_hint) {
        if (!is_endomorphism(c, *inverse_hint, budget))
            throw Error("inverse hint is not an endomorphism of the shift");
        auto fwd = rule_is_identity(c, compose(g, *inverse_hint), budget);
        auto bwd = rule_is_identity(c, compose(*inverse_hint, g), budget);
        if (!fwd || !bwd)
            throw SearchExhaustedError(static_cast<long>(budget), "inverse verification");
        if (*fwd && *bwd)
            return Automorphism{g, *inverse_hint,
                                {AutCertificate::Kind::InverseChecked, 0, true,
                                 "explicit inverse, checked on all windows"}};
        throw NotCertifiedError(order_bound);
    }
    BlockCode power = g;          // g^m
    BlockCode previous = g;       // g^{m-1}
    for (int m = 1; m <= order_bound; ++m) {
        auto is_id = rule_is_identity(c, power, budget);
        if (!is_id)
            throw SearchExhaustedError(static_cast<long>(budget), "order certification");
        if (*is_id) {
            BlockCode inverse = m == 1 ? power : previous;
            return Automorphism{g, inverse,
                                {AutCertificate::Kind::FiniteOrder, m, true,
                                 "order checked on all windows"}};
        }
        previous = power;
        power = compose(power, g);
    }
    throw NotCertifiedError(order_bound);
}

ClassifyResult classify_type(const FischerCover& c, const PeriodicPoint& x,
                             const std::vector<Automorphism>& auts, int word_bound) {
    if (is_synchronizing_point(c, x))
        return {PointType::Type1, "", std::nullopt};
    // Letters: each generator and its inverse, in list order.
    struct Letter {
        std::string name;
        const Automorphism* aut;
        bool inverted;
    };
    std::vector<Letter> letters;
    for (std::size_t i = 0; i < auts.size(); ++i) {
        letters.push_back({"g" + std::to_string(i + 1), &auts[i], false});
        letters.push_back({"g" + std::to_string(i + 1) + "^-1", &auts[i], true});
    }
    struct Node {
        std::string word;
        Automorphism aut;
        int last = -1;
    };
    std::deque<Node> queue;
    for (std::size_t li = 0; li < letters.size(); ++li) {
        const auto& l = letters[li];
        Automorphism a = l.inverted ? inverse_of(*l.aut) : *l.aut;
        queue.push_back({l.name, a, static_cast<int>(li)});
    }
    std::size_t expanded = 0;
    while (!queue.empty()) {
        Node node = queue.front();
        queue.pop_front();
        PeriodicPoint img = node.aut.code.apply(c, x);
        if (is_synchronizing_point(c, img))
            return {PointType::Type2, node.word, node.aut};
        int len = 1 + static_cast<int>(std::count(node.word.begin(), node.word.end(), ' '));
        if (len >= word_bound)
            continue;
        for (std::size_t li = 0; li < letters.size(); ++li) {
            if (node.last >= 0 && (static_cast<std::size_t>(node.last) ^ 1u) == li)
                continue; // avoid immediate cancellation
            const auto& l = letters[li];
            Automorphism next = compose_autos(l.inverted ? inverse_of(*l.aut) : *l.aut, node.aut);
            queue.push_back({l.name + " " + node.word, next, static_cast<int>(li)});
        }
        if (++expanded > 4096)
            break;
    }
    return {PointType::Unknown, "", std::nullopt};
}

} // namespace sofic
