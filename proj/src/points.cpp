#include "sofic/points.hpp"

#include <algorithm>
#include <set>

namespace sofic {

OrbitId OrbitId::of(const Word& any_period_word) {
    if (any_period_word.empty())
        throw ParseError("a period word must be nonempty");
    return OrbitId(any_period_word.primitive_root().least_rotation());
}

PeriodicPoint PeriodicPoint::make(const FischerCover& c, const Word& w) {
    if (w.empty())
        throw ParseError("a period word must be nonempty");
    Word root = w.primitive_root();
    if (c.stabilized_followers(root).empty())
        throw NotAllowableError(format_word(c.alphabet(), root) + "^inf");
    return PeriodicPoint(std::move(root));
}

PeriodicPoint PeriodicPoint::unchecked(Word primitive) {
    return PeriodicPoint(std::move(primitive));
}

namespace {

// Raw (unnormalized) view of an eventually periodic sequence.
struct RawPoint {
    const Word& left;
    const Word& center;
    const Word& right;
    long anchor;

    Sym at(long n) const {
        if (n < anchor) {
            long k = static_cast<long>(left.size());
            long idx = ((n - anchor) % k + k) % k;
            return left[static_cast<std::size_t>(idx)];
        }
        long off = n - anchor;
        if (off < static_cast<long>(center.size()))
            return center[static_cast<std::size_t>(off)];
        long k = static_cast<long>(right.size());
        return right[static_cast<std::size_t>((off - static_cast<long>(center.size())) % k)];
    }
};

} // namespace

EvPeriodicPoint EvPeriodicPoint::make(Word left, Word center, Word right, long anchor) {
    if (left.empty() || right.empty())
        throw ParseError("period words of an eventually periodic point must be nonempty");
    left = left.primitive_root();
    right = right.primitive_root();
    RawPoint raw{left, center, right, anchor};

    const long kl = static_cast<long>(left.size());
    const long kr = static_cast<long>(right.size());
    const long center_end = anchor + static_cast<long>(center.size());

    // Left break: least N with x_N != x_{N-kl}; the tail below the anchor is
    // kl-periodic by construction, so scan upward from the anchor. If the
    // scan passes the right tail by a full lcm the sequence is periodic.
    const long cap = center_end + kl * kr + kl + kr + 2;
    long n = anchor;
    while (n <= cap && raw.at(n) == raw.at(n - kl))
        ++n;
    EvPeriodicPoint out;
    if (n > cap) {
        // Fully periodic with least period kl.
        std::vector<Sym> pat;
        for (long i = 0; i < kl; ++i)
            pat.push_back(raw.at(i));
        out.left_ = Word(std::move(pat));
        out.right_ = out.left_;
        out.center_ = Word{};
        out.anchor_ = 0;
        return out;
    }
    const long brk = n;

    // Right start: least M >= brk from which the sequence is kr-periodic.
    long m = std::max(brk, center_end);
    while (m > brk && raw.at(m - 1) == raw.at(m - 1 + kr))
        --m;

    std::vector<Sym> lw, cw, rw;
    for (long i = brk - kl; i < brk; ++i)
        lw.push_back(raw.at(i));
    for (long i = brk; i < m; ++i)
        cw.push_back(raw.at(i));
    for (long i = m; i < m + kr; ++i)
        rw.push_back(raw.at(i));
    out.left_ = Word(std::move(lw));
    out.center_ = Word(std::move(cw));
    out.right_ = Word(std::move(rw)).primitive_root();
    // Re-slice the right period in case primitivization shortened it.
    if (out.right_.size() != static_cast<std::size_t>(kr)) {
        std::vector<Sym> rw2;
        for (long i = m; i < m + static_cast<long>(out.right_.size()); ++i)
            rw2.push_back(raw.at(i));
        out.right_ = Word(std::move(rw2));
    }
    out.anchor_ = brk;
    return out;
}

EvPeriodicPoint EvPeriodicPoint::periodic(const Word& pattern) {
    return make(pattern, Word{}, pattern, 0);
}

bool EvPeriodicPoint::is_periodic() const {
    return center_.empty() && left_ == right_ && anchor_ == 0 &&
           [&] {
               // anchor 0 and equal primitive words: periodic iff tails align.
               for (std::size_t i = 0; i < left_.size(); ++i)
                   if (at(static_cast<long>(i)) != at(static_cast<long>(i) - static_cast<long>(left_.size())))
                       return false;
               return true;
           }();
}

long EvPeriodicPoint::break_index() const {
    if (is_periodic())
        throw NotLeftPeriodicError(static_cast<int>(left_.size()));
    return anchor_;
}

Sym EvPeriodicPoint::at(long n) const {
    return RawPoint{left_, center_, right_, anchor_}.at(n);
}

Word EvPeriodicPoint::slice(long lo, long hi) const {
    std::vector<Sym> syms;
    for (long n = lo; n < hi; ++n)
        syms.push_back(at(n));
    return Word(std::move(syms));
}

EvPeriodicPoint EvPeriodicPoint::shifted(long j) const {
    return make(left_, center_, right_, anchor_ - j);
}

bool EvPeriodicPoint::valid_in(const FischerCover& c) const {
    if (is_periodic())
        return !c.stabilized_followers(left_).empty();
    StateSet s = c.stabilized_followers(left_);
    if (s.empty())
        return false;
    s = c.advance(s, center_);
    if (s.empty())
        return false;
    StateSet inf = c.infinite_right_set(right_);
    StateSet both;
    std::set_intersection(s.begin(), s.end(), inf.begin(), inf.end(), std::back_inserter(both));
    return !both.empty();
}

QkPoint QkPoint::normalize(const EvPeriodicPoint& x, int k) {
    if (k <= 0)
        throw ParseError("k must be positive");
    if (x.is_periodic())
        throw NotLeftPeriodicError(k);
    if (k % static_cast<int>(x.left().size()) != 0)
        throw NotLeftPeriodicError(k);
    long n = x.break_index();
    return QkPoint(x.shifted(n - k), k);
}

std::vector<OrbitId> enumerate_per_k(const FischerCover& c, int k) {
    std::set<OrbitId> orbits;
    c.for_each_word(k, [&](const Word& w) {
        if (w.is_primitive() && !c.stabilized_followers(w).empty())
            orbits.insert(OrbitId::of(w));
        return true;
    });
    return std::vector<OrbitId>(orbits.begin(), orbits.end());
}

bool is_synchronizing_point(const FischerCover& c, const PeriodicPoint& x) {
    return c.stabilized_followers(x.word()).size() == 1;
}

OrbitId project_pi(const QkPoint& x) {
    return OrbitId::of(x.pattern());
}

bool in_cylinder_m(const EvPeriodicPoint& x, const Word& w, const OrbitId& m, int k) {
    if (x.is_periodic())
        return false;
    if (k % static_cast<int>(x.left().size()) != 0)
        return false;
    if (OrbitId::of(x.left()) != m)
        return false;
    long n = x.break_index();
    return x.slice(n, n + static_cast<long>(w.size())) == w;
}

std::vector<QkPoint> enumerate_qk(const FischerCover& c, int k, const QkEnumOptions& opts) {
    std::set<QkPoint> found;
    for (int d = 1; d <= k; ++d) {
        if (k % d != 0)
            continue;
        for (const OrbitId& orbit : enumerate_per_k(c, d)) {
            for (int rot = 0; rot < d; ++rot) {
                Word tail = orbit.word().rotated(static_cast<std::size_t>(rot));
                for (int clen = 0; clen <= opts.max_center; ++clen) {
                    c.for_each_word(clen, [&](const Word& center) {
                        for (int rlen = 1; rlen <= opts.max_right_period; ++rlen) {
                            c.for_each_word(rlen, [&](const Word& right) {
                                if (!right.is_primitive())
                                    return true;
                                EvPeriodicPoint pt =
                                    EvPeriodicPoint::make(tail, center, right, k);
                                if (pt.is_periodic())
                                    return true;
                                if (pt.break_index() != k)
                                    return true;
                                if (k % static_cast<int>(pt.left().size()) != 0)
                                    return true;
                                if (!pt.valid_in(c))
                                    return true;
                                found.insert(QkPoint::normalize(pt, k));
                                return found.size() < opts.max_count;
                            });
                            if (found.size() >= opts.max_count)
                                break;
                        }
                        return found.size() < opts.max_count;
                    });
                }
            }
        }
    }
    return std::vector<QkPoint>(found.begin(), found.end());
}

} // namespace sofic
