#ifndef SOFIC_POINTS_HPP
#define SOFIC_POINTS_HPP

#include <compare>
#include <optional>
#include <vector>

#include "sofic/shift.hpp"

namespace sofic {

/// Canonical representative of a shift orbit of a periodic point: the
/// lexicographically least rotation of the primitive period word.
class OrbitId {
public:
    static OrbitId of(const Word& any_period_word);

    const Word& word() const { return canonical_; }
    int period() const { return static_cast<int>(canonical_.size()); }

    bool operator==(const OrbitId&) const = default;
    auto operator<=>(const OrbitId&) const = default;

private:
    explicit OrbitId(Word w) : canonical_(std::move(w)) {}
    Word canonical_;
};

/// A periodic point, stored as one fundamental domain x_{[0,k-1]} with k the
/// least period (the word is primitive).
class PeriodicPoint {
public:
    /// Reduces to the primitive root and verifies (w)^inf lies in the shift.
    static PeriodicPoint make(const FischerCover& c, const Word& w);
    /// No membership check; for internal construction.
    static PeriodicPoint unchecked(Word primitive);

    const Word& word() const { return word_; }
    int period() const { return static_cast<int>(word_.size()); }
    OrbitId orbit() const { return OrbitId::of(word_); }

    bool operator==(const PeriodicPoint&) const = default;
    auto operator<=>(const PeriodicPoint&) const = default;

private:
    explicit PeriodicPoint(Word w) : word_(std::move(w)) {}
    Word word_;
};

/// A bi-eventually-periodic point
///
///     (... left left) center (right right ...)
///
/// with the center starting at index `anchor`. Values are kept in a normal
/// form: both period words primitive, the center absorbed maximally into the
/// tails, and fully periodic sequences stored with anchor 0 and an empty
/// center. Two points are equal iff their normal forms are equal, so this
/// class is a faithful finite representation of the sequences themselves.
class EvPeriodicPoint {
public:
    static EvPeriodicPoint make(Word left, Word center, Word right, long anchor);
    static EvPeriodicPoint periodic(const Word& pattern);

    const Word& left() const { return left_; }
    const Word& center() const { return center_; }
    const Word& right() const { return right_; }
    long anchor() const { return anchor_; }

    bool is_periodic() const;
    /// The unique N with x_n = x_{n-p} for n < N and x_N != x_{N-p} (p = left
    /// period). Equals anchor() in normal form. Throws for periodic points.
    long break_index() const;

    Sym at(long n) const;
    Word slice(long lo, long hi) const;
    /// sigma^j of this point ((sigma^j x)_n = x_{n+j}).
    EvPeriodicPoint shifted(long j) const;

    /// Cycle-path-cycle reachability through the cover.
    bool valid_in(const FischerCover& c) const;

    bool operator==(const EvPeriodicPoint&) const = default;
    auto operator<=>(const EvPeriodicPoint&) const = default;

private:
    EvPeriodicPoint() = default;
    Word left_, center_, right_;
    long anchor_ = 0;
};

/// A left-k-periodic point normalized so the break sits at index k: the left
/// tail satisfies x_n = x_{n-k} for all n < k and x_k != x_0. The stored k is
/// a left period (the least left period divides it).
class QkPoint {
public:
    /// sigma-translates x so its break index lands at k.
    /// Throws NotLeftPeriodicError when x is periodic or k is not a left
    /// period of x.
    static QkPoint normalize(const EvPeriodicPoint& x, int k);

    const EvPeriodicPoint& point() const { return pt_; }
    int k() const { return k_; }
    /// x_{[0,k)}: the last full period before the break.
    Word pattern() const { return pt_.slice(0, k_); }

    bool operator==(const QkPoint&) const = default;
    auto operator<=>(const QkPoint&) const = default;

private:
    QkPoint(EvPeriodicPoint pt, int k) : pt_(std::move(pt)), k_(k) {}
    EvPeriodicPoint pt_;
    int k_;
};

/// All shift orbits of least period exactly k, canonical and sorted.
std::vector<OrbitId> enumerate_per_k(const FischerCover& c, int k);

/// True iff all sufficiently long words occurring in the periodic point are
/// synchronizing; decided from the stabilized follower set of the period
/// word.
bool is_synchronizing_point(const FischerCover& c, const PeriodicPoint& x);

/// The Aut(X)-equivariant projection: the orbit of the periodic point whose
/// period word is x_{[0,k-1]}.
OrbitId project_pi(const QkPoint& x);

/// Fiber-cylinder membership. True iff x is left-k-periodic, its periodic
/// tail follows the orbit m, and the word read off from the break index
/// equals w. (Cylinder words are anchored at the break.)
bool in_cylinder_m(const EvPeriodicPoint& x, const Word& w, const OrbitId& m, int k);

struct QkEnumOptions {
    int max_center = 3;
    int max_right_period = 2;
    std::size_t max_count = 200;
};

/// Deterministic sample of Q_k: valid points assembled from period-dividing
/// tails, short centers and short right periods.
std::vector<QkPoint> enumerate_qk(const FischerCover& c, int k, const QkEnumOptions& opts = {});

} // namespace sofic

#endif
