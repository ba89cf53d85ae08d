#ifndef SOFIC_CODES_HPP
#define SOFIC_CODES_HPP

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>

#include "sofic/points.hpp"
#include "sofic/shift.hpp"

namespace sofic {

/// Evaluates the local rule of a block code on a window of length 2R+1.
/// Rules are total on the allowable windows and never queried elsewhere.
/// Marker codes and compositions evaluate structurally, so rules of large
/// radius need not (and cannot) be tabulated.
class RuleKernel {
public:
    virtual ~RuleKernel() = default;
    virtual Sym eval(std::span<const Sym> window) const = 0;
    /// Whole-word application; kernels may override with something faster
    /// than sliding eval().
    virtual Word apply_word(const Word& w, int radius) const;
    /// Windows worth trying first when hunting for rule disagreements.
    virtual void append_salient(const FischerCover& c, int radius,
                                std::vector<Word>& out) const;
    /// True when the kernel's structure alone proves the induced map sends
    /// the shift into itself (shifts, validated markers, compositions).
    virtual bool structurally_endomorphic(const FischerCover& c) const;
    virtual std::string describe() const = 0;
};

/// A sliding block code of radius R: the induced map sends x to the point
/// with (gx)_i = rule(x_{[i-R, i+R]}).
class BlockCode {
public:
    BlockCode(int radius, std::shared_ptr<const RuleKernel> kernel)
        : radius_(radius), kernel_(std::move(kernel)) {}

    int radius() const { return radius_; }
    std::size_t window() const { return 2 * static_cast<std::size_t>(radius_) + 1; }
    const RuleKernel& kernel() const { return *kernel_; }

    Sym eval(std::span<const Sym> w) const { return kernel_->eval(w); }

    /// Image of the interior: a word of length |w| - 2R.
    /// Throws TooShortError when |w| < 2R+1.
    Word apply(const Word& w) const;
    /// Image point in normal form; eventual periods divide the input's.
    EvPeriodicPoint apply(const EvPeriodicPoint& x) const;
    PeriodicPoint apply(const FischerCover& c, const PeriodicPoint& x) const;

    std::string describe() const { return kernel_->describe(); }

    /// sigma^j: radius |j|, rule reads the symbol at offset j.
    static BlockCode shift_power(int j, const Alphabet& a);
    /// Explicit rule table over the allowable windows.
    static BlockCode from_table(int radius, std::map<Word, Sym> table, std::string name);

private:
    int radius_;
    std::shared_ptr<const RuleKernel> kernel_;
};

/// g after h (paper order: (g h)(x) = g(h(x))); radius adds exactly.
BlockCode compose(const BlockCode& g, const BlockCode& h);

/// Budgeted exhaustive comparison of g's rule with sigma^j over the window
/// language. nullopt when |L_{2R+1}| exceeds `budget` windows.
std::optional<bool> rule_is_shift_power(const FischerCover& c, const BlockCode& g, int j,
                                        std::uint64_t budget);

/// Same against the identity (sigma^0).
std::optional<bool> rule_is_identity(const FischerCover& c, const BlockCode& g,
                                     std::uint64_t budget);

/// Eq. (1)/(2): the unique alpha with sigma^alpha(gx) back in Q_k. Computed
/// by applying the code and re-reading the break index.
int cocycle_alpha(const BlockCode& g, const QkPoint& x);

/// Eq. (3): g . x = sigma^{alpha(g,x)}(gx); sigma acts trivially.
QkPoint dot_action(const BlockCode& g, const QkPoint& x);

} // namespace sofic

#endif
