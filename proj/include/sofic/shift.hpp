#ifndef SOFIC_SHIFT_HPP
#define SOFIC_SHIFT_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "sofic/alphabet.hpp"

namespace sofic {

/// A shift of finite type given by its forbidden words. The step of the SFT
/// is (max forbidden length) - 1, or 0 when no words are forbidden.
struct SftSpec {
    Alphabet alphabet;
    std::vector<Word> forbidden;

    int step() const;
};

/// A labeled graph presenting a sofic shift: the shift's points are exactly
/// the label sequences of bi-infinite paths.
struct LabeledGraph {
    struct Edge {
        int from;
        Sym label;
        int to;
        auto operator<=>(const Edge&) const = default;
    };

    Alphabet alphabet;
    std::vector<std::string> states;
    std::vector<Edge> edges;
};

/// Edge graph on the allowed (step)-blocks of the SFT, pruned to states that
/// lie on bi-infinite paths. Throws EmptyShiftError when nothing survives.
LabeledGraph compile_sft(const SftSpec& spec);

/// Sorted set of cover states.
using StateSet = std::vector<int>;

/// Optional constraints for connector searches. Lengths count the spacer v
/// in u v w. `exact_length` overrides the residue/minimum pair.
struct ConnectorSpec {
    std::optional<long> exact_length;
    std::optional<int> residue; // |v| mod period()
    long min_length = 0;
};

/// The minimal deterministic presentation of the shift's language. For a
/// transitive sofic shift this is the Fischer cover (unique up to
/// isomorphism); state naming is canonical so runs are reproducible.
class FischerCover {
public:
    /// Determinize + merge follower-equivalent states + extract the
    /// synchronized irreducible part when it presents the same language.
    static FischerCover build(const LabeledGraph& g);
    static FischerCover from_sft(const SftSpec& spec) { return build(compile_sft(spec)); }

    const Alphabet& alphabet() const { return alphabet_; }
    int state_count() const { return static_cast<int>(delta_.size()); }
    /// Deterministic transition; -1 when undefined.
    int step(int state, Sym s) const { return delta_[state][s]; }
    const std::string& state_name(int q) const { return names_[q]; }
    LabeledGraph graph() const;

    bool is_transitive() const { return irreducible_; }
    bool is_mixing() const { return irreducible_ && period_ == 1; }
    int period() const { return period_; }

    bool is_allowable(const Word& w) const;
    /// Terminal states of paths labeled w; all states for the empty word.
    /// Throws NotAllowableError when w is not in the language.
    StateSet follower_states(const Word& w) const;
    /// Singleton follower set on the minimal presentation of a transitive
    /// shift; coincides with the intrinsic definition.
    bool is_synchronizing(const Word& w) const;
    /// Shortest (then lexicographically least) u with wu synchronizing.
    Word extend_to_synchronizing(const Word& w) const;

    /// Spacer v with uvw allowable, subject to `spec`; shortest-lex.
    /// Throws NoConnectorError past the documented bound.
    Word connector(const Word& u, const Word& w, const ConnectorSpec& spec = {}) const;

    /// Exactly L_n(X), lexicographically sorted.
    std::vector<Word> enumerate_words(int n) const;
    /// Lazy lexicographic traversal of L_n(X); stops when fn returns false.
    void for_each_word(int n, const std::function<bool(const Word&)>& fn) const;
    /// |L_n(X)| saturated at 2^63.
    std::uint64_t word_count(int n) const;

    /// Decreasing limit of follower_states(w^i): the states that end
    /// arbitrarily long (...www)-histories. Empty iff w^inf is not in X.
    StateSet stabilized_followers(const Word& w) const;
    /// States from which w can be read forward forever.
    StateSet infinite_right_set(const Word& w) const;

    /// Image of a state set under reading w, dropping dead branches.
    StateSet advance(const StateSet& s, const Word& w) const;
    StateSet all_states() const;

private:
    FischerCover() : alphabet_({"?"}) {}

    Alphabet alphabet_;
    std::vector<std::vector<int>> delta_;
    std::vector<std::string> names_;
    bool irreducible_ = false;
    int period_ = 1;
};

} // namespace sofic

#endif
