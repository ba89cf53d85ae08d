#ifndef SOFIC_MARKERS_HPP
#define SOFIC_MARKERS_HPP

#include <optional>
#include <string>
#include <vector>

#include "sofic/codes.hpp"

namespace sofic {

/// Markers, data words and the permutation the induced automorphism applies
/// to the data slots. `perm[i]` is the index of the image of `data[i]`.
struct MarkerSystem {
    Word left_marker;
    Word right_marker;
    std::vector<Word> data;
    std::vector<int> perm;

    int data_length() const { return data.empty() ? 0 : static_cast<int>(data[0].size()); }
    std::size_t special_length() const {
        return left_marker.size() + static_cast<std::size_t>(data_length()) + right_marker.size();
    }
    Word special(std::size_t i) const { return left_marker + data[i] + right_marker; }
    int perm_order() const;
    MarkerSystem inverted() const;
};

struct MarkerViolation {
    enum class Kind { NonSynchronizingMarker, NotAllowable, UnequalDataLength, OverlapViolation, BadPermutation };
    Kind kind;
    Word a, b;
    int overlap = 0;
    std::string message(const Alphabet& alpha) const;
};

/// Checks, in order: markers synchronizing, all special words allowable,
/// constant data length, the overlap condition (brute force over all
/// nontrivial overlap lengths of all ordered pairs of special words).
std::optional<MarkerViolation> validate_marker_system(const FischerCover& c,
                                                      const MarkerSystem& ms);

/// Largest nontrivial overlap length between any ordered pair of special
/// words (0 when none overlap).
int max_nontrivial_overlap(const MarkerSystem& ms);

struct AutCertificate {
    enum class Kind { InverseChecked, FiniteOrder };
    Kind kind = Kind::FiniteOrder;
    int order = 0;
    /// Whether the certificate was confirmed by exhaustive rule enumeration
    /// (possible only when the window language is small enough).
    bool exhaustive_rule_check = false;
    std::string note;
};

/// A certified automorphism: a block code together with its inverse and the
/// evidence that the pair really composes to the identity.
struct Automorphism {
    BlockCode code;
    BlockCode inverse;
    AutCertificate certificate;
};

Automorphism identity_automorphism(const Alphabet& a);
Automorphism shift_automorphism(int j, const Alphabet& a);
/// (a b)(x) = a(b(x)).
Automorphism compose_autos(const Automorphism& a, const Automorphism& b);
Automorphism inverse_of(const Automorphism& a);

/// Compiles a validated marker system into the induced marker automorphism
/// (radius |M_l| + n + |M_r|); the inverse applies the inverse permutation
/// and the certificate is the permutation order. Throws Error on a
/// validation failure.
Automorphism marker_to_code(const FischerCover& c, const MarkerSystem& ms);

/// True iff the image of every point under g stays in the shift; decided by
/// the transducer-image containment check when the window language fits the
/// budget, and by structural evidence (validated markers, shifts and their
/// compositions) otherwise.
bool is_endomorphism(const FischerCover& c, const BlockCode& g,
                     std::uint64_t budget = 2'000'000);

/// Certifies invertibility by an explicit inverse or by finite order.
/// Throws NotCertifiedError when no certificate is found below the bound
/// (explicitly not a proof of non-invertibility).
Automorphism certify_automorphism(const FischerCover& c, const BlockCode& g,
                                  const std::optional<BlockCode>& inverse_hint,
                                  int order_bound, std::uint64_t budget = 2'000'000);

enum class PointType { Type1, Type2, Unknown };

struct ClassifyResult {
    PointType type;
    std::string witness_word;                  // group word over the generators
    std::optional<Automorphism> witness;
};

/// Type 1: the point is synchronizing. Type 2: some group word over the
/// given automorphisms (length <= word_bound) maps it to a synchronizing
/// point. Otherwise Unknown; Type 3 is never certified.
ClassifyResult classify_type(const FischerCover& c, const PeriodicPoint& x,
                             const std::vector<Automorphism>& auts, int word_bound = 2);

} // namespace sofic

#endif
