#ifndef SOFIC_CONSTRUCTIONS_HPP
#define SOFIC_CONSTRUCTIONS_HPP

#include <optional>
#include <string>
#include <vector>

#include "sofic/markers.hpp"

namespace sofic {

/// A synchronizing word of length >= n with no nontrivial self-overlap,
/// found by completing a synchronizing word to a primitive cycle and
/// scanning its rotations. Throws SearchExhaustedError past the documented
/// period bound.
Word nonoverlap_sync_marker(const FischerCover& c, int n);

/// Marker M with data set D(M,n) = { d in L_n : M d M allowable } such that
/// every word of length 2R+1 occurs inside some data word and at least two
/// distinct data orbits exist. Satisfies 2R+1 <= n < |M|.
struct RyanSystem {
    Word marker;
    int data_length = 0;
    std::vector<Word> data;
    int range = 0;
};

RyanSystem ryan_system(const FischerCover& c, int range);

/// Returns j with |j| <= R iff g's rule agrees with sigma^j on every
/// allowable window; nullopt when every candidate has a witness
/// disagreement. Throws SearchExhaustedError when neither can be settled
/// within the window budget.
std::optional<int> identify_power_of_shift(const FischerCover& c, const BlockCode& g,
                                           std::uint64_t budget = 4'000'000);

/// The marker automorphism g_tau on the Ryan system, post-checked: it
/// realizes tau's orbit permutation on the (M d)^inf points and fixes every
/// other orbit of period |M| + n pointwise.
Automorphism orbit_permutation_auto(const FischerCover& c, const RyanSystem& rs,
                                    const std::vector<int>& perm);

/// One sampled membership verification inside a certificate.
struct SampleCheck {
    EvPeriodicPoint point;
    EvPeriodicPoint image;
    bool in_target = false;
};

/// One marker system of the cylinder-mapping construction. `rotation` is
/// the period block a of the source cylinder; identity pieces record source
/// cylinders that already sit inside the target.
struct Prop31Piece {
    Word rotation;
    Word w_full;
    Word u_full;
    Word u_tilde;
    Word spacer;
    int r = 0;
    bool identity_piece = false;
    std::optional<MarkerSystem> system;
};

struct Prop31Certificate {
    int k = 0;
    OrbitId m;
    Word w_stem, u_stem;
    int case_used = 1;
    std::vector<Prop31Piece> pieces;
    Automorphism automorphism;
    std::vector<SampleCheck> samples;
    bool fixes_per_k = false;
    bool involution_structural = false;
    bool involution_sampled = false;
    /// Set only when the composed window language fit the check budget.
    std::optional<bool> involution_exhaustive;

    bool verified() const;
};

struct Prop31Options {
    /// Extra symbols beyond the stem when enumerating sample members.
    int sample_extension = 4;
    std::size_t max_samples = 40;
    std::uint64_t rule_check_budget = 400'000;
};

/// The cylinder-mapping automorphism: g fixes Per_k orbitwise and moves the
/// fiber cylinder [w]^m into [u]^m (cylinder words anchored at the break).
/// Case 2 (non-synchronizing base orbit) conjugates through the supplied
/// witness.
Prop31Certificate prop31(const FischerCover& c, int k, const OrbitId& m, const Word& w_stem,
                         const Word& u_stem, const std::optional<Automorphism>& witness = {},
                         const Prop31Options& opts = {});

/// The involution of prop31 rechecked in the reversed containment form
/// [w]^m subset of g.[u]^m (g equals its own inverse).
Prop31Certificate minimality_witness(const FischerCover& c, int k, const OrbitId& m,
                                     const Word& u_stem, const Word& w_stem,
                                     const Prop31Options& opts = {});

struct PingPongReport {
    bool success = false;
    std::string first_violation;
    int max_word_length = 0;
    std::size_t words_checked = 0;
    std::size_t sample_size = 0;
    std::vector<std::string> log;
};

/// Builds generators of order L+1 mapping the complement-side cylinders of
/// [A]^m (resp. [B]^m) into them, then checks that no nontrivial reduced
/// word of length <= L acts as the identity on the sampled points. Evidence
/// of freeness, not proof.
PingPongReport pingpong_check(const FischerCover& c, int k, const OrbitId& m, const Word& a_stem,
                              const Word& b_stem, int word_length);

/// Fiber plumbing shared with the CLI: length-`len` cylinder stems of the
/// fiber over m, with the tail rotation realizing each.
std::vector<std::pair<Word, Word>> fiber_stems(const FischerCover& c, int k, const OrbitId& m,
                                               int len);

/// Bounded deterministic sample of [stem]^m members.
std::vector<QkPoint> cylinder_samples(const FischerCover& c, int k, const OrbitId& m,
                                      const Word& stem, int extension, std::size_t max_count);

} // namespace sofic

#endif
