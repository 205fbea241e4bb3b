#pragma once

// t-designs: construction of the block designs used as announcements and
// exhaustive verification of their parameters.

#include "cardsec/core.hpp"

#include <cstdint>
#include <optional>
#include <set>
#include <vector>

namespace cardsec::designs {

/// Point set [0, v), blocks of size k stored in lexicographic order.
class Design {
 public:
  /// Validates block sizes and ranges; duplicates are rejected unless
  /// `multiset` is set.
  Design(unsigned v, unsigned k, std::vector<Hand> blocks, bool multiset = false);

  unsigned v() const noexcept { return v_; }
  unsigned k() const noexcept { return k_; }
  const std::vector<Hand>& blocks() const noexcept { return blocks_; }
  std::size_t block_count() const noexcept { return blocks_.size(); }
  bool multiset() const noexcept { return multiset_; }

  friend bool operator==(const Design&, const Design&) = default;

 private:
  unsigned v_;
  unsigned k_;
  std::vector<Hand> blocks_;
  bool multiset_;
};

struct LevelSummary {
  unsigned s = 0;
  std::uint64_t min = 0;
  std::uint64_t max = 0;
  std::optional<std::uint64_t> constant;  // set iff min == max
};

struct DesignProfile {
  std::vector<LevelSummary> levels;  // levels[s] for s = 0..k (or the requested cap)

  /// Largest t such that every level s <= t is constant.
  unsigned strength() const;
};

struct LargeSet {
  unsigned v = 0;
  unsigned k = 0;
  std::vector<Design> members;
};

struct LargeSetReport {
  std::vector<std::optional<std::uint64_t>> member_lambda;  // per member, at strength t
  bool members_are_steiner = false;                          // every member_lambda == 1
  bool partition = false;            // every k-subset in exactly one member
  std::uint64_t missing_subsets = 0;
  std::uint64_t repeated_subsets = 0;
  std::optional<Hand> first_partition_failure;
  BigInt expected_members;  // C(v-t, k-t)
  std::size_t member_count = 0;
  bool pass() const {
    return members_are_steiner && partition && BigInt(member_count) == expected_members;
  }
};

// ---------------------------------------------------------------------------
// Verification

/// Exhaustive: λ if every t-subset lies in exactly λ blocks. t = 0 gives the
/// block count. Throws InvalidArgument for t > k.
std::optional<std::uint64_t> verify_t_design(const Design& d, unsigned t);

/// Containment counts for every s-subset, s = 0..min(k, max_s). Throws
/// TooLargeForExactSearch if some level would need more than 2^28 counters.
DesignProfile design_profile(const Design& d, std::optional<unsigned> max_s = std::nullopt);

/// Number of blocks that contain every point of `with` and none of `without`,
/// by a direct scan over block bitmasks.
std::uint64_t count_blocks(const Design& d, const Hand& with, const Hand& without = {});

/// Set of |B ∩ B'| over all pairs of distinct block positions.
std::set<unsigned> block_intersection_sizes(const Design& d);

Rational lambda_s(unsigned v, unsigned k, unsigned t, const BigInt& lambda, unsigned s);
Rational lambda_i_j(unsigned v, unsigned k, unsigned t, const BigInt& lambda, unsigned i,
                    unsigned j);

LargeSetReport verify_large_set(const LargeSet& ls, unsigned t);

/// Exact |Aut(D)| by point-permutation backtracking. Throws
/// TooLargeForExactSearch when v > limit.
BigInt automorphism_count(const Design& d, unsigned limit = 12);

// ---------------------------------------------------------------------------
// Constructions

/// λ copies of every k-subset of [0, v).
Design build_trivial_design(unsigned v, unsigned k, unsigned t, unsigned lambda);

/// Bose (v ≡ 3 mod 6) or Skolem (v ≡ 1 mod 6) Steiner triple system.
Design build_sts(unsigned v);

/// The planes of AG(3,2): a 3-(8,4,1) design, as tabulated in the literature.
Design builtin_ag32();

/// The classical large set of seven STS(9); points 1..9 relabeled to 0..8.
LargeSet builtin_large_set_sts9();

/// Lines of PG(2,q) for prime powers q <= 16.
Design build_projective_plane(unsigned q);

/// Paley-Hadamard design {QR + a : a in GF(q)}, q ≡ 3 mod 4, q <= 4096.
Design build_paley_hadamard(unsigned q);

/// Inversive plane 3-(q^2+1, q+1, 1) on GF(q^2) ∪ {∞}, ∞ encoded as q^2.
Design build_inversive_plane(unsigned q);

/// Octads of the extended binary Golay code: S(5,8,24).
Design build_witt_24();

/// Blocks through x with x deleted; remaining points relabeled in order.
Design derived_design(const Design& d, Card x);

}  // namespace cardsec::designs
