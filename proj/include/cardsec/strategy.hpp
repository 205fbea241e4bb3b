#pragma once

// Announcements, strategies and the exhaustive verifiers for Bob's
// informativeness and Cathy's weak/perfect δ-security.

#include "cardsec/core.hpp"
#include "cardsec/designs.hpp"
#include "cardsec/mask_matrix.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace cardsec::strategy {

/// A set of a-subsets of the deck [0, n) that Alice may declare. Hands are
/// kept sorted and unique.
class Announcement {
 public:
  Announcement(unsigned n, unsigned a, std::vector<Hand> hands);
  static Announcement from_design(const designs::Design& d);

  unsigned n() const noexcept { return n_; }
  unsigned a() const noexcept { return a_; }
  const std::vector<Hand>& hands() const noexcept { return hands_; }
  std::size_t size() const noexcept { return hands_.size(); }
  const simd::MaskMatrix& masks() const noexcept { return masks_; }
  std::size_t words() const noexcept { return masks_.words(); }

  friend bool operator==(const Announcement& x, const Announcement& y) {
    return x.n_ == y.n_ && x.a_ == y.a_ && x.hands_ == y.hands_;
  }

 private:
  unsigned n_;
  unsigned a_;
  std::vector<Hand> hands_;
  simd::MaskMatrix masks_;
};

struct Strategy {
  unsigned n = 0;
  unsigned a = 0;
  unsigned b = 0;
  unsigned c = 0;
  std::vector<Announcement> announcements;

  /// Throws InvalidArgument unless a+b+c = n, a,b,c >= 1 and every
  /// announcement uses the same n and a.
  void validate() const;
};

enum class Level { Insecure, Weak, Perfect };
const char* to_string(Level level);
/// "weak" or "perfect"; throws InvalidArgument otherwise.
Level parse_level(const std::string& s);

struct SecurityWitness {
  Hand h_c;
  Hand y;
  std::uint64_t count = 0;   // hands of P(H_C, A) containing y
  std::uint64_t p_size = 0;  // |P(H_C, A)|
};

struct PosteriorConstant {
  unsigned delta_prime = 0;
  Rational value;
};

struct SecurityVerdict {
  Level level = Level::Insecure;  // highest level that holds everywhere
  Level requested = Level::Perfect;
  unsigned delta = 0;
  std::vector<PosteriorConstant> constants;  // filled when level is perfect
  std::optional<SecurityWitness> witness;     // first failure of the requested condition
  std::uint64_t feasible_hands = 0;           // Cathy hands with P(H_C, A) nonempty
  std::uint64_t skipped_infeasible = 0;
  bool pass() const { return level >= requested; }
};

struct InformativeResult {
  bool informative = false;
  std::optional<std::pair<Hand, Hand>> witness;  // first pair meeting in >= a-c points
};

/// Hands of A disjoint from y, in A's order.
std::vector<Hand> p_set(const Hand& y, const Announcement& A);

/// Throws ParameterBound when a <= c.
InformativeResult is_informative(const Announcement& A, unsigned c);

/// The unique hand of A disjoint from Bob's hand. Throws NoCandidate, or
/// Ambiguous with the candidate count in Error::detail().
Hand bob_deduce(const Announcement& A, const Hand& h_b);

/// Cathy's uniform posterior over P(H_C, A). Throws ImpossibleHand if empty.
std::map<Hand, Rational> cathy_posterior(const Announcement& A, const Hand& h_c);

/// Pr[x in H_A | H_C, A] for every card x outside H_C.
std::map<Card, Rational> card_posteriors(const Announcement& A, const Hand& h_c);

/// Checks every feasible H_C of size c and every Y ⊆ X∖H_C with 1 <= |Y| <= δ.
/// The verdict does not depend on `threads`.
SecurityVerdict check_announcement_security(const Announcement& A, unsigned c, unsigned delta,
                                            Level requested, unsigned threads = 1);

struct Coverage {
  bool complete = false;
  std::uint64_t uncovered = 0;
  std::optional<Hand> first_uncovered;
  std::uint64_t multiplicity_min = 0;
  std::uint64_t multiplicity_max = 0;
  std::optional<std::uint64_t> gamma;  // set when every hand lies in the same number of announcements
};

Coverage strategy_coverage(const Strategy& s);

struct StrategyReport {
  Coverage coverage;
  std::size_t m = 0;
  std::vector<InformativeResult> informative;
  std::vector<SecurityVerdict> security;
  bool pass() const;
};

StrategyReport verify_strategy(const Strategy& s, unsigned delta, Level requested,
                               unsigned threads = 1);

struct OrbitParams {
  BigInt m;
  BigInt gamma;
};

/// m = n!/|Aut(D)| and γ = m / C(n-t, a-t) for a verified t-(n,a,1) design
/// with c <= min(t-1, a-t).
OrbitParams orbit_strategy_params(const designs::Design& d, unsigned t, unsigned c,
                                  unsigned limit = 12);

struct Bounds {
  unsigned a = 0, b = 0, c = 0, n = 0;
  BigInt min_announcements;                    // C(n-a+c, c)
  unsigned max_perfect_delta_informative = 0;  // max(a-2c, 0)
  bool informative_weak1_possible = false;     // a > c+1 and c < b
};

Bounds bounds(unsigned a, unsigned b, unsigned c);

struct SimulationResult {
  std::uint64_t trials = 0;
  std::uint64_t bob_success = 0;
  std::optional<Rational> reference;  // the constant posteriors are compared with, if uniform
  Rational max_deviation;             // max |posterior - predicted| over all trials and cards
  std::set<Rational> posterior_values;
};

/// Seeded protocol runs. Alice's announcement is drawn uniformly from the
/// announcements containing her hand; Cathy's per-card posteriors are
/// compared with C(a,1)/C(a+b,1). Throws InvalidArgument if some hand is
/// uncovered.
SimulationResult simulate_protocol(const Strategy& s, std::uint64_t trials, Seed seed);

namespace detail {
// Announcement indices containing each a-subset, indexed by colex rank.
std::vector<std::vector<std::uint32_t>> hand_index(const Strategy& s);
}  // namespace detail

}  // namespace cardsec::strategy
