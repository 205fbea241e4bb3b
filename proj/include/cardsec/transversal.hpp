#pragma once

// Orthogonal arrays, transversal designs, coset large sets and the variant of
// the protocol where the deck is split into piles and Alice holds one card
// from each.
//
// Point encoding: group i (0-based) owns ids [i*v, (i+1)*v); symbol x in
// column i of an OA row becomes point i*v + x.

#include "cardsec/core.hpp"
#include "cardsec/gf.hpp"
#include "cardsec/strategy.hpp"

#include <map>
#include <memory>
#include <optional>
#include <vector>

namespace cardsec::transversal {

using Row = std::vector<std::uint32_t>;
using Matrix = std::vector<std::vector<std::uint32_t>>;  // field element indices

struct GeneratorWitness {
  std::shared_ptr<const gf::GaloisField> field;
  Matrix matrix;  // ℓ rows, k columns
};

struct OrthogonalArray {
  unsigned q = 0;
  unsigned t = 0;
  unsigned k = 0;
  std::uint64_t lambda = 1;
  std::vector<Row> rows;
  std::optional<GeneratorWitness> generator;  // present for linear arrays

  friend bool operator==(const OrthogonalArray& x, const OrthogonalArray& y) {
    return x.q == y.q && x.t == y.t && x.k == y.k && x.lambda == y.lambda && x.rows == y.rows;
  }
};

struct OaFailure {
  std::vector<unsigned> columns;  // empty when the row count itself is wrong
  Row tuple;
  std::uint64_t count = 0;
};

struct OaCheck {
  bool ok = false;
  std::optional<OaFailure> witness;
};

/// Row count λq^t and every t-column projection, exhaustively. Throws
/// InvalidArgument for ragged rows or symbols >= q.
OaCheck verify_oa(const OrthogonalArray& oa);

struct TransversalDesign {
  unsigned v = 0;  // group size
  unsigned k = 0;  // number of groups
  unsigned t = 0;
  std::uint64_t lambda = 1;
  std::vector<Hand> blocks;

  unsigned points() const { return v * k; }
  friend bool operator==(const TransversalDesign&, const TransversalDesign&) = default;
};

TransversalDesign oa_to_td(const OrthogonalArray& oa);
/// Throws InvalidArgument unless every block meets every group once.
OrthogonalArray td_to_oa(const TransversalDesign& td);
/// Block structure plus the OA property of the dual array.
bool verify_td(const TransversalDesign& td);

/// All q^ℓ combinations of the rows of M, sorted. Throws ColumnsDependent
/// (naming the first dependent column set) unless every t columns are
/// independent.
OrthogonalArray oa_from_generator(std::shared_ptr<const gf::GaloisField> field, const Matrix& m,
                                  unsigned t);

/// OA_1(t, q, q) from the Vandermonde matrix over GF(q), columns in element
/// index order. Requires 2 <= t <= q <= 16.
OrthogonalArray reed_solomon_oa(unsigned t, unsigned q);

/// First `keep` columns; the generator witness is truncated alongside.
OrthogonalArray truncate_columns(const OrthogonalArray& oa, unsigned keep);

/// Cosets of a linear array partitioning GF(q)^k; member 0 is the array.
/// Throws NotLinear without a generator witness.
std::vector<OrthogonalArray> coset_large_set(const OrthogonalArray& oa);

/// Restriction to the first `keep` groups; requires t <= keep <= k.
TransversalDesign delete_groups(const TransversalDesign& td, unsigned keep);

/// λ v^{t-s}
BigInt td_counts(unsigned v, unsigned k, unsigned t, const BigInt& lambda, unsigned s);
/// λ v^{t-i-j} (v-1)^j
BigInt td_counts_avoiding(unsigned v, unsigned k, unsigned t, const BigInt& lambda, unsigned i,
                          unsigned j);

/// 1 / (v^{δ'+ℓ-c} (v-1)^{c-ℓ})
Rational transversal_posterior(unsigned v, unsigned c, unsigned delta_prime, unsigned ell);

unsigned group_of(Card x, unsigned v);
bool is_partial_transversal(std::span<const Card> cards, unsigned v);

struct TransversalWitness {
  Hand h_c;
  Hand y;
  std::uint64_t count = 0;
  std::uint64_t p_size = 0;
  unsigned ell = 0;
};

struct TransversalVerdict {
  unsigned c = 0;
  unsigned delta = 0;
  bool weak = false;     // 0 < count < |P| everywhere
  bool formula = false;  // every posterior equals the closed form
  std::optional<TransversalWitness> witness;  // first failure of either
  std::uint64_t feasible_hands = 0;
  std::uint64_t skipped_infeasible = 0;
  std::uint64_t skipped_non_transversal_y = 0;  // Y with two cards in one pile
  std::map<std::pair<unsigned, unsigned>, Rational> posteriors;  // (δ', ℓ) -> value seen
  bool pass() const { return weak && formula; }
};

/// Cathy ranges over partial transversals of size c, Y over partial
/// transversals of size 1..δ avoiding H_C. Requires 1 <= c <= t-1 and
/// 1 <= δ <= t-c.
TransversalVerdict check_transversal_security(const TransversalDesign& td, unsigned c,
                                              unsigned delta, unsigned threads = 1);

/// Variant-local informativeness: for every transversal deal consistent with
/// a block, exactly one block avoids Bob's cards.
bool informative_by_deals(const TransversalDesign& td, unsigned c);

struct ToolkitReport {
  unsigned a = 0, c = 0, q = 0, t = 0;
  std::size_t member_count = 0;
  BigInt expected_members;  // q^c, the lower bound on m
  bool partition = false;   // every transversal hand in exactly one member
  std::vector<bool> informative;
  std::vector<bool> informative_local;
  std::vector<TransversalVerdict> security;  // at δ = a - 2c
  bool pass() const;
};

struct Toolkit {
  std::vector<TransversalDesign> members;
  ToolkitReport report;
};

/// RS(a-c, q), trimmed to a groups, coset-expanded. Requires q a prime power,
/// a <= q <= 16 and 1 <= c <= (a-1)/2.
Toolkit transversal_toolkit(unsigned a, unsigned c, unsigned q, unsigned threads = 1);

/// The strategy whose announcements are the members: n = av, b = n - a - c.
strategy::Strategy toolkit_strategy(const std::vector<TransversalDesign>& members, unsigned c);

/// Coverage of transversal hands: every transversal in exactly `gamma`
/// members, reported like strategy_coverage.
strategy::Coverage transversal_coverage(const strategy::Strategy& s, unsigned v);

/// Protocol runs under the pile deal: Alice one card per pile, Cathy c cards
/// from distinct piles. Posteriors are compared with transversal_posterior.
strategy::SimulationResult simulate_transversal(const strategy::Strategy& s, unsigned v,
                                                std::uint64_t trials, Seed seed);

}  // namespace cardsec::transversal
