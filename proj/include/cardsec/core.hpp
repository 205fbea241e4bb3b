#pragma once

// Card-deck primitives shared by every other module: hands, deals, exact
// combinatorics, exact rationals, and the seeded generator.

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace cardsec {

using BigInt = boost::multiprecision::cpp_int;

enum class ErrorCode {
  InvalidArgument,
  OutOfRange,
  NonPrimePower,
  DivisionByZero,
  UnsupportedParameters,
  TooLargeForExactSearch,
  NonIntegerParameters,
  ParameterBound,
  NoCandidate,
  Ambiguous,
  ImpossibleHand,
  ColumnsDependent,
  NotLinear,
  ParseError,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what, std::int64_t detail = 0)
      : std::runtime_error(what), code_(code), detail_(detail) {}

  ErrorCode code() const noexcept { return code_; }
  // Extra integer payload: the candidate count for Ambiguous, otherwise 0.
  std::int64_t detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::int64_t detail_;
};

using Card = std::uint32_t;

/// A set of cards kept in canonical (strictly increasing) order. Set equality
/// is sequence equality and ordering is lexicographic on the sorted ids.
class Hand {
 public:
  Hand() = default;
  Hand(std::initializer_list<Card> cards);
  /// Sorts; throws InvalidArgument on duplicates.
  explicit Hand(std::vector<Card> cards);

  /// Skips validation. The caller guarantees strictly increasing input.
  static Hand from_sorted(std::vector<Card> cards) {
    Hand h;
    h.cards_ = std::move(cards);
    return h;
  }

  std::span<const Card> cards() const noexcept { return cards_; }
  std::size_t size() const noexcept { return cards_.size(); }
  bool empty() const noexcept { return cards_.empty(); }
  auto begin() const noexcept { return cards_.begin(); }
  auto end() const noexcept { return cards_.end(); }
  Card operator[](std::size_t i) const { return cards_[i]; }
  Card back() const { return cards_.back(); }

  bool contains(Card c) const;
  bool intersects(const Hand& other) const;
  std::size_t intersection_size(const Hand& other) const;
  bool is_subset_of(const Hand& other) const;

  std::string to_string() const;

  friend bool operator==(const Hand&, const Hand&) = default;
  friend std::strong_ordering operator<=>(const Hand& a, const Hand& b) {
    return std::lexicographical_compare_three_way(a.cards_.begin(), a.cards_.end(),
                                                  b.cards_.begin(), b.cards_.end());
  }

 private:
  std::vector<Card> cards_;
};

Hand hand_union(const Hand& a, const Hand& b);
Hand hand_difference(const Hand& a, const Hand& b);
/// {0, ..., n-1} minus `removed`.
Hand complement(const Hand& removed, unsigned n);

struct Deal {
  Hand alice;
  Hand bob;
  Hand cathy;

  /// Pairwise disjoint, nonempty, union equal to {0..n-1}.
  bool is_valid(unsigned n) const;
};

// ---------------------------------------------------------------------------
// Exact arithmetic

BigInt binomial(unsigned n, unsigned k);
/// Throws OutOfRange when the value does not fit in 64 bits.
std::uint64_t binomial_u64(unsigned n, unsigned k);
BigInt factorial(unsigned n);

/// Exact rational with a positive denominator, always in lowest terms.
class Rational {
 public:
  Rational() = default;
  Rational(long long v) : value_(v) {}  // NOLINT(google-explicit-constructor)
  explicit Rational(const BigInt& v) : value_(v) {}
  Rational(const BigInt& num, const BigInt& den);

  BigInt num() const { return boost::multiprecision::numerator(value_); }
  BigInt den() const { return boost::multiprecision::denominator(value_); }
  bool is_zero() const { return value_ == 0; }
  std::string to_string() const;

  Rational operator-() const { return Rational(-value_); }
  Rational& operator+=(const Rational& o) { value_ += o.value_; return *this; }
  Rational& operator-=(const Rational& o) { value_ -= o.value_; return *this; }
  Rational& operator*=(const Rational& o) { value_ *= o.value_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.value_ < b.value_; }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
  friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

 private:
  explicit Rational(boost::multiprecision::cpp_rational v) : value_(std::move(v)) {}
  boost::multiprecision::cpp_rational value_;
};

Rational abs(const Rational& r);

// ---------------------------------------------------------------------------
// Subset enumeration and ranking

/// Lexicographic stream of the k-subsets of {0..n-1}. Single consumer; copy
/// the enumerator to fan out.
class SubsetEnumerator {
 public:
  SubsetEnumerator(int n, int k);

  bool done() const noexcept { return done_; }
  std::span<const Card> current() const noexcept { return current_; }
  Hand hand() const { return Hand::from_sorted(current_); }
  void advance();

 private:
  unsigned n_;
  unsigned k_;
  bool done_ = false;
  std::vector<Card> current_;
};

std::vector<Hand> enumerate_k_subsets(int n, int k);

template <class Fn>
void for_each_k_subset(int n, int k, Fn&& fn) {
  for (SubsetEnumerator it(n, k); !it.done(); it.advance()) fn(it.current());
}

/// Subsets of `pool` (sorted) of size k, lexicographic in pool order.
template <class Fn>
void for_each_k_subset_of(std::span<const Card> pool, unsigned k, Fn&& fn) {
  if (k > pool.size()) return;
  std::vector<Card> chosen(k);
  for (SubsetEnumerator it(static_cast<int>(pool.size()), static_cast<int>(k)); !it.done();
       it.advance()) {
    auto idx = it.current();
    for (unsigned i = 0; i < k; ++i) chosen[i] = pool[idx[i]];
    fn(std::span<const Card>(chosen));
  }
}

/// Colexicographic rank of k-subsets of {0..n-1}, used for dense tally tables.
class SubsetRanker {
 public:
  SubsetRanker(unsigned n, unsigned k);
  std::uint64_t count() const noexcept { return count_; }
  std::uint64_t rank(std::span<const Card> sorted) const;

 private:
  unsigned n_;
  unsigned k_;
  std::uint64_t count_;
  // table_[i * (k+1) + j] = C(i, j)
  std::vector<std::uint64_t> table_;
};

// ---------------------------------------------------------------------------
// Randomness

struct Seed {
  std::uint64_t value = 0;
};

/// SplitMix64. State transition: s <- s + 0x9E3779B97F4A7C15; output is the
/// Stafford variant-13 mix of the new state. No OS entropy is ever consulted.
class SplitMix64 {
 public:
  explicit SplitMix64(Seed seed) : state_(seed.value) {}

  std::uint64_t next();
  /// Uniform in [0, bound) by rejection; bound > 0.
  std::uint64_t below(std::uint64_t bound);

  /// Independent stream for (seed, index); used to derive per-trial generators.
  static SplitMix64 stream(Seed seed, std::uint64_t index);

 private:
  std::uint64_t state_;
};

Deal random_deal(int n, int a, int b, int c, Seed seed);
Deal random_deal(int n, int a, int b, int c, SplitMix64& rng);

// ---------------------------------------------------------------------------
// Worker fan-out

/// Splits [0, count) into contiguous chunks over `threads` workers. Calls
/// fn(begin, end). Runs inline when threads <= 1.
template <class Fn>
void parallel_chunks(std::size_t count, unsigned threads, Fn&& fn) {
  if (threads <= 1 || count < 2) {
    fn(std::size_t{0}, count);
    return;
  }
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(threads);
  pool.reserve(threads);
  std::size_t chunk = (count + threads - 1) / threads;
  for (unsigned w = 0; w < threads; ++w) {
    std::size_t lo = w * chunk;
    std::size_t hi = std::min(count, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([&fn, &errors, w, lo, hi] {
      try {
        fn(lo, hi);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace cardsec
