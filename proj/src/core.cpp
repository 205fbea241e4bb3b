#include "cardsec/core.hpp"

#include <iterator>
#include <limits>
#include <numeric>
#include <sstream>

namespace cardsec {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::NonPrimePower: return "NonPrimePower";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::UnsupportedParameters: return "UnsupportedParameters";
    case ErrorCode::TooLargeForExactSearch: return "TooLargeForExactSearch";
    case ErrorCode::NonIntegerParameters: return "NonIntegerParameters";
    case ErrorCode::ParameterBound: return "ParameterBound";
    case ErrorCode::NoCandidate: return "NoCandidate";
    case ErrorCode::Ambiguous: return "Ambiguous";
    case ErrorCode::ImpossibleHand: return "ImpossibleHand";
    case ErrorCode::ColumnsDependent: return "ColumnsDependent";
    case ErrorCode::NotLinear: return "NotLinear";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

// ---------------------------------------------------------------------------
// Hand

Hand::Hand(std::initializer_list<Card> cards) : Hand(std::vector<Card>(cards)) {}

Hand::Hand(std::vector<Card> cards) : cards_(std::move(cards)) {
  std::sort(cards_.begin(), cards_.end());
  if (std::adjacent_find(cards_.begin(), cards_.end()) != cards_.end())
    throw Error(ErrorCode::InvalidArgument, "hand contains a duplicate card");
}

bool Hand::contains(Card c) const {
  return std::binary_search(cards_.begin(), cards_.end(), c);
}

bool Hand::intersects(const Hand& other) const { return intersection_size(other) != 0; }

std::size_t Hand::intersection_size(const Hand& other) const {
  std::size_t n = 0;
  auto i = cards_.begin();
  auto j = other.cards_.begin();
  while (i != cards_.end() && j != other.cards_.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++n;
      ++i;
      ++j;
    }
  }
  return n;
}

bool Hand::is_subset_of(const Hand& other) const {
  return std::includes(other.cards_.begin(), other.cards_.end(), cards_.begin(), cards_.end());
}

std::string Hand::to_string() const {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < cards_.size(); ++i) os << (i ? "," : "") << cards_[i];
  os << '}';
  return os.str();
}

Hand hand_union(const Hand& a, const Hand& b) {
  std::vector<Card> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return Hand::from_sorted(std::move(out));
}

Hand hand_difference(const Hand& a, const Hand& b) {
  std::vector<Card> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return Hand::from_sorted(std::move(out));
}

Hand complement(const Hand& removed, unsigned n) {
  std::vector<Card> out;
  out.reserve(n);
  auto it = removed.begin();
  for (Card x = 0; x < n; ++x) {
    while (it != removed.end() && *it < x) ++it;
    if (it == removed.end() || *it != x) out.push_back(x);
  }
  return Hand::from_sorted(std::move(out));
}

bool Deal::is_valid(unsigned n) const {
  if (alice.empty() || bob.empty() || cathy.empty()) return false;
  if (alice.size() + bob.size() + cathy.size() != n) return false;
  Hand all = hand_union(hand_union(alice, bob), cathy);
  if (all.size() != n) return false;
  return all.back() == n - 1;
}

// ---------------------------------------------------------------------------
// Exact arithmetic

BigInt binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  BigInt r = 1;
  for (unsigned i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

std::uint64_t binomial_u64(unsigned n, unsigned k) {
  BigInt r = binomial(n, k);
  if (r > std::numeric_limits<std::uint64_t>::max())
    throw Error(ErrorCode::OutOfRange, "binomial coefficient exceeds 64 bits");
  return static_cast<std::uint64_t>(r);
}

BigInt factorial(unsigned n) {
  BigInt r = 1;
  for (unsigned i = 2; i <= n; ++i) r *= i;
  return r;
}

Rational::Rational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw Error(ErrorCode::DivisionByZero, "rational with zero denominator");
  if (den < 0)
    value_ = boost::multiprecision::cpp_rational(-num, -den);
  else
    value_ = boost::multiprecision::cpp_rational(num, den);
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.value_ == 0) throw Error(ErrorCode::DivisionByZero, "rational division by zero");
  value_ /= o.value_;
  return *this;
}

std::string Rational::to_string() const {
  std::ostringstream os;
  os << num();
  if (den() != 1) os << '/' << den();
  return os.str();
}

Rational abs(const Rational& r) { return r < Rational(0) ? -r : r; }

// ---------------------------------------------------------------------------
// Subsets

SubsetEnumerator::SubsetEnumerator(int n, int k) {
  if (n < 0 || k < 0 || k > n)
    throw Error(ErrorCode::InvalidArgument, "k-subset enumeration requires 0 <= k <= n");
  n_ = static_cast<unsigned>(n);
  k_ = static_cast<unsigned>(k);
  current_.resize(k_);
  std::iota(current_.begin(), current_.end(), Card{0});
}

void SubsetEnumerator::advance() {
  if (done_) return;
  // Rightmost position that can still move up.
  std::size_t i = k_;
  while (i > 0) {
    --i;
    if (current_[i] < n_ - k_ + i) {
      ++current_[i];
      for (std::size_t j = i + 1; j < k_; ++j) current_[j] = current_[j - 1] + 1;
      return;
    }
  }
  done_ = true;
}

std::vector<Hand> enumerate_k_subsets(int n, int k) {
  std::vector<Hand> out;
  for (SubsetEnumerator it(n, k); !it.done(); it.advance()) out.push_back(it.hand());
  return out;
}

SubsetRanker::SubsetRanker(unsigned n, unsigned k) : n_(n), k_(k), table_((n + 1) * (k + 1), 0) {
  if (k > n) throw Error(ErrorCode::InvalidArgument, "ranker requires k <= n");
  for (unsigned i = 0; i <= n; ++i) {
    table_[i * (k + 1)] = 1;
    for (unsigned j = 1; j <= std::min(i, k); ++j) {
      std::uint64_t above = table_[(i - 1) * (k + 1) + j - 1];
      std::uint64_t left = j <= i - 1 ? table_[(i - 1) * (k + 1) + j] : 0;
      if (above > std::numeric_limits<std::uint64_t>::max() - left)
        throw Error(ErrorCode::OutOfRange, "subset rank table exceeds 64 bits");
      table_[i * (k + 1) + j] = above + left;
    }
  }
  count_ = table_[n * (k + 1) + k];
}

std::uint64_t SubsetRanker::rank(std::span<const Card> sorted) const {
  std::uint64_t r = 0;
  for (std::size_t j = 0; j < sorted.size(); ++j) r += table_[sorted[j] * (k_ + 1) + j + 1];
  return r;
}

// ---------------------------------------------------------------------------
// Randomness

namespace {
constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}
}  // namespace

std::uint64_t SplitMix64::next() {
  state_ += kGamma;
  return mix64(state_);
}

std::uint64_t SplitMix64::below(std::uint64_t bound) {
  if (bound == 0) throw Error(ErrorCode::InvalidArgument, "below(0)");
  // Largest multiple of bound that fits; values past it are rejected.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  for (;;) {
    std::uint64_t x = next();
    if (x < limit) return x % bound;
  }
}

SplitMix64 SplitMix64::stream(Seed seed, std::uint64_t index) {
  return SplitMix64(Seed{mix64(seed.value ^ mix64(index + kGamma))});
}

Deal random_deal(int n, int a, int b, int c, SplitMix64& rng) {
  if (a < 1 || b < 1 || c < 1)
    throw Error(ErrorCode::InvalidArgument, "every hand size must be at least 1");
  if (a + b + c != n) throw Error(ErrorCode::InvalidArgument, "a + b + c must equal n");
  std::vector<Card> deck(static_cast<std::size_t>(n));
  std::iota(deck.begin(), deck.end(), Card{0});
  // Fisher-Yates from the back.
  for (std::size_t i = deck.size() - 1; i > 0; --i) {
    std::size_t j = rng.below(i + 1);
    std::swap(deck[i], deck[j]);
  }
  auto take = [&](std::size_t from, std::size_t len) {
    return Hand(std::vector<Card>(deck.begin() + from, deck.begin() + from + len));
  };
  return Deal{take(0, a), take(a, b), take(a + b, c)};
}

Deal random_deal(int n, int a, int b, int c, Seed seed) {
  SplitMix64 rng(seed);
  return random_deal(n, a, b, c, rng);
}

}  // namespace cardsec
