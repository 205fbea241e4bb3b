#include "cardsec/designs.hpp"

#include "cardsec/gf.hpp"
#include "cardsec/mask_matrix.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <deque>
#include <memory>
#include <string>
#include <unordered_map>

namespace cardsec::designs {

namespace {

constexpr std::uint64_t kMaxTallyEntries = std::uint64_t{1} << 28;

Hand hand_from_digits(std::string_view digits, Card offset = 0) {
  std::vector<Card> cards;
  for (char ch : digits) cards.push_back(static_cast<Card>(ch - '0') - offset);
  return Hand(std::move(cards));
}

// counts[rank(S)] = number of blocks containing S, over all s-subsets S.
std::vector<std::uint32_t> tally_level(const Design& d, unsigned s) {
  SubsetRanker ranker(d.v(), s);
  if (ranker.count() > kMaxTallyEntries)
    throw Error(ErrorCode::TooLargeForExactSearch,
                "too many " + std::to_string(s) + "-subsets for an exhaustive tally");
  std::vector<std::uint32_t> counts(ranker.count(), 0);
  for (const Hand& b : d.blocks())
    for_each_k_subset_of(b.cards(), s, [&](std::span<const Card> sub) { ++counts[ranker.rank(sub)]; });
  return counts;
}

}  // namespace

Design::Design(unsigned v, unsigned k, std::vector<Hand> blocks, bool multiset)
    : v_(v), k_(k), blocks_(std::move(blocks)), multiset_(multiset) {
  if (k < 1 || k >= v) throw Error(ErrorCode::InvalidArgument, "design requires v > k >= 1");
  for (const Hand& b : blocks_) {
    if (b.size() != k)
      throw Error(ErrorCode::InvalidArgument, "block " + b.to_string() + " does not have size k");
    if (b.back() >= v)
      throw Error(ErrorCode::InvalidArgument, "block " + b.to_string() + " has a point >= v");
  }
  std::sort(blocks_.begin(), blocks_.end());
  if (!multiset_) {
    auto dup = std::adjacent_find(blocks_.begin(), blocks_.end());
    if (dup != blocks_.end())
      throw Error(ErrorCode::InvalidArgument, "repeated block " + dup->to_string() + " in simple design");
  }
}

unsigned DesignProfile::strength() const {
  unsigned t = 0;
  for (const auto& level : levels) {
    if (!level.constant) break;
    t = level.s;
  }
  return t;
}

// ---------------------------------------------------------------------------
// Verification

std::optional<std::uint64_t> verify_t_design(const Design& d, unsigned t) {
  if (t > d.k()) throw Error(ErrorCode::InvalidArgument, "design strength t exceeds block size");
  auto counts = tally_level(d, t);
  std::uint32_t first = counts.front();
  for (std::uint32_t c : counts)
    if (c != first) return std::nullopt;
  return first;
}

DesignProfile design_profile(const Design& d, std::optional<unsigned> max_s) {
  unsigned top = std::min(d.k(), max_s.value_or(d.k()));
  DesignProfile profile;
  for (unsigned s = 0; s <= top; ++s) {
    auto counts = tally_level(d, s);
    auto [lo, hi] = std::minmax_element(counts.begin(), counts.end());
    LevelSummary level{s, *lo, *hi, std::nullopt};
    if (*lo == *hi) level.constant = *lo;
    profile.levels.push_back(level);
  }
  return profile;
}

std::uint64_t count_blocks(const Design& d, const Hand& with, const Hand& without) {
  const std::size_t words = simd::words_for(d.v());
  simd::MaskMatrix m(words, d.blocks());
  return simd::count_matching(m, simd::to_mask(with, words), simd::to_mask(without, words));
}

std::set<unsigned> block_intersection_sizes(const Design& d) {
  const std::size_t words = simd::words_for(d.v());
  simd::MaskMatrix m(words, d.blocks());
  std::set<unsigned> sizes;
  for (std::size_t i = 0; i + 1 < d.block_count(); ++i) {
    auto row = simd::intersection_sizes(m, simd::to_mask(d.blocks()[i], words));
    for (std::size_t j = i + 1; j < row.size(); ++j) sizes.insert(row[j]);
  }
  return sizes;
}

Rational lambda_s(unsigned v, unsigned k, unsigned t, const BigInt& lambda, unsigned s) {
  if (s > t || t > k) throw Error(ErrorCode::InvalidArgument, "lambda_s requires s <= t <= k");
  return Rational(lambda * binomial(v - s, t - s), binomial(k - s, t - s));
}

Rational lambda_i_j(unsigned v, unsigned k, unsigned t, const BigInt& lambda, unsigned i,
                    unsigned j) {
  if (i + j > t || t > k) throw Error(ErrorCode::InvalidArgument, "lambda_i_j requires i + j <= t <= k");
  return Rational(lambda * binomial(v - i - j, k - i), binomial(v - t, k - t));
}

LargeSetReport verify_large_set(const LargeSet& ls, unsigned t) {
  LargeSetReport report;
  report.member_count = ls.members.size();
  report.expected_members = t <= ls.k ? binomial(ls.v - t, ls.k - t) : BigInt(0);
  report.members_are_steiner = !ls.members.empty();
  for (const Design& m : ls.members) {
    if (m.v() != ls.v || m.k() != ls.k)
      throw Error(ErrorCode::InvalidArgument, "large-set member does not share v and k");
    auto lambda = verify_t_design(m, t);
    report.member_lambda.push_back(lambda);
    if (lambda != 1u) report.members_are_steiner = false;
  }

  SubsetRanker ranker(ls.v, ls.k);
  if (ranker.count() > kMaxTallyEntries)
    throw Error(ErrorCode::TooLargeForExactSearch, "too many k-subsets to check a partition");
  std::vector<std::uint32_t> seen(ranker.count(), 0);
  for (const Design& m : ls.members)
    for (const Hand& b : m.blocks()) ++seen[ranker.rank(b.cards())];
  report.partition = true;
  // Walk subsets in lexicographic order so the reported failure is the first one.
  for_each_k_subset(static_cast<int>(ls.v), static_cast<int>(ls.k), [&](std::span<const Card> s) {
    std::uint32_t c = seen[ranker.rank(s)];
    if (c == 1) return;
    if (c == 0) ++report.missing_subsets;
    else ++report.repeated_subsets;
    if (report.partition) report.first_partition_failure = Hand::from_sorted({s.begin(), s.end()});
    report.partition = false;
  });
  return report;
}

// ---------------------------------------------------------------------------
// Automorphisms

namespace {

// Backtracking over point images in order 0, 1, ..., v-1. A block is checked
// as soon as its largest point has an image.
class AutomorphismSearch {
 public:
  explicit AutomorphismSearch(const Design& d)
      : v_(d.v()), closing_(d.v()), image_(d.v()), used_(d.v(), false) {
    for (const Hand& b : d.blocks()) {
      std::uint64_t m = 0;
      for (Card c : b) m |= std::uint64_t{1} << c;
      auto [it, fresh] = multiplicity_.try_emplace(m, 0);
      if (fresh) {
        closing_[b.back()].push_back(m);
      }
      ++it->second;
    }
  }

  // Size of the orbit of point i under the pointwise stabilizer of 0..i-1.
  std::uint64_t orbit_size(unsigned i) {
    std::uint64_t orbit = 0;
    for (unsigned x = i; x < v_; ++x) {
      std::fill(used_.begin(), used_.end(), false);
      for (unsigned j = 0; j < i; ++j) {
        image_[j] = j;
        used_[j] = true;
      }
      image_[i] = x;
      used_[x] = true;
      if (closes(i) && extend(i + 1)) ++orbit;
    }
    return orbit;
  }

 private:
  bool closes(unsigned depth) const {
    for (std::uint64_t m : closing_[depth]) {
      std::uint64_t img = 0;
      for (std::uint64_t bits = m; bits; bits &= bits - 1) img |= std::uint64_t{1} << image_[std::countr_zero(bits)];
      auto it = multiplicity_.find(img);
      if (it == multiplicity_.end() || it->second != multiplicity_.at(m)) return false;
    }
    return true;
  }

  bool extend(unsigned depth) {
    if (depth == v_) return true;
    for (unsigned x = 0; x < v_; ++x) {
      if (used_[x]) continue;
      image_[depth] = x;
      used_[x] = true;
      if (closes(depth) && extend(depth + 1)) return true;
      used_[x] = false;
    }
    return false;
  }

  unsigned v_;
  std::unordered_map<std::uint64_t, std::uint32_t> multiplicity_;
  std::vector<std::vector<std::uint64_t>> closing_;
  std::vector<unsigned> image_;
  std::vector<bool> used_;
};

}  // namespace

BigInt automorphism_count(const Design& d, unsigned limit) {
  if (d.v() > limit || d.v() > 64)
    throw Error(ErrorCode::TooLargeForExactSearch,
                "automorphism search is capped at " + std::to_string(std::min(limit, 64u)) + " points");
  // |Aut| is the product of the orbit lengths along the stabilizer chain.
  AutomorphismSearch search(d);
  BigInt order = 1;
  for (unsigned i = 0; i < d.v(); ++i) order *= search.orbit_size(i);
  return order;
}

// ---------------------------------------------------------------------------
// Constructions

Design build_trivial_design(unsigned v, unsigned k, unsigned t, unsigned lambda) {
  if (!(v > k && k >= t) || lambda < 1)
    throw Error(ErrorCode::UnsupportedParameters, "trivial design requires v > k >= t and lambda >= 1");
  std::vector<Hand> blocks;
  for (SubsetEnumerator it(static_cast<int>(v), static_cast<int>(k)); !it.done(); it.advance())
    for (unsigned r = 0; r < lambda; ++r) blocks.push_back(it.hand());
  return Design(v, k, std::move(blocks), lambda > 1);
}

Design build_sts(unsigned v) {
  if (v < 7 || (v % 6 != 1 && v % 6 != 3))
    throw Error(ErrorCode::UnsupportedParameters,
                "STS(v) needs v ≡ 1,3 (mod 6) and v >= 7, got v = " + std::to_string(v));
  std::vector<Hand> blocks;
  if (v % 6 == 3) {
    // Bose: points Z_m x Z_3 with m = 2n+1, (x, i) -> 3x + i, and the
    // idempotent commutative quasigroup x o y = (n+1)(x+y) mod m.
    const unsigned m = v / 3;
    const unsigned n = (m - 1) / 2;
    auto pt = [](unsigned x, unsigned i) { return static_cast<Card>(3 * x + i % 3); };
    auto op = [&](unsigned x, unsigned y) { return ((n + 1) * (x + y)) % m; };
    for (unsigned x = 0; x < m; ++x) blocks.push_back(Hand{pt(x, 0), pt(x, 1), pt(x, 2)});
    for (unsigned x = 0; x < m; ++x)
      for (unsigned y = x + 1; y < m; ++y)
        for (unsigned i = 0; i < 3; ++i) blocks.push_back(Hand{pt(x, i), pt(y, i), pt(op(x, y), i + 1)});
  } else {
    // Skolem: points Z_{2n} x Z_3 plus ∞ (id v-1), with the half-idempotent
    // commutative quasigroup x o y = σ((x+y) mod 2n), σ(2j) = j, σ(2j+1) = n+j.
    const unsigned m = (v - 1) / 3;
    const unsigned n = m / 2;
    const Card inf = v - 1;
    auto pt = [](unsigned x, unsigned i) { return static_cast<Card>(3 * x + i % 3); };
    auto op = [&](unsigned x, unsigned y) {
      unsigned s = (x + y) % m;
      return s % 2 == 0 ? s / 2 : n + s / 2;
    };
    for (unsigned x = 0; x < n; ++x) blocks.push_back(Hand{pt(x, 0), pt(x, 1), pt(x, 2)});
    for (unsigned x = 0; x < n; ++x)
      for (unsigned i = 0; i < 3; ++i) blocks.push_back(Hand{inf, pt(x + n, i), pt(x, i + 1)});
    for (unsigned x = 0; x < m; ++x)
      for (unsigned y = x + 1; y < m; ++y)
        for (unsigned i = 0; i < 3; ++i) blocks.push_back(Hand{pt(x, i), pt(y, i), pt(op(x, y), i + 1)});
  }
  return Design(v, 3, std::move(blocks));
}

Design builtin_ag32() {
  std::vector<Hand> blocks;
  for (const char* b : {"3456", "2567", "2347", "1457", "1367", "1246", "1235", "0467", "0357",
                        "0245", "0236", "0156", "0134", "0127"})
    blocks.push_back(hand_from_digits(b));
  return Design(8, 4, std::move(blocks));
}

LargeSet builtin_large_set_sts9() {
  static constexpr const char* kRows[7][12] = {
      {"123", "145", "169", "178", "249", "257", "268", "348", "356", "379", "467", "589"},
      {"124", "136", "158", "179", "235", "267", "289", "349", "378", "457", "468", "569"},
      {"125", "137", "149", "168", "238", "247", "269", "346", "359", "458", "567", "789"},
      {"126", "139", "148", "157", "234", "259", "278", "358", "367", "456", "479", "689"},
      {"127", "135", "146", "189", "239", "248", "256", "347", "368", "459", "578", "679"},
      {"128", "134", "159", "167", "236", "245", "279", "357", "389", "469", "478", "568"},
      {"129", "138", "147", "156", "237", "246", "258", "345", "369", "489", "579", "678"},
  };
  LargeSet ls{9, 3, {}};
  for (const auto& row : kRows) {
    std::vector<Hand> blocks;
    for (const char* b : row) blocks.push_back(hand_from_digits(b, 1));
    ls.members.emplace_back(9, 3, std::move(blocks));
  }
  return ls;
}

namespace {

std::shared_ptr<const gf::GaloisField> small_field(unsigned q, const char* what) {
  if (q > 16 || !gf::is_prime_power(q))
    throw Error(ErrorCode::UnsupportedParameters,
                std::string(what) + " needs a prime power q <= 16, got q = " + std::to_string(q));
  return gf::make_field(q);
}

}  // namespace

Design build_projective_plane(unsigned q) {
  auto f = small_field(q, "projective plane");
  // Points and lines: nonzero vectors of GF(q)^3 with first nonzero coordinate 1.
  std::vector<std::array<std::uint32_t, 3>> pts;
  for (std::uint32_t a = 0; a < q; ++a)
    for (std::uint32_t b = 0; b < q; ++b)
      for (std::uint32_t c = 0; c < q; ++c) {
        std::array<std::uint32_t, 3> x{a, b, c};
        auto lead = std::find_if(x.begin(), x.end(), [](auto e) { return e != 0; });
        if (lead != x.end() && *lead == 1) pts.push_back(x);
      }
  std::vector<Hand> blocks;
  for (const auto& u : pts) {
    std::vector<Card> line;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      std::uint32_t dot = 0;
      for (int j = 0; j < 3; ++j) dot = f->add(dot, f->mul(u[j], pts[i][j]));
      if (dot == 0) line.push_back(static_cast<Card>(i));
    }
    blocks.push_back(Hand::from_sorted(std::move(line)));
  }
  return Design(static_cast<unsigned>(pts.size()), q + 1, std::move(blocks));
}

Design build_paley_hadamard(unsigned q) {
  if (q > 4096 || q % 4 != 3 || !gf::is_prime_power(q))
    throw Error(ErrorCode::UnsupportedParameters,
                "Paley design needs a prime power q ≡ 3 (mod 4), q <= 4096, got q = " + std::to_string(q));
  auto f = gf::make_field(q);
  std::vector<bool> square(q, false);
  for (std::uint32_t x = 1; x < q; ++x) square[f->mul(x, x)] = true;
  std::vector<std::uint32_t> qr;
  for (std::uint32_t x = 1; x < q; ++x)
    if (square[x]) qr.push_back(x);
  std::vector<Hand> blocks;
  for (std::uint32_t a = 0; a < q; ++a) {
    std::vector<Card> b;
    for (std::uint32_t r : qr) b.push_back(f->add(r, a));
    blocks.emplace_back(std::move(b));
  }
  return Design(q, (q - 1) / 2, std::move(blocks));
}

Design build_inversive_plane(unsigned q) {
  small_field(q, "inversive plane");
  auto f = gf::make_field(q * q);
  const Card inf = q * q;
  const std::uint32_t g = f->primitive();

  std::vector<Card> base;
  for (const auto& e : gf::subfield_elements(*f, q)) base.push_back(e.index());
  base.push_back(inf);

  auto translate = [&](Card x) { return x == inf ? inf : f->add(x, 1); };
  auto scale = [&](Card x) { return x == inf ? inf : f->mul(g, x); };
  auto invert = [&](Card x) { return x == inf ? Card{0} : x == 0 ? inf : f->inv(x); };

  std::set<Hand> orbit;
  std::deque<Hand> frontier;
  Hand start(base);
  orbit.insert(start);
  frontier.push_back(start);
  while (!frontier.empty()) {
    Hand b = std::move(frontier.front());
    frontier.pop_front();
    for (int gen = 0; gen < 3; ++gen) {
      std::vector<Card> img;
      for (Card x : b) img.push_back(gen == 0 ? translate(x) : gen == 1 ? scale(x) : invert(x));
      Hand h(std::move(img));
      if (orbit.insert(h).second) frontier.push_back(std::move(h));
    }
  }
  return Design(q * q + 1, q + 1, std::vector<Hand>(orbit.begin(), orbit.end()));
}

namespace {

int degree(std::uint64_t f) { return f == 0 ? -1 : 63 - std::countl_zero(f); }

std::uint64_t gf2_mod(std::uint64_t a, std::uint64_t b) {
  const int db = degree(b);
  while (degree(a) >= db) a ^= b << (degree(a) - db);
  return a;
}

std::uint64_t gf2_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r = 0;
  for (; b; b >>= 1, a <<= 1)
    if (b & 1) r ^= a;
  return r;
}

// True when a precedes b with coefficients compared constant term first.
bool lex_less_low_first(std::uint64_t a, std::uint64_t b) {
  if (a == b) return false;
  return ((a >> std::countr_zero(a ^ b)) & 1) == 0;
}

}  // namespace

Design build_witt_24() {
  const std::uint64_t x23_minus_1 = (std::uint64_t{1} << 23) | 1;
  std::vector<std::uint64_t> factors;
  for (std::uint64_t low = 0; low < (1u << 11); ++low) {
    std::uint64_t g = (std::uint64_t{1} << 11) | low;
    if (gf2_mod(x23_minus_1, g) == 0) factors.push_back(g);
  }
  if (factors.size() != 2)
    throw Error(ErrorCode::UnsupportedParameters, "expected two degree-11 factors of x^23 - 1");
  std::uint64_t gen = lex_less_low_first(factors[0], factors[1]) ? factors[0] : factors[1];

  std::vector<Hand> octads;
  for (std::uint64_t msg = 0; msg < (1u << 12); ++msg) {
    std::uint64_t word = gf2_mul(msg, gen);
    if (std::popcount(word) % 2) word |= std::uint64_t{1} << 23;  // overall parity
    if (std::popcount(word) != 8) continue;
    std::vector<Card> support;
    for (Card i = 0; i < 24; ++i)
      if ((word >> i) & 1) support.push_back(i);
    octads.push_back(Hand::from_sorted(std::move(support)));
  }
  return Design(24, 8, std::move(octads));
}

Design derived_design(const Design& d, Card x) {
  if (x >= d.v())
    throw Error(ErrorCode::InvalidArgument, "point " + std::to_string(x) + " is not in the design");
  if (d.k() < 2 || d.v() - 1 <= d.k() - 1)
    throw Error(ErrorCode::UnsupportedParameters, "derived design would be degenerate");
  std::vector<Hand> blocks;
  for (const Hand& b : d.blocks()) {
    if (!b.contains(x)) continue;
    std::vector<Card> rest;
    for (Card c : b)
      if (c != x) rest.push_back(c > x ? c - 1 : c);
    blocks.push_back(Hand::from_sorted(std::move(rest)));
  }
  return Design(d.v() - 1, d.k() - 1, std::move(blocks), d.multiset());
}

}  // namespace cardsec::designs
