#include "cardsec/strategy.hpp"

#include <algorithm>
#include <string>

namespace cardsec::strategy {

namespace {

constexpr std::uint64_t kMaxHandIndex = std::uint64_t{1} << 26;

using u128 = unsigned __int128;

const simd::KernelTable& kernels() { return simd::kernels_for(simd::active_isa()); }

void set_bits(std::vector<std::uint64_t>& mask, std::span<const Card> cards) {
  for (Card c : cards) mask[c / 64] |= std::uint64_t{1} << (c % 64);
}

void clear_bits(std::vector<std::uint64_t>& mask, std::span<const Card> cards) {
  for (Card c : cards) mask[c / 64] &= ~(std::uint64_t{1} << (c % 64));
}

std::vector<std::uint32_t> disjoint_from(const Announcement& A, const Hand& y) {
  std::vector<std::uint64_t> need(A.words(), 0);
  auto avoid = simd::to_mask(y, A.words());
  std::vector<std::uint32_t> out;
  kernels().select_matching(A.masks(), need.data(), avoid.data(), out);
  return out;
}

void check_cards(const Hand& h, unsigned n, const char* who) {
  if (!h.empty() && h.back() >= n)
    throw Error(ErrorCode::InvalidArgument,
                std::string(who) + " " + h.to_string() + " has a card outside the deck");
}

}  // namespace

Announcement::Announcement(unsigned n, unsigned a, std::vector<Hand> hands)
    : n_(n), a_(a), hands_(std::move(hands)) {
  if (a < 1 || a >= n) throw Error(ErrorCode::InvalidArgument, "announcement requires n > a >= 1");
  if (hands_.empty()) throw Error(ErrorCode::InvalidArgument, "announcement has no hands");
  for (const Hand& h : hands_) {
    if (h.size() != a)
      throw Error(ErrorCode::InvalidArgument, "hand " + h.to_string() + " does not have a cards");
    check_cards(h, n, "hand");
  }
  std::sort(hands_.begin(), hands_.end());
  auto dup = std::adjacent_find(hands_.begin(), hands_.end());
  if (dup != hands_.end())
    throw Error(ErrorCode::InvalidArgument, "announcement repeats hand " + dup->to_string());
  masks_ = simd::MaskMatrix(simd::words_for(n), hands_);
}

Announcement Announcement::from_design(const designs::Design& d) {
  return Announcement(d.v(), d.k(), d.blocks());
}

void Strategy::validate() const {
  if (a < 1 || b < 1 || c < 1 || a + b + c != n)
    throw Error(ErrorCode::InvalidArgument, "strategy needs a, b, c >= 1 and a + b + c = n");
  if (announcements.empty()) throw Error(ErrorCode::InvalidArgument, "strategy has no announcements");
  for (const auto& A : announcements)
    if (A.n() != n || A.a() != a)
      throw Error(ErrorCode::InvalidArgument, "announcement parameters differ from the strategy's");
}

const char* to_string(Level level) {
  switch (level) {
    case Level::Insecure: return "insecure";
    case Level::Weak: return "weak";
    case Level::Perfect: return "perfect";
  }
  return "?";
}

Level parse_level(const std::string& s) {
  if (s == "weak") return Level::Weak;
  if (s == "perfect") return Level::Perfect;
  throw Error(ErrorCode::InvalidArgument, "security level must be weak or perfect, got " + s);
}

std::vector<Hand> p_set(const Hand& y, const Announcement& A) {
  std::vector<Hand> out;
  for (std::uint32_t i : disjoint_from(A, y)) out.push_back(A.hands()[i]);
  return out;
}

InformativeResult is_informative(const Announcement& A, unsigned c) {
  if (A.a() <= c)
    throw Error(ErrorCode::ParameterBound, "informativeness needs a > c");
  const unsigned limit = A.a() - c;
  std::vector<std::uint32_t> sizes(A.size());
  for (std::size_t i = 0; i + 1 < A.size(); ++i) {
    auto q = simd::to_mask(A.hands()[i], A.words());
    kernels().intersection_sizes(A.masks(), q.data(), sizes.data());
    for (std::size_t j = i + 1; j < A.size(); ++j)
      if (sizes[j] >= limit) return {false, std::make_pair(A.hands()[i], A.hands()[j])};
  }
  return {true, std::nullopt};
}

Hand bob_deduce(const Announcement& A, const Hand& h_b) {
  check_cards(h_b, A.n(), "Bob's hand");
  auto idx = disjoint_from(A, h_b);
  if (idx.empty()) throw Error(ErrorCode::NoCandidate, "no hand of the announcement avoids Bob's cards");
  if (idx.size() > 1)
    throw Error(ErrorCode::Ambiguous, std::to_string(idx.size()) + " hands avoid Bob's cards",
                static_cast<std::int64_t>(idx.size()));
  return A.hands()[idx.front()];
}

std::map<Hand, Rational> cathy_posterior(const Announcement& A, const Hand& h_c) {
  check_cards(h_c, A.n(), "Cathy's hand");
  auto idx = disjoint_from(A, h_c);
  if (idx.empty()) throw Error(ErrorCode::ImpossibleHand, "Cathy's hand meets every announced hand");
  const Rational share(1, static_cast<long long>(idx.size()));
  std::map<Hand, Rational> out;
  for (std::uint32_t i : idx) out.emplace(A.hands()[i], share);
  return out;
}

std::map<Card, Rational> card_posteriors(const Announcement& A, const Hand& h_c) {
  check_cards(h_c, A.n(), "Cathy's hand");
  auto idx = disjoint_from(A, h_c);
  if (idx.empty()) throw Error(ErrorCode::ImpossibleHand, "Cathy's hand meets every announced hand");
  std::vector<long long> held(A.n(), 0);
  for (std::uint32_t i : idx)
    for (Card x : A.hands()[i]) ++held[x];
  std::map<Card, Rational> out;
  for (Card x = 0; x < A.n(); ++x)
    if (!h_c.contains(x)) out.emplace(x, Rational(held[x], static_cast<long long>(idx.size())));
  return out;
}

// ---------------------------------------------------------------------------
// Security

namespace {

struct ChunkResult {
  std::optional<SecurityWitness> witness;
  bool weak_failed = false;
  bool perfect_failed = false;
  std::uint64_t feasible = 0;
  std::uint64_t skipped = 0;
};

}  // namespace

SecurityVerdict check_announcement_security(const Announcement& A, unsigned c, unsigned delta,
                                            Level requested, unsigned threads) {
  const unsigned n = A.n();
  const unsigned a = A.a();
  if (c < 1 || c >= n - a) throw Error(ErrorCode::InvalidArgument, "need 1 <= c < n - a");
  if (delta < 1 || delta > a) throw Error(ErrorCode::InvalidArgument, "need 1 <= delta <= a");
  if (requested == Level::Insecure) throw Error(ErrorCode::InvalidArgument, "requested level must be weak or perfect");
  const unsigned ab = n - c;

  std::vector<std::uint64_t> num(delta + 1), den(delta + 1);  // C(a,δ'), C(a+b,δ')
  for (unsigned d = 1; d <= delta; ++d) {
    num[d] = binomial_u64(a, d);
    den[d] = binomial_u64(ab, d);
  }

  const std::vector<Hand> cathy = enumerate_k_subsets(static_cast<int>(n), static_cast<int>(c));
  const std::size_t words = A.words();
  const auto& k = kernels();

  // Contiguous chunks; the lexicographically first failure is the first one
  // found in the lowest chunk that has any.
  const std::size_t chunk_count = std::max<std::size_t>(1, std::min<std::size_t>(threads, cathy.size()));
  std::vector<ChunkResult> results(chunk_count);
  const std::size_t span = (cathy.size() + chunk_count - 1) / chunk_count;

  parallel_chunks(chunk_count, threads, [&](std::size_t lo_chunk, std::size_t hi_chunk) {
    std::vector<std::uint64_t> zero(words, 0), need(words, 0);
    std::vector<std::uint32_t> sel;
    for (std::size_t ch = lo_chunk; ch < hi_chunk; ++ch) {
      ChunkResult& r = results[ch];
      const std::size_t end = std::min(cathy.size(), (ch + 1) * span);
      for (std::size_t hi = ch * span; hi < end; ++hi) {
        const Hand& h_c = cathy[hi];
        auto avoid = simd::to_mask(h_c, words);
        sel.clear();
        k.select_matching(A.masks(), zero.data(), avoid.data(), sel);
        if (sel.empty()) {
          ++r.skipped;
          continue;
        }
        ++r.feasible;
        if (r.weak_failed) continue;
        const simd::MaskMatrix P = A.masks().select(sel);
        const std::uint64_t p_size = sel.size();
        const Hand pool = complement(h_c, n);
        std::vector<Card> y(delta);

        for (unsigned d = 1; d <= delta && !r.weak_failed; ++d) {
          for (SubsetEnumerator it(static_cast<int>(pool.size()), static_cast<int>(d)); !it.done();
               it.advance()) {
            auto ix = it.current();
            for (unsigned j = 0; j < d; ++j) y[j] = pool[ix[j]];
            std::span<const Card> ys(y.data(), d);
            set_bits(need, ys);
            const std::uint64_t count = k.count_matching(P, need.data(), zero.data());
            clear_bits(need, ys);

            const bool weak_ok = count >= 1 && count + 1 <= p_size;
            const bool perfect_ok = u128(count) * den[d] == u128(num[d]) * p_size;
            if (perfect_ok) continue;
            r.perfect_failed = true;
            const bool report = requested == Level::Perfect || !weak_ok;
            if (report && !r.witness)
              r.witness = SecurityWitness{h_c, Hand::from_sorted({ys.begin(), ys.end()}), count, p_size};
            if (!weak_ok) {
              r.weak_failed = true;
              break;
            }
          }
        }
      }
    }
  });

  SecurityVerdict v;
  v.requested = requested;
  v.delta = delta;
  bool weak_failed = false, perfect_failed = false;
  for (const auto& r : results) {
    weak_failed |= r.weak_failed;
    perfect_failed |= r.perfect_failed;
    v.feasible_hands += r.feasible;
    v.skipped_infeasible += r.skipped;
    if (!v.witness && r.witness) v.witness = r.witness;
  }
  v.level = weak_failed ? Level::Insecure : perfect_failed ? Level::Weak : Level::Perfect;
  if (v.level >= requested) v.witness.reset();
  if (v.level == Level::Perfect)
    for (unsigned d = 1; d <= delta; ++d)
      v.constants.push_back({d, Rational(BigInt(num[d]), BigInt(den[d]))});
  return v;
}

// ---------------------------------------------------------------------------
// Strategies

namespace detail {

std::vector<std::vector<std::uint32_t>> hand_index(const Strategy& s) {
  SubsetRanker ranker(s.n, s.a);
  if (ranker.count() > kMaxHandIndex)
    throw Error(ErrorCode::TooLargeForExactSearch, "too many a-subsets to index");
  std::vector<std::vector<std::uint32_t>> index(ranker.count());
  for (std::uint32_t i = 0; i < s.announcements.size(); ++i)
    for (const Hand& h : s.announcements[i].hands()) index[ranker.rank(h.cards())].push_back(i);
  return index;
}

}  // namespace detail

Coverage strategy_coverage(const Strategy& s) {
  s.validate();
  SubsetRanker ranker(s.n, s.a);
  if (ranker.count() > kMaxHandIndex)
    throw Error(ErrorCode::TooLargeForExactSearch, "too many a-subsets to check coverage");
  std::vector<std::uint32_t> mult(ranker.count(), 0);
  for (const auto& A : s.announcements)
    for (const Hand& h : A.hands()) ++mult[ranker.rank(h.cards())];

  Coverage cov;
  auto [lo, hi] = std::minmax_element(mult.begin(), mult.end());
  cov.multiplicity_min = *lo;
  cov.multiplicity_max = *hi;
  if (*lo == *hi) cov.gamma = *lo;
  for_each_k_subset(static_cast<int>(s.n), static_cast<int>(s.a), [&](std::span<const Card> h) {
    if (mult[ranker.rank(h)] != 0) return;
    if (!cov.first_uncovered) cov.first_uncovered = Hand::from_sorted({h.begin(), h.end()});
    ++cov.uncovered;
  });
  cov.complete = cov.uncovered == 0;
  return cov;
}

bool StrategyReport::pass() const {
  if (!coverage.complete) return false;
  for (const auto& r : informative)
    if (!r.informative) return false;
  for (const auto& v : security)
    if (!v.pass()) return false;
  return true;
}

StrategyReport verify_strategy(const Strategy& s, unsigned delta, Level requested, unsigned threads) {
  StrategyReport report;
  report.coverage = strategy_coverage(s);
  report.m = s.announcements.size();
  for (const auto& A : s.announcements) {
    report.informative.push_back(is_informative(A, s.c));
    report.security.push_back(check_announcement_security(A, s.c, delta, requested, threads));
  }
  return report;
}

OrbitParams orbit_strategy_params(const designs::Design& d, unsigned t, unsigned c, unsigned limit) {
  const unsigned n = d.v();
  const unsigned a = d.k();
  if (t < 1 || t > a) throw Error(ErrorCode::InvalidArgument, "need 1 <= t <= a");
  if (c < 1 || c + 1 > t || c + t > a)
    throw Error(ErrorCode::ParameterBound, "orbit strategy needs 1 <= c <= min(t-1, a-t)");
  if (designs::verify_t_design(d, t) != 1u)
    throw Error(ErrorCode::InvalidArgument, "design is not a t-(n,a,1) design at the given t");
  const BigInt aut = designs::automorphism_count(d, limit);
  const BigInt nf = factorial(n);
  if (nf % aut != 0) throw Error(ErrorCode::NonIntegerParameters, "n!/|Aut| is not an integer");
  OrbitParams p;
  p.m = nf / aut;
  const BigInt per = binomial(n - t, a - t);
  if (p.m % per != 0) throw Error(ErrorCode::NonIntegerParameters, "m / C(n-t, a-t) is not an integer");
  p.gamma = p.m / per;
  return p;
}

Bounds bounds(unsigned a, unsigned b, unsigned c) {
  Bounds r;
  r.a = a;
  r.b = b;
  r.c = c;
  r.n = a + b + c;
  r.min_announcements = binomial(r.n - a + c, c);
  r.max_perfect_delta_informative = a > 2 * c ? a - 2 * c : 0;
  r.informative_weak1_possible = a > c + 1 && c < b;
  return r;
}

SimulationResult simulate_protocol(const Strategy& s, std::uint64_t trials, Seed seed) {
  s.validate();
  const auto index = detail::hand_index(s);
  SubsetRanker ranker(s.n, s.a);
  for (std::uint64_t r = 0; r < index.size(); ++r)
    if (index[r].empty())
      throw Error(ErrorCode::InvalidArgument, "strategy does not cover every hand of size a");

  SimulationResult out;
  out.trials = trials;
  out.reference = Rational(s.a, s.a + s.b);
  for (std::uint64_t i = 0; i < trials; ++i) {
    SplitMix64 rng = SplitMix64::stream(seed, i);
    Deal deal = random_deal(static_cast<int>(s.n), static_cast<int>(s.a), static_cast<int>(s.b),
                            static_cast<int>(s.c), rng);
    const auto& owners = index[ranker.rank(deal.alice.cards())];
    const Announcement& A = s.announcements[owners[rng.below(owners.size())]];
    try {
      if (bob_deduce(A, deal.bob) == deal.alice) ++out.bob_success;
    } catch (const Error&) {
    }
    for (const auto& [card, p] : card_posteriors(A, deal.cathy)) {
      out.posterior_values.insert(p);
      out.max_deviation = std::max(out.max_deviation, abs(p - *out.reference));
    }
  }
  return out;
}

}  // namespace cardsec::strategy
