#include "cardsec/transversal.hpp"

#include "cardsec/mask_matrix.hpp"

#include <algorithm>
#include <string>

namespace cardsec::transversal {

namespace {

constexpr std::uint64_t kMaxTuples = std::uint64_t{1} << 24;

using u128 = unsigned __int128;

std::uint64_t ipow(std::uint64_t b, unsigned e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

std::string join(const std::vector<unsigned>& xs) {
  std::string s = "{";
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? "," : "") + std::to_string(xs[i]);
  return s + "}";
}

// Base-q code of a tuple, first entry most significant.
std::uint64_t encode(std::span<const std::uint32_t> tuple, unsigned q) {
  std::uint64_t x = 0;
  for (auto s : tuple) x = x * q + s;
  return x;
}

Row decode(std::uint64_t x, unsigned q, unsigned k) {
  Row r(k);
  for (unsigned i = k; i-- > 0;) {
    r[i] = static_cast<std::uint32_t>(x % q);
    x /= q;
  }
  return r;
}

// Tuple of a transversal block, or nullopt if the block is not a transversal.
std::optional<Row> block_tuple(const Hand& b, unsigned v, unsigned k) {
  if (b.size() != k) return std::nullopt;
  Row r(k);
  for (unsigned i = 0; i < k; ++i) {
    if (group_of(b[i], v) != i) return std::nullopt;
    r[i] = b[i] - i * v;
  }
  return r;
}

unsigned rank_over(const gf::GaloisField& f, std::vector<std::vector<std::uint32_t>> vecs) {
  unsigned rank = 0;
  const std::size_t len = vecs.empty() ? 0 : vecs[0].size();
  for (std::size_t col = 0; col < len && rank < vecs.size(); ++col) {
    std::size_t piv = rank;
    while (piv < vecs.size() && vecs[piv][col] == 0) ++piv;
    if (piv == vecs.size()) continue;
    std::swap(vecs[rank], vecs[piv]);
    const std::uint32_t inv = f.inv(vecs[rank][col]);
    for (auto& x : vecs[rank]) x = f.mul(x, inv);
    for (std::size_t r = 0; r < vecs.size(); ++r) {
      if (r == rank || vecs[r][col] == 0) continue;
      const std::uint32_t factor = vecs[r][col];
      for (std::size_t j = 0; j < len; ++j) vecs[r][j] = f.sub(vecs[r][j], f.mul(factor, vecs[rank][j]));
    }
    ++rank;
  }
  return rank;
}

const simd::KernelTable& kernels() { return simd::kernels_for(simd::active_isa()); }

}  // namespace

unsigned group_of(Card x, unsigned v) { return x / v; }

bool is_partial_transversal(std::span<const Card> cards, unsigned v) {
  for (std::size_t i = 1; i < cards.size(); ++i)
    if (group_of(cards[i - 1], v) == group_of(cards[i], v)) return false;
  return true;
}

OaCheck verify_oa(const OrthogonalArray& oa) {
  if (oa.q < 1 || oa.t < 1 || oa.t > oa.k) throw Error(ErrorCode::InvalidArgument, "OA needs q >= 1 and 1 <= t <= k");
  for (const Row& r : oa.rows) {
    if (r.size() != oa.k) throw Error(ErrorCode::InvalidArgument, "OA row does not have k symbols");
    for (auto s : r)
      if (s >= oa.q) throw Error(ErrorCode::InvalidArgument, "OA symbol outside [0, q)");
  }
  const std::uint64_t tuples = ipow(oa.q, oa.t);
  OaCheck out;
  if (oa.rows.size() != oa.lambda * tuples) {
    out.witness = OaFailure{{}, {}, oa.rows.size()};
    return out;
  }
  std::vector<std::uint64_t> tally(tuples);
  Row proj(oa.t);
  for (SubsetEnumerator cols(static_cast<int>(oa.k), static_cast<int>(oa.t)); !cols.done(); cols.advance()) {
    std::fill(tally.begin(), tally.end(), 0);
    auto cs = cols.current();
    for (const Row& r : oa.rows) {
      for (unsigned i = 0; i < oa.t; ++i) proj[i] = r[cs[i]];
      ++tally[encode(proj, oa.q)];
    }
    for (std::uint64_t x = 0; x < tuples; ++x) {
      if (tally[x] == oa.lambda) continue;
      out.witness = OaFailure{{cs.begin(), cs.end()}, decode(x, oa.q, oa.t), tally[x]};
      return out;
    }
  }
  out.ok = true;
  return out;
}

TransversalDesign oa_to_td(const OrthogonalArray& oa) {
  TransversalDesign td{oa.q, oa.k, oa.t, oa.lambda, {}};
  for (const Row& r : oa.rows) {
    std::vector<Card> b(oa.k);
    for (unsigned i = 0; i < oa.k; ++i) {
      if (r[i] >= oa.q) throw Error(ErrorCode::InvalidArgument, "OA symbol outside [0, q)");
      b[i] = i * oa.q + r[i];
    }
    td.blocks.push_back(Hand::from_sorted(std::move(b)));
  }
  return td;
}

OrthogonalArray td_to_oa(const TransversalDesign& td) {
  OrthogonalArray oa{td.v, td.t, td.k, td.lambda, {}, std::nullopt};
  for (const Hand& b : td.blocks) {
    auto r = block_tuple(b, td.v, td.k);
    if (!r) throw Error(ErrorCode::InvalidArgument, "block " + b.to_string() + " is not a transversal");
    oa.rows.push_back(std::move(*r));
  }
  std::sort(oa.rows.begin(), oa.rows.end());
  return oa;
}

bool verify_td(const TransversalDesign& td) {
  for (const Hand& b : td.blocks)
    if (!block_tuple(b, td.v, td.k)) return false;
  return verify_oa(td_to_oa(td)).ok;
}

OrthogonalArray oa_from_generator(std::shared_ptr<const gf::GaloisField> field, const Matrix& m,
                                  unsigned t) {
  if (!field || m.empty() || m[0].empty()) throw Error(ErrorCode::InvalidArgument, "empty generator matrix");
  const unsigned q = field->order();
  const unsigned ell = static_cast<unsigned>(m.size());
  const unsigned k = static_cast<unsigned>(m[0].size());
  for (const auto& row : m) {
    if (row.size() != k) throw Error(ErrorCode::InvalidArgument, "generator rows differ in length");
    for (auto x : row)
      if (x >= q) throw Error(ErrorCode::InvalidArgument, "generator entry outside the field");
  }
  if (t < 1 || t > k) throw Error(ErrorCode::InvalidArgument, "need 1 <= t <= k");
  for (SubsetEnumerator cols(static_cast<int>(k), static_cast<int>(t)); !cols.done(); cols.advance()) {
    std::vector<std::vector<std::uint32_t>> vecs;
    for (Card col : cols.current()) {
      std::vector<std::uint32_t> v(ell);
      for (unsigned r = 0; r < ell; ++r) v[r] = m[r][col];
      vecs.push_back(std::move(v));
    }
    if (rank_over(*field, vecs) < t) {
      auto cs = cols.current();
      throw Error(ErrorCode::ColumnsDependent,
                  "columns " + join({cs.begin(), cs.end()}) + " are linearly dependent");
    }
  }
  const std::uint64_t combos = ipow(q, ell);
  if (combos > kMaxTuples) throw Error(ErrorCode::TooLargeForExactSearch, "too many generator combinations");

  OrthogonalArray oa{q, t, k, ipow(q, ell - t), {}, GeneratorWitness{field, m}};
  oa.rows.reserve(combos);
  for (std::uint64_t x = 0; x < combos; ++x) {
    Row coef = decode(x, q, ell);
    Row row(k, 0);
    for (unsigned r = 0; r < ell; ++r) {
      if (coef[r] == 0) continue;
      for (unsigned j = 0; j < k; ++j) row[j] = field->add(row[j], field->mul(coef[r], m[r][j]));
    }
    oa.rows.push_back(std::move(row));
  }
  std::sort(oa.rows.begin(), oa.rows.end());
  return oa;
}

OrthogonalArray reed_solomon_oa(unsigned t, unsigned q) {
  if (t < 2 || t > q || q > 16 || !gf::is_prime_power(q))
    throw Error(ErrorCode::UnsupportedParameters,
                "Reed-Solomon OA needs a prime power q <= 16 and 2 <= t <= q, got t = " +
                    std::to_string(t) + ", q = " + std::to_string(q));
  auto f = gf::make_field(q);
  Matrix m(t, std::vector<std::uint32_t>(q));
  for (unsigned i = 0; i < t; ++i)
    for (std::uint32_t x = 0; x < q; ++x) m[i][x] = f->pow(x, i);
  return oa_from_generator(f, m, t);
}

OrthogonalArray truncate_columns(const OrthogonalArray& oa, unsigned keep) {
  if (keep < oa.t || keep > oa.k)
    throw Error(ErrorCode::InvalidArgument, "can only keep between t and k columns");
  OrthogonalArray out{oa.q, oa.t, keep, oa.lambda, {}, std::nullopt};
  for (const Row& r : oa.rows) out.rows.emplace_back(r.begin(), r.begin() + keep);
  std::sort(out.rows.begin(), out.rows.end());
  if (oa.generator) {
    GeneratorWitness g{oa.generator->field, {}};
    for (const auto& row : oa.generator->matrix) g.matrix.emplace_back(row.begin(), row.begin() + keep);
    out.generator = std::move(g);
  }
  return out;
}

std::vector<OrthogonalArray> coset_large_set(const OrthogonalArray& oa) {
  if (!oa.generator) throw Error(ErrorCode::NotLinear, "coset expansion needs a linear array");
  const gf::GaloisField& f = *oa.generator->field;
  const std::uint64_t space = ipow(oa.q, oa.k);
  if (space > kMaxTuples) throw Error(ErrorCode::TooLargeForExactSearch, "tuple space too large for coset expansion");
  std::vector<bool> assigned(space, false);
  std::vector<OrthogonalArray> members;
  for (std::uint64_t x = 0; x < space; ++x) {
    if (assigned[x]) continue;
    const Row shift = decode(x, oa.q, oa.k);
    OrthogonalArray member{oa.q, oa.t, oa.k, oa.lambda, {}, std::nullopt};
    for (const Row& r : oa.rows) {
      Row s(oa.k);
      for (unsigned j = 0; j < oa.k; ++j) s[j] = f.add(r[j], shift[j]);
      assigned[encode(s, oa.q)] = true;
      member.rows.push_back(std::move(s));
    }
    std::sort(member.rows.begin(), member.rows.end());
    if (members.empty()) member.generator = oa.generator;
    members.push_back(std::move(member));
  }
  return members;
}

TransversalDesign delete_groups(const TransversalDesign& td, unsigned keep) {
  if (keep < td.t || keep > td.k)
    throw Error(ErrorCode::InvalidArgument, "can only keep between t and k groups");
  TransversalDesign out{td.v, keep, td.t, td.lambda, {}};
  for (const Hand& b : td.blocks) {
    std::vector<Card> r;
    for (Card x : b)
      if (x < keep * td.v) r.push_back(x);
    out.blocks.push_back(Hand::from_sorted(std::move(r)));
  }
  return out;
}

BigInt td_counts(unsigned v, unsigned k, unsigned t, const BigInt& lambda, unsigned s) {
  if (s > t || t > k) throw Error(ErrorCode::InvalidArgument, "td_counts needs s <= t <= k");
  return lambda * boost::multiprecision::pow(BigInt(v), t - s);
}

BigInt td_counts_avoiding(unsigned v, unsigned k, unsigned t, const BigInt& lambda, unsigned i,
                          unsigned j) {
  if (i + j > t || t > k) throw Error(ErrorCode::InvalidArgument, "td_counts_avoiding needs i + j <= t <= k");
  return lambda * boost::multiprecision::pow(BigInt(v), t - i - j) *
         boost::multiprecision::pow(BigInt(v - 1), j);
}

Rational transversal_posterior(unsigned v, unsigned c, unsigned delta_prime, unsigned ell) {
  if (ell > c || delta_prime + ell < c)
    throw Error(ErrorCode::InvalidArgument, "need c - δ' <= ℓ <= c");
  BigInt den = boost::multiprecision::pow(BigInt(v), delta_prime + ell - c) *
               boost::multiprecision::pow(BigInt(v - 1), c - ell);
  return Rational(BigInt(1), den);
}

// ---------------------------------------------------------------------------
// Security of the variant

namespace {

struct Chunk {
  std::optional<TransversalWitness> witness;
  bool weak = true;
  bool formula = true;
  std::uint64_t feasible = 0, skipped = 0, skipped_y = 0;
  std::map<std::pair<unsigned, unsigned>, Rational> posteriors;
};

std::uint64_t pow_u64(std::uint64_t b, unsigned e) { return ipow(b, e); }

}  // namespace

TransversalVerdict check_transversal_security(const TransversalDesign& td, unsigned c,
                                              unsigned delta, unsigned threads) {
  if (c < 1 || c + 1 > td.t) throw Error(ErrorCode::InvalidArgument, "need 1 <= c <= t-1");
  if (delta < 1 || delta + c > td.t) throw Error(ErrorCode::InvalidArgument, "need 1 <= delta <= t-c");
  const unsigned n = td.points();
  const unsigned v = td.v;
  const std::size_t words = simd::words_for(n);
  const simd::MaskMatrix M(words, td.blocks);
  const auto& k = kernels();

  std::vector<Hand> cathy;
  for_each_k_subset(static_cast<int>(n), static_cast<int>(c), [&](std::span<const Card> h) {
    if (is_partial_transversal(h, v)) cathy.push_back(Hand::from_sorted({h.begin(), h.end()}));
  });

  const std::size_t chunks = std::max<std::size_t>(1, std::min<std::size_t>(threads, cathy.size()));
  const std::size_t span = (cathy.size() + chunks - 1) / chunks;
  std::vector<Chunk> results(chunks);

  parallel_chunks(chunks, threads, [&](std::size_t lo, std::size_t hi) {
    std::vector<std::uint64_t> zero(words, 0), need(words, 0);
    std::vector<std::uint32_t> sel;
    std::vector<Card> y(delta);
    for (std::size_t ch = lo; ch < hi; ++ch) {
      Chunk& r = results[ch];
      const std::size_t end = std::min(cathy.size(), (ch + 1) * span);
      for (std::size_t idx = ch * span; idx < end; ++idx) {
        const Hand& h_c = cathy[idx];
        auto avoid = simd::to_mask(h_c, words);
        sel.clear();
        k.select_matching(M, zero.data(), avoid.data(), sel);
        if (sel.empty()) {
          ++r.skipped;
          continue;
        }
        ++r.feasible;
        const simd::MaskMatrix P = M.select(sel);
        const std::uint64_t p_size = sel.size();
        const Hand pool = complement(h_c, n);
        std::vector<bool> cathy_group(td.k, false);
        for (Card x : h_c) cathy_group[group_of(x, v)] = true;

        for (unsigned d = 1; d <= delta; ++d) {
          for (SubsetEnumerator it(static_cast<int>(pool.size()), static_cast<int>(d)); !it.done();
               it.advance()) {
            auto ix = it.current();
            for (unsigned j = 0; j < d; ++j) y[j] = pool[ix[j]];
            std::span<const Card> ys(y.data(), d);
            if (!is_partial_transversal(ys, v)) {
              ++r.skipped_y;
              continue;
            }
            unsigned shared = 0;
            for (Card x : ys) shared += cathy_group[group_of(x, v)];
            const unsigned ell = c - shared;

            for (Card x : ys) need[x / 64] |= std::uint64_t{1} << (x % 64);
            const std::uint64_t count = k.count_matching(P, need.data(), zero.data());
            for (Card x : ys) need[x / 64] = 0;

            const bool weak_ok = count >= 1 && count + 1 <= p_size;
            const u128 scale = u128(pow_u64(v, d + ell - c)) * pow_u64(v - 1, c - ell);
            const bool formula_ok = u128(count) * scale == p_size;
            r.posteriors.try_emplace({d, ell}, Rational(static_cast<long long>(count), static_cast<long long>(p_size)));
            r.weak &= weak_ok;
            r.formula &= formula_ok;
            if ((!weak_ok || !formula_ok) && !r.witness)
              r.witness = TransversalWitness{h_c, Hand::from_sorted({ys.begin(), ys.end()}), count, p_size, ell};
          }
        }
      }
    }
  });

  TransversalVerdict out;
  out.c = c;
  out.delta = delta;
  out.weak = true;
  out.formula = true;
  for (const auto& r : results) {
    out.weak &= r.weak;
    out.formula &= r.formula;
    out.feasible_hands += r.feasible;
    out.skipped_infeasible += r.skipped;
    out.skipped_non_transversal_y += r.skipped_y;
    if (!out.witness && r.witness) out.witness = r.witness;
    for (const auto& [key, value] : r.posteriors) {
      auto [it, fresh] = out.posteriors.try_emplace(key, value);
      if (!fresh && it->second != value) out.formula = false;
    }
  }
  return out;
}

bool informative_by_deals(const TransversalDesign& td, unsigned c) {
  const unsigned n = td.points();
  const unsigned v = td.v;
  for (const Hand& alice : td.blocks) {
    bool ok = true;
    // Cathy: c distinct piles, in each a card other than Alice's.
    for_each_k_subset(static_cast<int>(td.k), static_cast<int>(c), [&](std::span<const Card> piles) {
      if (!ok) return;
      const std::uint64_t choices = pow_u64(v - 1, c);
      for (std::uint64_t code = 0; code < choices && ok; ++code) {
        std::vector<bool> visible(n, false);
        for (Card x : alice) visible[x] = true;
        std::uint64_t rest = code;
        for (Card g : piles) {
          unsigned pick = static_cast<unsigned>(rest % (v - 1));
          rest /= v - 1;
          const unsigned alice_sym = alice[g] - g * v;
          const unsigned sym = pick >= alice_sym ? pick + 1 : pick;
          visible[g * v + sym] = true;
        }
        // Bob's hand is everything else; count blocks inside Alice's and Cathy's cards.
        unsigned candidates = 0;
        for (const Hand& b : td.blocks) {
          bool inside = true;
          for (Card x : b)
            if (!visible[x]) {
              inside = false;
              break;
            }
          candidates += inside;
        }
        if (candidates != 1) ok = false;
      }
    });
    if (!ok) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Toolkit

bool ToolkitReport::pass() const {
  if (BigInt(member_count) != expected_members || !partition) return false;
  for (std::size_t i = 0; i < security.size(); ++i)
    if (!informative[i] || !informative_local[i] || !security[i].pass()) return false;
  return true;
}

Toolkit transversal_toolkit(unsigned a, unsigned c, unsigned q, unsigned threads) {
  if (!gf::is_prime_power(q) || q > 16 || a > q || c < 1 || 2 * c + 1 > a)
    throw Error(ErrorCode::UnsupportedParameters,
                "toolkit needs a prime power q <= 16, a <= q and 1 <= c <= (a-1)/2, got a = " +
                    std::to_string(a) + ", c = " + std::to_string(c) + ", q = " + std::to_string(q));
  const unsigned t = a - c;
  auto base = truncate_columns(reed_solomon_oa(t, q), a);
  auto arrays = coset_large_set(base);

  Toolkit out;
  ToolkitReport& rep = out.report;
  rep.a = a;
  rep.c = c;
  rep.q = q;
  rep.t = t;
  for (const auto& oa : arrays) out.members.push_back(oa_to_td(oa));
  rep.member_count = out.members.size();
  rep.expected_members = boost::multiprecision::pow(BigInt(q), c);

  auto s = toolkit_strategy(out.members, c);
  auto cov = transversal_coverage(s, q);
  rep.partition = cov.complete && cov.gamma == 1u;
  for (std::size_t i = 0; i < out.members.size(); ++i) {
    rep.informative.push_back(strategy::is_informative(s.announcements[i], c).informative);
    rep.informative_local.push_back(informative_by_deals(out.members[i], c));
    rep.security.push_back(check_transversal_security(out.members[i], c, a - 2 * c, threads));
  }
  return out;
}

strategy::Strategy toolkit_strategy(const std::vector<TransversalDesign>& members, unsigned c) {
  if (members.empty()) throw Error(ErrorCode::InvalidArgument, "no transversal designs given");
  const unsigned k = members[0].k;
  const unsigned n = members[0].points();
  if (n < k + c + 1) throw Error(ErrorCode::InvalidArgument, "deck too small for the requested c");
  strategy::Strategy s{n, k, n - k - c, c, {}};
  for (const auto& td : members) {
    if (td.k != k || td.v != members[0].v)
      throw Error(ErrorCode::InvalidArgument, "transversal designs differ in shape");
    s.announcements.emplace_back(n, k, td.blocks);
  }
  return s;
}

strategy::Coverage transversal_coverage(const strategy::Strategy& s, unsigned v) {
  s.validate();
  if (v == 0 || s.n != s.a * v) throw Error(ErrorCode::InvalidArgument, "deck is not a piles of size v");
  const std::uint64_t space = ipow(v, s.a);
  if (space > kMaxTuples) throw Error(ErrorCode::TooLargeForExactSearch, "too many transversal hands");
  std::vector<std::uint32_t> mult(space, 0);
  for (const auto& A : s.announcements)
    for (const Hand& h : A.hands()) {
      auto r = block_tuple(h, v, s.a);
      if (!r) throw Error(ErrorCode::InvalidArgument, "hand " + h.to_string() + " is not a transversal");
      ++mult[encode(*r, v)];
    }
  strategy::Coverage cov;
  auto [lo, hi] = std::minmax_element(mult.begin(), mult.end());
  cov.multiplicity_min = *lo;
  cov.multiplicity_max = *hi;
  if (*lo == *hi) cov.gamma = *lo;
  for (std::uint64_t x = 0; x < space; ++x) {
    if (mult[x] != 0) continue;
    if (!cov.first_uncovered) {
      Row r = decode(x, v, s.a);
      std::vector<Card> cards(s.a);
      for (unsigned i = 0; i < s.a; ++i) cards[i] = i * v + r[i];
      cov.first_uncovered = Hand::from_sorted(std::move(cards));
    }
    ++cov.uncovered;
  }
  cov.complete = cov.uncovered == 0;
  return cov;
}

strategy::SimulationResult simulate_transversal(const strategy::Strategy& s, unsigned v,
                                                std::uint64_t trials, Seed seed) {
  auto cov = transversal_coverage(s, v);
  if (!cov.complete) throw Error(ErrorCode::InvalidArgument, "strategy does not cover every transversal hand");
  if (s.c >= s.a) throw Error(ErrorCode::InvalidArgument, "Cathy needs c < a piles");
  std::vector<std::vector<std::uint32_t>> owners(ipow(v, s.a));
  for (std::uint32_t i = 0; i < s.announcements.size(); ++i)
    for (const Hand& h : s.announcements[i].hands()) owners[encode(*block_tuple(h, v, s.a), v)].push_back(i);

  strategy::SimulationResult out;
  out.trials = trials;
  for (std::uint64_t trial = 0; trial < trials; ++trial) {
    SplitMix64 rng = SplitMix64::stream(seed, trial);
    Row sym(s.a);
    std::vector<Card> alice(s.a);
    for (unsigned g = 0; g < s.a; ++g) {
      sym[g] = static_cast<std::uint32_t>(rng.below(v));
      alice[g] = g * v + sym[g];
    }
    std::vector<unsigned> piles(s.a);
    for (unsigned g = 0; g < s.a; ++g) piles[g] = g;
    std::vector<Card> cathy;
    for (unsigned i = 0; i < s.c; ++i) {
      std::swap(piles[i], piles[i + rng.below(s.a - i)]);
      const unsigned g = piles[i];
      auto pick = static_cast<std::uint32_t>(rng.below(v - 1));
      cathy.push_back(g * v + (pick >= sym[g] ? pick + 1 : pick));
    }
    const Hand h_a = Hand::from_sorted(alice);
    const Hand h_c(cathy);
    const Hand h_b = complement(hand_union(h_a, h_c), s.n);

    const auto& own = owners[encode(sym, v)];
    const strategy::Announcement& A = s.announcements[own[rng.below(own.size())]];
    try {
      if (strategy::bob_deduce(A, h_b) == h_a) ++out.bob_success;
    } catch (const Error&) {
    }
    std::vector<bool> cathy_group(s.a, false);
    for (Card x : h_c) cathy_group[group_of(x, v)] = true;
    for (const auto& [card, p] : strategy::card_posteriors(A, h_c)) {
      const unsigned ell = s.c - (cathy_group[group_of(card, v)] ? 1 : 0);
      out.posterior_values.insert(p);
      out.max_deviation = std::max(out.max_deviation, abs(p - transversal_posterior(v, s.c, 1, ell)));
    }
  }
  return out;
}

}  // namespace cardsec::transversal
