#include "cardsec/designs.hpp"
#include "cardsec/strategy.hpp"
#include "oracle.hpp"

#include <doctest.h>

using namespace cardsec;
using namespace cardsec::strategy;
using designs::Design;

namespace {

Announcement ann(const Design& d) { return Announcement::from_design(d); }

Strategy sts9_strategy() {
  Strategy s{9, 3, 5, 1, {}};
  for (const auto& m : designs::builtin_large_set_sts9().members) s.announcements.push_back(ann(m));
  return s;
}

// A random simple family of a-subsets of [0, n).
Announcement random_family(unsigned n, unsigned a, std::size_t count, std::uint64_t seed) {
  auto all = enumerate_k_subsets(n, a);
  SplitMix64 rng(Seed{seed});
  for (std::size_t i = 0; i < count; ++i) std::swap(all[i], all[i + rng.below(all.size() - i)]);
  all.resize(count);
  return Announcement(n, a, all);
}

bool same_verdict(const SecurityVerdict& x, const SecurityVerdict& y) {
  if (x.level != y.level || x.feasible_hands != y.feasible_hands ||
      x.skipped_infeasible != y.skipped_infeasible || x.witness.has_value() != y.witness.has_value())
    return false;
  if (x.witness)
    return x.witness->h_c == y.witness->h_c && x.witness->y == y.witness->y &&
           x.witness->count == y.witness->count && x.witness->p_size == y.witness->p_size;
  return true;
}

}  // namespace

TEST_CASE("announcement validation") {
  CHECK_THROWS_AS(Announcement(6, 3, {}), Error);
  CHECK_THROWS_AS(Announcement(6, 3, {Hand{0, 1, 2}, Hand{0, 1, 2}}), Error);
  CHECK_THROWS_AS(Announcement(6, 3, {Hand{0, 1}}), Error);
  CHECK_THROWS_AS(Announcement(6, 3, {Hand{0, 1, 6}}), Error);
  Announcement A(6, 3, {Hand{3, 4, 5}, Hand{0, 1, 2}});
  CHECK(A.hands().front() == Hand{0, 1, 2});
  CHECK(A.size() == 2);

  Strategy s{6, 3, 2, 1, {A}};
  CHECK_NOTHROW(s.validate());
  s.c = 2;
  CHECK_THROWS_AS(s.validate(), Error);
}

TEST_CASE("p_set") {
  auto A = ann(designs::builtin_ag32());
  // Seven planes contain any given point, so seven miss it.
  CHECK(p_set(Hand{0}, A).size() == 7);
  CHECK(p_set(Hand{}, A).size() == 14);
  Hand blk = A.hands()[0];
  auto got = p_set(blk, A);
  std::vector<Hand> want;
  for (const auto& h : A.hands())
    if (!h.intersects(blk)) want.push_back(h);
  CHECK(got == want);
  CHECK(got.size() == 1);  // only the complementary plane
}

TEST_CASE("informativeness") {
  auto ag = ann(designs::builtin_ag32());
  CHECK(is_informative(ag, 1).informative);
  CHECK_FALSE(is_informative(ag, 1).witness.has_value());
  auto witt = ann(designs::build_witt_24());
  CHECK(is_informative(witt, 3).informative);
  auto triv = ann(designs::build_trivial_design(5, 3, 3, 1));
  auto r = is_informative(triv, 1);
  CHECK_FALSE(r.informative);
  REQUIRE(r.witness.has_value());
  CHECK(r.witness->first.intersection_size(r.witness->second) == 2);
  CHECK(r.witness->first == Hand{0, 1, 2});
  CHECK(r.witness->second == Hand{0, 1, 3});
  try {
    is_informative(ag, 4);
    FAIL("expected ParameterBound");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ParameterBound);
  }
}

TEST_CASE("informativeness agrees with the deal oracle") {
  struct Case {
    Announcement A;
    unsigned c;
  };
  std::vector<Case> cases{{ann(designs::builtin_ag32()), 1},  {ann(designs::builtin_ag32()), 2},
                          {ann(designs::build_sts(7)), 1},     {ann(designs::build_sts(9)), 1},
                          {ann(designs::build_inversive_plane(3)), 1},
                          {ann(designs::build_inversive_plane(3)), 2}};
  for (std::uint64_t seed = 0; seed < 20; ++seed) cases.push_back({random_family(9, 3, 4 + seed % 5, seed), 1});
  for (const auto& c : cases) {
    if (c.A.n() - c.A.a() - c.c < 1) continue;
    auto sets = oracle::to_sets(c.A.hands());
    const bool ours = is_informative(c.A, c.c).informative;
    CHECK(ours == oracle::naive_informative(sets, c.A.a(), c.c));
    CHECK(ours == oracle::deals_informative(sets, c.A.n(), c.A.a(), c.c));
  }
}

TEST_CASE("bob deduces") {
  Announcement A(7, 3, {Hand{0, 1, 2}, Hand{3, 4, 5}});
  CHECK(bob_deduce(A, Hand{3, 4, 6}) == Hand{0, 1, 2});
  try {
    bob_deduce(A, Hand{0, 3, 6});
    FAIL("expected NoCandidate");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NoCandidate);
  }
  auto pairs = ann(designs::build_trivial_design(5, 2, 2, 1));
  try {
    bob_deduce(pairs, Hand{4});
    FAIL("expected Ambiguous");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Ambiguous);
    CHECK(e.detail() == 6);
  }

  // Every (4,3,1) deal with Alice's hand among the planes.
  auto ag = ann(designs::builtin_ag32());
  std::size_t deals = 0;
  for (const auto& ha : ag.hands()) {
    auto rest = complement(ha, 8);
    for_each_k_subset_of(rest.cards(), 3, [&](std::span<const Card> hb) {
      CHECK(bob_deduce(ag, Hand::from_sorted({hb.begin(), hb.end()})) == ha);
      ++deals;
    });
  }
  CHECK(deals == 14 * 4);
}

TEST_CASE("bob deduces on sampled Witt deals") {
  auto w = ann(designs::build_witt_24());
  SplitMix64 rng(Seed{11});
  for (int i = 0; i < 300; ++i) {
    const Hand& ha = w.hands()[rng.below(w.size())];
    auto rest = complement(ha, 24);
    std::vector<Card> pool(rest.begin(), rest.end());
    for (unsigned j = 0; j < 13; ++j) std::swap(pool[j], pool[j + rng.below(pool.size() - j)]);
    pool.resize(13);
    CHECK(bob_deduce(w, Hand(pool)) == ha);
  }
}

TEST_CASE("cathy posterior") {
  auto ag = ann(designs::builtin_ag32());
  auto post = cathy_posterior(ag, Hand{7});
  CHECK(post.size() == 7);
  Rational sum;
  for (auto& [h, p] : post) {
    CHECK(p == Rational(BigInt(1), BigInt(7)));
    sum += p;
  }
  CHECK(sum == Rational(1));

  Announcement one(7, 3, {Hand{0, 1, 2}, Hand{3, 4, 5}});
  auto single = cathy_posterior(one, Hand{0});
  REQUIRE(single.size() == 1);
  CHECK(single.begin()->second == Rational(1));
  Announcement both(7, 3, {Hand{0, 1, 2}, Hand{0, 4, 5}});
  CHECK_THROWS_AS(cathy_posterior(both, Hand{0}), Error);

  // Per-card marginals from the hand distribution.
  auto cards = card_posteriors(ag, Hand{7});
  CHECK(cards.size() == 7);
  for (auto& [x, p] : cards) {
    Rational m;
    for (auto& [h, q] : post)
      if (h.contains(x)) m += q;
    CHECK(m == p);
    CHECK(p == Rational(BigInt(4), BigInt(7)));
  }
}

TEST_CASE("security on AG(3,2)") {
  auto ag = ann(designs::builtin_ag32());
  auto v = check_announcement_security(ag, 1, 2, Level::Perfect);
  CHECK(v.level == Level::Perfect);
  CHECK(v.pass());
  CHECK_FALSE(v.witness.has_value());
  REQUIRE(v.constants.size() == 2);
  CHECK(v.constants[0].value == Rational(BigInt(4), BigInt(7)));
  CHECK(v.constants[1].value == Rational(BigInt(2), BigInt(7)));
  CHECK(v.feasible_hands == 8);
  CHECK(v.skipped_infeasible == 0);

  auto v3 = check_announcement_security(ag, 1, 3, Level::Perfect);
  CHECK_FALSE(v3.pass());
  CHECK(v3.witness.has_value());
  CHECK_THROWS_AS(check_announcement_security(ag, 0, 1, Level::Perfect), Error);
  CHECK_THROWS_AS(check_announcement_security(ag, 1, 5, Level::Perfect), Error);
}

TEST_CASE("security witness on a leaky announcement") {
  Announcement A(8, 3, {Hand{0, 1, 2}, Hand{0, 3, 4}});
  auto v = check_announcement_security(A, 1, 1, Level::Weak);
  CHECK(v.level == Level::Insecure);
  REQUIRE(v.witness.has_value());
  CHECK(v.witness->h_c == Hand{1});
  CHECK(v.witness->y == Hand{0});
  CHECK(v.witness->count == v.witness->p_size);
  CHECK(v.skipped_infeasible == 1);
}

TEST_CASE("security agrees with the naive definition") {
  struct Case {
    Announcement A;
    unsigned c;
    unsigned delta;
  };
  std::vector<Case> cases{
      {ann(designs::builtin_ag32()), 1, 3},       {ann(designs::builtin_ag32()), 2, 2},
      {ann(designs::build_sts(7)), 1, 2},         {ann(designs::build_sts(9)), 1, 2},
      {ann(designs::build_sts(9)), 2, 1},         {ann(designs::build_projective_plane(2)), 1, 1},
      {ann(designs::build_inversive_plane(3)), 1, 3}, {ann(designs::build_inversive_plane(3)), 2, 1},
      {ann(designs::build_paley_hadamard(11)), 1, 2},
  };
  for (std::uint64_t seed = 0; seed < 30; ++seed)
    cases.push_back({random_family(8, 3, 6 + seed % 20, seed), 1 + seed % 2, 1 + seed % 3});
  for (const auto& c : cases) {
    auto sets = oracle::to_sets(c.A.hands());
    auto ref = oracle::naive_security(sets, c.A.n(), c.A.a(), c.c, c.delta);
    auto perfect = check_announcement_security(c.A, c.c, c.delta, Level::Perfect);
    auto weak = check_announcement_security(c.A, c.c, c.delta, Level::Weak);
    CHECK(perfect.feasible_hands == ref.feasible);
    CHECK((perfect.level == Level::Perfect) == ref.perfect);
    CHECK((weak.level >= Level::Weak) == ref.weak);
    CHECK(perfect.level == weak.level);
    CHECK(weak.witness.has_value() == !ref.weak);
  }
}

TEST_CASE("verdicts do not depend on the thread count") {
  std::vector<std::pair<Announcement, unsigned>> cases{
      {ann(designs::build_inversive_plane(4)), 2},
      {ann(designs::build_sts(13)), 1},
      {random_family(10, 4, 40, 5), 2},
      {random_family(10, 4, 120, 6), 1}};
  for (const auto& [A, c] : cases)
    for (Level lvl : {Level::Weak, Level::Perfect}) {
      auto base = check_announcement_security(A, c, 2, lvl, 1);
      for (unsigned th : {2u, 3u, 7u}) CHECK(same_verdict(base, check_announcement_security(A, c, 2, lvl, th)));
    }
}

TEST_CASE("Witt perfect two-security") {
  auto w = ann(designs::build_witt_24());
  auto v = check_announcement_security(w, 3, 2, Level::Perfect, 2);
  CHECK(v.level == Level::Perfect);
  CHECK(v.feasible_hands == 2024);
  REQUIRE(v.constants.size() == 2);
  CHECK(v.constants[1].value == Rational(BigInt(28), BigInt(210)));
  for (const auto& hc : {Hand{0, 1, 2}, Hand{5, 11, 23}}) {
    auto P = p_set(hc, w);
    CHECK(P.size() == 210);
    auto rest = complement(hc, 24);
    for_each_k_subset_of(rest.cards(), 2, [&](std::span<const Card> y) {
      std::size_t n = 0;
      for (const auto& h : P) n += h.contains(y[0]) && h.contains(y[1]);
      REQUIRE(n == 28);
    });
  }
  auto v3 = check_announcement_security(w, 3, 3, Level::Perfect, 2);
  CHECK_FALSE(v3.pass());
  REQUIRE(v3.witness.has_value());
  CHECK(v3.witness->y.size() == 3);
}

TEST_CASE("informative designs are Steiner at level a-c") {
  std::vector<std::pair<Design, unsigned>> cases{
      {designs::builtin_ag32(), 1},        {designs::build_sts(9), 1},
      {designs::build_inversive_plane(4), 2}, {designs::build_inversive_plane(3), 1},
      {designs::build_witt_24(), 3},       {designs::build_projective_plane(3), 2}};
  for (auto& [d, c] : cases) {
    auto A = ann(d);
    if (!is_informative(A, c).informative) continue;
    auto prof = designs::design_profile(d, d.k() - c);
    if (prof.strength() < d.k() - c) continue;
    CHECK(prof.levels[d.k() - c].constant == 1u);
    CHECK(*designs::block_intersection_sizes(d).rbegin() < d.k() - c);
  }
}

TEST_CASE("strategy verification") {
  Strategy s = sts9_strategy();
  auto rep = verify_strategy(s, 1, Level::Perfect);
  CHECK(rep.pass());
  CHECK(rep.m == 7);
  CHECK(rep.coverage.complete);
  CHECK(rep.coverage.gamma == 1u);
  for (const auto& v : rep.security) {
    REQUIRE(v.constants.size() == 1);
    CHECK(v.constants[0].value == Rational(BigInt(3), BigInt(8)));
  }

  Strategy dropped = s;
  dropped.announcements.pop_back();
  auto bad = verify_strategy(dropped, 1, Level::Perfect);
  CHECK_FALSE(bad.pass());
  CHECK_FALSE(bad.coverage.complete);
  CHECK(bad.coverage.uncovered == 12);
  CHECK(bad.coverage.first_uncovered.has_value());
  CHECK(bad.coverage.multiplicity_min == 0);
  CHECK_FALSE(bad.coverage.gamma.has_value());
}

TEST_CASE("necessity on the large-set strategy") {
  Strategy s = sts9_strategy();
  for (unsigned delta = 1; delta <= 2; ++delta) {
    auto rep = verify_strategy(s, delta, Level::Perfect);
    for (std::size_t i = 0; i < s.announcements.size(); ++i)
      if (rep.security[i].pass())
        CHECK(designs::verify_t_design(designs::Design(9, 3, s.announcements[i].hands()), s.c + delta));
  }
}

TEST_CASE("orbit parameters") {
  auto p = orbit_strategy_params(designs::build_sts(9), 2, 1);
  CHECK(p.m == 840);
  CHECK(p.gamma == 120);
  auto q = orbit_strategy_params(designs::builtin_ag32(), 3, 1);
  CHECK(q.m == 30);
  CHECK(q.gamma == 6);
  CHECK_THROWS_AS(orbit_strategy_params(designs::build_sts(9), 2, 2), Error);
  CHECK_THROWS_AS(orbit_strategy_params(designs::build_sts(9), 3, 1), Error);
}

TEST_CASE("bounds") {
  auto b = bounds(3, 5, 1);
  CHECK(b.n == 9);
  CHECK(b.min_announcements == 7);
  CHECK(b.max_perfect_delta_informative == 1);
  CHECK(b.informative_weak1_possible);
  auto w = bounds(8, 13, 3);
  CHECK(w.min_announcements == 969);
  CHECK(w.min_announcements == oracle::binom(19, 3));
  CHECK(w.max_perfect_delta_informative == 2);
  CHECK_FALSE(bounds(3, 2, 3).informative_weak1_possible);
  CHECK(bounds(3, 5, 2).max_perfect_delta_informative == 0);
}

TEST_CASE("simulation on the large-set strategy") {
  Strategy s = sts9_strategy();
  auto r = simulate_protocol(s, 2000, Seed{42});
  CHECK(r.trials == 2000);
  CHECK(r.bob_success == 2000);
  REQUIRE(r.reference.has_value());
  CHECK(*r.reference == Rational(BigInt(3), BigInt(8)));
  CHECK(r.max_deviation == Rational(0));
  CHECK(r.posterior_values == std::set<Rational>{Rational(BigInt(3), BigInt(8))});
  auto again = simulate_protocol(s, 2000, Seed{42});
  CHECK(again.bob_success == r.bob_success);
  auto none = simulate_protocol(s, 0, Seed{1});
  CHECK(none.trials == 0);
  Strategy dropped = s;
  dropped.announcements.pop_back();
  CHECK_THROWS_AS(simulate_protocol(dropped, 10, Seed{1}), Error);
}

TEST_CASE("level names") {
  CHECK(parse_level("weak") == Level::Weak);
  CHECK(parse_level("perfect") == Level::Perfect);
  CHECK_THROWS_AS(parse_level("strong"), Error);
  CHECK(std::string(to_string(Level::Insecure)) == "insecure");
}
