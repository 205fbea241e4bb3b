#include "cardsec/transversal.hpp"
#include "oracle.hpp"

#include <doctest.h>

#include <set>

using namespace cardsec;
using namespace cardsec::transversal;

namespace {

// The OA_1(2,4,3) example table, symbols 1..3 shifted to 0..2.
OrthogonalArray paper_oa() {
  const int raw[9][4] = {{1, 1, 1, 1}, {1, 2, 3, 3}, {1, 3, 2, 2}, {2, 1, 2, 3}, {2, 2, 1, 2},
                         {2, 3, 3, 1}, {3, 1, 3, 2}, {3, 2, 2, 1}, {3, 3, 1, 3}};
  OrthogonalArray oa;
  oa.q = 3;
  oa.t = 2;
  oa.k = 4;
  oa.lambda = 1;
  for (const auto& r : raw) oa.rows.push_back({Card(r[0] - 1), Card(r[1] - 1), Card(r[2] - 1), Card(r[3] - 1)});
  return oa;
}

// Its TD blocks as (symbol, group) pairs, both 1-based.
std::vector<Hand> paper_td_blocks() {
  const int raw[9][4][2] = {
      {{1, 1}, {1, 2}, {1, 3}, {1, 4}}, {{1, 1}, {2, 2}, {3, 3}, {3, 4}}, {{1, 1}, {3, 2}, {2, 3}, {2, 4}},
      {{2, 1}, {1, 2}, {2, 3}, {3, 4}}, {{2, 1}, {2, 2}, {1, 3}, {2, 4}}, {{2, 1}, {3, 2}, {3, 3}, {1, 4}},
      {{3, 1}, {1, 2}, {3, 3}, {2, 4}}, {{3, 1}, {2, 2}, {2, 3}, {1, 4}}, {{3, 1}, {3, 2}, {1, 3}, {3, 4}}};
  std::vector<Hand> out;
  for (const auto& b : raw) {
    std::vector<Card> pts;
    for (const auto& p : b) pts.push_back(Card((p[1] - 1) * 3 + (p[0] - 1)));
    out.emplace_back(pts);
  }
  return out;
}

std::vector<std::vector<int>> partial_transversals(unsigned v, unsigned k, unsigned size) {
  std::vector<std::vector<int>> out;
  for (auto& s : oracle::subsets(int(v * k), size)) {
    std::set<int> groups;
    for (int x : s) groups.insert(x / int(v));
    if (groups.size() == s.size()) out.push_back(s);
  }
  return out;
}

// Exhaustive posterior for every partial transversal H_C and Y.
void check_posteriors(const TransversalDesign& td, unsigned c, unsigned delta) {
  auto blocks = oracle::to_sets(td.blocks);
  for (const auto& hc : partial_transversals(td.v, td.k, c)) {
    std::vector<oracle::Set> p;
    for (const auto& b : blocks)
      if (!oracle::meets(b, hc)) p.push_back(b);
    REQUIRE(!p.empty());
    for (unsigned dp = 1; dp <= delta; ++dp)
      for (const auto& y : partial_transversals(td.v, td.k, dp)) {
        if (oracle::meets(y, hc)) continue;
        std::set<int> gy;
        for (int x : y) gy.insert(x / int(td.v));
        unsigned ell = 0;
        for (int x : hc) ell += !gy.count(x / int(td.v));
        std::uint64_t cnt = oracle::count_yz(p, y, {});
        REQUIRE(cnt > 0);
        REQUIRE(cnt < p.size());
        REQUIRE(Rational(BigInt(cnt), BigInt(p.size())) == transversal_posterior(td.v, c, dp, ell));
      }
  }
}

}  // namespace

TEST_CASE("tabulated OA and its TD") {
  auto oa = paper_oa();
  CHECK(verify_oa(oa).ok);
  auto td = oa_to_td(oa);
  CHECK(td.v == 3);
  CHECK(td.k == 4);
  CHECK(td.blocks == paper_td_blocks());
  CHECK(verify_td(td));
  CHECK(td_to_oa(td) == oa);

  auto bad = oa;
  bad.rows[4][3] = 0;
  auto chk = verify_oa(bad);
  CHECK_FALSE(chk.ok);
  REQUIRE(chk.witness.has_value());
  CHECK(chk.witness->columns.size() == 2);
  CHECK(chk.witness->count != 1);

  auto short_oa = oa;
  short_oa.rows.pop_back();
  auto chk2 = verify_oa(short_oa);
  CHECK_FALSE(chk2.ok);
  CHECK(chk2.witness->columns.empty());

  auto ragged = oa;
  ragged.rows[0].push_back(0);
  CHECK_THROWS_AS(verify_oa(ragged), Error);
}

TEST_CASE("closed-form TD counts on the tabulated design") {
  CHECK(td_counts(3, 4, 2, 1, 1) == 3);
  CHECK(td_counts_avoiding(3, 4, 2, 1, 1, 1) == 2);
  CHECK(td_counts(3, 4, 2, 1, 0) == 9);
  auto blocks = oracle::to_sets(paper_td_blocks());
  // (1,1) is point 0, (1,2) is point 3.
  CHECK(oracle::count_yz(blocks, {0}, {}) == 3);
  CHECK(oracle::count_yz(blocks, {0}, {3}) == 2);
}

TEST_CASE("Reed-Solomon arrays") {
  auto a = reed_solomon_oa(2, 3);
  CHECK(a.rows.size() == 9);
  CHECK(verify_oa(a).ok);
  auto b = reed_solomon_oa(3, 4);
  CHECK(b.rows.size() == 64);
  CHECK(verify_oa(b).ok);
  auto c = reed_solomon_oa(3, 5);
  CHECK(c.rows.size() == 125);
  CHECK(verify_oa(c).ok);
  CHECK(c.generator.has_value());
  CHECK_THROWS_AS(reed_solomon_oa(5, 4), Error);
  CHECK_THROWS_AS(reed_solomon_oa(2, 6), Error);
  CHECK_THROWS_AS(reed_solomon_oa(1, 4), Error);
  CHECK(std::is_sorted(c.rows.begin(), c.rows.end()));
  for (unsigned q : {2u, 3u, 4u, 5u, 7u, 8u})
    for (unsigned t = 2; t <= std::min(q, 4u); ++t) {
      auto oa = reed_solomon_oa(t, q);
      CHECK(verify_oa(oa).ok);
      CHECK(td_to_oa(oa_to_td(oa)) == oa);
    }
}

TEST_CASE("generator matrices") {
  auto f = gf::make_field(5);
  Matrix vand(2, std::vector<std::uint32_t>(5));
  for (std::uint32_t x = 0; x < 5; ++x) {
    vand[0][x] = 1;
    vand[1][x] = x;
  }
  auto oa = oa_from_generator(f, vand, 2);
  CHECK(oa.lambda == 1);
  CHECK(oa.rows.size() == 25);
  CHECK(verify_oa(oa).ok);

  Matrix rep = vand;
  rep[0][4] = rep[0][3];
  rep[1][4] = rep[1][3];
  try {
    oa_from_generator(f, rep, 2);
    FAIL("expected ColumnsDependent");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ColumnsDependent);
  }

  Matrix three(3, std::vector<std::uint32_t>(5));
  for (std::uint32_t x = 0; x < 5; ++x) {
    three[0][x] = 1;
    three[1][x] = x;
    three[2][x] = f->mul(x, x);
  }
  auto big = oa_from_generator(f, three, 2);
  CHECK(big.lambda == 5);
  CHECK(big.rows.size() == 125);
  CHECK(verify_oa(big).ok);
}

TEST_CASE("coset large sets") {
  auto oa = reed_solomon_oa(2, 3);
  auto ls = coset_large_set(oa);
  REQUIRE(ls.size() == 3);
  CHECK(ls[0] == oa);
  std::set<Row> all;
  std::size_t total = 0;
  for (const auto& m : ls) {
    CHECK(verify_oa(m).ok);
    for (const auto& r : m.rows) {
      all.insert(r);
      ++total;
    }
  }
  CHECK(total == 27);
  CHECK(all.size() == 27);

  for (auto [t, q, keep] : {std::tuple{2u, 4u, 3u}, std::tuple{3u, 5u, 4u}, std::tuple{2u, 5u, 4u}}) {
    auto base = truncate_columns(reed_solomon_oa(t, q), keep);
    auto members = coset_large_set(base);
    std::uint64_t space = 1;
    for (unsigned i = 0; i < keep; ++i) space *= q;
    CHECK(members.size() * base.rows.size() == space);
    std::set<Row> seen;
    for (const auto& m : members) {
      CHECK(verify_oa(m).ok);
      for (const auto& r : m.rows) CHECK(seen.insert(r).second);
    }
    CHECK(seen.size() == space);
  }

  auto plain = paper_oa();
  try {
    coset_large_set(plain);
    FAIL("expected NotLinear");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotLinear);
  }
}

TEST_CASE("deleting groups") {
  auto td = oa_to_td(reed_solomon_oa(2, 5));
  auto three = delete_groups(td, 3);
  CHECK(three.k == 3);
  CHECK(three.blocks.size() == 25);
  CHECK(verify_td(three));
  CHECK(delete_groups(td, 5) == td);
  auto two = delete_groups(td, 2);
  CHECK(two.lambda == 1);
  CHECK(verify_td(two));
  CHECK_THROWS_AS(delete_groups(td, 1), Error);
  CHECK(oa_to_td(reed_solomon_oa(2, 4)).blocks.size() == 16);
  CHECK(verify_td(oa_to_td(reed_solomon_oa(2, 4))));
}

TEST_CASE("TD containment counts match the closed forms") {
  std::vector<TransversalDesign> tds{oa_to_td(paper_oa()), oa_to_td(reed_solomon_oa(2, 4)),
                                     delete_groups(oa_to_td(reed_solomon_oa(3, 5)), 4),
                                     delete_groups(oa_to_td(reed_solomon_oa(2, 5)), 3)};
  for (const auto& td : tds) {
    auto blocks = oracle::to_sets(td.blocks);
    for (unsigned i = 0; i <= td.t; ++i)
      for (unsigned j = 0; i + j <= td.t; ++j)
        for (const auto& yz : partial_transversals(td.v, td.k, i + j)) {
          oracle::Set y(yz.begin(), yz.begin() + i), z(yz.begin() + i, yz.end());
          REQUIRE(BigInt(oracle::count_yz(blocks, y, z)) ==
                  td_counts_avoiding(td.v, td.k, td.t, td.lambda, i, j));
          if (j == 0) REQUIRE(BigInt(oracle::count_yz(blocks, y, z)) == td_counts(td.v, td.k, td.t, td.lambda, i));
        }
  }
}

TEST_CASE("transversal posteriors") {
  auto td = oa_to_td(reed_solomon_oa(2, 3));
  auto v = check_transversal_security(td, 1, 1);
  CHECK(v.pass());
  CHECK(v.posteriors.at({1, 0}) == Rational(BigInt(1), BigInt(2)));
  CHECK(v.posteriors.at({1, 1}) == Rational(BigInt(1), BigInt(3)));
  CHECK(v.feasible_hands == 9);
  check_posteriors(td, 1, 1);

  auto td4 = oa_to_td(reed_solomon_oa(3, 4));
  auto v4 = check_transversal_security(td4, 1, 2);
  CHECK(v4.weak);
  CHECK(v4.formula);
  CHECK(v4.skipped_non_transversal_y > 0);
  check_posteriors(td4, 1, 2);
  for (auto& [key, val] : v4.posteriors) CHECK(val == transversal_posterior(4, 1, key.first, key.second));

  auto td5 = delete_groups(oa_to_td(reed_solomon_oa(3, 5)), 4);
  check_posteriors(td5, 2, 1);
  CHECK(check_transversal_security(td5, 2, 1).pass());
  CHECK(check_transversal_security(td5, 1, 2, 3).pass());

  CHECK_THROWS_AS(check_transversal_security(td, 2, 1), Error);
  CHECK_THROWS_AS(check_transversal_security(td, 1, 2), Error);
  CHECK(transversal_posterior(3, 1, 1, 0) == Rational(BigInt(1), BigInt(2)));
}

TEST_CASE("transversal verdicts are thread independent") {
  auto td = delete_groups(oa_to_td(reed_solomon_oa(3, 5)), 4);
  auto a = check_transversal_security(td, 1, 2, 1);
  auto b = check_transversal_security(td, 1, 2, 3);
  CHECK(a.feasible_hands == b.feasible_hands);
  CHECK(a.posteriors == b.posteriors);
  CHECK(a.skipped_non_transversal_y == b.skipped_non_transversal_y);
}

TEST_CASE("shared and local informativeness agree") {
  for (auto [t, q, keep, c] : {std::tuple{2u, 3u, 3u, 1u}, std::tuple{3u, 4u, 4u, 1u},
                               std::tuple{3u, 5u, 4u, 1u}, std::tuple{2u, 4u, 4u, 1u},
                               std::tuple{2u, 5u, 5u, 2u}}) {
    auto td = delete_groups(oa_to_td(reed_solomon_oa(t, q)), keep);
    strategy::Announcement A(td.points(), td.k, td.blocks);
    CHECK(strategy::is_informative(A, c).informative == informative_by_deals(td, c));
  }
}

TEST_CASE("toolkit") {
  auto k3 = transversal_toolkit(3, 1, 3);
  CHECK(k3.members.size() == 3);
  for (const auto& m : k3.members) CHECK(m.blocks.size() == 9);
  CHECK(k3.report.pass());
  CHECK(k3.report.expected_members == 3);
  CHECK(k3.report.partition);

  auto k4 = transversal_toolkit(4, 1, 5, 2);
  CHECK(k4.members.size() == 5);
  CHECK(k4.report.pass());
  for (const auto& m : k4.members) {
    CHECK(m.t == 3);
    CHECK(m.k == 4);
    CHECK(m.v == 5);
    CHECK(verify_td(m));
  }
  for (const auto& s : k4.report.security) CHECK(s.delta == 2);

  CHECK_THROWS_AS(transversal_toolkit(3, 2, 3), Error);
  CHECK_THROWS_AS(transversal_toolkit(4, 1, 3), Error);
  CHECK_THROWS_AS(transversal_toolkit(3, 1, 6), Error);

  auto s = toolkit_strategy(k3.members, 1);
  CHECK(s.n == 9);
  CHECK(s.a == 3);
  CHECK(s.b == 5);
  CHECK(s.c == 1);
  auto cov = transversal_coverage(s, 3);
  CHECK(cov.complete);
  CHECK(cov.gamma == 1u);
  auto dropped = s;
  dropped.announcements.pop_back();
  CHECK_FALSE(transversal_coverage(dropped, 3).complete);
}

TEST_CASE("pile-deal simulation") {
  auto kit = transversal_toolkit(3, 1, 3);
  auto s = toolkit_strategy(kit.members, 1);
  auto r = simulate_transversal(s, 3, 3000, Seed{9});
  CHECK(r.bob_success == 3000);
  CHECK(r.max_deviation == Rational(0));
  CHECK(r.posterior_values ==
        std::set<Rational>{Rational(BigInt(1), BigInt(3)), Rational(BigInt(1), BigInt(2))});
  auto again = simulate_transversal(s, 3, 3000, Seed{9});
  CHECK(again.posterior_values == r.posterior_values);
}

TEST_CASE("group helpers") {
  CHECK(group_of(7, 3) == 2);
  std::vector<Card> ok{0, 4, 8}, bad{0, 1};
  CHECK(is_partial_transversal(ok, 3));
  CHECK_FALSE(is_partial_transversal(bad, 3));
}
