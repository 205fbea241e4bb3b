#include "cardsec/geometric.hpp"
#include "oracle.hpp"

#include <doctest.h>

using namespace cardsec;
using namespace cardsec::geometric;

TEST_CASE("affine geometry") {
  auto g = build_affine_geometry(2, 2);
  CHECK(g.point_count() == 8);
  CHECK(g.classes.size() == 7);
  for (const auto& cls : g.classes) {
    REQUIRE(cls.blocks.size() == 2);
    CHECK(cls.blocks[0].size() == 4);
    CHECK(hand_union(cls.blocks[0], cls.blocks[1]) == complement(Hand{}, 8));
    CHECK(cls.normal[std::find_if(cls.normal.begin(), cls.normal.end(), [](auto x) { return x; }) -
                     cls.normal.begin()] == 1);
  }
  auto hd = hyperplane_design(g);
  CHECK(designs::verify_t_design(hd, 2) == 3u);

  auto g3 = build_affine_geometry(3, 1);
  CHECK(g3.classes.size() == 4);
  auto line = hyperplane_design(g3);
  CHECK(line.block_count() == 12);
  CHECK(designs::verify_t_design(line, 2) == 1u);

  for (auto [p, d] : {std::pair{4u, 2u}, std::pair{5u, 1u}, std::pair{3u, 2u}}) {
    auto gg = build_affine_geometry(p, d);
    CHECK(BigInt(gg.classes.size()) == parallel_class_count(p, d));
    for (const auto& cls : gg.classes) {
      Hand all;
      for (const auto& b : cls.blocks) {
        CHECK(!all.intersects(b));
        all = hand_union(all, b);
      }
      CHECK(all.size() == gg.point_count());
    }
  }
  CHECK_THROWS_AS(build_affine_geometry(6, 1), Error);
  CHECK_THROWS_AS(build_affine_geometry(8, 4), Error);
  CHECK_NOTHROW(build_affine_geometry(16, 2));
  CHECK_THROWS_AS(build_affine_geometry(2, 0), Error);
}

TEST_CASE("geometric announcements") {
  auto a = build_geometric_announcement(2, 2, 1);
  CHECK(a.blocks.size() == 14);
  auto d = a.design();
  CHECK(designs::verify_t_design(d, 2) == 3u);
  CHECK(designs::verify_t_design(d, 3) == 1u);
  CHECK(oracle::isomorphic(oracle::to_sets(d.blocks()), oracle::to_sets(designs::builtin_ag32().blocks()), 8));

  auto b = build_geometric_announcement(3, 1, 1);
  CHECK(b.blocks.size() == 12);
  CHECK(geometric_lambda(3, 1, 1) == Rational(1));
  CHECK(designs::verify_t_design(b.design(), 2) == 1u);

  auto c = build_geometric_announcement(4, 1, 2);
  CHECK(geometric_lambda(4, 1, 2) == Rational(7));
  CHECK(designs::verify_t_design(c.design(), 2) == 7u);
  CHECK(designs::verify_t_design(c.design(), 3).has_value());

  CHECK_THROWS_AS(build_geometric_announcement(3, 1, 3), Error);
  CHECK_THROWS_AS(build_geometric_announcement(3, 1, 0), Error);
}

TEST_CASE("parameter sweep") {
  for (unsigned p : {2u, 3u, 4u, 5u})
    for (unsigned d = 1; d <= 2; ++d) {
      unsigned pts = 1;
      for (unsigned i = 0; i <= d; ++i) pts *= p;
      if (pts > 256) continue;
      for (unsigned s = 1; s < p; ++s) {
        CAPTURE(p);
        CAPTURE(d);
        CAPTURE(s);
        auto ga = build_geometric_announcement(p, d, s);
        CHECK(BigInt(ga.blocks.size()) == geometric_block_count(p, d, s));
        unsigned pd = pts / p;
        for (const auto& b : ga.blocks) REQUIRE(b.size() == s * pd);
        auto lam = designs::verify_t_design(ga.design(), 2);
        REQUIRE(lam.has_value());
        CHECK(Rational(BigInt(*lam)) == geometric_lambda(p, d, s));
        if (s * pd >= 3) CHECK(designs::verify_t_design(ga.design(), 3).has_value() == (p == 2 * s));
      }
    }
}

TEST_CASE("geometric security sweep") {
  auto a = check_geometric_security(3, 1, 1, 1);
  CHECK(a.max_perfect_delta == 1);
  CHECK(a.t_max == 2);
  CHECK(a.agrees());
  REQUIRE(a.sweep.size() == 2);
  CHECK_FALSE(a.sweep[1].pass());

  auto b = check_geometric_security(2, 2, 1, 2);
  CHECK(b.max_perfect_delta == 1);
  CHECK(b.agrees());
  auto c = check_geometric_security(2, 2, 1, 1);
  CHECK(c.max_perfect_delta == 2);
  CHECK(c.agrees());
  auto d = check_geometric_security(4, 1, 2, 1, 2);
  CHECK(d.t_max == 3);
  CHECK(d.max_perfect_delta == 2);
  CHECK(d.prior_condition == (std::max(1u + 2u, 2u) <= 4u));
}

// Weak-security regime of the protocol: c < s p^d - s^2 p^{d-1} and max{c+s, cs} <= p.
TEST_CASE("informative in the weak-security regime") {
  for (auto [p, d, s] : {std::tuple{3u, 1u, 1u}, std::tuple{4u, 1u, 1u}, std::tuple{5u, 1u, 2u},
                         std::tuple{3u, 2u, 1u}, std::tuple{2u, 2u, 1u}}) {
    auto ga = build_geometric_announcement(p, d, s);
    unsigned pd = 1;
    for (unsigned i = 0; i < d; ++i) pd *= p;
    const unsigned threshold = s * pd - s * s * pd / p;
    auto A = ga.announcement();
    for (unsigned c = 1; c < threshold && std::max(c + s, c * s) <= p; ++c) {
      CAPTURE(p);
      CAPTURE(c);
      CHECK(strategy::is_informative(A, c).informative);
    }
  }
}
