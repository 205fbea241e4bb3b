#include "cardsec/geometric.hpp"

#include <algorithm>
#include <string>

namespace cardsec::geometric {

namespace {

std::uint32_t ipow(std::uint32_t b, unsigned e) {
  std::uint32_t r = 1;
  while (e--) r *= b;
  return r;
}

// Vectors of GF(p)^dim in lexicographic order of their index tuples.
std::vector<std::vector<std::uint32_t>> all_vectors(unsigned p, unsigned dim) {
  std::vector<std::vector<std::uint32_t>> out;
  const std::uint32_t total = ipow(p, dim);
  for (std::uint32_t x = 0; x < total; ++x) {
    std::vector<std::uint32_t> v(dim);
    std::uint32_t rest = x;
    for (unsigned i = dim; i-- > 0;) {
      v[i] = rest % p;
      rest /= p;
    }
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace

AffineGeometry build_affine_geometry(unsigned p, unsigned d) {
  if (p > 16 || !gf::is_prime_power(p) || d < 1 || d > 11 || ipow(p, d + 1) > 4096)
    throw Error(ErrorCode::UnsupportedParameters,
                "affine geometry needs a prime power p <= 16, d >= 1 and p^(d+1) <= 4096, got p = " +
                    std::to_string(p) + ", d = " + std::to_string(d));
  AffineGeometry g;
  g.p = p;
  g.d = d;
  g.field = gf::make_field(p);
  const gf::GaloisField& f = *g.field;
  g.points = all_vectors(p, d + 1);

  for (const auto& u : all_vectors(p, d + 1)) {
    auto lead = std::find_if(u.begin(), u.end(), [](auto e) { return e != 0; });
    if (lead == u.end() || *lead != 1) continue;
    ParallelClass cls{u, std::vector<Hand>(p)};
    std::vector<std::vector<Card>> members(p);
    for (Card id = 0; id < g.points.size(); ++id) {
      std::uint32_t dot = 0;
      for (unsigned j = 0; j <= d; ++j) dot = f.add(dot, f.mul(u[j], g.points[id][j]));
      members[dot].push_back(id);
    }
    for (unsigned c = 0; c < p; ++c) cls.blocks[c] = Hand::from_sorted(std::move(members[c]));
    g.classes.push_back(std::move(cls));
  }
  return g;
}

designs::Design hyperplane_design(const AffineGeometry& g) {
  std::vector<Hand> blocks;
  for (const auto& cls : g.classes)
    for (const Hand& b : cls.blocks) blocks.push_back(b);
  return designs::Design(g.point_count(), ipow(g.p, g.d), std::move(blocks));
}

GeometricAnnouncement build_geometric_announcement(unsigned p, unsigned d, unsigned s) {
  if (s < 1 || s >= p)
    throw Error(ErrorCode::InvalidArgument, "need 1 <= s < p, got s = " + std::to_string(s));
  GeometricAnnouncement ga{build_affine_geometry(p, d), s, {}};
  for (const auto& cls : ga.geometry.classes) {
    for_each_k_subset(static_cast<int>(p), static_cast<int>(s), [&](std::span<const Card> D) {
      Hand u;
      for (Card j : D) u = hand_union(u, cls.blocks[j]);
      ga.blocks.push_back(std::move(u));
    });
  }
  std::sort(ga.blocks.begin(), ga.blocks.end());
  return ga;
}

strategy::Announcement GeometricAnnouncement::announcement() const {
  return strategy::Announcement(geometry.point_count(), s * ipow(geometry.p, geometry.d), blocks);
}

designs::Design GeometricAnnouncement::design() const {
  return designs::Design(geometry.point_count(), s * ipow(geometry.p, geometry.d), blocks);
}

Rational geometric_lambda(unsigned p, unsigned d, unsigned s) {
  return Rational(binomial(p - 1, s - 1) * (BigInt(s) * ipow(p, d) - 1), BigInt(p - 1));
}

BigInt parallel_class_count(unsigned p, unsigned d) {
  return (boost::multiprecision::pow(BigInt(p), d + 1) - 1) / (p - 1);
}

BigInt geometric_block_count(unsigned p, unsigned d, unsigned s) {
  return binomial(p, s) * parallel_class_count(p, d);
}

GeometricSecurity check_geometric_security(unsigned p, unsigned d, unsigned s, unsigned c,
                                           unsigned threads) {
  const auto ga = build_geometric_announcement(p, d, s);
  const auto A = ga.announcement();
  if (c < 1 || c >= A.a())
    throw Error(ErrorCode::InvalidArgument, "need 1 <= c < s p^d");
  GeometricSecurity out;
  out.p = p;
  out.d = d;
  out.s = s;
  out.c = c;
  out.t_max = p == 2 * s ? 3 : 2;
  out.predicted_delta = out.t_max > c ? out.t_max - c : 0;
  out.prior_condition = std::max(c + s, c * s) <= p;
  for (unsigned delta = 1; delta <= A.a(); ++delta) {
    out.sweep.push_back(strategy::check_announcement_security(A, c, delta, strategy::Level::Perfect, threads));
    if (!out.sweep.back().pass()) break;
    out.max_perfect_delta = delta;
  }
  return out;
}

}  // namespace cardsec::geometric
