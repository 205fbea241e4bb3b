#pragma once

// The geometric protocol: announcements made of unions of s parallel
// hyperplanes of AG(d+1, p).

#include "cardsec/designs.hpp"
#include "cardsec/gf.hpp"
#include "cardsec/strategy.hpp"

#include <memory>
#include <vector>

namespace cardsec::geometric {

struct ParallelClass {
  std::vector<std::uint32_t> normal;  // first nonzero coordinate is 1
  std::vector<Hand> blocks;           // blocks[c] = {x : u·x = c}, c in field index order
};

struct AffineGeometry {
  unsigned p = 0;
  unsigned d = 0;
  std::shared_ptr<const gf::GaloisField> field;
  std::vector<std::vector<std::uint32_t>> points;  // lexicographic; point id = position
  std::vector<ParallelClass> classes;

  unsigned point_count() const { return static_cast<unsigned>(points.size()); }
};

/// Requires p a prime power <= 16, d >= 1 and p^{d+1} <= 4096.
AffineGeometry build_affine_geometry(unsigned p, unsigned d);

/// All hyperplanes as one design, 2-(p^{d+1}, p^d, (p^d-1)/(p-1)).
designs::Design hyperplane_design(const AffineGeometry& g);

struct GeometricAnnouncement {
  AffineGeometry geometry;
  unsigned s = 0;
  std::vector<Hand> blocks;  // C_{i,D} for every class i and s-subset D, sorted

  strategy::Announcement announcement() const;
  designs::Design design() const;
};

/// Requires 1 <= s < p.
GeometricAnnouncement build_geometric_announcement(unsigned p, unsigned d, unsigned s);

/// C(p-1, s-1) (s p^d - 1) / (p-1)
Rational geometric_lambda(unsigned p, unsigned d, unsigned s);
/// C(p, s) (p^{d+1} - 1) / (p-1)
BigInt geometric_block_count(unsigned p, unsigned d, unsigned s);
/// (p^{d+1} - 1) / (p-1)
BigInt parallel_class_count(unsigned p, unsigned d);

struct GeometricSecurity {
  unsigned p = 0, d = 0, s = 0, c = 0;
  unsigned t_max = 0;              // 3 if p = 2s, else 2
  unsigned predicted_delta = 0;    // max(t_max - c, 0)
  unsigned max_perfect_delta = 0;  // from the sweep
  std::vector<strategy::SecurityVerdict> sweep;  // δ = 1, 2, ... up to the first non-perfect
  bool prior_condition = false;    // max{c+s, cs} <= p, recorded only
  bool agrees() const { return max_perfect_delta == predicted_delta; }
};

/// Requires 1 <= c < s p^d.
GeometricSecurity check_geometric_security(unsigned p, unsigned d, unsigned s, unsigned c,
                                           unsigned threads = 1);

}  // namespace cardsec::geometric
