// Portable reference kernels. The AVX2 variants must agree with these
// bit for bit on every input.

#include "simd/kernels.hpp"

#include <bit>

namespace cardsec::simd::detail {
namespace {

bool matches(const MaskMatrix& m, std::size_t i, const std::uint64_t* need,
             const std::uint64_t* avoid) {
  for (std::size_t w = 0; w < m.words(); ++w) {
    std::uint64_t b = m.row(w)[i];
    if ((b & need[w]) != need[w] || (b & avoid[w]) != 0) return false;
  }
  return true;
}

std::size_t count_matching(const MaskMatrix& m, const std::uint64_t* need,
                           const std::uint64_t* avoid) {
  std::size_t n = 0;
  for (std::size_t i = 0; i < m.size(); ++i) n += matches(m, i, need, avoid);
  return n;
}

void select_matching(const MaskMatrix& m, const std::uint64_t* need, const std::uint64_t* avoid,
                     std::vector<std::uint32_t>& out) {
  for (std::size_t i = 0; i < m.size(); ++i)
    if (matches(m, i, need, avoid)) out.push_back(static_cast<std::uint32_t>(i));
}

void intersection_sizes(const MaskMatrix& m, const std::uint64_t* mask, std::uint32_t* out) {
  for (std::size_t i = 0; i < m.size(); ++i) {
    std::uint32_t n = 0;
    for (std::size_t w = 0; w < m.words(); ++w)
      n += static_cast<std::uint32_t>(std::popcount(m.row(w)[i] & mask[w]));
    out[i] = n;
  }
}

}  // namespace

const KernelTable kScalarKernels{count_matching, select_matching, intersection_sizes};

}  // namespace cardsec::simd::detail
