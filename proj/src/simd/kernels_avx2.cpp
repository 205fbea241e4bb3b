// AVX2 kernels: four 64-bit block words per vector. Compiled with -mavx2 and
// only entered after a runtime CPU check.

#include "simd/kernels.hpp"

#include <immintrin.h>

#include <algorithm>
#include <bit>

namespace cardsec::simd::detail {
namespace {

// Lanes past size() hold padding and are masked off.
inline unsigned valid_lanes(const MaskMatrix& m, std::size_t i) {
  std::size_t left = m.size() - i;
  return left >= 4 ? 0xFu : (1u << left) - 1u;
}

inline __m256i match4(const MaskMatrix& m, std::size_t i, const std::uint64_t* need,
                      const std::uint64_t* avoid) {
  const __m256i zero = _mm256_setzero_si256();
  __m256i ok = _mm256_cmpeq_epi64(zero, zero);
  for (std::size_t w = 0; w < m.words(); ++w) {
    __m256i b = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(m.row(w) + i));
    __m256i n = _mm256_set1_epi64x(static_cast<long long>(need[w]));
    __m256i a = _mm256_set1_epi64x(static_cast<long long>(avoid[w]));
    __m256i has = _mm256_cmpeq_epi64(_mm256_and_si256(b, n), n);
    __m256i clear = _mm256_cmpeq_epi64(_mm256_and_si256(b, a), zero);
    ok = _mm256_and_si256(ok, _mm256_and_si256(has, clear));
  }
  return ok;
}

inline unsigned lane_bits(__m256i v) {
  return static_cast<unsigned>(_mm256_movemask_pd(_mm256_castsi256_pd(v)));
}

std::size_t count_matching(const MaskMatrix& m, const std::uint64_t* need,
                           const std::uint64_t* avoid) {
  std::size_t n = 0;
  for (std::size_t i = 0; i < m.size(); i += 4)
    n += std::popcount(lane_bits(match4(m, i, need, avoid)) & valid_lanes(m, i));
  return n;
}

void select_matching(const MaskMatrix& m, const std::uint64_t* need, const std::uint64_t* avoid,
                     std::vector<std::uint32_t>& out) {
  for (std::size_t i = 0; i < m.size(); i += 4) {
    unsigned bits = lane_bits(match4(m, i, need, avoid)) & valid_lanes(m, i);
    while (bits) {
      out.push_back(static_cast<std::uint32_t>(i + std::countr_zero(bits)));
      bits &= bits - 1;
    }
  }
}

// Nibble-table popcount, summed per 64-bit lane.
inline __m256i popcount_epi64(__m256i v) {
  const __m256i table = _mm256_setr_epi8(0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4,
                                         0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4);
  const __m256i low = _mm256_set1_epi8(0x0f);
  __m256i lo = _mm256_and_si256(v, low);
  __m256i hi = _mm256_and_si256(_mm256_srli_epi16(v, 4), low);
  __m256i bytes = _mm256_add_epi8(_mm256_shuffle_epi8(table, lo), _mm256_shuffle_epi8(table, hi));
  return _mm256_sad_epu8(bytes, _mm256_setzero_si256());
}

void intersection_sizes(const MaskMatrix& m, const std::uint64_t* mask, std::uint32_t* out) {
  alignas(32) std::uint64_t lanes[4];
  for (std::size_t i = 0; i < m.size(); i += 4) {
    __m256i acc = _mm256_setzero_si256();
    for (std::size_t w = 0; w < m.words(); ++w) {
      __m256i b = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(m.row(w) + i));
      __m256i q = _mm256_set1_epi64x(static_cast<long long>(mask[w]));
      acc = _mm256_add_epi64(acc, popcount_epi64(_mm256_and_si256(b, q)));
    }
    _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), acc);
    std::size_t lim = std::min<std::size_t>(4, m.size() - i);
    for (std::size_t l = 0; l < lim; ++l) out[i + l] = static_cast<std::uint32_t>(lanes[l]);
  }
}

const KernelTable kAvx2Kernels{count_matching, select_matching, intersection_sizes};

}  // namespace

const KernelTable* avx2_kernels() { return &kAvx2Kernels; }

}  // namespace cardsec::simd::detail
