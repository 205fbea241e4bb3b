#pragma once

// Bitmask block storage and the data-parallel scans the verifiers run over it.
//
// Hands are packed into ceil(n/64) 64-bit words. A MaskMatrix stores many
// hands word-major (all blocks' word 0, then all blocks' word 1, ...) so a
// vector unit can test several blocks against one query mask per step. Rows
// are padded with zero masks to a multiple of kLaneBlock.
//
// Each scan has a portable scalar reference and an AVX2 variant; the variant
// is picked once at runtime from CPU support and may be forced with the
// CARDSEC_ISA environment variable ("scalar" or "avx2") or set_isa().

#include "cardsec/core.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace cardsec::simd {

inline constexpr std::size_t kLaneBlock = 4;

using Mask = std::vector<std::uint64_t>;

inline std::size_t words_for(unsigned n) { return n <= 64 ? 1 : (n + 63) / 64; }
Mask to_mask(const Hand& h, std::size_t words);
Hand from_mask(std::span<const std::uint64_t> mask);

class MaskMatrix {
 public:
  MaskMatrix() = default;
  MaskMatrix(std::size_t words, std::span<const Hand> hands);

  std::size_t size() const noexcept { return size_; }
  std::size_t words() const noexcept { return words_; }
  std::size_t stride() const noexcept { return stride_; }
  const std::uint64_t* row(std::size_t word) const noexcept { return data_.data() + word * stride_; }
  std::uint64_t at(std::size_t block, std::size_t word) const { return data_[word * stride_ + block]; }

  /// New matrix holding the listed blocks in the listed order.
  MaskMatrix select(std::span<const std::uint32_t> blocks) const;

 private:
  std::size_t words_ = 1;
  std::size_t size_ = 0;
  std::size_t stride_ = 0;
  std::vector<std::uint64_t> data_;
};

// Raw kernel signatures. `need` and `avoid` each hold exactly words() words.
// A block matches when it contains every bit of `need` and no bit of `avoid`.
using CountFn = std::size_t (*)(const MaskMatrix&, const std::uint64_t* need,
                                const std::uint64_t* avoid);
using SelectFn = void (*)(const MaskMatrix&, const std::uint64_t* need, const std::uint64_t* avoid,
                          std::vector<std::uint32_t>& out);
// out[i] = |block_i AND mask| for i < size().
using IntersectFn = void (*)(const MaskMatrix&, const std::uint64_t* mask, std::uint32_t* out);

struct KernelTable {
  CountFn count_matching;
  SelectFn select_matching;
  IntersectFn intersection_sizes;
};

enum class Isa { Scalar, Avx2 };

const char* to_string(Isa isa);
bool isa_available(Isa isa);
const KernelTable& kernels_for(Isa isa);

Isa active_isa();
/// Throws UnsupportedParameters when the CPU lacks the requested ISA.
void set_isa(Isa isa);

// Dispatching front ends. Empty spans stand for the all-zero mask.
std::size_t count_matching(const MaskMatrix& m, std::span<const std::uint64_t> need,
                           std::span<const std::uint64_t> avoid);
std::vector<std::uint32_t> select_matching(const MaskMatrix& m, std::span<const std::uint64_t> need,
                                           std::span<const std::uint64_t> avoid);
std::vector<std::uint32_t> intersection_sizes(const MaskMatrix& m,
                                              std::span<const std::uint64_t> mask);

}  // namespace cardsec::simd
