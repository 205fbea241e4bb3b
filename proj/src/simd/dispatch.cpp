#include "simd/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <string_view>

namespace cardsec::simd {

#ifndef CARDSEC_HAVE_AVX2_TU
namespace detail {
const KernelTable* avx2_kernels() { return nullptr; }
}  // namespace detail
#endif

namespace {

bool cpu_has_avx2() {
#if defined(CARDSEC_HAVE_AVX2_TU) && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("popcnt");
#else
  return false;
#endif
}

Isa initial_isa() {
  Isa best = isa_available(Isa::Avx2) ? Isa::Avx2 : Isa::Scalar;
  if (const char* env = std::getenv("CARDSEC_ISA")) {
    std::string_view want(env);
    if (want == "scalar") return Isa::Scalar;
    if (want == "avx2" && isa_available(Isa::Avx2)) return Isa::Avx2;
  }
  return best;
}

std::atomic<Isa>& current() {
  static std::atomic<Isa> isa{initial_isa()};
  return isa;
}

std::span<const std::uint64_t> widen(std::span<const std::uint64_t> m, std::size_t words,
                                     Mask& scratch) {
  if (m.size() == words) return m;
  if (!m.empty()) throw Error(ErrorCode::InvalidArgument, "mask width does not match matrix");
  scratch.assign(words, 0);
  return scratch;
}

const KernelTable& active_table() {
  // set_isa() and initial_isa() only ever store an available ISA.
  return active_isa() == Isa::Avx2 ? *detail::avx2_kernels() : detail::kScalarKernels;
}

}  // namespace

const char* to_string(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

bool isa_available(Isa isa) {
  if (isa == Isa::Scalar) return true;
  return detail::avx2_kernels() != nullptr && cpu_has_avx2();
}

const KernelTable& kernels_for(Isa isa) {
  if (isa == Isa::Avx2) {
    if (!isa_available(Isa::Avx2))
      throw Error(ErrorCode::UnsupportedParameters, "AVX2 kernels unavailable on this CPU");
    return *detail::avx2_kernels();
  }
  return detail::kScalarKernels;
}

Isa active_isa() { return current().load(std::memory_order_relaxed); }

void set_isa(Isa isa) {
  if (!isa_available(isa))
    throw Error(ErrorCode::UnsupportedParameters, "requested ISA unavailable on this CPU");
  current().store(isa, std::memory_order_relaxed);
}

std::size_t count_matching(const MaskMatrix& m, std::span<const std::uint64_t> need,
                           std::span<const std::uint64_t> avoid) {
  Mask s1, s2;
  auto n = widen(need, m.words(), s1);
  auto a = widen(avoid, m.words(), s2);
  return active_table().count_matching(m, n.data(), a.data());
}

std::vector<std::uint32_t> select_matching(const MaskMatrix& m, std::span<const std::uint64_t> need,
                                           std::span<const std::uint64_t> avoid) {
  Mask s1, s2;
  auto n = widen(need, m.words(), s1);
  auto a = widen(avoid, m.words(), s2);
  std::vector<std::uint32_t> out;
  active_table().select_matching(m, n.data(), a.data(), out);
  return out;
}

std::vector<std::uint32_t> intersection_sizes(const MaskMatrix& m,
                                              std::span<const std::uint64_t> mask) {
  Mask s;
  auto q = widen(mask, m.words(), s);
  std::vector<std::uint32_t> out(m.size());
  active_table().intersection_sizes(m, q.data(), out.data());
  return out;
}

}  // namespace cardsec::simd
