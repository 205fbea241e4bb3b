#pragma once

#include "cardsec/mask_matrix.hpp"

namespace cardsec::simd::detail {

extern const KernelTable kScalarKernels;
// Null when the AVX2 translation unit was not built for this target.
const KernelTable* avx2_kernels();

}  // namespace cardsec::simd::detail
