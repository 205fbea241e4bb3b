#include "cardsec/mask_matrix.hpp"

#include <bit>

namespace cardsec::simd {

Mask to_mask(const Hand& h, std::size_t words) {
  Mask m(words, 0);
  for (Card c : h) {
    if (c / 64 >= words) throw Error(ErrorCode::OutOfRange, "card id exceeds mask width");
    m[c / 64] |= std::uint64_t{1} << (c % 64);
  }
  return m;
}

Hand from_mask(std::span<const std::uint64_t> mask) {
  std::vector<Card> out;
  for (std::size_t w = 0; w < mask.size(); ++w) {
    std::uint64_t bits = mask[w];
    while (bits) {
      out.push_back(static_cast<Card>(w * 64 + std::countr_zero(bits)));
      bits &= bits - 1;
    }
  }
  return Hand::from_sorted(std::move(out));
}

MaskMatrix::MaskMatrix(std::size_t words, std::span<const Hand> hands)
    : words_(words),
      size_(hands.size()),
      stride_((hands.size() + kLaneBlock - 1) / kLaneBlock * kLaneBlock),
      data_(words * stride_, 0) {
  for (std::size_t i = 0; i < hands.size(); ++i) {
    for (Card c : hands[i]) {
      if (c / 64 >= words) throw Error(ErrorCode::OutOfRange, "card id exceeds mask width");
      data_[(c / 64) * stride_ + i] |= std::uint64_t{1} << (c % 64);
    }
  }
}

MaskMatrix MaskMatrix::select(std::span<const std::uint32_t> blocks) const {
  MaskMatrix out;
  out.words_ = words_;
  out.size_ = blocks.size();
  out.stride_ = (blocks.size() + kLaneBlock - 1) / kLaneBlock * kLaneBlock;
  out.data_.assign(words_ * out.stride_, 0);
  for (std::size_t w = 0; w < words_; ++w) {
    const std::uint64_t* src = row(w);
    std::uint64_t* dst = out.data_.data() + w * out.stride_;
    for (std::size_t i = 0; i < blocks.size(); ++i) dst[i] = src[blocks[i]];
  }
  return out;
}

}  // namespace cardsec::simd
