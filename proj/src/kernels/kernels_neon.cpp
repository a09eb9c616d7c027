// NEON kernels: two packed arrangements per 128-bit register. Built on
// aarch64 only.

#include <arm_neon.h>

#include "permwordle/kernels.hpp"

namespace permwordle::kernels::neon {

namespace {

// Bit weights 1,2,4,..,128 per byte lane; a horizontal add of a compare
// result masked by these yields the position bitmask.
const uint8x16_t kWeights = {1, 2, 4, 8, 16, 32, 64, 128, 1, 2, 4, 8, 16, 32, 64, 128};

inline void store_masks(uint8x16_t cmp, std::uint8_t keep, std::uint8_t* out) {
  const uint8x16_t weighted = vandq_u8(cmp, kWeights);
  out[0] = vaddv_u8(vget_low_u8(weighted)) & keep;
  out[1] = vaddv_u8(vget_high_u8(weighted)) & keep;
}

inline std::uint8_t keep_mask(int n) { return static_cast<std::uint8_t>((1u << n) - 1u); }

}  // namespace

void match_masks(Packed guess, std::span<const Packed> secrets, int n, std::span<std::uint8_t> out) {
  const std::uint8_t keep = keep_mask(n);
  const uint8x16_t g = vreinterpretq_u8_u64(vdupq_n_u64(guess));
  std::size_t k = 0;
  for (; k + 2 <= secrets.size(); k += 2) {
    const uint8x16_t s = vreinterpretq_u8_u64(vld1q_u64(secrets.data() + k));
    store_masks(vceqq_u8(g, s), keep, out.data() + k);
  }
  if (k < secrets.size()) scalar::match_masks(guess, secrets.subspan(k), n, out.subspan(k));
}

void match_masks_pairwise(std::span<const Packed> guesses, std::span<const Packed> secrets, int n,
                          std::span<std::uint8_t> out) {
  const std::uint8_t keep = keep_mask(n);
  std::size_t k = 0;
  for (; k + 2 <= secrets.size(); k += 2) {
    const uint8x16_t g = vreinterpretq_u8_u64(vld1q_u64(guesses.data() + k));
    const uint8x16_t s = vreinterpretq_u8_u64(vld1q_u64(secrets.data() + k));
    store_masks(vceqq_u8(g, s), keep, out.data() + k);
  }
  if (k < secrets.size()) {
    scalar::match_masks_pairwise(guesses.subspan(k), secrets.subspan(k), n, out.subspan(k));
  }
}

void exceedance_counts(std::span<const Packed> perms, int n, std::span<std::uint8_t> out) {
  const uint8x16_t index = {1, 2, 3, 4, 5, 6, 7, 8, 1, 2, 3, 4, 5, 6, 7, 8};
  std::uint8_t masks[2];
  std::size_t k = 0;
  for (; k + 2 <= perms.size(); k += 2) {
    const uint8x16_t p = vreinterpretq_u8_u64(vld1q_u64(perms.data() + k));
    store_masks(vcgtq_u8(p, index), keep_mask(n), masks);
    out[k] = static_cast<std::uint8_t>(__builtin_popcount(masks[0]));
    out[k + 1] = static_cast<std::uint8_t>(__builtin_popcount(masks[1]));
  }
  if (k < perms.size()) scalar::exceedance_counts(perms.subspan(k), n, out.subspan(k));
}

}  // namespace permwordle::kernels::neon
