// Scalar reference kernels. Clarity over speed; the SIMD variants are tested
// against these.

#include "permwordle/kernels.hpp"

namespace permwordle::kernels::scalar {

namespace {

inline std::uint8_t byte_at(Packed word, int i) { return static_cast<std::uint8_t>(word >> (8 * i)); }

inline std::uint8_t match_mask(Packed a, Packed b, int n) {
  std::uint8_t mask = 0;
  for (int i = 0; i < n; ++i) {
    if (byte_at(a, i) == byte_at(b, i)) mask |= static_cast<std::uint8_t>(1u << i);
  }
  return mask;
}

}  // namespace

void match_masks(Packed guess, std::span<const Packed> secrets, int n, std::span<std::uint8_t> out) {
  for (std::size_t k = 0; k < secrets.size(); ++k) out[k] = match_mask(guess, secrets[k], n);
}

void match_masks_pairwise(std::span<const Packed> guesses, std::span<const Packed> secrets, int n,
                          std::span<std::uint8_t> out) {
  for (std::size_t k = 0; k < secrets.size(); ++k) out[k] = match_mask(guesses[k], secrets[k], n);
}

void exceedance_counts(std::span<const Packed> perms, int n, std::span<std::uint8_t> out) {
  for (std::size_t k = 0; k < perms.size(); ++k) {
    std::uint8_t count = 0;
    for (int i = 0; i < n; ++i) count += byte_at(perms[k], i) > i + 1;
    out[k] = count;
  }
}

}  // namespace permwordle::kernels::scalar
