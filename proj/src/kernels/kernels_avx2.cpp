// AVX2 kernels: four packed arrangements per 256-bit register. Compiled with
// -mavx2 and only reached after a runtime CPU check.

#include <immintrin.h>

#include <bit>

#include "permwordle/kernels.hpp"

namespace permwordle::kernels::avx2 {

namespace {

inline std::uint8_t lane_mask(std::uint32_t bits, int lane, std::uint8_t keep) {
  return static_cast<std::uint8_t>(bits >> (8 * lane)) & keep;
}

inline std::uint8_t keep_mask(int n) { return static_cast<std::uint8_t>((1u << n) - 1u); }

}  // namespace

void match_masks(Packed guess, std::span<const Packed> secrets, int n, std::span<std::uint8_t> out) {
  const std::uint8_t keep = keep_mask(n);
  const __m256i g = _mm256_set1_epi64x(static_cast<long long>(guess));
  std::size_t k = 0;
  for (; k + 4 <= secrets.size(); k += 4) {
    const __m256i s = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(secrets.data() + k));
    const auto bits = static_cast<std::uint32_t>(_mm256_movemask_epi8(_mm256_cmpeq_epi8(g, s)));
    for (int lane = 0; lane < 4; ++lane) out[k + lane] = lane_mask(bits, lane, keep);
  }
  if (k < secrets.size()) scalar::match_masks(guess, secrets.subspan(k), n, out.subspan(k));
}

void match_masks_pairwise(std::span<const Packed> guesses, std::span<const Packed> secrets, int n,
                          std::span<std::uint8_t> out) {
  const std::uint8_t keep = keep_mask(n);
  std::size_t k = 0;
  for (; k + 4 <= secrets.size(); k += 4) {
    const __m256i g = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(guesses.data() + k));
    const __m256i s = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(secrets.data() + k));
    const auto bits = static_cast<std::uint32_t>(_mm256_movemask_epi8(_mm256_cmpeq_epi8(g, s)));
    for (int lane = 0; lane < 4; ++lane) out[k + lane] = lane_mask(bits, lane, keep);
  }
  if (k < secrets.size()) {
    scalar::match_masks_pairwise(guesses.subspan(k), secrets.subspan(k), n, out.subspan(k));
  }
}

void exceedance_counts(std::span<const Packed> perms, int n, std::span<std::uint8_t> out) {
  const std::uint8_t keep = keep_mask(n);
  // Position i+1 in every byte lane.
  const __m256i index = _mm256_set1_epi64x(0x0807060504030201LL);
  std::size_t k = 0;
  for (; k + 4 <= perms.size(); k += 4) {
    const __m256i p = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(perms.data() + k));
    // Values are at most 8, so the signed byte compare is exact.
    const auto bits = static_cast<std::uint32_t>(_mm256_movemask_epi8(_mm256_cmpgt_epi8(p, index)));
    for (int lane = 0; lane < 4; ++lane) {
      out[k + lane] = static_cast<std::uint8_t>(std::popcount(lane_mask(bits, lane, keep)));
    }
  }
  if (k < perms.size()) scalar::exceedance_counts(perms.subspan(k), n, out.subspan(k));
}

}  // namespace permwordle::kernels::avx2
