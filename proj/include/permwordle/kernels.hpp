// kernels.hpp -- byte-parallel batch kernels over packed arrangements.
//
// An arrangement of n <= 8 items is packed into a 64-bit word, byte i holding
// the item at position i+1 and unused bytes zero. Plain permutations store the
// value; suited permutations store suit*16 + value (s, n <= 15).
//
// Each kernel has a scalar reference implementation and SIMD variants. The
// variant is picked once at startup from CPU features and can be overridden
// with PERMWORDLE_SIMD=scalar|avx2|neon or set_active_backend().

#pragma once

#include <cstdint>
#include <span>

#include "permwordle/permutation.hpp"

namespace permwordle::kernels {

using Packed = std::uint64_t;

inline constexpr int kMaxPackedSize = 8;

enum class Backend { scalar, avx2, neon };

const char* backend_name(Backend b);
bool backend_available(Backend b);
Backend active_backend();
/// Throws std::invalid_argument if the backend is not available on this CPU.
void set_active_backend(Backend b);

Packed pack(const Permutation& p);
Packed pack(const SuitedPermutation& t);
Permutation unpack_plain(Packed word, int n);
SuitedPermutation unpack_suited(Packed word, int n, int suit_count);

/// out[k] = bitmask of positions where guess and secrets[k] agree.
void match_masks(Packed guess, std::span<const Packed> secrets, int n, std::span<std::uint8_t> out);

/// out[k] = bitmask of positions where guesses[k] and secrets[k] agree.
void match_masks_pairwise(std::span<const Packed> guesses, std::span<const Packed> secrets, int n,
                          std::span<std::uint8_t> out);

/// out[k] = exc(perms[k]) for plain packed permutations.
void exceedance_counts(std::span<const Packed> perms, int n, std::span<std::uint8_t> out);

// Direct entry points, used by the equivalence tests.
namespace scalar {
void match_masks(Packed guess, std::span<const Packed> secrets, int n, std::span<std::uint8_t> out);
void match_masks_pairwise(std::span<const Packed> guesses, std::span<const Packed> secrets, int n,
                          std::span<std::uint8_t> out);
void exceedance_counts(std::span<const Packed> perms, int n, std::span<std::uint8_t> out);
}  // namespace scalar

#if defined(PERMWORDLE_HAVE_AVX2)
namespace avx2 {
void match_masks(Packed guess, std::span<const Packed> secrets, int n, std::span<std::uint8_t> out);
void match_masks_pairwise(std::span<const Packed> guesses, std::span<const Packed> secrets, int n,
                          std::span<std::uint8_t> out);
void exceedance_counts(std::span<const Packed> perms, int n, std::span<std::uint8_t> out);
}  // namespace avx2
#endif

#if defined(PERMWORDLE_HAVE_NEON)
namespace neon {
void match_masks(Packed guess, std::span<const Packed> secrets, int n, std::span<std::uint8_t> out);
void match_masks_pairwise(std::span<const Packed> guesses, std::span<const Packed> secrets, int n,
                          std::span<std::uint8_t> out);
void exceedance_counts(std::span<const Packed> perms, int n, std::span<std::uint8_t> out);
}  // namespace neon
#endif

}  // namespace permwordle::kernels
