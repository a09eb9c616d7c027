#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "permwordle/kernels.hpp"

namespace permwordle::kernels {

namespace {

struct KernelTable {
  Backend backend;
  void (*match_masks)(Packed, std::span<const Packed>, int, std::span<std::uint8_t>);
  void (*match_masks_pairwise)(std::span<const Packed>, std::span<const Packed>, int,
                               std::span<std::uint8_t>);
  void (*exceedance_counts)(std::span<const Packed>, int, std::span<std::uint8_t>);
};

constexpr KernelTable kScalar{Backend::scalar, scalar::match_masks, scalar::match_masks_pairwise,
                              scalar::exceedance_counts};
#if defined(PERMWORDLE_HAVE_AVX2)
constexpr KernelTable kAvx2{Backend::avx2, avx2::match_masks, avx2::match_masks_pairwise,
                            avx2::exceedance_counts};
#endif
#if defined(PERMWORDLE_HAVE_NEON)
constexpr KernelTable kNeon{Backend::neon, neon::match_masks, neon::match_masks_pairwise,
                            neon::exceedance_counts};
#endif

const KernelTable* table_for(Backend b) {
  switch (b) {
    case Backend::scalar:
      return &kScalar;
    case Backend::avx2:
#if defined(PERMWORDLE_HAVE_AVX2)
      if (__builtin_cpu_supports("avx2")) return &kAvx2;
#endif
      return nullptr;
    case Backend::neon:
#if defined(PERMWORDLE_HAVE_NEON)
      return &kNeon;
#else
      return nullptr;
#endif
  }
  return nullptr;
}

const KernelTable* initial_table() {
  if (const char* forced = std::getenv("PERMWORDLE_SIMD")) {
    const std::string name(forced);
    for (Backend b : {Backend::scalar, Backend::avx2, Backend::neon}) {
      if (name == backend_name(b)) {
        if (const KernelTable* t = table_for(b)) return t;
      }
    }
  }
  for (Backend b : {Backend::avx2, Backend::neon}) {
    if (const KernelTable* t = table_for(b)) return t;
  }
  return &kScalar;
}

std::atomic<const KernelTable*>& active() {
  static std::atomic<const KernelTable*> table{initial_table()};
  return table;
}

void check_width(int n) {
  if (n < 0 || n > kMaxPackedSize) {
    throw std::invalid_argument("packed kernels support n <= " + std::to_string(kMaxPackedSize));
  }
}

}  // namespace

const char* backend_name(Backend b) {
  switch (b) {
    case Backend::scalar:
      return "scalar";
    case Backend::avx2:
      return "avx2";
    case Backend::neon:
      return "neon";
  }
  return "unknown";
}

bool backend_available(Backend b) { return table_for(b) != nullptr; }

Backend active_backend() { return active().load()->backend; }

void set_active_backend(Backend b) {
  const KernelTable* t = table_for(b);
  if (!t) throw std::invalid_argument(std::string("SIMD backend ") + backend_name(b) + " unavailable");
  active().store(t);
}

Packed pack(const Permutation& p) {
  check_width(p.size());
  Packed word = 0;
  for (int i = 0; i < p.size(); ++i) word |= static_cast<Packed>(p(i + 1)) << (8 * i);
  return word;
}

Packed pack(const SuitedPermutation& t) {
  check_width(t.size());
  if (t.suit_count() > 15) throw std::invalid_argument("packed kernels support s <= 15");
  Packed word = 0;
  for (int i = 0; i < t.size(); ++i) {
    const Card& c = t(i + 1);
    word |= static_cast<Packed>(c.suit * 16 + c.value) << (8 * i);
  }
  return word;
}

Permutation unpack_plain(Packed word, int n) {
  std::vector<int> e(n);
  for (int i = 0; i < n; ++i) e[i] = static_cast<int>(word >> (8 * i) & 0xff);
  return Permutation(std::move(e));
}

SuitedPermutation unpack_suited(Packed word, int n, int suit_count) {
  std::vector<Card> cards(n);
  for (int i = 0; i < n; ++i) {
    const int byte = static_cast<int>(word >> (8 * i) & 0xff);
    cards[i] = {byte / 16, byte % 16};
  }
  return SuitedPermutation(std::move(cards), suit_count);
}

void match_masks(Packed guess, std::span<const Packed> secrets, int n, std::span<std::uint8_t> out) {
  check_width(n);
  active().load()->match_masks(guess, secrets, n, out);
}

void match_masks_pairwise(std::span<const Packed> guesses, std::span<const Packed> secrets, int n,
                          std::span<std::uint8_t> out) {
  check_width(n);
  if (guesses.size() != secrets.size()) throw std::invalid_argument("pairwise kernel: size mismatch");
  active().load()->match_masks_pairwise(guesses, secrets, n, out);
}

void exceedance_counts(std::span<const Packed> perms, int n, std::span<std::uint8_t> out) {
  check_width(n);
  active().load()->exceedance_counts(perms, n, out);
}

}  // namespace permwordle::kernels
