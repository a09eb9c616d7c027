#include "permwordle/permutation.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>
#include <stdexcept>

namespace permwordle {

namespace {

void check_bijection(std::span<const int> values) {
  const auto n = values.size();
  std::vector<bool> seen(n + 1, false);
  for (int v : values) {
    if (v < 1 || static_cast<std::size_t>(v) > n) {
      throw std::invalid_argument("permutation value " + std::to_string(v) + " outside 1.." +
                                  std::to_string(n));
    }
    if (seen[v]) {
      throw std::invalid_argument("permutation value " + std::to_string(v) + " repeated");
    }
    seen[v] = true;
  }
}

int parse_int(std::string_view token) {
  while (!token.empty() && token.front() == ' ') token.remove_prefix(1);
  while (!token.empty() && token.back() == ' ') token.remove_suffix(1);
  int value = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (token.empty() || ec != std::errc() || ptr != token.data() + token.size()) {
    throw std::invalid_argument("malformed integer '" + std::string(token) + "'");
  }
  return value;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    auto pos = text.find(sep, start);
    out.push_back(text.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

}  // namespace

Permutation::Permutation(std::vector<int> entries) : entries_(std::move(entries)) {
  check_bijection(entries_);
}

Permutation::Permutation(std::initializer_list<int> entries)
    : Permutation(std::vector<int>(entries)) {}

Permutation Permutation::identity(int n) {
  std::vector<int> e(n);
  for (int i = 0; i < n; ++i) e[i] = i + 1;
  return Permutation(std::move(e), Unchecked{});
}

Permutation Permutation::inverse() const {
  std::vector<int> inv(entries_.size());
  for (std::size_t i = 0; i < entries_.size(); ++i) inv[entries_[i] - 1] = static_cast<int>(i) + 1;
  return Permutation(std::move(inv), Unchecked{});
}

bool Permutation::is_identity() const {
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (entries_[i] != static_cast<int>(i) + 1) return false;
  }
  return true;
}

std::string Permutation::to_string() const {
  std::string out = "(";
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(entries_[i]);
  }
  return out + ")";
}

Permutation compose(const Permutation& outer, const Permutation& inner) {
  if (outer.size() != inner.size()) throw std::invalid_argument("compose: length mismatch");
  std::vector<int> e(inner.entries_.size());
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = outer.entries_[inner.entries_[i] - 1];
  return Permutation(std::move(e), Permutation::Unchecked{});
}

SuitedPermutation::SuitedPermutation(std::vector<Card> cards, int suit_count)
    : cards_(std::move(cards)), suit_count_(suit_count) {
  if (suit_count_ < 1) throw std::invalid_argument("suit count must be at least 1");
  std::vector<int> values;
  values.reserve(cards_.size());
  for (const Card& c : cards_) {
    if (c.suit < 0 || c.suit >= suit_count_) {
      throw std::invalid_argument("suit " + std::to_string(c.suit) + " outside 0.." +
                                  std::to_string(suit_count_ - 1));
    }
    values.push_back(c.value);
  }
  check_bijection(values);
}

SuitedPermutation SuitedPermutation::identity(int n, int suit_count) {
  std::vector<Card> cards(n);
  for (int i = 0; i < n; ++i) cards[i] = {0, i + 1};
  return SuitedPermutation(std::move(cards), suit_count);
}

SuitedPermutation SuitedPermutation::from_plain(const Permutation& p, int suit_count) {
  std::vector<Card> cards;
  cards.reserve(p.size());
  for (int v : p.entries()) cards.push_back({0, v});
  return SuitedPermutation(std::move(cards), suit_count);
}

Permutation SuitedPermutation::values() const {
  std::vector<int> v;
  v.reserve(cards_.size());
  for (const Card& c : cards_) v.push_back(c.value);
  return Permutation(std::move(v));
}

std::string SuitedPermutation::to_string() const {
  std::string out = "(";
  for (std::size_t i = 0; i < cards_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(cards_[i].suit) + ":" + std::to_string(cards_[i].value);
  }
  return out + ")";
}

FeedbackSet::FeedbackSet(int n, std::vector<int> positions) : n_(n), positions_(std::move(positions)) {
  std::sort(positions_.begin(), positions_.end());
  for (std::size_t i = 0; i < positions_.size(); ++i) {
    if (positions_[i] < 1 || positions_[i] > n_) {
      throw std::invalid_argument("feedback position " + std::to_string(positions_[i]) +
                                  " outside 1.." + std::to_string(n_));
    }
    if (i && positions_[i] == positions_[i - 1]) {
      throw std::invalid_argument("feedback position " + std::to_string(positions_[i]) +
                                  " repeated");
    }
  }
}

FeedbackSet FeedbackSet::full(int n) {
  std::vector<int> p(n);
  for (int i = 0; i < n; ++i) p[i] = i + 1;
  return FeedbackSet(n, std::move(p));
}

FeedbackSet FeedbackSet::from_mask(int n, std::uint64_t mask) {
  std::vector<int> p;
  for (int i = 0; i < n; ++i) {
    if (mask >> i & 1u) p.push_back(i + 1);
  }
  return FeedbackSet(n, std::move(p));
}

bool FeedbackSet::contains(int position) const {
  return std::binary_search(positions_.begin(), positions_.end(), position);
}

std::uint64_t FeedbackSet::mask() const {
  if (n_ > 64) throw std::invalid_argument("feedback mask requires n <= 64");
  std::uint64_t m = 0;
  for (int p : positions_) m |= std::uint64_t{1} << (p - 1);
  return m;
}

std::string FeedbackSet::to_string() const {
  std::string out = "{";
  for (std::size_t i = 0; i < positions_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(positions_[i]);
  }
  return out + "}";
}

FeedbackSet feedback(const Permutation& guess, const Permutation& secret) {
  if (guess.size() != secret.size()) {
    throw std::invalid_argument("feedback: guess has length " + std::to_string(guess.size()) +
                                ", secret has length " + std::to_string(secret.size()));
  }
  std::vector<int> hits;
  for (int i = 1; i <= guess.size(); ++i) {
    if (guess(i) == secret(i)) hits.push_back(i);
  }
  return FeedbackSet(guess.size(), std::move(hits));
}

FeedbackSet suited_feedback(const SuitedPermutation& guess, const SuitedPermutation& secret) {
  if (guess.size() != secret.size() || guess.suit_count() != secret.suit_count()) {
    throw std::invalid_argument("suited_feedback: shape mismatch");
  }
  std::vector<int> hits;
  for (int i = 1; i <= guess.size(); ++i) {
    if (guess(i) == secret(i)) hits.push_back(i);
  }
  return FeedbackSet(guess.size(), std::move(hits));
}

FeedbackSet exceedance_set(const Permutation& p) {
  std::vector<int> exc;
  for (int i = 1; i <= p.size(); ++i) {
    if (p(i) > i) exc.push_back(i);
  }
  return FeedbackSet(p.size(), std::move(exc));
}

int exceedances(const Permutation& p) {
  int count = 0;
  for (int i = 1; i <= p.size(); ++i) count += p(i) > i;
  return count;
}

Permutation phi(const SuitedPermutation& t) {
  const int n = t.size();
  const int s = t.suit_count();
  std::vector<int> image(static_cast<std::size_t>(n) * s);
  for (int c = 0; c < s; ++c) {
    for (int j = 1; j <= n; ++j) {
      const Card& card = t(j);
      PairIndex from{c, j};
      PairIndex to{(card.suit + c) % s, card.value};
      image[from.ordinal(n) - 1] = to.ordinal(n);
    }
  }
  return Permutation(std::move(image));
}

int column_exceedances(const SuitedPermutation& t, int j) {
  if (j < 1 || j > t.size()) throw std::invalid_argument("column_exceedances: position out of range");
  const Card& card = t(j);
  if (card.suit == 0) return card.value > j ? t.suit_count() : 0;
  return t.suit_count() - card.suit;
}

std::vector<Permutation> all_permutations(int n) {
  std::vector<Permutation> out;
  std::vector<int> e(n);
  for (int i = 0; i < n; ++i) e[i] = i + 1;
  do {
    out.emplace_back(e);
  } while (std::next_permutation(e.begin(), e.end()));
  return out;
}

std::vector<SuitedPermutation> all_suited_permutations(int n, int suit_count) {
  std::vector<SuitedPermutation> out;
  std::vector<Card> cards(n);
  std::vector<bool> used(n + 1, false);
  auto place = [&](auto&& self, int pos) -> void {
    if (pos == n) {
      out.emplace_back(cards, suit_count);
      return;
    }
    for (int suit = 0; suit < suit_count; ++suit) {
      for (int v = 1; v <= n; ++v) {
        if (used[v]) continue;
        used[v] = true;
        cards[pos] = {suit, v};
        self(self, pos + 1);
        used[v] = false;
      }
    }
  };
  place(place, 0);
  return out;
}

std::uint64_t arrangement_count(int n, int suit_count) {
  std::uint64_t total = 1;
  for (int k = 1; k <= n; ++k) {
    std::uint64_t next = 0;
    if (__builtin_mul_overflow(total, static_cast<std::uint64_t>(k) * suit_count, &next)) {
      throw std::overflow_error("arrangement count exceeds 64 bits");
    }
    total = next;
  }
  return total;
}

// Position k (0-based) offers s*(n-k) cards: suit-major, then unused values in
// increasing order. The rank is the mixed-radix number of those choices.
std::uint64_t rank(const SuitedPermutation& t) {
  const int n = t.size();
  const int s = t.suit_count();
  std::vector<bool> used(n + 1, false);
  std::uint64_t index = 0;
  for (int k = 0; k < n; ++k) {
    const Card& c = t(k + 1);
    int smaller = 0;
    for (int v = 1; v < c.value; ++v) smaller += !used[v];
    used[c.value] = true;
    const int remaining = n - k;
    index = index * static_cast<std::uint64_t>(s * remaining) +
            static_cast<std::uint64_t>(c.suit * remaining + smaller);
  }
  return index;
}

std::uint64_t rank(const Permutation& p) { return rank(SuitedPermutation::from_plain(p)); }

SuitedPermutation unrank_suited(std::uint64_t index, int n, int suit_count) {
  if (index >= arrangement_count(n, suit_count)) throw std::invalid_argument("unrank: index out of range");
  std::vector<int> digits(n);
  for (int k = n - 1; k >= 0; --k) {
    const auto radix = static_cast<std::uint64_t>(suit_count * (n - k));
    digits[k] = static_cast<int>(index % radix);
    index /= radix;
  }
  std::vector<int> unused(n);
  for (int v = 0; v < n; ++v) unused[v] = v + 1;
  std::vector<Card> cards(n);
  for (int k = 0; k < n; ++k) {
    const int remaining = n - k;
    const int slot = digits[k] % remaining;
    cards[k] = {digits[k] / remaining, unused[slot]};
    unused.erase(unused.begin() + slot);
  }
  return SuitedPermutation(std::move(cards), suit_count);
}

Permutation unrank(std::uint64_t index, int n) { return unrank_suited(index, n, 1).values(); }

Permutation parse_permutation(const std::string& text) {
  std::vector<int> values;
  if (!text.empty()) {
    for (auto token : split(text, ',')) values.push_back(parse_int(token));
  }
  return Permutation(std::move(values));
}

SuitedPermutation parse_suited_permutation(const std::string& text, int suit_count) {
  std::vector<Card> cards;
  if (!text.empty()) {
    for (auto token : split(text, ',')) {
      auto parts = split(token, ':');
      if (parts.size() == 1) {
        cards.push_back({0, parse_int(parts[0])});
      } else if (parts.size() == 2) {
        cards.push_back({parse_int(parts[0]), parse_int(parts[1])});
      } else {
        throw std::invalid_argument("malformed card '" + std::string(token) + "'");
      }
    }
  }
  return SuitedPermutation(std::move(cards), suit_count);
}

FeedbackSet parse_feedback(const std::string& text, int n) {
  if (text.empty() || text == "none" || text == "-") return FeedbackSet(n, {});
  if (text == "all") return FeedbackSet::full(n);
  std::vector<int> positions;
  for (auto token : split(text, ',')) positions.push_back(parse_int(token));
  return FeedbackSet(n, std::move(positions));
}

}  // namespace permwordle
