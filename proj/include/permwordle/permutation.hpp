// permutation.hpp -- permutations, suited permutations and the feedback rule.
//
// All positions and values are 1-based at the interface. A Permutation of
// length n holds each of 1..n exactly once in one-line notation; position i
// (1-based) holds entries()[i-1].

#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace permwordle {

class Permutation {
 public:
  Permutation() = default;

  /// Throws std::invalid_argument unless entries is a bijection on 1..n.
  explicit Permutation(std::vector<int> entries);
  Permutation(std::initializer_list<int> entries);

  static Permutation identity(int n);

  int size() const { return static_cast<int>(entries_.size()); }
  int operator()(int position) const { return entries_[position - 1]; }
  std::span<const int> entries() const { return entries_; }

  Permutation inverse() const;
  bool is_identity() const;

  std::string to_string() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

 private:
  struct Unchecked {};
  Permutation(std::vector<int> entries, Unchecked) : entries_(std::move(entries)) {}
  friend Permutation compose(const Permutation&, const Permutation&);

  std::vector<int> entries_;
};

/// (outer ∘ inner)(i) = outer(inner(i)).
Permutation compose(const Permutation& outer, const Permutation& inner);

/// A card: suit in 0..s-1, value in 1..n.
struct Card {
  int suit = 0;
  int value = 0;

  friend bool operator==(const Card&, const Card&) = default;
  friend auto operator<=>(const Card&, const Card&) = default;
};

class SuitedPermutation {
 public:
  SuitedPermutation() = default;

  /// Throws std::invalid_argument unless values form a bijection on 1..n and
  /// every suit lies in 0..suit_count-1.
  SuitedPermutation(std::vector<Card> cards, int suit_count);

  /// All suits zero, values the identity.
  static SuitedPermutation identity(int n, int suit_count);
  static SuitedPermutation from_plain(const Permutation& p, int suit_count = 1);

  int size() const { return static_cast<int>(cards_.size()); }
  int suit_count() const { return suit_count_; }
  const Card& operator()(int position) const { return cards_[position - 1]; }
  std::span<const Card> cards() const { return cards_; }

  /// The underlying value permutation, ignoring suits.
  Permutation values() const;

  std::string to_string() const;

  friend bool operator==(const SuitedPermutation&, const SuitedPermutation&) = default;
  friend auto operator<=>(const SuitedPermutation&, const SuitedPermutation&) = default;

 private:
  std::vector<Card> cards_;
  int suit_count_ = 1;
};

/// Positions (1..n) where a guess matched the secret. Stored sorted ascending.
class FeedbackSet {
 public:
  FeedbackSet() = default;

  /// Throws std::invalid_argument if a position lies outside 1..n or repeats.
  FeedbackSet(int n, std::vector<int> positions);

  static FeedbackSet full(int n);
  static FeedbackSet from_mask(int n, std::uint64_t mask);

  int universe() const { return n_; }
  int size() const { return static_cast<int>(positions_.size()); }
  bool empty() const { return positions_.empty(); }
  bool is_full() const { return size() == n_; }
  bool contains(int position) const;
  std::span<const int> positions() const { return positions_; }

  /// Bit i-1 set for each position i; requires n <= 64.
  std::uint64_t mask() const;

  std::string to_string() const;

  friend bool operator==(const FeedbackSet&, const FeedbackSet&) = default;

 private:
  int n_ = 0;
  std::vector<int> positions_;
};

/// Index of a pair (suit, value) in S_{sn}, ordered with suit as the major key.
struct PairIndex {
  int suit = 0;
  int value = 0;

  /// 1-based ordinal suit*n + value.
  int ordinal(int n) const { return suit * n + value; }
  static PairIndex from_ordinal(int ordinal, int n) {
    return {(ordinal - 1) / n, (ordinal - 1) % n + 1};
  }

  friend bool operator==(const PairIndex&, const PairIndex&) = default;
  friend auto operator<=>(const PairIndex&, const PairIndex&) = default;
};

FeedbackSet feedback(const Permutation& guess, const Permutation& secret);

/// A position counts only when both suit and value agree.
FeedbackSet suited_feedback(const SuitedPermutation& guess, const SuitedPermutation& secret);

/// {i | p(i) > i}.
FeedbackSet exceedance_set(const Permutation& p);
int exceedances(const Permutation& p);

/// The lift to S_{sn}: pair (c, j) maps to (c_j ⊕ c, i_j), pairs numbered by
/// PairIndex::ordinal.
Permutation phi(const SuitedPermutation& t);

/// Number of exceedances of phi(t) among the pairs (c, j), c = 0..s-1. These
/// are always the pairs with c below the returned count.
int column_exceedances(const SuitedPermutation& t, int j);

/// Every permutation of 1..n in lexicographic order.
std::vector<Permutation> all_permutations(int n);

/// Every suited permutation of size n over s suits, ordered lexicographically
/// by card sequence.
std::vector<SuitedPermutation> all_suited_permutations(int n, int suit_count);

/// s^n * n!, the number of suited permutations. Throws std::overflow_error
/// past 64 bits.
std::uint64_t arrangement_count(int n, int suit_count);

/// Lexicographic rank of a suited permutation among all_suited_permutations,
/// and its inverse. With s = 1 this is the usual lexicographic rank.
std::uint64_t rank(const SuitedPermutation& t);
std::uint64_t rank(const Permutation& p);
SuitedPermutation unrank_suited(std::uint64_t index, int n, int suit_count);
Permutation unrank(std::uint64_t index, int n);

/// Parses "7,2,4" (plain) or "0:3,1:1,0:2" (suited). Throws
/// std::invalid_argument on malformed input.
Permutation parse_permutation(const std::string& text);
SuitedPermutation parse_suited_permutation(const std::string& text, int suit_count);
FeedbackSet parse_feedback(const std::string& text, int n);

}  // namespace permwordle
