// counting.hpp -- exact recurrence tables for the counts behind Cycle.
//
//   A(n,k)     permutations of n with k exceedances (Eulerian numbers)
//   B(n,k)     type-B Eulerian numbers, base row n = 1
//   D_s(n,r)   suited secrets Cycle solves in exactly r+1 rounds
//   F_s(n,m)   D_s(n,m) + ... + D_s(n,m+s-1)
//   C_s(n,j)   placements of j pebbles into n pots of capacity s-1
//
// Entries outside a row's support are zero. Everything is exact; tables are
// built bottom-up, cached per (kind, s), and immutable once published.

#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <memory>
#include <string>
#include <vector>

namespace permwordle {

using BigInt = boost::multiprecision::cpp_int;

enum class TableKind { A, B, D, F, C };

const char* table_kind_name(TableKind kind);
/// Accepts "A", "B", "D", "F", "C" (also "D_s" style suffixes). Throws
/// std::invalid_argument otherwise.
TableKind parse_table_kind(const std::string& name);

struct TableRow {
  int n = 0;
  /// Index of values[0].
  int offset = 0;
  std::vector<BigInt> values;

  BigInt at(int k) const;
  int first() const { return offset; }
  int last() const { return offset + static_cast<int>(values.size()) - 1; }
};

class CountTable {
 public:
  CountTable(TableKind kind, int suit_count, std::vector<TableRow> rows)
      : kind_(kind), suit_count_(suit_count), rows_(std::move(rows)) {}

  TableKind kind() const { return kind_; }
  int suit_count() const { return suit_count_; }
  int max_n() const { return static_cast<int>(rows_.size()) - 1; }
  const TableRow& row(int n) const { return rows_.at(n); }
  const std::vector<TableRow>& rows() const { return rows_; }
  BigInt value(int n, int k) const;

 private:
  TableKind kind_;
  int suit_count_;
  std::vector<TableRow> rows_;
};

/// Rows 0..max_n of the requested table (suit_count ignored for A and B).
/// kind F is built from its own recurrence, not from D.
std::shared_ptr<const CountTable> count_table(TableKind kind, int suit_count, int max_n);

BigInt eulerian_A(int n, int k);
BigInt eulerian_B(int n, int k);
BigInt suited_count_D(int s, int n, int r);
/// Definitional route: the window sum of D_s.
BigInt window_sum_F(int s, int n, int m);
/// Recurrence route with the window initial row at n = 0.
BigInt window_sum_F_recurrence(int s, int n, int m);
BigInt pebble_count_C(int s, int n, int j);

BigInt factorial(int n);
BigInt power(int base, int exponent);

struct IndexPair {
  int n;
  int k;
  friend bool operator==(const IndexPair&, const IndexPair&) = default;
};

/// Indices (n, m), n <= max_n, where the two F routes disagree. The probed
/// range extends one window past each end of the support.
std::vector<IndexPair> window_sum_divergences(int s, int max_n);

struct ConvolutionTerm {
  int k;
  BigInt lhs;  ///< D_s(n,k)
  BigInt rhs;  ///< sum_j C_s(n,j) A(n,k-j)
  bool ok() const { return lhs == rhs; }
};

/// Checks D_s(n,k) = sum_j C_s(n,j) A(n,k-j) for every k in 0..sn-1.
std::vector<ConvolutionTerm> convolution_check(int s, int n);

}  // namespace permwordle
