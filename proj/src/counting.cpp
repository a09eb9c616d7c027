#include "permwordle/counting.hpp"

#include <map>
#include <mutex>
#include <stdexcept>
#include <utility>

namespace permwordle {

namespace {

TableRow make_row(int n, int first, int last) {
  TableRow row;
  row.n = n;
  row.offset = first;
  row.values.assign(last >= first ? last - first + 1 : 0, BigInt(0));
  return row;
}

void set(TableRow& row, int k, BigInt v) { row.values[k - row.offset] = std::move(v); }

std::vector<TableRow> build_A(int max_n) {
  std::vector<TableRow> rows;
  rows.push_back(make_row(0, 0, 0));
  set(rows[0], 0, 1);
  for (int n = 1; n <= max_n; ++n) {
    const TableRow& prev = rows.back();
    TableRow row = make_row(n, 0, n - 1);
    for (int k = 0; k < n; ++k) set(row, k, (k + 1) * prev.at(k) + (n - k) * prev.at(k - 1));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<TableRow> build_B(int max_n) {
  std::vector<TableRow> rows;
  rows.push_back(make_row(0, 1, 0));
  if (max_n >= 1) {
    rows.push_back(make_row(1, 1, 1));
    set(rows[1], 1, 1);
  }
  for (int n = 2; n <= max_n; ++n) {
    const TableRow& prev = rows.back();
    TableRow row = make_row(n, 1, n);
    for (int k = 1; k <= n; ++k) {
      set(row, k, (2 * k - 1) * prev.at(k) + (2 * n - 2 * k + 1) * prev.at(k - 1));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<TableRow> build_D(int s, int max_n) {
  std::vector<TableRow> rows;
  rows.push_back(make_row(0, 0, 0));
  set(rows[0], 0, 1);
  for (int n = 1; n <= max_n; ++n) {
    const TableRow& prev = rows.back();
    TableRow row = make_row(n, 0, s * n - 1);
    for (int r = 0; r < s * n; ++r) {
      BigInt v = (r + 1) * prev.at(r) + (s * n - r) * prev.at(r - s);
      for (int t = 1; t < s; ++t) v += prev.at(r - t);
      set(row, r, std::move(v));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<TableRow> build_F(int s, int max_n) {
  std::vector<TableRow> rows;
  rows.push_back(make_row(0, -(s - 1), 0));
  for (int m = -(s - 1); m <= 0; ++m) set(rows[0], m, 1);
  for (int n = 1; n <= max_n; ++n) {
    const TableRow& prev = rows.back();
    TableRow row = make_row(n, -(s - 1), s * n - 1);
    for (int m = row.first(); m <= row.last(); ++m) {
      set(row, m, (m + s) * prev.at(m) + (s * n - m) * prev.at(m - s));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<TableRow> build_C(int s, int max_n) {
  std::vector<TableRow> rows;
  rows.push_back(make_row(0, 0, 0));
  set(rows[0], 0, 1);
  for (int n = 1; n <= max_n; ++n) {
    const TableRow& prev = rows.back();
    TableRow row = make_row(n, 0, n * (s - 1));
    for (int j = 0; j <= n * (s - 1); ++j) {
      BigInt v = 0;
      for (int t = 0; t < s; ++t) v += prev.at(j - t);
      set(row, j, std::move(v));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

struct Cache {
  std::mutex mutex;
  std::map<std::pair<TableKind, int>, std::shared_ptr<const CountTable>> tables;
};

Cache& cache() {
  static Cache c;
  return c;
}

}  // namespace

const char* table_kind_name(TableKind kind) {
  switch (kind) {
    case TableKind::A:
      return "A";
    case TableKind::B:
      return "B";
    case TableKind::D:
      return "D";
    case TableKind::F:
      return "F";
    case TableKind::C:
      return "C";
  }
  return "?";
}

TableKind parse_table_kind(const std::string& name) {
  if (name.empty()) throw std::invalid_argument("empty table kind");
  switch (name[0]) {
    case 'A':
      if (name == "A") return TableKind::A;
      break;
    case 'B':
      if (name == "B") return TableKind::B;
      break;
    case 'D':
      if (name == "D" || name == "D_s") return TableKind::D;
      break;
    case 'F':
      if (name == "F" || name == "F_s") return TableKind::F;
      break;
    case 'C':
      if (name == "C" || name == "C_s") return TableKind::C;
      break;
    default:
      break;
  }
  throw std::invalid_argument("unknown table kind '" + name + "' (expected A, B, D, F or C)");
}

BigInt TableRow::at(int k) const {
  if (k < offset || k > last()) return 0;
  return values[k - offset];
}

BigInt CountTable::value(int n, int k) const {
  if (n < 0 || n > max_n()) {
    if (n < 0) return 0;
    throw std::out_of_range("table row " + std::to_string(n) + " not built");
  }
  return rows_[n].at(k);
}

std::shared_ptr<const CountTable> count_table(TableKind kind, int suit_count, int max_n) {
  if (max_n < 0) throw std::invalid_argument("max_n must be nonnegative");
  if (suit_count < 1) throw std::invalid_argument("suit count must be at least 1");
  if (kind == TableKind::A || kind == TableKind::B) suit_count = 1;

  Cache& c = cache();
  std::lock_guard lock(c.mutex);
  auto& slot = c.tables[{kind, suit_count}];
  if (slot && slot->max_n() >= max_n) return slot;

  std::vector<TableRow> rows;
  switch (kind) {
    case TableKind::A:
      rows = build_A(max_n);
      break;
    case TableKind::B:
      rows = build_B(max_n);
      break;
    case TableKind::D:
      rows = build_D(suit_count, max_n);
      break;
    case TableKind::F:
      rows = build_F(suit_count, max_n);
      break;
    case TableKind::C:
      rows = build_C(suit_count, max_n);
      break;
  }
  slot = std::make_shared<const CountTable>(kind, suit_count, std::move(rows));
  return slot;
}

BigInt eulerian_A(int n, int k) {
  if (n < 0) return 0;
  return count_table(TableKind::A, 1, n)->value(n, k);
}

BigInt eulerian_B(int n, int k) {
  if (n < 1) return 0;
  return count_table(TableKind::B, 1, n)->value(n, k);
}

BigInt suited_count_D(int s, int n, int r) {
  if (n < 0) return 0;
  return count_table(TableKind::D, s, n)->value(n, r);
}

BigInt window_sum_F(int s, int n, int m) {
  if (n < 0) return 0;
  const auto d = count_table(TableKind::D, s, n);
  BigInt sum = 0;
  for (int l = 0; l < s; ++l) sum += d->value(n, m + l);
  return sum;
}

BigInt window_sum_F_recurrence(int s, int n, int m) {
  if (n < 0) return 0;
  return count_table(TableKind::F, s, n)->value(n, m);
}

BigInt pebble_count_C(int s, int n, int j) {
  if (n < 0) return 0;
  return count_table(TableKind::C, s, n)->value(n, j);
}

BigInt factorial(int n) {
  BigInt f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

BigInt power(int base, int exponent) {
  BigInt p = 1;
  for (int i = 0; i < exponent; ++i) p *= base;
  return p;
}

std::vector<IndexPair> window_sum_divergences(int s, int max_n) {
  std::vector<IndexPair> out;
  for (int n = 0; n <= max_n; ++n) {
    for (int m = -2 * s; m <= s * n + s; ++m) {
      if (window_sum_F(s, n, m) != window_sum_F_recurrence(s, n, m)) out.push_back({n, m});
    }
  }
  return out;
}

std::vector<ConvolutionTerm> convolution_check(int s, int n) {
  std::vector<ConvolutionTerm> out;
  const int top = std::max(s * n - 1, 0);
  for (int k = 0; k <= top; ++k) {
    BigInt rhs = 0;
    for (int j = 0; j <= k; ++j) rhs += pebble_count_C(s, n, j) * eulerian_A(n, k - j);
    out.push_back({k, suited_count_D(s, n, k), std::move(rhs)});
  }
  return out;
}

}  // namespace permwordle
