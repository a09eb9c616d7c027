#include "permwordle/json_io.hpp"

#include <sstream>
#include <stdexcept>

namespace permwordle {

namespace {

int as_int(const Json& j, const char* what) {
  if (!j.is_number_integer()) throw std::invalid_argument(std::string(what) + " must be an integer");
  return j.get<int>();
}

template <class Guess>
Json transcript_impl(const GameTranscript<Guess>& t) {
  Json steps = Json::array();
  for (const auto& step : t.steps) steps.push_back({{"guess", to_json(step.guess)}, {"feedback", to_json(step.feedback)}});
  return {{"secret", to_json(t.secret)}, {"rounds", t.rounds()}, {"steps", std::move(steps)}};
}

}  // namespace

Json to_json(const Permutation& p) { return Json(std::vector<int>(p.entries().begin(), p.entries().end())); }

Json to_json(const SuitedPermutation& t) {
  Json cards = Json::array();
  for (const Card& c : t.cards()) cards.push_back({c.suit, c.value});
  return {{"s", t.suit_count()}, {"cards", std::move(cards)}};
}

Json to_json(const FeedbackSet& fb) {
  return Json(std::vector<int>(fb.positions().begin(), fb.positions().end()));
}

Json arrangement_json(const SuitedPermutation& t) {
  return t.suit_count() == 1 ? to_json(t.values()) : to_json(t);
}

Permutation permutation_from_json(const Json& j) {
  if (!j.is_array()) throw std::invalid_argument("permutation must be an array of integers");
  std::vector<int> values;
  for (const auto& v : j) values.push_back(as_int(v, "permutation entry"));
  return Permutation(std::move(values));
}

SuitedPermutation suited_from_json(const Json& j) {
  if (j.is_array()) return SuitedPermutation::from_plain(permutation_from_json(j));
  if (!j.is_object() || !j.contains("s") || !j.contains("cards") || !j["cards"].is_array()) {
    throw std::invalid_argument("suited permutation must be {\"s\": int, \"cards\": [[suit, value], ...]}");
  }
  std::vector<Card> cards;
  for (const auto& c : j["cards"]) {
    if (!c.is_array() || c.size() != 2) throw std::invalid_argument("card must be [suit, value]");
    cards.push_back({as_int(c[0], "suit"), as_int(c[1], "value")});
  }
  return SuitedPermutation(std::move(cards), as_int(j["s"], "s"));
}

FeedbackSet feedback_from_json(const Json& j, int n) {
  if (!j.is_array()) throw std::invalid_argument("positions must be an array of integers");
  std::vector<int> positions;
  for (const auto& v : j) positions.push_back(as_int(v, "position"));
  return FeedbackSet(n, std::move(positions));
}

Json transcript_json(const GameTranscript<Permutation>& t) { return transcript_impl(t); }
Json transcript_json(const GameTranscript<SuitedPermutation>& t) { return transcript_impl(t); }

Json distribution_json(const RoundDistribution& d) {
  Json rows = Json::array();
  std::uint64_t cumulative = 0;
  for (std::size_t r = 1; r < d.counts.size(); ++r) {
    cumulative += d.counts[r];
    rows.push_back({{"rounds", r}, {"count", d.counts[r]}, {"cumulative", cumulative}});
  }
  return {{"n", d.n}, {"s", d.suit_count}, {"total", d.total()}, {"total_rounds", d.total_rounds()},
          {"rows", std::move(rows)}};
}

std::string distribution_csv(const RoundDistribution& d) {
  std::ostringstream out;
  out << "rounds,count,cumulative\n";
  std::uint64_t cumulative = 0;
  for (std::size_t r = 1; r < d.counts.size(); ++r) {
    cumulative += d.counts[r];
    out << r << ',' << d.counts[r] << ',' << cumulative << '\n';
  }
  return out.str();
}

Json table_json(const CountTable& table, int n_min, int n_max) {
  Json rows = Json::array();
  for (int n = n_min; n <= n_max; ++n) {
    const TableRow& row = table.row(n);
    Json values = Json::array();
    for (const auto& v : row.values) values.push_back(v.str());
    rows.push_back({{"n", n}, {"offset", row.offset}, {"values", std::move(values)}});
  }
  return {{"kind", table_kind_name(table.kind())}, {"s", table.suit_count()}, {"rows", std::move(rows)}};
}

std::string table_csv(const CountTable& table, int n_min, int n_max) {
  std::ostringstream out;
  out << "n,k,value\n";
  for (int n = n_min; n <= n_max; ++n) {
    const TableRow& row = table.row(n);
    for (int k = row.first(); k <= row.last(); ++k) out << n << ',' << k << ',' << row.at(k).str() << '\n';
  }
  return out.str();
}

Json dominance_json(const DominanceReport& r) {
  return {{"n", r.n},
          {"s", r.suit_count},
          {"r_max", r.r_max},
          {"cycle_cdf", r.cycle_cdf},
          {"optimal_cdf", r.optimal_cdf},
          {"gaps", r.gaps},
          {"verdict", r.verdict()},
          {"elapsed_ms", r.elapsed_ms},
          {"states_visited", r.states_visited}};
}

Json expected_json(const ExpectedReport& r) {
  return {{"n", r.n},
          {"s", r.suit_count},
          {"secrets", r.secrets},
          {"optimal_total", r.optimal_total},
          {"cycle_total", r.cycle_total},
          {"cycle_optimal", r.cycle_optimal()},
          {"elapsed_ms", r.elapsed_ms},
          {"states_visited", r.states_visited}};
}

}  // namespace permwordle
