// json_io.hpp -- wire encodings shared by the CLI and the HTTP service.
//
//   Permutation        [7,2,4]
//   SuitedPermutation  {"s": 2, "cards": [[0,3],[1,1],[0,2]]}
//   FeedbackSet        [2,5,9]   (sorted)
//   big integers       decimal strings

#pragma once

#include <string>

#include "json.hpp"
#include "permwordle/counting.hpp"
#include "permwordle/permutation.hpp"
#include "permwordle/search.hpp"
#include "permwordle/strategy.hpp"

namespace permwordle {

using Json = nlohmann::ordered_json;

Json to_json(const Permutation& p);
Json to_json(const SuitedPermutation& t);
Json to_json(const FeedbackSet& fb);

/// Plain arrangements (s = 1) encode as a Permutation, others as a
/// SuitedPermutation.
Json arrangement_json(const SuitedPermutation& t);

/// Throw std::invalid_argument on malformed input.
Permutation permutation_from_json(const Json& j);
SuitedPermutation suited_from_json(const Json& j);
FeedbackSet feedback_from_json(const Json& j, int n);

Json transcript_json(const GameTranscript<Permutation>& t);
Json transcript_json(const GameTranscript<SuitedPermutation>& t);

Json distribution_json(const RoundDistribution& d);
/// Header "rounds,count,cumulative".
std::string distribution_csv(const RoundDistribution& d);

/// {kind, s, rows: [{n, offset, values: [decimal strings]}]} for rows n_min..n_max.
Json table_json(const CountTable& table, int n_min, int n_max);
/// Header "n,k,value"; one line per entry of the row supports.
std::string table_csv(const CountTable& table, int n_min, int n_max);

Json dominance_json(const DominanceReport& r);
Json expected_json(const ExpectedReport& r);

}  // namespace permwordle
