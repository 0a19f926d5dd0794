#pragma once

#include <cstdint>
#include <algorithm>
#include <cmath>
#include <functional>
#include <istream>
#include <string>
#include <vector>

#include "rdoc/corpus/suffix_oracle.hpp"
#include "rdoc/doccount/count_index.hpp"
#include "rdoc/pdl/pdl.hpp"

namespace rdoc {

enum class QueryMode { And, Or };

struct Query {
  std::vector<std::string> terms;
  QueryMode mode = QueryMode::Or;
  std::uint64_t k = 10;
};

/// w(D, Q) = sum over terms of tf_weight(tf) * df_weight(df, d).
struct ScoreModel {
  std::function<double(std::uint64_t tf)> tf_weight = [](std::uint64_t tf) { return static_cast<double>(tf); };
  std::function<double(std::uint64_t df, std::uint64_t docs)> df_weight = [](std::uint64_t df, std::uint64_t docs) {
    return std::log(static_cast<double>(docs) / static_cast<double>(std::max<std::uint64_t>(df, 1)));
  };
};

struct ScoredDoc {
  std::uint64_t doc = 0;
  double score = 0.0;
  friend bool operator==(const ScoredDoc&, const ScoredDoc&) = default;
};

/// Score bounds of every candidate after one round, for checking bound soundness.
struct BoundSnapshot {
  std::uint64_t extracted = 0;  // documents pulled per term so far
  std::vector<std::uint64_t> docs;
  std::vector<double> lower;
  std::vector<double> upper;
  double unseen_upper = 0.0;  // bound for any document not yet seen in any list
};

struct RankedIndexes {
  const SuffixOracle* oracle = nullptr;
  const PdlIndex* pdl = nullptr;  // full-answer variant with frequencies
  const CountIndex* counts = nullptr;
};

/// Top-k documents by score, ties by smaller id. AND scores are exact; OR scores may be
/// lower bounds when the loop stops before all lists are read.
std::vector<ScoredDoc> ranked_query(const RankedIndexes& indexes, const Query& query, const ScoreModel& model = {},
                                    const std::function<void(const BoundSnapshot&)>& observer = {});

struct BatchResult {
  std::vector<std::vector<ScoredDoc>> results;
  std::vector<double> micros;  // per query
  double wall_seconds = 0.0;
  double queries_per_second() const { return wall_seconds > 0 ? static_cast<double>(results.size()) / wall_seconds : 0.0; }
};

/// Runs queries on `workers` threads; results keep the input order.
BatchResult batch_query(const RankedIndexes& indexes, const std::vector<Query>& queries, unsigned workers,
                        const ScoreModel& model = {});

/// One query per line, whitespace-separated terms.
std::vector<Query> parse_queries(std::istream& in, QueryMode mode, std::uint64_t k);

}  // namespace rdoc
