#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "rdoc/multiterm/ranked.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace rdoc;

namespace {

struct Engine {
  fixture::Built built;
  PdlIndex pdl;
  CountIndex counts;
  RankedIndexes indexes() const { return {&built.oracle, &pdl, &counts}; }
};

Engine make_engine(const std::vector<std::string>& docs, std::uint64_t b) {
  Engine e{fixture::build(docs), {}, {}};
  e.pdl = build_pdl_topk(e.built.oracle, b);
  e.counts = CountIndex(build_h(e.built.oracle), CountKind::RunRR);
  return e;
}

/// Scores every document directly from the texts.
std::vector<ScoredDoc> score_all(const std::vector<std::string>& docs, const Query& q) {
  const std::uint64_t d = docs.size();
  std::vector<std::vector<std::uint64_t>> tf(q.terms.size(), std::vector<std::uint64_t>(d));
  std::vector<double> weight(q.terms.size());
  for (std::size_t i = 0; i < q.terms.size(); ++i) {
    std::uint64_t df = 0;
    for (std::uint64_t j = 0; j < d; ++j) {
      tf[i][j] = oracle::occurrences(docs[j], q.terms[i]);
      df += tf[i][j] > 0;
    }
    weight[i] = std::log(static_cast<double>(d) / static_cast<double>(std::max<std::uint64_t>(df, 1)));
  }
  std::vector<ScoredDoc> out;
  for (std::uint64_t j = 0; j < d; ++j) {
    bool any = false;
    bool all = true;
    double score = 0.0;
    for (std::size_t i = 0; i < q.terms.size(); ++i) {
      if (tf[i][j] == 0) {
        all = false;
        continue;
      }
      any = true;
      score += static_cast<double>(tf[i][j]) * weight[i];
    }
    if (q.mode == QueryMode::And ? all : any) out.push_back({j, score});
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.score != b.score ? a.score > b.score : a.doc < b.doc; });
  return out;
}

std::vector<ScoredDoc> top_of(std::vector<ScoredDoc> all, std::uint64_t k) {
  if (all.size() > k) all.resize(k);
  return all;
}

std::set<std::uint64_t> ids(const std::vector<ScoredDoc>& v) {
  std::set<std::uint64_t> s;
  for (const auto& e : v) s.insert(e.doc);
  return s;
}

}  // namespace

TEST(Multiterm, RunningExampleConjunctive) {
  const auto docs = fixture::running_example();
  const Engine e = make_engine(docs, 2);
  const Query q{{"TA", "AT"}, QueryMode::And, 2};
  const auto got = ranked_query(e.indexes(), q);
  EXPECT_EQ(got, top_of(score_all(docs, q), 2));
  ASSERT_EQ(got.size(), 2u);
  EXPECT_EQ(got[0].doc, 0u);  // TATA: tf(TA)=2, tf(AT)=1
}

TEST(Multiterm, SingleTermMatchesPdlTopk) {
  std::mt19937_64 rng(3);
  const auto docs = oracle::random_documents(rng, 30, 100, "ACGT", true);
  const Engine e = make_engine(docs, 8);
  for (const char* term : {"A", "AC", "GTA", "CGT", "TTAC"}) {
    const LexRange range = e.built.oracle.find(term);
    const double g = std::log(30.0 / static_cast<double>(std::max<std::uint64_t>(e.counts.count(range), 1)));
    for (auto mode : {QueryMode::And, QueryMode::Or}) {
      const auto got = ranked_query(e.indexes(), Query{{term}, mode, 5});
      const auto top = e.pdl.topk(e.built.oracle, range, 5);
      if (g == 0.0) {
        // every document contains the term: all scores tie at 0 and ids decide
        EXPECT_EQ(got, top_of(score_all(docs, Query{{term}, mode, 5}), 5));
        continue;
      }
      ASSERT_EQ(got.size(), top.size());
      for (std::size_t j = 0; j < top.size(); ++j) {
        EXPECT_EQ(got[j].doc, top[j].doc);
        EXPECT_DOUBLE_EQ(got[j].score, static_cast<double>(top[j].tf) * g);
      }
    }
  }
}

TEST(Multiterm, AbsentTerms) {
  const auto docs = fixture::running_example();
  const Engine e = make_engine(docs, 2);
  EXPECT_TRUE(ranked_query(e.indexes(), Query{{"TA", "ZZ"}, QueryMode::And, 3}).empty());
  EXPECT_EQ(ids(ranked_query(e.indexes(), Query{{"TA", "ZZ"}, QueryMode::Or, 3})), (std::set<std::uint64_t>{0, 1}));
  EXPECT_TRUE(ranked_query(e.indexes(), Query{{"QQ"}, QueryMode::Or, 3}).empty());
}

TEST(Multiterm, RandomQueriesAgainstFullScoring) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 4; ++trial) {
    const auto docs = oracle::random_documents(rng, 60 + trial * 20, 150, trial % 2 ? "ACGT" : "ACG", true);
    const Engine e = make_engine(docs, 16);
    for (int qn = 0; qn < 25; ++qn) {
      Query q;
      const std::size_t m = 2 + rng() % 2;
      for (std::size_t i = 0; i < m; ++i) {
        const auto& doc = docs[rng() % docs.size()];
        const std::size_t len = std::min<std::size_t>(doc.size(), 1 + rng() % 4);
        q.terms.push_back(doc.substr(rng() % (doc.size() - len + 1), len));
      }
      for (std::uint64_t k : {10, 100}) {
        q.k = k;
        q.mode = QueryMode::And;
        const auto and_ref = score_all(docs, q);
        EXPECT_EQ(ranked_query(e.indexes(), q), top_of(and_ref, k));

        q.mode = QueryMode::Or;
        const auto or_ref = score_all(docs, q);
        std::vector<double> truth(docs.size(), -1.0);
        for (const auto& s : or_ref) truth[s.doc] = s.score;
        const auto got = ranked_query(e.indexes(), q, {}, [&](const BoundSnapshot& snap) {
          for (std::size_t j = 0; j < snap.docs.size(); ++j) {
            ASSERT_LE(snap.lower[j], truth[snap.docs[j]] + 1e-9);
            ASSERT_GE(snap.upper[j], truth[snap.docs[j]] - 1e-9);
          }
        });
        EXPECT_EQ(ids(got), ids(top_of(or_ref, k)));
        for (const auto& s : got) EXPECT_LE(s.score, truth[s.doc] + 1e-9);
      }
    }
  }
}

TEST(Multiterm, BatchMatchesSequential) {
  std::mt19937_64 rng(8);
  const auto docs = oracle::random_documents(rng, 50, 120, "ACGT", true);
  const Engine e = make_engine(docs, 8);
  std::stringstream file;
  for (int i = 0; i < 40; ++i) {
    const auto& doc = docs[rng() % docs.size()];
    file << doc.substr(0, std::min<std::size_t>(2, doc.size())) << "  " << doc.substr(doc.size() / 2, 1) << "\n";
    if (i % 7 == 0) file << "\n";
  }
  const auto queries = parse_queries(file, QueryMode::Or, 10);
  ASSERT_EQ(queries.size(), 40u);
  const auto one = batch_query(e.indexes(), queries, 1);
  const auto many = batch_query(e.indexes(), queries, 8);
  ASSERT_EQ(one.results.size(), queries.size());
  EXPECT_EQ(one.results, many.results);
  for (std::size_t i = 0; i < queries.size(); ++i) EXPECT_EQ(one.results[i], ranked_query(e.indexes(), queries[i]));
  EXPECT_GT(one.queries_per_second(), 0.0);
  EXPECT_THROW(batch_query(e.indexes(), queries, 0), Error);
}

TEST(Multiterm, NeedsFrequencies) {
  const auto docs = fixture::running_example();
  Engine e = make_engine(docs, 2);
  e.pdl = build_pdl_topk(e.built.oracle, 2, false);
  EXPECT_THROW(ranked_query(e.indexes(), Query{{"TA"}, QueryMode::Or, 1}), Error);
}
