#include <gtest/gtest.h>

#include <sstream>

#include "rdoc/doccount/count_index.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace rdoc;

namespace {

void check_all_node_ranges(const fixture::Built& built, const std::vector<CountIndex>& indexes) {
  const auto da = built.oracle.document_array();
  const auto lcp = build_lcp(*built.collection, built.oracle.suffix_array());
  std::uint64_t ranges = 0;
  oracle::for_each_node_range(lcp, da, built.collection->doc_count(), [&](std::size_t lo, std::size_t hi, std::size_t df) {
    for (const auto& idx : indexes) ASSERT_EQ(idx.count(LexRange{lo, hi}), df) << to_string(idx.kind()) << " [" << lo << "," << hi << "]";
    ++ranges;
  });
  EXPECT_GE(ranges, da.size());
}

std::vector<CountIndex> all_kinds(const HArray& h) {
  std::vector<CountIndex> out;
  for (auto kind : kAllCountKinds) out.emplace_back(h, kind);
  return out;
}

}  // namespace

TEST(DocCount, RunningExample) {
  const auto built = fixture::build(fixture::running_example());
  const HArray h = build_h(built.oracle);
  ASSERT_EQ(h.h.size(), 14u);
  const auto indexes = all_kinds(h);
  for (const auto& idx : indexes) {
    EXPECT_EQ(idx.count(built.oracle.find("TA")), 2u) << to_string(idx.kind());
    EXPECT_EQ(idx.count(built.oracle.find("A")), 3u);
    EXPECT_EQ(idx.count(LexRange{4, 4}), 1u);
    EXPECT_EQ(idx.count(LexRange{}), 0u);
  }
  check_all_node_ranges(built, indexes);
}

TEST(DocCount, SingleDocumentAlwaysCountsOne) {
  const auto built = fixture::build({"MISSISSIPPI"});
  const HArray h = build_h(built.oracle);
  check_all_node_ranges(built, all_kinds(h));
  const CountIndex sada(h, CountKind::Sada);
  EXPECT_EQ(sada.count(LexRange{0, built.oracle.size() - 1}), 1u);
}

TEST(DocCount, TwinDocumentsShareEverySuffix) {
  const auto built = fixture::build({"GATTACA", "GATTACA"});
  const HArray h = build_h(built.oracle);
  check_all_node_ranges(built, all_kinds(h));
  const CountIndex sada(h, CountKind::Sada);
  EXPECT_EQ(sada.count(built.oracle.find("TTA")), 2u);
}

TEST(DocCount, UnaryShape) {
  std::mt19937_64 rng(8);
  const auto docs = oracle::random_documents(rng, 7, 50, "ACGT", false);
  const auto built = fixture::build(docs);
  const HArray h = build_h(built.oracle);
  std::uint64_t zeros = 0;
  for (auto v : h.h) zeros += v;
  // n-1 ones and n-d zeros
  EXPECT_EQ(zeros, built.oracle.size() - docs.size());
}

TEST(DocCount, RandomCollectionsAllKindsAllNodeRanges) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 16; ++trial) {
    const auto docs = oracle::random_documents(rng, 2 + rng() % 20, 80, trial % 2 ? "AB" : "ACGT", trial % 3 != 0);
    const auto built = fixture::build(docs);
    const HArray h = build_h(built.oracle);
    std::vector<CountIndex> indexes;
    for (auto kind : kAllCountKinds) {
      CountIndex idx(h, kind);
      std::stringstream ss;
      io::Writer w(ss);
      idx.serialize(w);
      io::Reader r(ss);
      indexes.push_back(CountIndex::load(r));
    }
    check_all_node_ranges(built, indexes);
  }
}

TEST(DocCount, HRunsMatchScanOfUnaryBits) {
  std::mt19937_64 rng(2);
  const auto docs = oracle::random_documents(rng, 10, 100, "ACGT", true);
  const auto built = fixture::build(docs);
  const HArray h = build_h(built.oracle);
  std::string unary;
  for (auto v : h.h) {
    unary.push_back('1');
    unary.append(v, '0');
  }
  std::uint64_t runs = 0;
  for (std::size_t i = 0; i < unary.size(); ++i)
    if (unary[i] == '1' && (i == 0 || unary[i - 1] == '0')) ++runs;
  EXPECT_EQ(measure_h_runs(h), runs);
  EXPECT_EQ(measure_h_runs(build_h(fixture::build({"A"}).oracle)), runs == 0 ? 0u : 1u);
}

TEST(DocCount, ParsesKindNames) {
  for (auto kind : kAllCountKinds) EXPECT_EQ(parse_count_kind(to_string(kind)), kind);
  EXPECT_EQ(parse_count_kind("RR-RR"), CountKind::RunRR);
  EXPECT_THROW(parse_count_kind("nope"), Error);
}
