#include <gtest/gtest.h>

#include <algorithm>
#include <sstream>

#include "rdoc/pdl/pdl.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace rdoc;

namespace {

constexpr PdlVariant kVariants[] = {PdlVariant::Listing, PdlVariant::TopK, PdlVariant::TopKF, PdlVariant::Pruned};

std::vector<std::uint64_t> sorted(std::vector<std::uint64_t> v) {
  std::sort(v.begin(), v.end());
  return v;
}

PdlIndex round_trip(const PdlIndex& idx) {
  std::stringstream ss;
  io::Writer w(ss);
  idx.serialize(w);
  io::Reader r(ss);
  return PdlIndex::load(r);
}

/// Distinct substrings of the documents up to `max_len`, plus `extra` random longer ones.
std::vector<std::string> patterns(const std::vector<std::string>& docs, std::size_t max_len, std::size_t extra, std::mt19937_64& rng) {
  std::set<std::string> out;
  for (const auto& doc : docs)
    for (std::size_t i = 0; i < doc.size(); ++i)
      for (std::size_t len = 1; len <= max_len && i + len <= doc.size(); ++len) out.insert(doc.substr(i, len));
  for (std::size_t e = 0; e < extra; ++e) {
    const auto& doc = docs[rng() % docs.size()];
    if (doc.size() < 5) continue;
    const std::size_t len = 5 + rng() % std::min<std::size_t>(doc.size() - 4, 20);
    if (len > doc.size()) continue;
    out.insert(doc.substr(rng() % (doc.size() - len + 1), len));
  }
  return {out.begin(), out.end()};
}

/// Parent of each node: the smallest strictly larger range containing it.
std::vector<std::int64_t> parents_of(const std::vector<LexRange>& ranges) {
  std::vector<std::int64_t> parent(ranges.size(), -1);
  for (std::size_t u = 0; u < ranges.size(); ++u)
    for (std::size_t v = 0; v < ranges.size(); ++v) {
      if (u == v || ranges[v].lo > ranges[u].lo || ranges[v].hi < ranges[u].hi || ranges[v] == ranges[u]) continue;
      if (parent[u] < 0 || ranges[v].size() < ranges[static_cast<std::size_t>(parent[u])].size()) parent[u] = static_cast<std::int64_t>(v);
    }
  return parent;
}

}  // namespace

TEST(Pdl, RunningExample) {
  const auto built = fixture::build(fixture::running_example());
  const LexRange ta = built.oracle.find("TA");
  for (auto variant : kVariants) {
    const PdlIndex idx = build_pdl(built.oracle, variant, 4, 16);
    EXPECT_EQ(sorted(idx.list(built.oracle, ta)), (std::vector<std::uint64_t>{0, 1})) << to_string(variant);
    EXPECT_TRUE(idx.list(built.oracle, LexRange{}).empty());
    if (variant == PdlVariant::Listing) continue;
    if (variant != PdlVariant::TopK) {
      EXPECT_EQ(idx.topk(built.oracle, ta, 1), (std::vector<DocFreq>{{0, 2}}));
      EXPECT_EQ(idx.topk(built.oracle, ta, 10), (std::vector<DocFreq>{{0, 2}, {1, 1}}));
    }
  }
  const PdlIndex full = build_pdl_topk(built.oracle, 2);
  PdlCursor c = full.cursor(built.oracle, ta);
  EXPECT_EQ(c.next(), (DocFreq{0, 2}));
  EXPECT_EQ(c.next(), (DocFreq{1, 1}));
  EXPECT_FALSE(c.next().has_value());
}

TEST(Pdl, SmallCollectionIsOneLeaf) {
  const auto built = fixture::build(fixture::running_example());
  const PdlIndex idx = build_pdl_listing(built.oracle);
  EXPECT_EQ(idx.leaves(), 1u);
  EXPECT_EQ(idx.internal_nodes(), 0u);
  EXPECT_EQ(idx.node_ranges()[0], (LexRange{0, 14}));
  EXPECT_EQ(sorted(idx.node_documents(0)), (std::vector<std::uint64_t>{0, 1, 2}));
}

TEST(Pdl, RejectsBadParameters) {
  const auto built = fixture::build(fixture::running_example());
  EXPECT_THROW(build_pdl(built.oracle, PdlVariant::Listing, 1, 16), Error);
  EXPECT_THROW(build_pdl(built.oracle, PdlVariant::Pruned, 4, 0.5), Error);
  const PdlIndex listing = build_pdl_listing(built.oracle, 4);
  EXPECT_THROW(listing.topk(built.oracle, built.oracle.find("A"), 1), Error);
  EXPECT_THROW(listing.cursor(built.oracle, built.oracle.find("A")), Error);
  EXPECT_THROW(build_pdl(built.oracle, PdlVariant::Pruned, 4).cursor(built.oracle, built.oracle.find("A")), Error);
}

TEST(Pdl, StoredSetsMatchDocumentArrayAndTreeRules) {
  std::mt19937_64 rng(10);
  std::vector<std::string> docs(10, "GATTACAGATTACACATGATTACA");
  for (auto& d : docs) d[rng() % d.size()] = "ACGT"[rng() % 4];
  const auto built = fixture::build(docs);
  const auto da = built.oracle.document_array();
  for (auto variant : kVariants) {
    const PdlIndex idx = round_trip(build_pdl(built.oracle, variant, 4, 2.0));
    const auto ranges = idx.node_ranges();
    ASSERT_EQ(ranges.size(), idx.nodes());
    std::uint64_t covered = 0;
    for (std::uint64_t l = 0; l < idx.leaves(); ++l) {
      EXPECT_EQ(ranges[l].lo, covered);
      EXPECT_LE(ranges[l].size(), 4u);
      covered = ranges[l].hi + 1;
    }
    EXPECT_EQ(covered, built.oracle.size());
    std::vector<std::uint64_t> sizes(idx.nodes());
    for (std::uint64_t v = 0; v < idx.nodes(); ++v) {
      const auto full = oracle::topk(da, ranges[v].lo, ranges[v].hi, da.size());
      const auto got = idx.node_documents(v);
      sizes[v] = got.size();
      if (v >= idx.leaves()) EXPECT_GT(ranges[v].size(), 4u);
      if (variant == PdlVariant::Listing) {
        ASSERT_EQ(sorted(got), oracle::distinct_docs(da, ranges[v].lo, ranges[v].hi));
        continue;
      }
      ASSERT_EQ(got.size(), full.size());
      for (std::size_t j = 0; j < full.size(); ++j) ASSERT_EQ(got[j], full[j].first) << to_string(variant) << " node " << v;
      if (idx.has_frequencies()) {
        const auto freqs = idx.node_frequencies(v);
        for (std::size_t j = 0; j < full.size(); ++j) ASSERT_EQ(freqs[j], full[j].second);
      }
    }
    if (variant == PdlVariant::Listing || variant == PdlVariant::Pruned) {
      const auto parent = parents_of(ranges);
      std::vector<std::uint64_t> child_total(idx.nodes(), 0);
      for (std::size_t u = 0; u < parent.size(); ++u)
        if (parent[u] >= 0) child_total[static_cast<std::size_t>(parent[u])] += sizes[u];
      for (std::uint64_t v = idx.leaves(); v < idx.nodes(); ++v) {
        if (parent[v] < 0) continue;  // the root is always kept
        EXPECT_GT(static_cast<double>(child_total[v]), 2.0 * static_cast<double>(sizes[v]));
      }
    }
  }
}

TEST(Pdl, ListingAndTopkMatchOraclesOnRandomCollections) {
  std::mt19937_64 rng(123);
  for (int trial = 0; trial < 8; ++trial) {
    const auto docs = oracle::random_documents(rng, 2 + rng() % 30, 120, trial % 2 ? "ACGT" : "AB", trial % 3 != 2);
    const auto built = fixture::build(docs);
    const auto da = built.oracle.document_array();
    const std::uint64_t b = 2 + rng() % 16;
    const double beta = 1.0 + static_cast<double>(rng() % 8);
    std::vector<PdlIndex> indexes;
    for (auto variant : kVariants) indexes.push_back(round_trip(build_pdl(built.oracle, variant, b, beta)));
    std::vector<char> marks(docs.size(), 0);
    for (const auto& p : patterns(docs, 4, 100, rng)) {
      const LexRange range = built.oracle.find(p);
      const auto expect = oracle::distinct_docs(da, range.lo, range.hi);
      for (const auto& idx : indexes) {
        ASSERT_EQ(sorted(idx.list(built.oracle, range, marks)), expect) << to_string(idx.variant()) << " " << p;
        if (idx.variant() == PdlVariant::Listing) continue;
        for (std::uint64_t k : {1, 5, 10, 100}) {
          const auto top = idx.topk(built.oracle, range, k);
          const auto ref = oracle::topk(da, range.lo, range.hi, k);
          ASSERT_EQ(top.size(), ref.size());
          for (std::size_t j = 0; j < ref.size(); ++j) {
            ASSERT_EQ(top[j].doc, ref[j].first) << to_string(idx.variant()) << " " << p << " k=" << k;
            if (idx.variant() != PdlVariant::TopK || !idx.node_for(range)) ASSERT_EQ(top[j].tf, ref[j].second);
          }
        }
      }
      ASSERT_TRUE(std::all_of(marks.begin(), marks.end(), [](char m) { return m == 0; }));
    }
  }
}

TEST(Pdl, CursorStreamsTheFullRanking) {
  std::mt19937_64 rng(4);
  const auto docs = oracle::random_documents(rng, 40, 200, "ACGT", true);
  const auto built = fixture::build(docs);
  const PdlIndex idx = build_pdl_topk(built.oracle, 8);
  for (const char* p : {"A", "CG", "TTA", "GATC", "C"}) {
    const LexRange range = built.oracle.find(p);
    const auto all = idx.topk(built.oracle, range, built.oracle.size());
    PdlCursor c = idx.cursor(built.oracle, range);
    std::vector<DocFreq> streamed;
    while (auto e = c.peek()) {
      EXPECT_EQ(c.next(), e);
      streamed.push_back(*e);
    }
    EXPECT_EQ(streamed, all) << p;
    std::vector<std::uint64_t> ids;
    for (const auto& e : streamed) ids.push_back(e.doc);
    EXPECT_EQ(sorted(ids), sorted(idx.list(built.oracle, range)));
  }
}

TEST(Pdl, CompressesRepetitiveSets) {
  std::mt19937_64 rng(9);
  std::string base;
  for (int i = 0; i < 2000; ++i) base.push_back("ACGT"[rng() % 4]);
  std::vector<std::string> docs(40, base);
  for (auto& d : docs)
    for (int e = 0; e < 3; ++e) d[rng() % d.size()] = "ACGT"[rng() % 4];
  const auto built = fixture::build(docs);
  const PdlIndex listing = build_pdl_listing(built.oracle, 32, 4);
  const PdlIndex topk = build_pdl_topk(built.oracle, 32);
  EXPECT_LT(listing.stored_tokens() * 2, listing.uncompressed_tokens());
  EXPECT_LT(topk.stored_tokens() * 2, topk.uncompressed_tokens());
}
