#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "rdoc/corpus/sais.hpp"
#include "rdoc/error.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace rdoc;

namespace {

std::vector<std::uint32_t> one_based(std::vector<std::uint32_t> v) {
  for (auto& x : v) ++x;
  return v;
}

}  // namespace

TEST(Collection, RunningExampleLayout) {
  const Collection c = build_collection(fixture::running_example());
  EXPECT_EQ(c.text(), std::string("TATA\0LATA\0AAAA\0", 15));
  EXPECT_EQ(c.size(), 15u);
  EXPECT_EQ(c.doc_count(), 3u);
  std::string b;
  for (std::uint64_t i = 0; i < c.size(); ++i) b.push_back(c.boundaries()[i] ? '1' : '0');
  EXPECT_EQ(b, "100001000010000");
  EXPECT_EQ(c.doc_end(1), 9u);
  EXPECT_EQ(c.document(2), "AAAA");
}

TEST(Collection, TrivialShapes) {
  const Collection empty_doc = build_collection({""});
  EXPECT_EQ(empty_doc.text(), std::string(1, '\0'));
  EXPECT_EQ(empty_doc.doc_count(), 1u);
  const Collection twins = build_collection({"A", "A"});
  EXPECT_EQ(twins.text(), std::string("A\0A\0", 4));
  EXPECT_TRUE(twins.boundaries()[0]);
  EXPECT_FALSE(twins.boundaries()[1]);
  EXPECT_TRUE(twins.boundaries()[2]);
  EXPECT_FALSE(twins.boundaries()[3]);
}

TEST(Collection, RejectsBadInput) {
  try {
    build_collection({});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::EmptyInput);
  }
  try {
    build_collection({"ok", std::string("b\0d", 3)});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ReservedSymbol);
  }
}

TEST(Collection, LoadsEachDocumentFormat) {
  const auto dir = std::filesystem::temp_directory_path() / "rdoc_corpus_test";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir / "docs");
  std::ofstream(dir / "docs" / "b.txt") << "LATA";
  std::ofstream(dir / "docs" / "a.txt") << "TATA";
  std::ofstream(dir / "lines.txt") << "TATA\nLATA\r\nAAAA\n";
  {
    std::ofstream nul(dir / "nul.bin", std::ios::binary);
    nul.write("TATA\0LATA\0AAAA", 14);
  }
  EXPECT_EQ(load_documents(dir / "docs", DocsFormat::Files), (std::vector<std::string>{"TATA", "LATA"}));
  EXPECT_EQ(load_documents(dir / "lines.txt", DocsFormat::Lines), fixture::running_example());
  EXPECT_EQ(load_documents(dir / "nul.bin", DocsFormat::Nul), fixture::running_example());
  EXPECT_THROW(load_documents(dir / "missing", DocsFormat::Lines), Error);
  EXPECT_THROW(parse_docs_format("csv"), Error);
  std::filesystem::remove_all(dir);
}

TEST(SuffixOracle, RunningExample) {
  const auto built = fixture::build(fixture::running_example());
  const auto& o = built.oracle;
  EXPECT_EQ(one_based(o.suffix_array()),
            (std::vector<std::uint32_t>{15, 10, 5, 14, 9, 4, 13, 12, 11, 7, 2, 6, 8, 3, 1}));
  EXPECT_EQ(one_based(o.document_array()), (std::vector<std::uint32_t>{3, 2, 1, 3, 2, 1, 3, 3, 3, 2, 1, 2, 2, 1, 1}));
  // 1-based [13..15]
  EXPECT_EQ(o.find("TA"), (LexRange{12, 14}));
  EXPECT_EQ(o.doc_of(12), 1u);
  EXPECT_EQ(o.doc_of(13), 0u);
  EXPECT_EQ(o.doc_of(0), 2u);
  EXPECT_TRUE(o.find("ZZZ").empty());
  EXPECT_THROW(o.find(std::string("A\0", 2)), Error);
  EXPECT_THROW(o.doc_of(15), Error);
}

TEST(SuffixOracle, MatchesBruteForceSort) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 60; ++trial) {
    const auto docs = oracle::random_documents(rng, 1 + rng() % 12, 1 + rng() % 40, trial % 2 ? "AB" : "ACGT", trial % 3 == 0);
    const auto built = fixture::build(docs);
    const std::string& t = built.collection->text();
    const auto sa = oracle::suffix_array(t);
    ASSERT_EQ(built.oracle.suffix_array(), sa);
    ASSERT_EQ(built.oracle.document_array(), oracle::document_array(t, sa));
    for (const std::string p : {"A", "AB", "BA", "AC", "GT", "AAA", "C"}) {
      const auto [lo, hi] = oracle::find(t, sa, p);
      const LexRange r = built.oracle.find(p);
      ASSERT_EQ(r.lo, lo);
      ASSERT_EQ(r.hi, hi);
    }
    const auto lcp = build_lcp(*built.collection, sa);
    for (std::size_t i = 1; i < sa.size(); ++i) ASSERT_EQ(lcp[i], oracle::lcp(t, sa[i - 1], sa[i]));
  }
  const auto twins = fixture::build({"A", "A"});
  EXPECT_EQ(twins.oracle.suffix_array(), oracle::suffix_array(twins.collection->text()));
  const auto single = fixture::build({""});
  EXPECT_EQ(single.oracle.suffix_array(), (std::vector<std::uint32_t>{0}));
  EXPECT_EQ(single.oracle.document_array(), (std::vector<std::uint32_t>{0}));
}

TEST(SuffixOracle, SaisHandlesDeepRecursion) {
  // Highly periodic input forces several recursion levels.
  std::vector<std::uint32_t> s;
  for (int i = 0; i < 5000; ++i) s.push_back(1 + (i % 3 == 0) + (i % 7 == 0));
  s.push_back(0);
  const auto sa = sais(s, 4);
  for (std::size_t i = 1; i < sa.size(); ++i)
    ASSERT_TRUE(std::lexicographical_compare(s.begin() + sa[i - 1], s.end(), s.begin() + sa[i], s.end()));
}
