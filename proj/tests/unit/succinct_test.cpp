#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "rdoc/error.hpp"
#include "rdoc/succinct/any_bitvector.hpp"
#include "rdoc/succinct/rmq.hpp"
#include "rdoc/succinct/wavelet_tree.hpp"

using namespace rdoc;
using namespace rdoc::succinct;

namespace {

BitBuffer from_string(const std::string& s) {
  BitBuffer b;
  for (char c : s) b.push_back(c == '1');
  return b;
}

BitBuffer random_bits(std::mt19937_64& rng, std::uint64_t n, double density) {
  std::bernoulli_distribution coin(density);
  BitBuffer b;
  for (std::uint64_t i = 0; i < n; ++i) b.push_back(coin(rng));
  return b;
}

// Long runs of both kinds, like H' on repetitive data.
BitBuffer runny_bits(std::mt19937_64& rng, std::uint64_t n) {
  std::geometric_distribution<int> run(0.02);
  BitBuffer b;
  bool bit = rng() & 1U;
  while (b.size() < n) {
    b.append_run(bit, std::min<std::uint64_t>(n - b.size(), 1 + run(rng)));
    bit = !bit;
  }
  return b;
}

const BitvectorKind kAllKinds[] = {BitvectorKind::Plain,      BitvectorKind::Sparse,     BitvectorKind::RunLength,
                                   BitvectorKind::Gap,        BitvectorKind::SparseRun,  BitvectorKind::DeltaBlock,
                                   BitvectorKind::Grammar};

void check_against_scan(const BitBuffer& bits, const AnyBitvector& bv) {
  ASSERT_EQ(bv.size(), bits.size());
  std::uint64_t ones = 0;
  std::vector<std::uint64_t> one_pos;
  for (std::uint64_t i = 0; i < bits.size(); ++i) {
    ASSERT_EQ(bv.rank1(i), ones) << to_string(bv.kind()) << " rank1 at " << i;
    ASSERT_EQ(bv.access(i), bits[i]) << to_string(bv.kind()) << " access at " << i;
    if (bits[i]) {
      one_pos.push_back(i);
      ++ones;
    }
  }
  ASSERT_EQ(bv.rank1(bits.size()), ones);
  ASSERT_EQ(bv.count_ones(), ones);
  for (std::uint64_t j = 0; j < one_pos.size(); ++j) ASSERT_EQ(bv.select1(j), one_pos[j]) << to_string(bv.kind());
  std::uint64_t z = 0;
  for (std::uint64_t i = 0; i < bits.size(); i += 7) {
    if (bits[i]) continue;
    ASSERT_EQ(bv.select0(bv.rank0(i)), i);
    ++z;
  }
}

AnyBitvector round_trip(const AnyBitvector& bv) {
  std::stringstream ss;
  io::Writer w(ss);
  bv.serialize(w);
  io::Reader r(ss);
  return AnyBitvector::load(r);
}

}  // namespace

TEST(Bitvector, RunHeadExample) {
  const BitBuffer l = from_string("100000111101001");
  for (auto kind : kAllKinds) {
    AnyBitvector bv(l, kind);
    // ones among the first 13 positions
    EXPECT_EQ(bv.rank1(13), 6u) << to_string(kind);
    EXPECT_EQ(bv.rank1(0), 0u);
  }
}

TEST(Bitvector, AllKindsMatchScanOracle) {
  std::mt19937_64 rng(7);
  std::vector<BitBuffer> inputs;
  inputs.push_back(BitBuffer{});
  inputs.push_back(from_string("0"));
  inputs.push_back(from_string("1"));
  inputs.push_back(BitBuffer(1000, false));
  inputs.push_back(BitBuffer(1000, true));
  for (double density : {0.01, 0.3, 0.5, 0.9}) inputs.push_back(random_bits(rng, 1000, density));
  inputs.push_back(runny_bits(rng, 20000));
  inputs.push_back(random_bits(rng, 70000, 0.5));
  for (const auto& bits : inputs) {
    for (auto kind : kAllKinds) {
      AnyBitvector bv(bits, kind);
      check_against_scan(bits, bv);
      check_against_scan(bits, round_trip(bv));
    }
  }
}

TEST(Bitvector, OutOfRangeThrows) {
  const BitBuffer bits = from_string("0110");
  for (auto kind : kAllKinds) {
    AnyBitvector bv(bits, kind);
    EXPECT_THROW(bv.rank1(5), Error);
    EXPECT_THROW(bv.select1(2), Error);
  }
}

TEST(Bitvector, RunLengthCompressesRunnyInput) {
  std::mt19937_64 rng(3);
  const BitBuffer bits = runny_bits(rng, 200000);
  const AnyBitvector plain(bits, BitvectorKind::Plain);
  for (auto kind : {BitvectorKind::RunLength, BitvectorKind::SparseRun, BitvectorKind::DeltaBlock, BitvectorKind::Grammar}) {
    const AnyBitvector bv(bits, kind);
    EXPECT_LT(bv.size_in_bytes(), plain.size_in_bytes() / 2) << to_string(kind);
  }
}

TEST(WaveletTree, SkewedShapeOfRunHeads) {
  const std::vector<std::uint64_t> vilcp{0, 1, 2, 3, 1, 0, 2};
  WaveletTree wt(vilcp, WaveletShape::Skewed);
  for (std::size_t i = 0; i < vilcp.size(); ++i) EXPECT_EQ(wt.access(i), vilcp[i]);
  // i-th leftmost leaf (1-based) sits at depth 1 + 2 floor(log2 i)
  EXPECT_EQ(wt.leaf_depth(0), 1);
  EXPECT_EQ(wt.leaf_depth(1), 3);
  EXPECT_EQ(wt.leaf_depth(2), 3);
  EXPECT_EQ(wt.leaf_depth(3), 5);
  EXPECT_EQ(wt.leaf_depth(4), -1);
  EXPECT_EQ(wt.rank(1, 7), 2u);
  EXPECT_EQ(wt.select(2, 1), 6u);
}

TEST(WaveletTree, ConstantSequenceHasOneLeaf) {
  const std::vector<std::uint64_t> seq(10, 0);
  WaveletTree wt(seq, WaveletShape::Balanced);
  EXPECT_EQ(wt.leaf_depth(0), 0);
  EXPECT_EQ(wt.rank(0, 10), 10u);
  EXPECT_EQ(wt.access(9), 0u);
}

TEST(WaveletTree, RandomSequenceMatchesScan) {
  std::mt19937_64 rng(11);
  for (auto shape : {WaveletShape::Balanced, WaveletShape::Skewed}) {
    for (auto kind : {BitvectorKind::Plain, BitvectorKind::SparseRun, BitvectorKind::RunLength}) {
      std::vector<std::uint64_t> seq(512);
      for (auto& v : seq) v = rng() % 16;
      WaveletTree wt(seq, shape, kind);
      std::vector<std::uint64_t> counts(16, 0);
      for (std::size_t i = 0; i < seq.size(); ++i) {
        ASSERT_EQ(wt.access(i), seq[i]);
        for (std::uint64_t c = 0; c < 16; ++c) ASSERT_EQ(wt.rank(c, i), counts[c]);
        ASSERT_EQ(wt.select(seq[i], counts[seq[i]]), i);
        ++counts[seq[i]];
      }
      std::stringstream ss;
      io::Writer w(ss);
      wt.serialize(w);
      io::Reader r(ss);
      WaveletTree back = WaveletTree::load(r);
      for (std::size_t i = 0; i < seq.size(); ++i) ASSERT_EQ(back.access(i), seq[i]);
    }
  }
}

TEST(WaveletTree, ValuesBelowLimitReportOccurrenceRanges) {
  std::mt19937_64 rng(5);
  std::vector<std::uint64_t> seq(300);
  for (auto& v : seq) v = rng() % 40;
  WaveletTree wt(seq, WaveletShape::Skewed);
  for (int trial = 0; trial < 200; ++trial) {
    std::uint64_t a = rng() % 301;
    std::uint64_t b = rng() % 301;
    if (a > b) std::swap(a, b);
    const std::uint64_t limit = rng() % 45;
    std::vector<std::uint64_t> seen;
    wt.for_each_value_below(a, b, limit, [&](std::uint64_t v, std::uint64_t lo, std::uint64_t hi) {
      ASSERT_LT(v, limit);
      ASSERT_EQ(lo, wt.rank(v, a));
      ASSERT_EQ(hi, wt.rank(v, b));
      ASSERT_LT(lo, hi);
      seen.push_back(v);
    });
    std::vector<std::uint64_t> expected;
    for (std::uint64_t i = a; i < b; ++i)
      if (seq[i] < limit) expected.push_back(seq[i]);
    std::sort(expected.begin(), expected.end());
    expected.erase(std::unique(expected.begin(), expected.end()), expected.end());
    ASSERT_EQ(seen, expected);
  }
}

TEST(Rmq, RunHeadExample) {
  const std::vector<std::uint64_t> vilcp{0, 1, 2, 3, 1, 0, 2};
  RmqIndex rmq{std::span<const std::uint64_t>(vilcp)};
  EXPECT_EQ(rmq.rmq(0, 6), 0u);
  EXPECT_EQ(rmq.rmq(1, 6), 5u);
  EXPECT_EQ(rmq.rmq(3, 3), 3u);
  EXPECT_EQ(rmq.rmq(2, 4), 4u);
  EXPECT_THROW(rmq.rmq(4, 7), Error);
}

TEST(Rmq, RandomArraysMatchLeftmostScan) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 10000; ++trial) {
    const std::size_t n = 1 + rng() % (trial % 100 == 0 ? 5000 : 60);
    const std::uint64_t range = 1 + rng() % 20;
    std::vector<std::uint32_t> a(n);
    for (auto& v : a) v = static_cast<std::uint32_t>(rng() % range);
    RmqIndex rmq{std::span<const std::uint32_t>(a)};
    for (int q = 0; q < 5; ++q) {
      std::size_t i = rng() % n;
      std::size_t j = rng() % n;
      if (i > j) std::swap(i, j);
      std::size_t best = i;
      for (std::size_t k = i; k <= j; ++k)
        if (a[k] < a[best]) best = k;
      ASSERT_EQ(rmq.rmq(i, j), best) << "n=" << n << " i=" << i << " j=" << j;
    }
  }
}

TEST(Rmq, SerializationRoundTrip) {
  std::mt19937_64 rng(17);
  std::vector<std::uint64_t> a(3000);
  for (auto& v : a) v = rng() % 50;
  RmqIndex rmq{std::span<const std::uint64_t>(a)};
  std::stringstream ss;
  io::Writer w(ss);
  rmq.serialize(w);
  io::Reader r(ss);
  RmqIndex back = RmqIndex::load(r);
  for (int q = 0; q < 500; ++q) {
    std::size_t i = rng() % a.size();
    std::size_t j = rng() % a.size();
    if (i > j) std::swap(i, j);
    ASSERT_EQ(back.rmq(i, j), rmq.rmq(i, j));
  }
}
