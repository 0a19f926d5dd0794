#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "rdoc/succinct/any_bitvector.hpp"

namespace rdoc::succinct {

enum class WaveletShape : std::uint8_t { Balanced = 0, Skewed = 1 };

/// Wavelet tree over a sequence of non-negative integers, built as a binary trie of per-value
/// codes. Balanced codes are the ceil(log2 sigma)-bit binary values. Skewed codes give value v
/// (i = v + 1, g = floor(log2 i)) g one-bits, a zero, then the g low bits of i, so the leaf of
/// value v sits at depth 1 + 2 floor(log2(v + 1)). Both codes preserve value order. Only values
/// present in the sequence get leaves; nodes whose elements all branch the same way keep no
/// bitvector.
class WaveletTree {
 public:
  WaveletTree() = default;
  WaveletTree(std::span<const std::uint64_t> values, WaveletShape shape, BitvectorKind kind = BitvectorKind::Plain);

  std::uint64_t size() const { return size_; }
  WaveletShape shape() const { return shape_; }
  /// One more than the largest value.
  std::uint64_t sigma() const { return sigma_; }

  std::uint64_t access(std::uint64_t i) const;
  /// Occurrences of `value` in [0, i).
  std::uint64_t rank(std::uint64_t value, std::uint64_t i) const;
  /// Position of the j-th (0-based) occurrence of `value`.
  std::uint64_t select(std::uint64_t value, std::uint64_t j) const;
  /// Depth of the leaf for `value`, or -1 when the value does not occur.
  int leaf_depth(std::uint64_t value) const;

  /// For every distinct value v < limit occurring in [begin, end), calls f(v, lo, hi) where
  /// [lo, hi) is the range of occurrence ranks of v covered by [begin, end). Values are
  /// visited in increasing order; subtrees holding only values >= limit are never entered.
  template <typename F>
  void for_each_value_below(std::uint64_t begin, std::uint64_t end, std::uint64_t limit, F&& f) const {
    if (nodes_.empty() || begin >= end || limit == 0) return;
    visit_below(0, begin, end, limit, f);
  }

  std::uint64_t size_in_bytes() const;
  void serialize(io::Writer& w) const;
  static WaveletTree load(io::Reader& r);

 private:
  struct Node {
    AnyBitvector bits;  // only when both children exist
    std::int64_t child[2] = {-1, -1};
    std::uint64_t min_value = 0;
    bool leaf = false;
  };

  unsigned code_length(std::uint64_t value) const;
  unsigned code_bit(std::uint64_t value, unsigned k) const;
  std::int64_t build(std::vector<std::uint64_t>& values, unsigned depth, BitvectorKind kind);
  bool has_bits(const Node& n) const { return n.child[0] >= 0 && n.child[1] >= 0; }

  template <typename F>
  void visit_below(std::int64_t v, std::uint64_t begin, std::uint64_t end, std::uint64_t limit, F& f) const {
    const Node& node = nodes_[static_cast<std::size_t>(v)];
    if (node.min_value >= limit) return;
    if (node.leaf) {
      f(node.min_value, begin, end);
      return;
    }
    if (!has_bits(node)) {
      visit_below(node.child[0] >= 0 ? node.child[0] : node.child[1], begin, end, limit, f);
      return;
    }
    const std::uint64_t b1 = node.bits.rank1(begin);
    const std::uint64_t e1 = node.bits.rank1(end);
    if (begin - b1 < end - e1) visit_below(node.child[0], begin - b1, end - e1, limit, f);
    if (b1 < e1) visit_below(node.child[1], b1, e1, limit, f);
  }

  std::vector<Node> nodes_;
  std::uint64_t size_ = 0;
  std::uint64_t sigma_ = 0;
  unsigned balanced_width_ = 0;
  WaveletShape shape_ = WaveletShape::Balanced;
};

}  // namespace rdoc::succinct
