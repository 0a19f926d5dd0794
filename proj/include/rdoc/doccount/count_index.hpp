#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "rdoc/corpus/suffix_oracle.hpp"
#include "rdoc/succinct/any_bitvector.hpp"

namespace rdoc {

/// Per-slot redundancy counts of the binarized suffix tree. Slot s sits between leaves s and
/// s + 1. Values are already regrouped so that each original suffix-tree node carries the sum
/// over its binary nodes in the slot before its last child, with zeros in its other slots.
struct HArray {
  std::vector<std::uint32_t> h;
  /// Per slot: the original node owning it covers more than one document.
  succinct::BitBuffer multi_doc;
};

HArray build_h(const SuffixOracle& oracle);

/// Number of maximal runs of 1-bits in the unary encoding of H.
std::uint64_t measure_h_runs(const HArray& h);

enum class CountKind : std::uint8_t {
  Sada,       // plain H'
  SadaR,      // run-length H'
  SadaR2,     // H' as sparse maps of 0-run and 1-run starts
  SadaD,      // H' in 128-one delta blocks
  SadaG,      // grammar-compressed H'
  PrunedG,    // plain H' of the pruned tree, gap-encoded F
  PrunedRR,   // plain H' of the pruned tree, run-length F
  RunG,       // run-length H' of the pruned tree, gap-encoded F
  RunRR,      // run-length H' and F
  SparseS,    // sparse H' over slots with H > 0, sparse filter
  SparseS1,   // sparse H' over slots with H > 1, sparse filter and sparse 1-filter
  RunS1,      // sparse-run H' without the H = 1 zeros, sparse 1-filter
  DeltaS1,    // delta-block H' without the H = 1 zeros, sparse 1-filter
};

inline constexpr CountKind kAllCountKinds[] = {
    CountKind::Sada,     CountKind::SadaR,  CountKind::SadaR2,  CountKind::SadaD,    CountKind::SadaG,
    CountKind::PrunedG,  CountKind::PrunedRR, CountKind::RunG,  CountKind::RunRR,    CountKind::SparseS,
    CountKind::SparseS1, CountKind::RunS1,  CountKind::DeltaS1,
};

std::string_view to_string(CountKind kind);
CountKind parse_count_kind(std::string_view name);

/// Sadakane's document counting structure: df of a suffix-tree node range from two selects.
class CountIndex {
 public:
  CountIndex() = default;
  CountIndex(const HArray& h, CountKind kind);

  CountKind kind() const { return kind_; }
  /// Distinct documents in a range that is a suffix-tree node (a pattern's range or a leaf).
  std::uint64_t count(LexRange range) const;

  std::uint64_t size_in_bytes() const;
  std::uint64_t hprime_bytes() const { return hprime_.size_in_bytes(); }
  std::uint64_t filter_bytes() const;

  void serialize(io::Writer& w) const;
  static CountIndex load(io::Reader& r);

 private:
  enum class Filter : std::uint8_t { None = 0, Pruned = 1, Sparse = 2 };

  /// Sum of the encoded values in compact slots [a, b).
  std::uint64_t encoded_sum(std::uint64_t a, std::uint64_t b) const {
    return hprime_select(b) - hprime_select(a) - (b - a);
  }
  std::uint64_t hprime_select(std::uint64_t k) const {
    return k < hprime_.count_ones() ? hprime_.select1(k) : hprime_.size();
  }

  CountKind kind_ = CountKind::Sada;
  Filter filter_kind_ = Filter::None;
  std::uint64_t slots_ = 0;
  succinct::AnyBitvector hprime_;
  std::optional<succinct::AnyBitvector> filter_;
  std::optional<succinct::AnyBitvector> ones_filter_;
};

}  // namespace rdoc
