#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "rdoc/corpus/suffix_oracle.hpp"
#include "rdoc/succinct/rmq.hpp"

namespace rdoc {

/// A document with its term frequency in some range.
struct DocFreq {
  std::uint64_t doc = 0;
  std::uint64_t tf = 0;
  friend bool operator==(const DocFreq&, const DocFreq&) = default;
};

/// Orders by decreasing tf, then increasing document id.
inline bool by_frequency(const DocFreq& a, const DocFreq& b) { return a.tf != b.tf ? a.tf > b.tf : a.doc < b.doc; }

/// Sorted distinct documents of the range, located through the suffix array.
std::vector<std::uint64_t> brute_list_L(const SuffixOracle& oracle, LexRange range);
/// Sorted distinct documents of the range, read from a materialized document array.
std::vector<std::uint64_t> brute_list_D(std::span<const std::uint32_t> da, LexRange range);

/// Per-document occurrence counts of the range, sorted by frequency and cut to k entries.
std::vector<DocFreq> brute_topk(std::span<const std::uint32_t> da, LexRange range, std::uint64_t k);
std::vector<DocFreq> brute_topk_L(const SuffixOracle& oracle, LexRange range, std::uint64_t k);

/// Listing through an RMQ over C[i] = previous position of the same document, without
/// storing C: a document is reported the first time it is met and the recursion stops at
/// documents already marked.
class SadaIndex {
 public:
  SadaIndex() = default;
  explicit SadaIndex(std::span<const std::uint32_t> da);

  std::uint64_t size() const { return rmq_.size(); }

  /// Documents in discovery order, reading DA through locate. `marks` must hold d zeros and
  /// is returned zeroed.
  std::vector<std::uint64_t> list(const SuffixOracle& oracle, LexRange range, std::vector<char>& marks) const;
  std::vector<std::uint64_t> list(const SuffixOracle& oracle, LexRange range) const;
  /// Same, reading a materialized DA.
  std::vector<std::uint64_t> list(std::span<const std::uint32_t> da, LexRange range, std::vector<char>& marks) const;

  std::uint64_t size_in_bytes() const { return rmq_.size_in_bytes(); }
  void serialize(io::Writer& w) const { rmq_.serialize(w); }
  static SadaIndex load(io::Reader& r);

 private:
  template <typename DocOf>
  std::vector<std::uint64_t> list_with(DocOf&& doc_of, LexRange range, std::vector<char>& marks) const;

  succinct::RmqIndex rmq_;
};

}  // namespace rdoc
