#pragma once

#include <cstdint>
#include <memory>
#include <string_view>
#include <vector>

#include "rdoc/corpus/collection.hpp"

namespace rdoc {

/// Inclusive suffix-array interval [lo, hi]; empty when lo > hi.
struct LexRange {
  std::uint64_t lo = 1;
  std::uint64_t hi = 0;

  bool empty() const { return lo > hi; }
  std::uint64_t size() const { return empty() ? 0 : hi - lo + 1; }
  friend bool operator==(const LexRange&, const LexRange&) = default;
};

/// Suffix array over a collection plus the pattern search and position-to-document mapping
/// every index queries through.
///
/// Terminators compare below every byte, and among themselves by descending text position,
/// so the last document's terminator suffix sorts first.
class SuffixOracle {
 public:
  SuffixOracle() = default;
  explicit SuffixOracle(std::shared_ptr<const Collection> collection, std::uint32_t sample_period = 32);

  const Collection& collection() const { return *collection_; }
  std::shared_ptr<const Collection> collection_ptr() const { return collection_; }
  std::uint64_t size() const { return sa_.size(); }
  const std::vector<std::uint32_t>& suffix_array() const { return sa_; }

  /// Text position of the i-th smallest suffix.
  std::uint64_t locate(std::uint64_t i) const { return sa_[i]; }
  LexRange find(std::string_view pattern) const;
  std::uint64_t doc_of(std::uint64_t i) const;
  std::vector<std::uint32_t> document_array() const;

  /// Locate cost knob for benchmarks; the suffix array itself is stored in full.
  std::uint32_t sample_period() const { return sample_period_; }

  std::uint64_t size_in_bytes() const { return sa_.size() * sizeof(std::uint32_t); }

  void serialize(io::Writer& w) const;
  static SuffixOracle load(io::Reader& r, std::shared_ptr<const Collection> collection);

 private:
  std::shared_ptr<const Collection> collection_;
  std::vector<std::uint32_t> sa_;
  std::uint32_t sample_period_ = 32;
};

/// Global LCP array: lcp[i] is the longest common prefix of the suffixes at SA[i-1] and
/// SA[i] (lcp[0] = 0). Terminators never match, so prefixes stop at document ends.
std::vector<std::uint32_t> build_lcp(const Collection& c, const std::vector<std::uint32_t>& sa);

}  // namespace rdoc
