#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "rdoc/corpus/suffix_oracle.hpp"
#include "rdoc/succinct/rmq.hpp"
#include "rdoc/succinct/sparse_bitvector.hpp"
#include "rdoc/succinct/wavelet_tree.hpp"

namespace rdoc {

/// Interleaved LCP array: ILCP[i] is the LCP entry of suffix SA[i] within its own document's
/// suffix array, i.e. the per-document LCP arrays laid out in global suffix-array order.
std::vector<std::uint32_t> build_ilcp(const SuffixOracle& oracle);

/// Number of maximal runs of equal values.
std::uint64_t count_ilcp_runs(std::span<const std::uint32_t> ilcp);

/// Run-length encoded ILCP answering document listing and counting.
///
/// VILCP holds the run heads (in a skewed wavelet tree), L marks run starts, and L' stores the
/// run lengths regrouped by value so that the runs of each value are contiguous and in text
/// order; an RMQ over VILCP drives listing.
class IlcpIndex {
 public:
  IlcpIndex() = default;
  explicit IlcpIndex(std::span<const std::uint32_t> ilcp);

  std::uint64_t size() const { return n_; }
  std::uint64_t runs() const { return rho_; }
  std::uint64_t max_value() const { return lambda_; }
  const succinct::SparseBitvector& run_starts() const { return run_starts_; }
  const succinct::SparseBitvector& leaf_runs() const { return leaf_runs_; }
  const succinct::WaveletTree& run_heads() const { return heads_; }

  /// Run heads in order.
  std::vector<std::uint64_t> vilcp() const;
  /// ILCP[i] recovered through the run structures.
  std::uint64_t value_at(std::uint64_t i) const { return heads_.access(run_starts_.rank1(i + 1) - 1); }

  /// Distinct documents in the range, in discovery order. `marks` must hold d zeros; it is
  /// returned zeroed.
  std::vector<std::uint64_t> list(const SuffixOracle& oracle, LexRange range, std::vector<char>& marks) const;
  std::vector<std::uint64_t> list(const SuffixOracle& oracle, LexRange range) const;

  /// Number of distinct documents in the range of a pattern of length m.
  std::uint64_t count(LexRange range, std::uint64_t m) const;

  std::uint64_t size_in_bytes() const;
  void serialize(io::Writer& w) const;
  static IlcpIndex load(io::Reader& r);

 private:
  std::uint64_t run_start(std::uint64_t run) const { return run < rho_ ? run_starts_.select1(run) : n_; }
  std::uint64_t leaf_run_start(std::uint64_t k) const { return k < rho_ ? leaf_runs_.select1(k) : n_; }

  std::uint64_t n_ = 0;
  std::uint64_t rho_ = 0;
  std::uint64_t lambda_ = 0;
  succinct::SparseBitvector run_starts_;  // L
  succinct::SparseBitvector leaf_runs_;   // L'
  succinct::WaveletTree heads_;           // VILCP
  succinct::RmqIndex rmq_;
  succinct::IntVector value_base_;  // runs with head value < v
};

}  // namespace rdoc
