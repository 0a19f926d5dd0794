#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "rdoc/baseline/listing.hpp"
#include "rdoc/corpus/suffix_oracle.hpp"
#include "rdoc/pdl/stores.hpp"
#include "rdoc/succinct/plain_bitvector.hpp"

namespace rdoc {

/// Listing: beta-pruned tree, unordered sets. TopK / TopKF: every node above the leaf blocks
/// keeps its frequency-ordered list (TopKF also stores the frequencies). Pruned: beta-pruned
/// tree with frequency-ordered lists and frequencies, answered by merging.
enum class PdlVariant : std::uint8_t { Listing = 0, TopK = 1, TopKF = 2, Pruned = 3 };

std::string_view to_string(PdlVariant variant);
PdlVariant parse_pdl_variant(std::string_view name);

inline constexpr std::uint64_t kDefaultBlockSize = 256;
inline constexpr double kDefaultBeta = 16.0;

class PdlIndex;

/// Documents of one range in non-increasing frequency order, extracted on demand.
class PdlCursor {
 public:
  PdlCursor() = default;

  std::optional<DocFreq> next();
  std::optional<DocFreq> peek();
  /// Whether tf values are real (false for the TopK variant without frequencies).
  bool has_frequencies() const { return has_freq_; }

 private:
  friend class PdlIndex;
  std::optional<DocFreq> pull();

  bool lazy_ = false;
  bool has_freq_ = false;
  pdl::SequenceStore::Cursor docs_;
  pdl::FrequencyStore::Cursor freqs_;
  std::vector<DocFreq> list_;
  std::size_t pos_ = 0;
  std::optional<DocFreq> ahead_;
};

/// Sampled suffix tree with precomputed document lists.
///
/// Nodes 0..L-1 are the leaf blocks left to right, nodes L..L+I-1 the retained internal
/// nodes in post-order. B_L marks leaf interval starts, B_F marks nodes that are first
/// children, F gives the parent of each first child and N the leaf after each internal node.
class PdlIndex {
 public:
  PdlIndex() = default;

  PdlVariant variant() const { return variant_; }
  std::uint64_t block_size() const { return b_; }
  double beta() const { return beta_; }
  std::uint64_t leaves() const { return leaves_; }
  std::uint64_t internal_nodes() const { return internal_; }
  std::uint64_t nodes() const { return leaves_ + internal_; }
  bool has_frequencies() const { return variant_ == PdlVariant::TopKF || variant_ == PdlVariant::Pruned; }

  /// Distinct documents of the range. `marks` must hold d zeros and is returned zeroed.
  std::vector<std::uint64_t> list(const SuffixOracle& oracle, LexRange range, std::vector<char>& marks) const;
  std::vector<std::uint64_t> list(const SuffixOracle& oracle, LexRange range) const;

  /// The k most frequent documents, ties by smaller id. Not available for Listing; with the
  /// TopK variant tf is 0 whenever the answer comes from a stored list.
  std::vector<DocFreq> topk(const SuffixOracle& oracle, LexRange range, std::uint64_t k) const;

  /// Incremental top-k; requires TopK or TopKF.
  PdlCursor cursor(const SuffixOracle& oracle, LexRange range) const;

  /// Sampled node whose interval is exactly `range`, if any.
  std::optional<std::uint64_t> node_for(LexRange range) const;
  /// Interval of every sampled node, by node index.
  std::vector<LexRange> node_ranges() const;
  /// Decompressed stored list of a node, in stored order.
  std::vector<std::uint64_t> node_documents(std::uint64_t node) const;
  std::vector<std::uint64_t> node_frequencies(std::uint64_t node) const;

  /// Total length of the stored lists before compression, and the tokens actually stored.
  std::uint64_t uncompressed_tokens() const { return raw_tokens_; }
  std::uint64_t stored_tokens() const;
  std::uint64_t size_in_bytes() const;
  std::uint64_t store_bytes() const;

  void serialize(io::Writer& w) const;
  static PdlIndex load(io::Reader& r);

  friend PdlIndex build_pdl(const SuffixOracle& oracle, PdlVariant variant, std::uint64_t b, double beta);

 private:
  std::uint64_t leaf_start(std::uint64_t leaf) const { return leaf < leaves_ ? leaf_starts_.select1(leaf) : n_; }
  /// (parent node, leaf following it) of a first child.
  std::pair<std::uint64_t, std::uint64_t> parent(std::uint64_t node) const {
    const std::uint64_t par = parents_[first_child_.rank1(node)];
    return {leaves_ + par, next_leaf_[par]};
  }
  /// Stored nodes covering leaves [ln, rn], climbing from ln while the parent still fits.
  template <typename F>
  void for_each_cover(std::uint64_t ln, std::uint64_t rn, F&& f) const;
  template <typename F>
  void for_each_document(std::uint64_t node, F&& f) const;

  PdlVariant variant_ = PdlVariant::Listing;
  std::uint64_t b_ = kDefaultBlockSize;
  double beta_ = kDefaultBeta;
  std::uint64_t n_ = 0;
  std::uint64_t docs_ = 0;
  std::uint64_t leaves_ = 0;
  std::uint64_t internal_ = 0;
  std::uint64_t raw_tokens_ = 0;
  succinct::SparseBitvector leaf_starts_;  // B_L
  succinct::PlainBitvector first_child_;   // B_F
  succinct::IntVector parents_;            // F
  succinct::IntVector next_leaf_;          // N
  pdl::SetStore sets_;
  pdl::SequenceStore sequences_;
  pdl::FrequencyStore frequencies_;
};

/// Builds any variant. b >= 2; beta >= 1 (ignored by TopK and TopKF).
PdlIndex build_pdl(const SuffixOracle& oracle, PdlVariant variant, std::uint64_t b = kDefaultBlockSize,
                   double beta = kDefaultBeta);

inline PdlIndex build_pdl_listing(const SuffixOracle& oracle, std::uint64_t b = kDefaultBlockSize, double beta = kDefaultBeta) {
  return build_pdl(oracle, PdlVariant::Listing, b, beta);
}
inline PdlIndex build_pdl_topk(const SuffixOracle& oracle, std::uint64_t b = kDefaultBlockSize, bool frequencies = true) {
  return build_pdl(oracle, frequencies ? PdlVariant::TopKF : PdlVariant::TopK, b);
}

}  // namespace rdoc
