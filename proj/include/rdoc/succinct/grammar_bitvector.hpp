#pragma once

#include <cstdint>

#include "rdoc/succinct/bits.hpp"

namespace rdoc::succinct {

/// Grammar-compressed bitvector. The bits are tokenized into (zeros, ones) runs, each distinct
/// run becomes a terminal, and Re-Pair compresses the token sequence. Every symbol records how
/// many bits and ones it expands to; the top-level sequence is sampled every kSample symbols.
class GrammarBitvector {
 public:
  static constexpr std::uint64_t kSample = 64;

  GrammarBitvector() : GrammarBitvector(BitBuffer{}) {}
  explicit GrammarBitvector(const BitBuffer& bits);

  std::uint64_t size() const { return size_; }
  std::uint64_t count_ones() const { return ones_; }
  std::uint64_t rank1(std::uint64_t i) const;
  std::uint64_t rank0(std::uint64_t i) const { return i - rank1(i); }
  std::uint64_t select1(std::uint64_t j) const;
  bool access(std::uint64_t i) const { return rank1(i + 1) != rank1(i); }
  bool operator[](std::uint64_t i) const { return access(i); }

  std::uint64_t rule_count() const { return left_.size(); }
  std::uint64_t size_in_bytes() const;

  void serialize(io::Writer& w) const;
  static GrammarBitvector load(io::Reader& r);

 private:
  struct Raw {};
  explicit GrammarBitvector(Raw) {}

  bool is_rule(std::uint64_t sym) const { return sym >= term_zeros_.size(); }

  std::uint64_t size_ = 0;
  std::uint64_t ones_ = 0;
  IntVector term_zeros_;  // terminal t is term_zeros_[t] zeros then term_ones_[t] ones
  IntVector term_ones_;
  IntVector left_;  // rule r = terminals + r expands to left_[r] right_[r]
  IntVector right_;
  IntVector sym_bits_;  // per symbol (terminals first, then rules)
  IntVector sym_ones_;
  IntVector top_;
  IntVector sample_bits_;  // bits before top-level symbol k * kSample
  IntVector sample_ones_;
};

}  // namespace rdoc::succinct
