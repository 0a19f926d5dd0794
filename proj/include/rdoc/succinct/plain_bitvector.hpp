#pragma once

#include <cstdint>
#include <vector>

#include "rdoc/succinct/bits.hpp"

namespace rdoc::succinct {

/// Uncompressed bitvector with constant-time rank and near-constant select.
///
/// rank1(i) counts ones in [0, i); select1(j) is the position of the j-th one (0-based).
/// Rank uses one absolute counter per 512-bit superblock; select samples every 4096th
/// one/zero and binary searches the superblock counters between samples.
class PlainBitvector {
 public:
  PlainBitvector() { build_index(); }
  explicit PlainBitvector(BitBuffer bits) : bits_(std::move(bits)) { build_index(); }

  std::uint64_t size() const { return bits_.size(); }
  std::uint64_t count_ones() const { return ones_; }
  bool access(std::uint64_t i) const { return bits_[i]; }
  bool operator[](std::uint64_t i) const { return bits_[i]; }

  std::uint64_t rank1(std::uint64_t i) const;
  std::uint64_t rank0(std::uint64_t i) const { return i - rank1(i); }
  std::uint64_t select1(std::uint64_t j) const;
  std::uint64_t select0(std::uint64_t j) const;

  const BitBuffer& bits() const { return bits_; }
  std::uint64_t size_in_bytes() const;

  void serialize(io::Writer& w) const { bits_.serialize(w); }
  static PlainBitvector load(io::Reader& r) { return PlainBitvector(BitBuffer::load(r)); }

 private:
  static constexpr std::uint64_t kSuperBits = 512;
  static constexpr std::uint64_t kWordsPerSuper = kSuperBits / kWordBits;
  static constexpr std::uint64_t kSelectSample = 4096;

  void build_index();
  std::uint64_t zeros_before_super(std::uint64_t sb) const { return sb * kSuperBits - super_ranks_[sb]; }

  BitBuffer bits_;
  std::vector<std::uint64_t> super_ranks_;
  std::vector<std::uint64_t> select1_hints_;
  std::vector<std::uint64_t> select0_hints_;
  std::uint64_t ones_ = 0;
};

}  // namespace rdoc::succinct
