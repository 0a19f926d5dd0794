#pragma once

#include <cstdint>

#include "rdoc/succinct/bits.hpp"
#include "rdoc/succinct/sparse_bitvector.hpp"

namespace rdoc::succinct {

/// Run-length bitvector whose blocks each cover exactly kOnesPerBlock one-bits (the last
/// block may cover fewer). Runs are delta coded as (zeros+1, ones) pairs; a 1-run crossing a
/// block boundary is split. Sparse directories give each block's first bit and the offset
/// of its encoding; the ones before block b are b * kOnesPerBlock.
class DeltaBlockBitvector {
 public:
  static constexpr std::uint64_t kOnesPerBlock = 128;

  DeltaBlockBitvector() : DeltaBlockBitvector(BitBuffer{}) {}
  explicit DeltaBlockBitvector(const BitBuffer& bits);

  std::uint64_t size() const { return size_; }
  std::uint64_t count_ones() const { return ones_; }
  std::uint64_t rank1(std::uint64_t i) const;
  std::uint64_t rank0(std::uint64_t i) const { return i - rank1(i); }
  std::uint64_t select1(std::uint64_t j) const;
  bool access(std::uint64_t i) const { return rank1(i + 1) != rank1(i); }
  bool operator[](std::uint64_t i) const { return access(i); }

  std::uint64_t size_in_bytes() const {
    return data_.size_in_bytes() + bits_dir_.size_in_bytes() + code_dir_.size_in_bytes() + 2 * sizeof(std::uint64_t);
  }

  void serialize(io::Writer& w) const;
  static DeltaBlockBitvector load(io::Reader& r);

 private:
  DeltaBlockBitvector(BitBuffer data, SparseBitvector bits_dir, SparseBitvector code_dir, std::uint64_t size, std::uint64_t ones)
      : data_(std::move(data)), bits_dir_(std::move(bits_dir)), code_dir_(std::move(code_dir)), size_(size), ones_(ones) {}

  BitBuffer data_;
  SparseBitvector bits_dir_;  // first bit covered by each block
  SparseBitvector code_dir_;  // offset of each block's encoding in data_
  std::uint64_t size_ = 0;
  std::uint64_t ones_ = 0;
};

}  // namespace rdoc::succinct
