#pragma once

#include <cstdint>

#include "rdoc/succinct/bits.hpp"
#include "rdoc/succinct/sparse_bitvector.hpp"

namespace rdoc::succinct {

/// Encoded payload bytes per directory block for the delta-coded bitvectors.
inline constexpr std::uint64_t kDeltaBlockBytes = 32;

/// Run-length encoded bitvector: alternating (0-run, 1-run) lengths as delta codes, packed
/// into fixed 32-byte blocks. A code pair never straddles a block; each block records the
/// number of bits and ones before it in two Elias-Fano directories.
class RunLengthBitvector {
 public:
  RunLengthBitvector() : RunLengthBitvector(BitBuffer{}) {}
  explicit RunLengthBitvector(const BitBuffer& bits);

  std::uint64_t size() const { return size_; }
  std::uint64_t count_ones() const { return ones_; }
  std::uint64_t rank1(std::uint64_t i) const;
  std::uint64_t rank0(std::uint64_t i) const { return i - rank1(i); }
  std::uint64_t select1(std::uint64_t j) const;
  bool access(std::uint64_t i) const { return rank1(i + 1) != rank1(i); }
  bool operator[](std::uint64_t i) const { return access(i); }

  std::uint64_t run_pairs() const { return pairs_; }
  std::uint64_t size_in_bytes() const {
    return data_.size_in_bytes() + bits_dir_.size_in_bytes() + ones_dir_.size_in_bytes() + 3 * sizeof(std::uint64_t);
  }

  void serialize(io::Writer& w) const;
  static RunLengthBitvector load(io::Reader& r);

 private:
  RunLengthBitvector(BitBuffer data, SparseBitvector bits_dir, SparseBitvector ones_dir, std::uint64_t size,
                     std::uint64_t ones, std::uint64_t pairs)
      : data_(std::move(data)), bits_dir_(std::move(bits_dir)), ones_dir_(std::move(ones_dir)), size_(size), ones_(ones), pairs_(pairs) {}

  std::uint64_t block_ones_limit(std::uint64_t b) const {
    return b + 1 < ones_dir_.count_ones() ? ones_dir_.select1(b + 1) : ones_;
  }

  BitBuffer data_;
  SparseBitvector bits_dir_;
  SparseBitvector ones_dir_;
  std::uint64_t size_ = 0;
  std::uint64_t ones_ = 0;
  std::uint64_t pairs_ = 0;
};

/// Gap-encoded bitvector: only the 0-runs between consecutive ones are delta coded, using
/// the same 32-byte block layout as RunLengthBitvector.
class GapBitvector {
 public:
  GapBitvector() : GapBitvector(BitBuffer{}) {}
  explicit GapBitvector(const BitBuffer& bits);

  std::uint64_t size() const { return size_; }
  std::uint64_t count_ones() const { return ones_; }
  std::uint64_t rank1(std::uint64_t i) const;
  std::uint64_t rank0(std::uint64_t i) const { return i - rank1(i); }
  std::uint64_t select1(std::uint64_t j) const;
  bool access(std::uint64_t i) const { return rank1(i + 1) != rank1(i); }
  bool operator[](std::uint64_t i) const { return access(i); }

  std::uint64_t size_in_bytes() const {
    return data_.size_in_bytes() + bits_dir_.size_in_bytes() + ones_dir_.size_in_bytes() + 2 * sizeof(std::uint64_t);
  }

  void serialize(io::Writer& w) const;
  static GapBitvector load(io::Reader& r);

 private:
  GapBitvector(BitBuffer data, SparseBitvector bits_dir, SparseBitvector ones_dir, std::uint64_t size, std::uint64_t ones)
      : data_(std::move(data)), bits_dir_(std::move(bits_dir)), ones_dir_(std::move(ones_dir)), size_(size), ones_(ones) {}

  std::uint64_t block_ones_limit(std::uint64_t b) const {
    return b + 1 < ones_dir_.count_ones() ? ones_dir_.select1(b + 1) : ones_;
  }

  BitBuffer data_;
  SparseBitvector bits_dir_;
  SparseBitvector ones_dir_;
  std::uint64_t size_ = 0;
  std::uint64_t ones_ = 0;
};

}  // namespace rdoc::succinct
