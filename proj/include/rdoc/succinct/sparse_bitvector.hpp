#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "rdoc/succinct/bits.hpp"
#include "rdoc/succinct/plain_bitvector.hpp"

namespace rdoc::succinct {

/// Elias-Fano encoded bitvector for sparse sets of ones.
///
/// With m ones over a universe of n bits, the low part keeps floor(log2(n/m)) bits of each
/// position and the high part is a unary-coded bucket sequence of m + n/2^low + 1 bits.
class SparseBitvector {
 public:
  SparseBitvector() : SparseBitvector(std::span<const std::uint64_t>{}, 0) {}
  /// `positions` must be strictly increasing and < `universe`.
  SparseBitvector(std::span<const std::uint64_t> positions, std::uint64_t universe);
  explicit SparseBitvector(const BitBuffer& bits);

  std::uint64_t size() const { return universe_; }
  std::uint64_t count_ones() const { return ones_; }

  /// Ones in [0, i).
  std::uint64_t rank1(std::uint64_t i) const;
  std::uint64_t rank0(std::uint64_t i) const { return i - rank1(i); }
  std::uint64_t select1(std::uint64_t j) const;
  bool access(std::uint64_t i) const;
  bool operator[](std::uint64_t i) const { return access(i); }

  /// Position of the first one at or after i, or size() when none.
  std::uint64_t successor(std::uint64_t i) const {
    const std::uint64_t r = rank1(i);
    return r < ones_ ? select1(r) : universe_;
  }

  std::uint64_t size_in_bytes() const { return high_.size_in_bytes() + low_.size_in_bytes() + 3 * sizeof(std::uint64_t); }

  void serialize(io::Writer& w) const;
  static SparseBitvector load(io::Reader& r);

 private:
  SparseBitvector(PlainBitvector high, IntVector low, unsigned low_width, std::uint64_t ones, std::uint64_t universe)
      : high_(std::move(high)), low_(std::move(low)), low_width_(low_width), ones_(ones), universe_(universe) {}

  std::uint64_t low(std::uint64_t j) const { return low_width_ == 0 ? 0 : low_[j]; }

  PlainBitvector high_;
  IntVector low_;
  unsigned low_width_ = 0;
  std::uint64_t ones_ = 0;
  std::uint64_t universe_ = 0;
};

}  // namespace rdoc::succinct
