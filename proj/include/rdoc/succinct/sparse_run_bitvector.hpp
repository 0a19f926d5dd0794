#pragma once

#include <cstdint>

#include "rdoc/succinct/bits.hpp"
#include "rdoc/succinct/sparse_bitvector.hpp"

namespace rdoc::succinct {

/// Run-length bitvector built from two Elias-Fano bitmaps: one over the ones-coordinate
/// marking where each 1-run begins, one over the zeros-coordinate marking where each
/// 0-run begins. select1 costs two sparse selects; rank1 binary searches the runs.
class SparseRunBitvector {
 public:
  SparseRunBitvector() : SparseRunBitvector(BitBuffer{}) {}
  explicit SparseRunBitvector(const BitBuffer& bits);

  std::uint64_t size() const { return size_; }
  std::uint64_t count_ones() const { return one_runs_.size(); }
  std::uint64_t rank1(std::uint64_t i) const;
  std::uint64_t rank0(std::uint64_t i) const { return i - rank1(i); }
  std::uint64_t select1(std::uint64_t j) const;
  bool access(std::uint64_t i) const { return rank1(i + 1) != rank1(i); }
  bool operator[](std::uint64_t i) const { return access(i); }

  std::uint64_t size_in_bytes() const { return one_runs_.size_in_bytes() + zero_runs_.size_in_bytes() + sizeof(size_) + 1; }

  void serialize(io::Writer& w) const;
  static SparseRunBitvector load(io::Reader& r);

 private:
  SparseRunBitvector(SparseBitvector one_runs, SparseBitvector zero_runs, std::uint64_t size, bool first_bit)
      : one_runs_(std::move(one_runs)), zero_runs_(std::move(zero_runs)), size_(size), first_bit_(first_bit) {}

  std::uint64_t zeros_before_run(std::uint64_t run) const {
    const std::uint64_t zero_runs_before = first_bit_ ? run : run + 1;
    return zero_runs_before < zero_runs_.count_ones() ? zero_runs_.select1(zero_runs_before) : zero_runs_.size();
  }
  std::uint64_t run_start(std::uint64_t run) const { return one_runs_.select1(run) + zeros_before_run(run); }

  SparseBitvector one_runs_;   // universe = number of ones
  SparseBitvector zero_runs_;  // universe = number of zeros
  std::uint64_t size_ = 0;
  bool first_bit_ = true;
};

}  // namespace rdoc::succinct
