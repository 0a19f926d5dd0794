#include "rdoc/succinct/sparse_run_bitvector.hpp"

#include <vector>

#include "rdoc/error.hpp"

namespace rdoc::succinct {

SparseRunBitvector::SparseRunBitvector(const BitBuffer& bits) : size_(bits.size()) {
  std::vector<std::uint64_t> one_starts;
  std::vector<std::uint64_t> zero_starts;
  std::uint64_t ones = 0;
  std::uint64_t zeros = 0;
  bool first = true;
  for_each_run(bits, [&](bool bit, std::uint64_t len) {
    if (first) {
      first_bit_ = bit;
      first = false;
    }
    if (bit) {
      one_starts.push_back(ones);
      ones += len;
    } else {
      zero_starts.push_back(zeros);
      zeros += len;
    }
  });
  one_runs_ = SparseBitvector(one_starts, ones);
  zero_runs_ = SparseBitvector(zero_starts, zeros);
}

std::uint64_t SparseRunBitvector::select1(std::uint64_t j) const {
  if (j >= count_ones()) throw Error(ErrorCode::OutOfRange, "select1 rank beyond count of ones");
  const std::uint64_t run = one_runs_.rank1(j + 1) - 1;
  return j + zeros_before_run(run);
}

std::uint64_t SparseRunBitvector::rank1(std::uint64_t i) const {
  if (i > size_) throw Error(ErrorCode::OutOfRange, "rank position beyond bitvector");
  const std::uint64_t runs = one_runs_.count_ones();
  if (runs == 0 || i == 0) return 0;
  // last run whose start is < i
  std::uint64_t lo = 0;
  std::uint64_t hi = runs;
  while (lo < hi) {
    const std::uint64_t mid = lo + (hi - lo) / 2;
    if (run_start(mid) < i)
      lo = mid + 1;
    else
      hi = mid;
  }
  if (lo == 0) return 0;
  const std::uint64_t run = lo - 1;
  const std::uint64_t before = one_runs_.select1(run);
  const std::uint64_t end = run + 1 < runs ? one_runs_.select1(run + 1) : count_ones();
  return before + std::min(end - before, i - run_start(run));
}

void SparseRunBitvector::serialize(io::Writer& w) const {
  w.u64(size_);
  w.u8(first_bit_ ? 1 : 0);
  one_runs_.serialize(w);
  zero_runs_.serialize(w);
}

SparseRunBitvector SparseRunBitvector::load(io::Reader& r) {
  const std::uint64_t size = r.u64();
  const bool first_bit = r.u8() != 0;
  SparseBitvector one_runs = SparseBitvector::load(r);
  SparseBitvector zero_runs = SparseBitvector::load(r);
  if (one_runs.size() + zero_runs.size() != size) throw Error(ErrorCode::FormatError, "run bitvector size mismatch");
  return SparseRunBitvector(std::move(one_runs), std::move(zero_runs), size, first_bit);
}

}  // namespace rdoc::succinct
