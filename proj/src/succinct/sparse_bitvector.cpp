#include "rdoc/succinct/sparse_bitvector.hpp"

#include "rdoc/error.hpp"

namespace rdoc::succinct {

namespace {

std::vector<std::uint64_t> ones_of(const BitBuffer& bits) {
  std::vector<std::uint64_t> pos;
  for (std::uint64_t w = 0; w < bits.word_count(); ++w) {
    std::uint64_t word = bits.word(w);
    while (word != 0) {
      pos.push_back(w * kWordBits + static_cast<std::uint64_t>(std::countr_zero(word)));
      word &= word - 1;
    }
  }
  return pos;
}

}  // namespace

SparseBitvector::SparseBitvector(const BitBuffer& bits) : SparseBitvector(ones_of(bits), bits.size()) {}

SparseBitvector::SparseBitvector(std::span<const std::uint64_t> positions, std::uint64_t universe)
    : ones_(positions.size()), universe_(universe) {
  low_width_ = (ones_ == 0 || universe_ <= ones_) ? 0 : floor_log2(universe_ / ones_);
  const std::uint64_t buckets = (universe_ >> low_width_) + 1;
  BitBuffer high(ones_ + buckets);
  if (low_width_ > 0) low_ = IntVector(ones_, low_width_);
  std::uint64_t prev = 0;
  for (std::uint64_t j = 0; j < ones_; ++j) {
    const std::uint64_t p = positions[j];
    if (p >= universe_ || (j > 0 && p <= prev))
      throw Error(ErrorCode::InvalidParam, "sparse bitvector positions must be strictly increasing and inside the universe");
    prev = p;
    high.set((p >> low_width_) + j);
    if (low_width_ > 0) low_.set(j, p & ((std::uint64_t{1} << low_width_) - 1));
  }
  high_ = PlainBitvector(std::move(high));
}

std::uint64_t SparseBitvector::select1(std::uint64_t j) const {
  if (j >= ones_) throw Error(ErrorCode::OutOfRange, "select1 rank beyond count of ones");
  return ((high_.select1(j) - j) << low_width_) | low(j);
}

std::uint64_t SparseBitvector::rank1(std::uint64_t i) const {
  if (i > universe_) throw Error(ErrorCode::OutOfRange, "rank position beyond bitvector");
  if (ones_ == 0 || i == 0) return 0;
  if (i == universe_) return ones_;
  const std::uint64_t bucket = i >> low_width_;
  const std::uint64_t target_low = i & ((std::uint64_t{1} << low_width_) - 1);
  // Bucket `bucket` starts right after the bucket-th zero of the high part.
  std::uint64_t pos = bucket == 0 ? 0 : high_.select0(bucket - 1) + 1;
  std::uint64_t j = pos - bucket;  // ones with high part < bucket
  while (pos < high_.size() && high_[pos]) {
    if (low(j) >= target_low) break;
    ++pos;
    ++j;
  }
  return j;
}

bool SparseBitvector::access(std::uint64_t i) const {
  if (i >= universe_) throw Error(ErrorCode::OutOfRange, "access beyond bitvector");
  const std::uint64_t r = rank1(i);
  return r < ones_ && select1(r) == i;
}

void SparseBitvector::serialize(io::Writer& w) const {
  w.u64(universe_);
  w.u64(ones_);
  w.u32(low_width_);
  high_.serialize(w);
  if (low_width_ > 0) low_.serialize(w);
}

SparseBitvector SparseBitvector::load(io::Reader& r) {
  const std::uint64_t universe = r.u64();
  const std::uint64_t ones = r.u64();
  const unsigned low_width = r.u32();
  PlainBitvector high = PlainBitvector::load(r);
  IntVector low;
  if (low_width > 0) low = IntVector::load(r);
  if (high.count_ones() != ones) throw Error(ErrorCode::FormatError, "sparse bitvector header mismatch");
  return SparseBitvector(std::move(high), std::move(low), low_width, ones, universe);
}

}  // namespace rdoc::succinct
