#include "rdoc/succinct/run_length_bitvector.hpp"

#include <vector>

#include "rdoc/error.hpp"

namespace rdoc::succinct {

namespace {

constexpr std::uint64_t kBlockBits = kDeltaBlockBytes * 8;

/// Appends a group of delta codes, starting a new padded block when the group would not fit.
/// Returns true when the group opened a new block.
template <typename... V>
bool append_group(BitBuffer& data, V... values) {
  const std::uint64_t need = (std::uint64_t{0} + ... + delta_length(values));
  bool opened = false;
  const std::uint64_t used = data.size() % kBlockBits;
  if (data.size() == 0) {
    opened = true;
  } else if (used == 0 || used + need > kBlockBits) {
    if (used != 0) data.append_run(false, kBlockBits - used);
    opened = true;
  }
  (write_delta(data, values), ...);
  return opened;
}

}  // namespace

// ---------------------------------------------------------------- RunLengthBitvector

RunLengthBitvector::RunLengthBitvector(const BitBuffer& bits) : size_(bits.size()) {
  std::vector<std::uint64_t> bits_before;
  std::vector<std::uint64_t> ones_before;
  std::uint64_t pos = 0;
  std::uint64_t ones = 0;
  std::uint64_t pending_zeros = 0;
  for_each_run(bits, [&](bool bit, std::uint64_t len) {
    if (!bit) {
      pending_zeros = len;
      return;
    }
    if (append_group(data_, pending_zeros + 1, len)) {
      bits_before.push_back(pos);
      ones_before.push_back(ones);
    }
    pos += pending_zeros + len;
    ones += len;
    pending_zeros = 0;
    ++pairs_;
  });
  ones_ = ones;
  bits_dir_ = SparseBitvector(bits_before, size_ + 1);
  ones_dir_ = SparseBitvector(ones_before, ones_ + 1);
}

std::uint64_t RunLengthBitvector::rank1(std::uint64_t i) const {
  if (i > size_) throw Error(ErrorCode::OutOfRange, "rank position beyond bitvector");
  if (i == 0 || ones_ == 0) return 0;
  const std::uint64_t starts = bits_dir_.rank1(i);  // blocks starting before i
  if (starts == 0) return 0;
  const std::uint64_t b = starts - 1;
  std::uint64_t pos = bits_dir_.select1(b);
  std::uint64_t ones = ones_dir_.select1(b);
  const std::uint64_t limit = block_ones_limit(b);
  DeltaReader reader(data_, b * kBlockBits);
  while (ones < limit) {
    pos += reader.next() - 1;
    const std::uint64_t run = reader.next();
    if (i <= pos) return ones;
    if (i <= pos + run) return ones + (i - pos);
    pos += run;
    ones += run;
  }
  return ones;
}

std::uint64_t RunLengthBitvector::select1(std::uint64_t j) const {
  if (j >= ones_) throw Error(ErrorCode::OutOfRange, "select1 rank beyond count of ones");
  const std::uint64_t b = ones_dir_.rank1(j + 1) - 1;
  std::uint64_t pos = bits_dir_.select1(b);
  std::uint64_t ones = ones_dir_.select1(b);
  DeltaReader reader(data_, b * kBlockBits);
  for (;;) {
    pos += reader.next() - 1;
    const std::uint64_t run = reader.next();
    if (j < ones + run) return pos + (j - ones);
    pos += run;
    ones += run;
  }
}

void RunLengthBitvector::serialize(io::Writer& w) const {
  w.u64(size_);
  w.u64(ones_);
  w.u64(pairs_);
  data_.serialize(w);
  bits_dir_.serialize(w);
  ones_dir_.serialize(w);
}

RunLengthBitvector RunLengthBitvector::load(io::Reader& r) {
  const std::uint64_t size = r.u64();
  const std::uint64_t ones = r.u64();
  const std::uint64_t pairs = r.u64();
  BitBuffer data = BitBuffer::load(r);
  SparseBitvector bits_dir = SparseBitvector::load(r);
  SparseBitvector ones_dir = SparseBitvector::load(r);
  return RunLengthBitvector(std::move(data), std::move(bits_dir), std::move(ones_dir), size, ones, pairs);
}

// ---------------------------------------------------------------- GapBitvector

GapBitvector::GapBitvector(const BitBuffer& bits) : size_(bits.size()) {
  std::vector<std::uint64_t> bits_before;
  std::vector<std::uint64_t> ones_before;
  std::uint64_t next_free = 0;  // position right after the previous one
  std::uint64_t ones = 0;
  for (std::uint64_t w = 0; w < bits.word_count(); ++w) {
    std::uint64_t word = bits.word(w);
    while (word != 0) {
      const std::uint64_t p = w * kWordBits + static_cast<std::uint64_t>(std::countr_zero(word));
      word &= word - 1;
      if (append_group(data_, p - next_free + 1)) {
        bits_before.push_back(next_free);
        ones_before.push_back(ones);
      }
      next_free = p + 1;
      ++ones;
    }
  }
  ones_ = ones;
  bits_dir_ = SparseBitvector(bits_before, size_ + 1);
  ones_dir_ = SparseBitvector(ones_before, ones_ + 1);
}

std::uint64_t GapBitvector::rank1(std::uint64_t i) const {
  if (i > size_) throw Error(ErrorCode::OutOfRange, "rank position beyond bitvector");
  if (i == 0 || ones_ == 0) return 0;
  const std::uint64_t starts = bits_dir_.rank1(i + 1);  // blocks whose start <= i
  if (starts == 0) return 0;
  const std::uint64_t b = starts - 1;
  std::uint64_t pos = bits_dir_.select1(b);
  std::uint64_t ones = ones_dir_.select1(b);
  const std::uint64_t limit = block_ones_limit(b);
  DeltaReader reader(data_, b * kBlockBits);
  while (ones < limit) {
    pos += reader.next() - 1;
    if (pos >= i) return ones;
    ++ones;
    ++pos;
  }
  return ones;
}

std::uint64_t GapBitvector::select1(std::uint64_t j) const {
  if (j >= ones_) throw Error(ErrorCode::OutOfRange, "select1 rank beyond count of ones");
  const std::uint64_t b = ones_dir_.rank1(j + 1) - 1;
  std::uint64_t pos = bits_dir_.select1(b);
  std::uint64_t ones = ones_dir_.select1(b);
  DeltaReader reader(data_, b * kBlockBits);
  for (;;) {
    pos += reader.next() - 1;
    if (ones == j) return pos;
    ++ones;
    ++pos;
  }
}

void GapBitvector::serialize(io::Writer& w) const {
  w.u64(size_);
  w.u64(ones_);
  data_.serialize(w);
  bits_dir_.serialize(w);
  ones_dir_.serialize(w);
}

GapBitvector GapBitvector::load(io::Reader& r) {
  const std::uint64_t size = r.u64();
  const std::uint64_t ones = r.u64();
  BitBuffer data = BitBuffer::load(r);
  SparseBitvector bits_dir = SparseBitvector::load(r);
  SparseBitvector ones_dir = SparseBitvector::load(r);
  return GapBitvector(std::move(data), std::move(bits_dir), std::move(ones_dir), size, ones);
}

}  // namespace rdoc::succinct
