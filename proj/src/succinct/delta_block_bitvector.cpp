#include "rdoc/succinct/delta_block_bitvector.hpp"

#include <vector>

#include "rdoc/error.hpp"

namespace rdoc::succinct {

DeltaBlockBitvector::DeltaBlockBitvector(const BitBuffer& bits) : size_(bits.size()) {
  std::vector<std::uint64_t> block_bits;
  std::vector<std::uint64_t> block_codes;
  std::uint64_t pos = 0;
  std::uint64_t ones = 0;
  std::uint64_t pending_zeros = 0;
  for_each_run(bits, [&](bool bit, std::uint64_t len) {
    if (!bit) {
      pending_zeros = len;
      pos += len;
      return;
    }
    while (len > 0) {
      const std::uint64_t room = kOnesPerBlock - ones % kOnesPerBlock;
      const std::uint64_t take = std::min(room, len);
      if (ones % kOnesPerBlock == 0) {
        block_bits.push_back(pos - pending_zeros);
        block_codes.push_back(data_.size());
      }
      write_delta(data_, pending_zeros + 1);
      write_delta(data_, take);
      pending_zeros = 0;
      pos += take;
      ones += take;
      len -= take;
    }
  });
  ones_ = ones;
  bits_dir_ = SparseBitvector(block_bits, size_ + 1);
  code_dir_ = SparseBitvector(block_codes, data_.size() + 1);
}

std::uint64_t DeltaBlockBitvector::rank1(std::uint64_t i) const {
  if (i > size_) throw Error(ErrorCode::OutOfRange, "rank position beyond bitvector");
  if (i == 0 || ones_ == 0) return 0;
  const std::uint64_t starts = bits_dir_.rank1(i);
  if (starts == 0) return 0;
  const std::uint64_t b = starts - 1;
  std::uint64_t pos = bits_dir_.select1(b);
  std::uint64_t ones = b * kOnesPerBlock;
  const std::uint64_t limit = std::min(ones_, ones + kOnesPerBlock);
  DeltaReader reader(data_, code_dir_.select1(b));
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

std::uint64_t DeltaBlockBitvector::select1(std::uint64_t j) const {
  if (j >= ones_) throw Error(ErrorCode::OutOfRange, "select1 rank beyond count of ones");
  const std::uint64_t b = j / kOnesPerBlock;
  std::uint64_t pos = bits_dir_.select1(b);
  std::uint64_t ones = b * kOnesPerBlock;
  DeltaReader reader(data_, code_dir_.select1(b));
  for (;;) {
    pos += reader.next() - 1;
    const std::uint64_t run = reader.next();
    if (j < ones + run) return pos + (j - ones);
    pos += run;
    ones += run;
  }
}

void DeltaBlockBitvector::serialize(io::Writer& w) const {
  w.u64(size_);
  w.u64(ones_);
  data_.serialize(w);
  bits_dir_.serialize(w);
  code_dir_.serialize(w);
}

DeltaBlockBitvector DeltaBlockBitvector::load(io::Reader& r) {
  const std::uint64_t size = r.u64();
  const std::uint64_t ones = r.u64();
  BitBuffer data = BitBuffer::load(r);
  SparseBitvector bits_dir = SparseBitvector::load(r);
  SparseBitvector code_dir = SparseBitvector::load(r);
  if (bits_dir.count_ones() != (ones + kOnesPerBlock - 1) / kOnesPerBlock)
    throw Error(ErrorCode::FormatError, "delta block directory mismatch");
  return DeltaBlockBitvector(std::move(data), std::move(bits_dir), std::move(code_dir), size, ones);
}

}  // namespace rdoc::succinct
