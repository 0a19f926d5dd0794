#pragma once

#include <bit>
#include <cassert>
#include <algorithm>
#include <cstdint>
#include <vector>

#include "rdoc/io/serialize.hpp"

namespace rdoc::succinct {

inline constexpr std::uint64_t kWordBits = 64;

/// Position of the k-th (0-based) set bit of `word`. Requires k < popcount(word).
inline unsigned select_in_word(std::uint64_t word, unsigned k) {
  unsigned base = 0;
  for (;;) {
    const unsigned c = static_cast<unsigned>(std::popcount(word & 0xffU));
    if (k < c) break;
    k -= c;
    word >>= 8;
    base += 8;
  }
  for (;;) {
    if (word & 1U) {
      if (k == 0) return base;
      --k;
    }
    word >>= 1;
    ++base;
  }
}

/// floor(log2(x)) for x > 0.
inline unsigned floor_log2(std::uint64_t x) { return 63U - static_cast<unsigned>(std::countl_zero(x)); }

/// Number of bits needed to store values in [0, x].
inline unsigned bits_for(std::uint64_t x) { return x == 0 ? 1U : floor_log2(x) + 1U; }

/// Growable bit sequence with word-level access; the raw material every bitvector is built from.
class BitBuffer {
 public:
  BitBuffer() = default;
  explicit BitBuffer(std::uint64_t size, bool value = false)
      : words_((size + kWordBits - 1) / kWordBits, value ? ~std::uint64_t{0} : 0), size_(size) {
    trim();
  }

  std::uint64_t size() const { return size_; }
  bool empty() const { return size_ == 0; }

  bool operator[](std::uint64_t i) const { return (words_[i / kWordBits] >> (i % kWordBits)) & 1U; }

  void set(std::uint64_t i, bool value = true) {
    const std::uint64_t mask = std::uint64_t{1} << (i % kWordBits);
    if (value)
      words_[i / kWordBits] |= mask;
    else
      words_[i / kWordBits] &= ~mask;
  }

  void push_back(bool bit) {
    if (size_ % kWordBits == 0) words_.push_back(0);
    if (bit) words_.back() |= std::uint64_t{1} << (size_ % kWordBits);
    ++size_;
  }

  /// Appends `count` copies of `bit`.
  void append_run(bool bit, std::uint64_t count) {
    while (count > 0 && size_ % kWordBits != 0) {
      push_back(bit);
      --count;
    }
    while (count >= kWordBits) {
      words_.push_back(bit ? ~std::uint64_t{0} : 0);
      size_ += kWordBits;
      count -= kWordBits;
    }
    while (count-- > 0) push_back(bit);
  }

  /// Appends the low `width` bits of `value`, least significant first.
  void append_bits(std::uint64_t value, unsigned width) {
    if (width == 0) return;
    if (width < kWordBits) value &= (std::uint64_t{1} << width) - 1;
    const unsigned offset = size_ % kWordBits;
    if (offset == 0) words_.push_back(0);
    words_.back() |= value << offset;
    if (offset + width > kWordBits) words_.push_back(value >> (kWordBits - offset));
    size_ += width;
  }

  /// Reads `width` (<= 64) bits starting at position `pos`.
  std::uint64_t get_bits(std::uint64_t pos, unsigned width) const {
    if (width == 0) return 0;
    const std::uint64_t w = pos / kWordBits;
    const unsigned offset = pos % kWordBits;
    std::uint64_t value = words_[w] >> offset;
    if (offset + width > kWordBits) value |= words_[w + 1] << (kWordBits - offset);
    return width == kWordBits ? value : value & ((std::uint64_t{1} << width) - 1);
  }

  void set_bits(std::uint64_t pos, std::uint64_t value, unsigned width) {
    if (width == 0) return;
    const std::uint64_t mask = width == kWordBits ? ~std::uint64_t{0} : (std::uint64_t{1} << width) - 1;
    value &= mask;
    const std::uint64_t w = pos / kWordBits;
    const unsigned offset = pos % kWordBits;
    words_[w] = (words_[w] & ~(mask << offset)) | (value << offset);
    if (offset + width > kWordBits) {
      const unsigned spill = offset + width - kWordBits;
      const std::uint64_t high_mask = (std::uint64_t{1} << spill) - 1;
      words_[w + 1] = (words_[w + 1] & ~high_mask) | (value >> (kWordBits - offset));
    }
  }

  const std::vector<std::uint64_t>& words() const { return words_; }
  std::uint64_t word(std::uint64_t w) const { return words_[w]; }
  std::uint64_t word_count() const { return words_.size(); }

  std::uint64_t count_ones() const {
    std::uint64_t c = 0;
    for (auto w : words_) c += static_cast<std::uint64_t>(std::popcount(w));
    return c;
  }

  std::uint64_t size_in_bytes() const { return words_.size() * sizeof(std::uint64_t) + sizeof(size_); }

  void serialize(io::Writer& w) const {
    w.u64(size_);
    w.vec(words_);
  }
  static BitBuffer load(io::Reader& r) {
    BitBuffer b;
    b.size_ = r.u64();
    b.words_ = r.vec<std::uint64_t>();
    if (b.words_.size() != (b.size_ + kWordBits - 1) / kWordBits)
      throw Error(ErrorCode::FormatError, "bit buffer length mismatch");
    return b;
  }

  friend bool operator==(const BitBuffer&, const BitBuffer&) = default;

 private:
  void trim() {
    if (size_ % kWordBits != 0 && !words_.empty()) words_.back() &= (std::uint64_t{1} << (size_ % kWordBits)) - 1;
  }

  std::vector<std::uint64_t> words_;
  std::uint64_t size_ = 0;
};

/// Calls f(bit, length) for each maximal run of equal bits, left to right.
template <typename F>
void for_each_run(const BitBuffer& bits, F&& f) {
  const std::uint64_t n = bits.size();
  std::uint64_t i = 0;
  while (i < n) {
    const bool bit = bits[i];
    std::uint64_t j = i;
    // advance word-wise over the run
    for (;;) {
      const std::uint64_t w = j / kWordBits;
      const unsigned offset = j % kWordBits;
      std::uint64_t word = bits.word(w) >> offset;
      if (!bit) word = ~word;
      const unsigned avail = static_cast<unsigned>(kWordBits - offset);
      const unsigned run = word == ~std::uint64_t{0} ? avail : std::min<unsigned>(avail, static_cast<unsigned>(std::countr_one(word)));
      j += run;
      if (j >= n) {
        j = n;
        break;
      }
      if (run < avail) break;
    }
    f(bit, j - i);
    i = j;
  }
}

/// Elias delta code for values >= 1. Payload bits are stored least significant first so the
/// decoder can pull them with a single word read.
inline void write_delta(BitBuffer& out, std::uint64_t value) {
  assert(value >= 1);
  const unsigned n = floor_log2(value);  // value has n+1 significant bits
  const unsigned len = floor_log2(n + 1);
  out.append_run(false, len);
  out.push_back(true);
  out.append_bits(n + 1, len);  // n+1 without its top bit
  out.append_bits(value, n);    // value without its top bit
}

inline unsigned delta_length(std::uint64_t value) {
  const unsigned n = floor_log2(value);
  const unsigned len = floor_log2(n + 1);
  return 2 * len + 1 + n;
}

/// Sequential delta-code decoder over a BitBuffer.
class DeltaReader {
 public:
  DeltaReader(const BitBuffer& bits, std::uint64_t pos) : bits_(&bits), pos_(pos) {}

  std::uint64_t next() {
    const unsigned len = static_cast<unsigned>(std::countr_zero(peek(pos_, 64)));
    pos_ += len + 1;
    const std::uint64_t np1 = (std::uint64_t{1} << len) | peek(pos_, len);
    pos_ += len;
    const unsigned n = static_cast<unsigned>(np1 - 1);
    const std::uint64_t value = (n == 64 ? 0 : (std::uint64_t{1} << n)) | peek(pos_, n);
    pos_ += n;
    return value;
  }

  std::uint64_t position() const { return pos_; }

 private:
  std::uint64_t peek(std::uint64_t pos, unsigned width) const {
    if (width == 0 || pos >= bits_->size()) return 0;
    const std::uint64_t avail = bits_->size() - pos;
    if (avail < width) width = static_cast<unsigned>(avail);
    return bits_->get_bits(pos, width);
  }

  const BitBuffer* bits_;
  std::uint64_t pos_;
};

/// Fixed-width packed integer array.
class IntVector {
 public:
  IntVector() = default;
  IntVector(std::uint64_t size, unsigned width) : width_(width), size_(size) {
    assert(width >= 1 && width <= 64);
    bits_ = BitBuffer(size * width);
  }

  template <typename Range>
  static IntVector from(const Range& values) {
    std::uint64_t max_value = 0;
    std::uint64_t count = 0;
    for (auto v : values) {
      max_value = std::max<std::uint64_t>(max_value, static_cast<std::uint64_t>(v));
      ++count;
    }
    IntVector iv(count, bits_for(max_value));
    std::uint64_t i = 0;
    for (auto v : values) iv.set(i++, static_cast<std::uint64_t>(v));
    return iv;
  }

  std::uint64_t operator[](std::uint64_t i) const { return bits_.get_bits(i * width_, width_); }
  void set(std::uint64_t i, std::uint64_t value) { bits_.set_bits(i * width_, value, width_); }

  std::uint64_t size() const { return size_; }
  unsigned width() const { return width_; }
  std::uint64_t size_in_bytes() const { return bits_.size_in_bytes() + sizeof(*this) - sizeof(bits_); }

  void serialize(io::Writer& w) const {
    w.u32(width_);
    w.u64(size_);
    bits_.serialize(w);
  }
  static IntVector load(io::Reader& r) {
    IntVector iv;
    iv.width_ = r.u32();
    iv.size_ = r.u64();
    iv.bits_ = BitBuffer::load(r);
    if (iv.width_ < 1 || iv.width_ > 64 || iv.bits_.size() != iv.size_ * iv.width_)
      throw Error(ErrorCode::FormatError, "int vector shape mismatch");
    return iv;
  }

 private:
  BitBuffer bits_;
  unsigned width_ = 1;
  std::uint64_t size_ = 0;
};

}  // namespace rdoc::succinct
