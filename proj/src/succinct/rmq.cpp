#include "rdoc/succinct/rmq.hpp"

#include <array>
#include <limits>

#include "rdoc/error.hpp"

namespace rdoc::succinct {

namespace {

struct ByteInfo {
  std::int8_t delta;    // excess change over the byte
  std::int8_t min;      // minimum prefix excess over bits 0..7
  std::uint8_t argmin;  // rightmost bit reaching it
};

constexpr std::array<ByteInfo, 256> make_byte_table() {
  std::array<ByteInfo, 256> table{};
  for (unsigned b = 0; b < 256; ++b) {
    int e = 0;
    int best = 100;
    int arg = 0;
    for (int t = 0; t < 8; ++t) {
      e += ((b >> t) & 1U) ? 1 : -1;
      if (e <= best) {
        best = e;
        arg = t;
      }
    }
    table[b] = ByteInfo{static_cast<std::int8_t>(e), static_cast<std::int8_t>(best), static_cast<std::uint8_t>(arg)};
  }
  return table;
}

constexpr auto kBytes = make_byte_table();
constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max();
constexpr std::uint64_t kNoLeaf = std::numeric_limits<std::uint64_t>::max();

}  // namespace

void RmqIndex::init(BitBuffer bp) {
  bp_ = PlainBitvector(std::move(bp));
  const std::uint64_t bits = bp_.size();
  blocks_ = (bits + kBlockBits - 1) / kBlockBits;
  leaves_ = 1;
  while (leaves_ < blocks_) leaves_ <<= 1;
  tree_.assign(2 * leaves_, kInf);
  for (std::uint64_t b = 0; b < blocks_; ++b) {
    const std::uint64_t end = std::min(bits, (b + 1) * kBlockBits) - 1;
    tree_[leaves_ + b] = scan(b * kBlockBits, end).first;
  }
  for (std::uint64_t v = leaves_ - 1; v >= 1; --v) tree_[v] = std::min(tree_[2 * v], tree_[2 * v + 1]);
}

std::pair<std::int64_t, std::uint64_t> RmqIndex::scan(std::uint64_t a, std::uint64_t b) const {
  std::int64_t e = a == 0 ? 0 : excess(a - 1);
  std::int64_t best = kInf;
  std::uint64_t arg = a;
  const BitBuffer& bits = bp_.bits();
  std::uint64_t p = a;
  while (p <= b) {
    if (p % 8 == 0 && p + 7 <= b) {
      const auto byte = static_cast<unsigned>(bits.get_bits(p, 8));
      const ByteInfo& info = kBytes[byte];
      if (e + info.min <= best) {
        best = e + info.min;
        arg = p + info.argmin;
      }
      e += info.delta;
      p += 8;
    } else {
      e += bits[p] ? 1 : -1;
      if (e <= best) {
        best = e;
        arg = p;
      }
      ++p;
    }
  }
  return {best, arg};
}

std::pair<std::int64_t, std::uint64_t> RmqIndex::block_min(std::uint64_t a, std::uint64_t b) const {
  // minimum over leaves [a, b]
  std::int64_t best = kInf;
  std::uint64_t lo = a + leaves_;
  std::uint64_t hi = b + leaves_ + 1;
  while (lo < hi) {
    if (lo & 1U) best = std::min(best, tree_[lo++]);
    if (hi & 1U) best = std::min(best, tree_[--hi]);
    lo >>= 1;
    hi >>= 1;
  }
  return {best, rightmost_leaf(1, 0, leaves_ - 1, a, b, best)};
}

std::uint64_t RmqIndex::rightmost_leaf(std::uint64_t v, std::uint64_t lo, std::uint64_t hi, std::uint64_t a,
                                       std::uint64_t b, std::int64_t value) const {
  if (hi < a || lo > b || tree_[v] > value) return kNoLeaf;
  if (lo == hi) return lo;
  const std::uint64_t mid = lo + (hi - lo) / 2;
  const std::uint64_t right = rightmost_leaf(2 * v + 1, mid + 1, hi, a, b, value);
  return right != kNoLeaf ? right : rightmost_leaf(2 * v, lo, mid, a, b, value);
}

std::uint64_t RmqIndex::rmq(std::uint64_t i, std::uint64_t j) const {
  if (i > j || j >= size_) throw Error(ErrorCode::OutOfRange, "rmq range outside the array");
  if (i == j) return i;
  const std::uint64_t pi = bp_.select1(i);
  const std::uint64_t pj = bp_.select1(j);
  const std::uint64_t bi = pi / kBlockBits;
  const std::uint64_t bj = pj / kBlockBits;
  std::pair<std::int64_t, std::uint64_t> best;
  if (bj - bi <= 1) {
    best = scan(pi, pj);
  } else {
    best = scan(pi, (bi + 1) * kBlockBits - 1);
    const auto mid = block_min(bi + 1, bj - 1);
    if (mid.first <= best.first) best = scan(mid.second * kBlockBits, (mid.second + 1) * kBlockBits - 1);
    const auto right = scan(bj * kBlockBits, pj);
    if (right.first <= best.first) best = right;
  }
  if (best.first == excess(pi)) return i;
  return bp_.rank1(best.second + 1);
}

std::uint64_t RmqIndex::size_in_bytes() const {
  return bp_.size_in_bytes() + tree_.size() * sizeof(std::int64_t) + 4 * sizeof(std::uint64_t);
}

void RmqIndex::serialize(io::Writer& w) const {
  w.u64(size_);
  bp_.serialize(w);
}

RmqIndex RmqIndex::load(io::Reader& r) {
  RmqIndex idx;
  idx.size_ = r.u64();
  BitBuffer bp = BitBuffer::load(r);
  if (bp.size() != 2 * idx.size_) throw Error(ErrorCode::FormatError, "rmq parentheses length mismatch");
  idx.init(std::move(bp));
  return idx;
}

}  // namespace rdoc::succinct
