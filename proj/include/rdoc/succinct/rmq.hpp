#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "rdoc/succinct/plain_bitvector.hpp"

namespace rdoc::succinct {

/// Range-minimum index in 2n bits plus small directories; the array is not kept.
///
/// The balanced-parentheses sequence opens a node for each element after closing every
/// stacked element strictly larger than it, so an element's parent is the nearest earlier
/// element that is <= it. The leftmost minimum of A[i..j] is then read from the rightmost
/// minimum excess between the opening parentheses of i and j.
class RmqIndex {
 public:
  RmqIndex() = default;
  template <typename T>
  explicit RmqIndex(std::span<const T> values) {
    BitBuffer bp(0);
    std::vector<T> stack;
    for (const T& v : values) {
      while (!stack.empty() && stack.back() > v) {
        stack.pop_back();
        bp.push_back(false);
      }
      bp.push_back(true);
      stack.push_back(v);
    }
    bp.append_run(false, stack.size());
    size_ = values.size();
    init(std::move(bp));
  }

  std::uint64_t size() const { return size_; }
  /// Leftmost position of the minimum in [i, j].
  std::uint64_t rmq(std::uint64_t i, std::uint64_t j) const;

  std::uint64_t size_in_bytes() const;
  void serialize(io::Writer& w) const;
  static RmqIndex load(io::Reader& r);

 private:
  static constexpr std::uint64_t kBlockBits = 512;

  void init(BitBuffer bp);
  std::int64_t excess(std::uint64_t p) const {  // after bit p
    return 2 * static_cast<std::int64_t>(bp_.rank1(p + 1)) - static_cast<std::int64_t>(p + 1);
  }
  /// (min excess, rightmost position) over bit positions [a, b].
  std::pair<std::int64_t, std::uint64_t> scan(std::uint64_t a, std::uint64_t b) const;
  /// (min, rightmost block) among blocks [a, b].
  std::pair<std::int64_t, std::uint64_t> block_min(std::uint64_t a, std::uint64_t b) const;
  std::uint64_t rightmost_leaf(std::uint64_t v, std::uint64_t lo, std::uint64_t hi, std::uint64_t a, std::uint64_t b,
                               std::int64_t value) const;

  PlainBitvector bp_;
  std::vector<std::int64_t> tree_;  // segment tree of absolute block minima
  std::uint64_t leaves_ = 0;
  std::uint64_t blocks_ = 0;
  std::uint64_t size_ = 0;
};

}  // namespace rdoc::succinct
