#include "rdoc/succinct/plain_bitvector.hpp"

#include <algorithm>
#include <bit>

#include "rdoc/error.hpp"

namespace rdoc::succinct {

void PlainBitvector::build_index() {
  const std::uint64_t words = bits_.word_count();
  const std::uint64_t supers = (words + kWordsPerSuper - 1) / kWordsPerSuper;
  super_ranks_.assign(supers + 1, 0);
  select1_hints_.clear();
  select0_hints_.clear();
  std::uint64_t ones = 0;
  for (std::uint64_t sb = 0; sb < supers; ++sb) {
    super_ranks_[sb] = ones;
    const std::uint64_t end = std::min(words, (sb + 1) * kWordsPerSuper);
    for (std::uint64_t w = sb * kWordsPerSuper; w < end; ++w) ones += static_cast<std::uint64_t>(std::popcount(bits_.word(w)));
  }
  super_ranks_[supers] = ones;
  ones_ = ones;

  // hint[k] = superblock containing the (k*kSelectSample)-th one (resp. zero).
  for (std::uint64_t sb = 0; sb < supers; ++sb) {
    while (select1_hints_.size() * kSelectSample < super_ranks_[sb + 1]) select1_hints_.push_back(sb);
    const std::uint64_t zeros_end = std::min((sb + 1) * kSuperBits, bits_.size()) - super_ranks_[sb + 1];
    while (select0_hints_.size() * kSelectSample < zeros_end) select0_hints_.push_back(sb);
  }
  select1_hints_.push_back(supers == 0 ? 0 : supers - 1);
  select0_hints_.push_back(supers == 0 ? 0 : supers - 1);
}

std::uint64_t PlainBitvector::rank1(std::uint64_t i) const {
  if (i > size()) throw Error(ErrorCode::OutOfRange, "rank position beyond bitvector");
  const std::uint64_t sb = i / kSuperBits;
  std::uint64_t r = super_ranks_[sb];
  const std::uint64_t last_word = i / kWordBits;
  for (std::uint64_t w = sb * kWordsPerSuper; w < last_word; ++w) r += static_cast<std::uint64_t>(std::popcount(bits_.word(w)));
  const unsigned offset = i % kWordBits;
  if (offset != 0) r += static_cast<std::uint64_t>(std::popcount(bits_.word(last_word) & ((std::uint64_t{1} << offset) - 1)));
  return r;
}

std::uint64_t PlainBitvector::select1(std::uint64_t j) const {
  if (j >= ones_) throw Error(ErrorCode::OutOfRange, "select1 rank beyond count of ones");
  std::uint64_t lo = select1_hints_[j / kSelectSample];
  std::uint64_t hi = select1_hints_[std::min<std::uint64_t>(j / kSelectSample + 1, select1_hints_.size() - 1)];
  // last superblock sb in [lo, hi] with super_ranks_[sb] <= j
  while (lo < hi) {
    const std::uint64_t mid = lo + (hi - lo + 1) / 2;
    if (super_ranks_[mid] <= j)
      lo = mid;
    else
      hi = mid - 1;
  }
  std::uint64_t remaining = j - super_ranks_[lo];
  for (std::uint64_t w = lo * kWordsPerSuper;; ++w) {
    const std::uint64_t word = bits_.word(w);
    const auto c = static_cast<std::uint64_t>(std::popcount(word));
    if (remaining < c) return w * kWordBits + select_in_word(word, static_cast<unsigned>(remaining));
    remaining -= c;
  }
}

std::uint64_t PlainBitvector::select0(std::uint64_t j) const {
  if (j >= size() - ones_) throw Error(ErrorCode::OutOfRange, "select0 rank beyond count of zeros");
  std::uint64_t lo = select0_hints_[j / kSelectSample];
  std::uint64_t hi = select0_hints_[std::min<std::uint64_t>(j / kSelectSample + 1, select0_hints_.size() - 1)];
  while (lo < hi) {
    const std::uint64_t mid = lo + (hi - lo + 1) / 2;
    if (zeros_before_super(mid) <= j)
      lo = mid;
    else
      hi = mid - 1;
  }
  std::uint64_t remaining = j - zeros_before_super(lo);
  for (std::uint64_t w = lo * kWordsPerSuper;; ++w) {
    std::uint64_t word = ~bits_.word(w);
    const std::uint64_t valid = std::min<std::uint64_t>(kWordBits, size() - w * kWordBits);
    if (valid < kWordBits) word &= (std::uint64_t{1} << valid) - 1;
    const auto c = static_cast<std::uint64_t>(std::popcount(word));
    if (remaining < c) return w * kWordBits + select_in_word(word, static_cast<unsigned>(remaining));
    remaining -= c;
  }
}

std::uint64_t PlainBitvector::size_in_bytes() const {
  return bits_.size_in_bytes() + (super_ranks_.size() + select1_hints_.size() + select0_hints_.size()) * sizeof(std::uint64_t);
}

}  // namespace rdoc::succinct
