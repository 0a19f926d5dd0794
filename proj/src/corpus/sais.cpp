#include "rdoc/corpus/sais.hpp"

#include <algorithm>
#include <limits>

#include "rdoc/error.hpp"

namespace rdoc {

namespace {

constexpr std::uint32_t kEmpty = std::numeric_limits<std::uint32_t>::max();

void fill_buckets(const std::uint32_t* s, std::uint32_t n, std::uint32_t k, std::vector<std::uint32_t>& bkt, bool end) {
  std::fill(bkt.begin(), bkt.end(), 0);
  for (std::uint32_t i = 0; i < n; ++i) ++bkt[s[i]];
  std::uint32_t sum = 0;
  for (std::uint32_t c = 0; c < k; ++c) {
    sum += bkt[c];
    bkt[c] = end ? sum : sum - bkt[c];
  }
}

void induce(const std::uint32_t* s, std::uint32_t* sa, std::uint32_t n, std::uint32_t k, const std::vector<bool>& stype,
            std::vector<std::uint32_t>& bkt) {
  fill_buckets(s, n, k, bkt, false);
  for (std::uint32_t i = 0; i < n; ++i) {
    if (sa[i] == kEmpty || sa[i] == 0) continue;
    const std::uint32_t j = sa[i] - 1;
    if (!stype[j]) sa[bkt[s[j]]++] = j;
  }
  fill_buckets(s, n, k, bkt, true);
  for (std::uint32_t i = n; i-- > 0;) {
    if (sa[i] == kEmpty || sa[i] == 0) continue;
    const std::uint32_t j = sa[i] - 1;
    if (stype[j]) sa[--bkt[s[j]]] = j;
  }
}

void sais_core(const std::uint32_t* s, std::uint32_t* sa, std::uint32_t n, std::uint32_t k) {
  if (n == 1) {
    sa[0] = 0;
    return;
  }
  std::vector<bool> stype(n);
  stype[n - 1] = true;
  for (std::uint32_t i = n - 1; i-- > 0;) stype[i] = s[i] < s[i + 1] || (s[i] == s[i + 1] && stype[i + 1]);
  auto is_lms = [&](std::uint32_t i) { return i > 0 && stype[i] && !stype[i - 1]; };

  std::vector<std::uint32_t> bkt(k);
  fill_buckets(s, n, k, bkt, true);
  std::fill(sa, sa + n, kEmpty);
  for (std::uint32_t i = 1; i < n; ++i)
    if (is_lms(i)) sa[--bkt[s[i]]] = i;
  induce(s, sa, n, k, stype, bkt);

  // Name the sorted LMS substrings.
  std::uint32_t n1 = 0;
  for (std::uint32_t i = 0; i < n; ++i)
    if (is_lms(sa[i])) sa[n1++] = sa[i];
  std::fill(sa + n1, sa + n, kEmpty);
  std::uint32_t names = 0;
  std::uint32_t prev = kEmpty;
  for (std::uint32_t i = 0; i < n1; ++i) {
    const std::uint32_t pos = sa[i];
    bool diff = false;
    for (std::uint32_t d = 0; d < n; ++d) {
      if (prev == kEmpty || s[pos + d] != s[prev + d] || stype[pos + d] != stype[prev + d]) {
        diff = true;
        break;
      }
      if (d > 0 && (is_lms(pos + d) || is_lms(prev + d))) break;
    }
    if (diff) {
      ++names;
      prev = pos;
    }
    sa[n1 + pos / 2] = names - 1;
  }
  for (std::uint32_t i = n, j = n; i-- > n1;)
    if (sa[i] != kEmpty) sa[--j] = sa[i];

  // Sort the reduced string, recursing when names repeat.
  std::uint32_t* s1 = sa + n - n1;
  if (names < n1) {
    sais_core(s1, sa, n1, names);
  } else {
    for (std::uint32_t i = 0; i < n1; ++i) sa[s1[i]] = i;
  }

  // Place LMS suffixes in sorted order and induce the rest.
  fill_buckets(s, n, k, bkt, true);
  for (std::uint32_t i = 1, j = 0; i < n; ++i)
    if (is_lms(i)) s1[j++] = i;
  for (std::uint32_t i = 0; i < n1; ++i) sa[i] = s1[sa[i]];
  std::fill(sa + n1, sa + n, kEmpty);
  for (std::uint32_t i = n1; i-- > 0;) {
    const std::uint32_t j = sa[i];
    sa[i] = kEmpty;
    sa[--bkt[s[j]]] = j;
  }
  induce(s, sa, n, k, stype, bkt);
}

}  // namespace

std::vector<std::uint32_t> sais(const std::vector<std::uint32_t>& s, std::uint32_t alphabet) {
  if (s.empty()) return {};
  if (s.size() >= kEmpty) throw Error(ErrorCode::InvalidParam, "text too long for 32-bit suffix array");
  const auto n = static_cast<std::uint32_t>(s.size());
  for (std::uint32_t i = 0; i + 1 < n; ++i)
    if (s[i] <= s[n - 1]) throw Error(ErrorCode::InvalidParam, "last symbol must be the unique minimum");
  std::vector<std::uint32_t> sa(n);
  sais_core(s.data(), sa.data(), n, alphabet);
  return sa;
}

}  // namespace rdoc
