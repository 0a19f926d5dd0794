#pragma once

// Independent slow reference implementations shared by the unit and acceptance tests.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace oracle {

/// Suffix order by direct comparison. Terminators ('\0') sort below bytes and among
/// themselves by descending position.
inline std::vector<std::uint32_t> suffix_array(const std::string& t) {
  std::vector<std::uint32_t> sa(t.size());
  for (std::size_t i = 0; i < sa.size(); ++i) sa[i] = static_cast<std::uint32_t>(i);
  std::sort(sa.begin(), sa.end(), [&](std::uint32_t a, std::uint32_t b) {
    for (std::size_t k = 0;; ++k) {
      const auto x = static_cast<unsigned char>(t[a + k]);
      const auto y = static_cast<unsigned char>(t[b + k]);
      if (x == 0 && y == 0) return a + k > b + k;
      if (x != y) return x < y;
    }
  });
  return sa;
}

inline std::vector<std::uint32_t> document_array(const std::string& t, const std::vector<std::uint32_t>& sa) {
  std::vector<std::uint32_t> doc_at(t.size());
  std::uint32_t doc = 0;
  for (std::size_t p = 0; p < t.size(); ++p) {
    doc_at[p] = doc;
    if (t[p] == '\0') ++doc;
  }
  std::vector<std::uint32_t> da;
  for (auto p : sa) da.push_back(doc_at[p]);
  return da;
}

/// Pairwise common prefix, stopping at terminators.
inline std::uint32_t lcp(const std::string& t, std::size_t a, std::size_t b) {
  std::uint32_t h = 0;
  while (a + h < t.size() && b + h < t.size() && t[a + h] == t[b + h] && t[a + h] != '\0') ++h;
  return h;
}

/// Interleaved per-document LCP computed from scratch.
inline std::vector<std::uint32_t> ilcp(const std::string& t, const std::vector<std::uint32_t>& sa) {
  const auto da = document_array(t, sa);
  std::map<std::uint32_t, std::uint32_t> last;  // doc -> previous suffix of that doc
  std::vector<std::uint32_t> out;
  for (std::size_t i = 0; i < sa.size(); ++i) {
    auto it = last.find(da[i]);
    out.push_back(it == last.end() ? 0 : lcp(t, it->second, sa[i]));
    last[da[i]] = sa[i];
  }
  return out;
}

/// Inclusive [lo, hi] of suffixes starting with p, by linear scan; lo > hi when absent.
inline std::pair<std::uint64_t, std::uint64_t> find(const std::string& t, const std::vector<std::uint32_t>& sa,
                                                    const std::string& p) {
  std::uint64_t lo = 1;
  std::uint64_t hi = 0;
  bool seen = false;
  for (std::size_t i = 0; i < sa.size(); ++i) {
    if (t.compare(sa[i], p.size(), p) == 0) {
      if (!seen) lo = i;
      hi = i;
      seen = true;
    }
  }
  return {lo, hi};
}

inline std::vector<std::uint64_t> distinct_docs(const std::vector<std::uint32_t>& da, std::uint64_t lo, std::uint64_t hi) {
  std::set<std::uint64_t> s;
  for (std::uint64_t i = lo; i <= hi && lo <= hi; ++i) s.insert(da[i]);
  return {s.begin(), s.end()};
}

/// (doc, tf) sorted by tf descending then doc ascending, truncated to k.
inline std::vector<std::pair<std::uint64_t, std::uint64_t>> topk(const std::vector<std::uint32_t>& da, std::uint64_t lo,
                                                                 std::uint64_t hi, std::uint64_t k) {
  std::map<std::uint64_t, std::uint64_t> tf;
  for (std::uint64_t i = lo; i <= hi && lo <= hi; ++i) ++tf[da[i]];
  std::vector<std::pair<std::uint64_t, std::uint64_t>> out(tf.begin(), tf.end());
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
  if (out.size() > k) out.resize(k);
  return out;
}

/// Count of non-overlapping-agnostic occurrences of p in s.
inline std::uint64_t occurrences(const std::string& s, const std::string& p) {
  std::uint64_t c = 0;
  for (std::size_t pos = s.find(p); pos != std::string::npos; pos = s.find(p, pos + 1)) ++c;
  return c;
}

/// Random documents: either independent, or mutated copies of a few bases.
inline std::vector<std::string> random_documents(std::mt19937_64& rng, std::size_t docs, std::size_t length,
                                                 const std::string& alphabet, bool repetitive) {
  auto pick = [&]() { return alphabet[rng() % alphabet.size()]; };
  std::vector<std::string> bases;
  for (std::size_t b = 0; b < (repetitive ? 1 + docs / 8 : docs); ++b) {
    std::string s;
    const std::size_t len = 1 + rng() % length;
    for (std::size_t i = 0; i < len; ++i) s.push_back(pick());
    bases.push_back(s);
  }
  std::vector<std::string> out;
  for (std::size_t j = 0; j < docs; ++j) {
    if (!repetitive) {
      out.push_back(bases[j]);
      continue;
    }
    std::string s = bases[rng() % bases.size()];
    const std::size_t edits = rng() % 4;
    for (std::size_t e = 0; e < edits && !s.empty(); ++e) {
      const std::size_t pos = rng() % s.size();
      switch (rng() % 3) {
        case 0: s[pos] = pick(); break;
        case 1: s.insert(s.begin() + static_cast<std::ptrdiff_t>(pos), pick()); break;
        default: s.erase(s.begin() + static_cast<std::ptrdiff_t>(pos)); break;
      }
    }
    out.push_back(s);
  }
  return out;
}

inline std::string join_documents(const std::vector<std::string>& docs) {
  std::string t;
  for (const auto& d : docs) {
    t += d;
    t.push_back('\0');
  }
  return t;
}

}  // namespace oracle

namespace oracle {

/// Calls f(lo, hi, df) for every suffix-tree node range (lcp intervals and leaves), with the
/// distinct-document count computed by direct scan. O(n^2).
template <typename F>
void for_each_node_range(const std::vector<std::uint32_t>& lcp, const std::vector<std::uint32_t>& da, std::size_t docs, F&& f) {
  const std::size_t n = da.size();
  std::vector<std::size_t> stamp(docs, n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t distinct = 0;
    std::int64_t inner = std::numeric_limits<std::int64_t>::max();
    const std::int64_t left = i == 0 ? -1 : lcp[i];
    for (std::size_t j = i; j < n; ++j) {
      if (j > i) inner = std::min<std::int64_t>(inner, lcp[j]);
      if (stamp[da[j]] != i) {
        stamp[da[j]] = i;
        ++distinct;
      }
      if (j > i && inner <= left) break;
      const std::int64_t right = j + 1 < n ? lcp[j + 1] : -1;
      if (j == i || (left < inner && right < inner)) f(i, j, distinct);
    }
  }
}

}  // namespace oracle

namespace oracle {

/// Muthukrishnan's listing over an explicit C array (C[i] = previous same-document position
/// plus one, 0 if none) and a linear-scan RMQ. Documents in discovery order.
inline std::vector<std::uint64_t> muthu_list(const std::vector<std::uint32_t>& da, std::size_t lo, std::size_t hi) {
  std::vector<std::uint64_t> c(da.size());
  std::map<std::uint32_t, std::uint64_t> last;
  for (std::size_t i = 0; i < da.size(); ++i) {
    c[i] = last.count(da[i]) ? last[da[i]] : 0;
    last[da[i]] = i + 1;
  }
  std::vector<std::uint64_t> out;
  std::vector<std::pair<std::size_t, std::size_t>> stack;
  if (lo <= hi) stack.emplace_back(lo, hi);
  while (!stack.empty()) {
    auto [a, b] = stack.back();
    stack.pop_back();
    std::size_t k = a;
    for (std::size_t i = a; i <= b; ++i)
      if (c[i] < c[k]) k = i;
    if (c[k] >= lo + 1) continue;
    out.push_back(da[k]);
    if (k < b) stack.emplace_back(k + 1, b);
    if (k > a) stack.emplace_back(a, k - 1);
  }
  return out;
}

}  // namespace oracle
