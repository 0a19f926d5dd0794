#include "rdoc/grammar/repair.hpp"

#include <algorithm>
#include <limits>
#include <unordered_map>

#include "rdoc/error.hpp"

namespace rdoc::grammar {

namespace {

constexpr std::uint64_t kSep = std::numeric_limits<std::uint64_t>::max();
constexpr std::uint64_t kNone = std::numeric_limits<std::uint64_t>::max();

std::uint64_t pair_key(std::uint64_t a, std::uint64_t b) { return (a << 32) | b; }

/// Keys of all pairs in `seq`, counting a run of k equal symbols as floor(k/2) pairs.
std::vector<std::uint64_t> collect_pairs(const std::vector<std::uint64_t>& seq) {
  std::vector<std::uint64_t> keys;
  keys.reserve(seq.size());
  bool skip = false;
  for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
    if (seq[i] == kSep || seq[i + 1] == kSep) {
      skip = false;
      continue;
    }
    if (skip) {
      skip = false;
      continue;
    }
    keys.push_back(pair_key(seq[i], seq[i + 1]));
    skip = seq[i] == seq[i + 1] && i + 2 < seq.size() && seq[i + 2] == seq[i];
  }
  return keys;
}

}  // namespace

Grammar repair(std::vector<std::vector<std::uint64_t>> sequences, std::uint64_t terminals) {
  Grammar g;
  g.terminals = terminals;

  std::vector<std::uint64_t> seq;
  std::size_t total = 0;
  for (const auto& s : sequences) total += s.size() + 1;
  seq.reserve(total);
  for (auto& s : sequences) {
    for (auto v : s) {
      if (v >= terminals) throw Error(ErrorCode::InvalidParam, "symbol outside the terminal alphabet");
      seq.push_back(v);
    }
    seq.push_back(kSep);
    s.clear();
    s.shrink_to_fit();
  }

  for (;;) {
    if (terminals + g.rules.size() >= (std::uint64_t{1} << 32))
      break;  // keys pack symbols into 32 bits each

    std::vector<std::uint64_t> keys = collect_pairs(seq);
    std::sort(keys.begin(), keys.end());
    std::vector<std::pair<std::uint64_t, std::uint64_t>> candidates;  // (count, key)
    for (std::size_t i = 0; i < keys.size();) {
      std::size_t j = i;
      while (j < keys.size() && keys[j] == keys[i]) ++j;
      if (j - i >= 2) candidates.emplace_back(j - i, keys[i]);
      i = j;
    }
    keys.clear();
    keys.shrink_to_fit();
    if (candidates.empty()) break;
    std::sort(candidates.begin(), candidates.end(),
              [](const auto& x, const auto& y) { return x.first != y.first ? x.first > y.first : x.second < y.second; });

    std::unordered_map<std::uint64_t, std::uint64_t> priority;
    priority.reserve(candidates.size() * 2);
    for (std::size_t p = 0; p < candidates.size(); ++p) priority.emplace(candidates[p].second, p);
    auto prio_at = [&](std::size_t i) -> std::uint64_t {
      if (i + 1 >= seq.size() || seq[i] == kSep || seq[i + 1] == kSep) return kNone;
      auto it = priority.find(pair_key(seq[i], seq[i + 1]));
      return it == priority.end() ? kNone : it->second;
    };

    // Replace in place; a candidate's tentative symbol is base + its priority.
    const std::uint64_t base = terminals + g.rules.size();
    std::vector<std::uint64_t> uses(candidates.size(), 0);
    std::size_t out = 0;
    for (std::size_t i = 0; i < seq.size();) {
      const std::uint64_t p = prio_at(i);
      if (p != kNone && p <= prio_at(i + 1)) {
        seq[out++] = base + p;
        ++uses[p];
        i += 2;
      } else {
        seq[out++] = seq[i++];
      }
    }
    seq.resize(out);

    // Keep rules used at least twice; expand the others back into their bodies.
    std::vector<std::uint64_t> final_id(candidates.size(), kNone);
    std::uint64_t kept = 0;
    for (std::size_t p = 0; p < candidates.size(); ++p) {
      if (uses[p] < 2) continue;
      final_id[p] = base + kept++;
      const std::uint64_t key = candidates[p].second;
      g.rules.emplace_back(key >> 32, key & 0xffffffffULL);
    }
    if (kept == 0) {
      // every replacement is undone; nothing left to gain
      std::vector<std::uint64_t> restored;
      restored.reserve(seq.size() * 2);
      for (auto s : seq) {
        if (s != kSep && s >= base) {
          const std::uint64_t key = candidates[s - base].second;
          restored.push_back(key >> 32);
          restored.push_back(key & 0xffffffffULL);
        } else {
          restored.push_back(s);
        }
      }
      seq = std::move(restored);
      break;
    }
    std::vector<std::uint64_t> next;
    next.reserve(seq.size() + 16);
    for (auto s : seq) {
      if (s == kSep || s < base) {
        next.push_back(s);
      } else if (final_id[s - base] != kNone) {
        next.push_back(final_id[s - base]);
      } else {
        const std::uint64_t key = candidates[s - base].second;
        next.push_back(key >> 32);
        next.push_back(key & 0xffffffffULL);
      }
    }
    seq = std::move(next);
  }

  g.sequences.emplace_back();
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (seq[i] == kSep) {
      if (i + 1 < seq.size()) g.sequences.emplace_back();
    } else {
      g.sequences.back().push_back(seq[i]);
    }
  }
  if (seq.empty()) g.sequences.clear();
  return g;
}

}  // namespace rdoc::grammar
