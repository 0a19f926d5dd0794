#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace rdoc::grammar {

/// Straight-line grammar produced by Re-Pair. Symbols below `terminals` are terminals;
/// symbol terminals + r is rule r, whose body `rules[r]` only references smaller symbols.
struct Grammar {
  std::uint64_t terminals = 0;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> rules;
  std::vector<std::vector<std::uint64_t>> sequences;

  bool is_rule(std::uint64_t sym) const { return sym >= terminals; }

  /// Calls f(terminal) for every terminal `sym` expands to, left to right.
  template <typename F>
  void expand(std::uint64_t sym, F&& f) const {
    if (!is_rule(sym)) {
      f(sym);
      return;
    }
    std::vector<std::uint64_t> stack{sym};
    while (!stack.empty()) {
      const std::uint64_t s = stack.back();
      stack.pop_back();
      if (!is_rule(s)) {
        f(s);
        continue;
      }
      const auto& [a, b] = rules[s - terminals];
      stack.push_back(b);
      stack.push_back(a);
    }
  }

  std::vector<std::uint64_t> expand_sequence(std::size_t i) const {
    std::vector<std::uint64_t> out;
    for (auto sym : sequences[i]) expand(sym, [&](std::uint64_t t) { out.push_back(t); });
    return out;
  }

  std::uint64_t compressed_length() const {
    std::uint64_t total = 0;
    for (const auto& s : sequences) total += s.size();
    return total;
  }
};

/// Re-Pair over a set of independent sequences: pairs never span two sequences. Replacement
/// runs in rounds; each round replaces every pair occurring at least twice, favoring the most
/// frequent pair where candidates overlap, and discards rules that ended up used only once.
Grammar repair(std::vector<std::vector<std::uint64_t>> sequences, std::uint64_t terminals);

}  // namespace rdoc::grammar
