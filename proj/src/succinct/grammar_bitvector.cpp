#include "rdoc/succinct/grammar_bitvector.hpp"

#include <algorithm>
#include <vector>

#include "rdoc/error.hpp"
#include "rdoc/grammar/repair.hpp"

namespace rdoc::succinct {

GrammarBitvector::GrammarBitvector(const BitBuffer& bits) : size_(bits.size()) {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> tokens;  // (zeros, ones)
  std::uint64_t pending_zeros = 0;
  for_each_run(bits, [&](bool bit, std::uint64_t len) {
    if (!bit) {
      pending_zeros = len;
      return;
    }
    tokens.emplace_back(pending_zeros, len);
    ones_ += len;
    pending_zeros = 0;
  });
  if (pending_zeros > 0) tokens.emplace_back(pending_zeros, 0);

  std::vector<std::pair<std::uint64_t, std::uint64_t>> alphabet = tokens;
  std::sort(alphabet.begin(), alphabet.end());
  alphabet.erase(std::unique(alphabet.begin(), alphabet.end()), alphabet.end());
  std::vector<std::uint64_t> seq(tokens.size());
  for (std::size_t i = 0; i < tokens.size(); ++i)
    seq[i] = static_cast<std::uint64_t>(std::lower_bound(alphabet.begin(), alphabet.end(), tokens[i]) - alphabet.begin());
  tokens.clear();
  tokens.shrink_to_fit();

  std::vector<std::vector<std::uint64_t>> input;
  input.push_back(std::move(seq));
  grammar::Grammar g = grammar::repair(std::move(input), alphabet.size());

  const std::uint64_t terminals = alphabet.size();
  const std::uint64_t symbols = terminals + g.rules.size();
  std::vector<std::uint64_t> bits_of(symbols);
  std::vector<std::uint64_t> ones_of(symbols);
  for (std::uint64_t t = 0; t < terminals; ++t) {
    bits_of[t] = alphabet[t].first + alphabet[t].second;
    ones_of[t] = alphabet[t].second;
  }
  for (std::uint64_t r = 0; r < g.rules.size(); ++r) {
    const auto [a, b] = g.rules[r];
    bits_of[terminals + r] = bits_of[a] + bits_of[b];
    ones_of[terminals + r] = ones_of[a] + ones_of[b];
  }

  std::vector<std::uint64_t> zeros_col;
  std::vector<std::uint64_t> ones_col;
  for (const auto& [z, o] : alphabet) {
    zeros_col.push_back(z);
    ones_col.push_back(o);
  }
  term_zeros_ = IntVector::from(zeros_col);
  term_ones_ = IntVector::from(ones_col);
  std::vector<std::uint64_t> lefts;
  std::vector<std::uint64_t> rights;
  for (const auto& [a, b] : g.rules) {
    lefts.push_back(a);
    rights.push_back(b);
  }
  left_ = IntVector::from(lefts);
  right_ = IntVector::from(rights);
  sym_bits_ = IntVector::from(bits_of);
  sym_ones_ = IntVector::from(ones_of);

  const std::vector<std::uint64_t> empty;
  const std::vector<std::uint64_t>& top = g.sequences.empty() ? empty : g.sequences.front();
  top_ = IntVector::from(top);
  std::vector<std::uint64_t> sb;
  std::vector<std::uint64_t> so;
  std::uint64_t pos = 0;
  std::uint64_t ones = 0;
  for (std::size_t k = 0; k < top.size(); ++k) {
    if (k % kSample == 0) {
      sb.push_back(pos);
      so.push_back(ones);
    }
    pos += bits_of[top[k]];
    ones += ones_of[top[k]];
  }
  sample_bits_ = IntVector::from(sb);
  sample_ones_ = IntVector::from(so);
}

std::uint64_t GrammarBitvector::rank1(std::uint64_t i) const {
  if (i > size_) throw Error(ErrorCode::OutOfRange, "rank position beyond bitvector");
  if (i == 0 || ones_ == 0) return 0;
  if (i == size_) return ones_;
  // last sample starting at or before i
  std::uint64_t lo = 0;
  std::uint64_t hi = sample_bits_.size();
  while (hi - lo > 1) {
    const std::uint64_t mid = lo + (hi - lo) / 2;
    if (sample_bits_[mid] <= i)
      lo = mid;
    else
      hi = mid;
  }
  std::uint64_t pos = sample_bits_[lo];
  std::uint64_t ones = sample_ones_[lo];
  std::uint64_t k = lo * kSample;
  std::uint64_t sym = top_[k];
  while (pos + sym_bits_[sym] <= i) {
    pos += sym_bits_[sym];
    ones += sym_ones_[sym];
    sym = top_[++k];
  }
  std::uint64_t t = i - pos;  // 0 <= t < bits of sym
  while (is_rule(sym)) {
    const std::uint64_t r = sym - term_zeros_.size();
    const std::uint64_t a = left_[r];
    const std::uint64_t a_bits = sym_bits_[a];
    if (t < a_bits) {
      sym = a;
    } else {
      ones += sym_ones_[a];
      t -= a_bits;
      sym = right_[r];
    }
  }
  const std::uint64_t z = term_zeros_[sym];
  return ones + (t > z ? t - z : 0);
}

std::uint64_t GrammarBitvector::select1(std::uint64_t j) const {
  if (j >= ones_) throw Error(ErrorCode::OutOfRange, "select1 rank beyond count of ones");
  std::uint64_t lo = 0;
  std::uint64_t hi = sample_ones_.size();
  while (hi - lo > 1) {
    const std::uint64_t mid = lo + (hi - lo) / 2;
    if (sample_ones_[mid] <= j)
      lo = mid;
    else
      hi = mid;
  }
  std::uint64_t pos = sample_bits_[lo];
  std::uint64_t ones = sample_ones_[lo];
  std::uint64_t k = lo * kSample;
  std::uint64_t sym = top_[k];
  while (ones + sym_ones_[sym] <= j) {
    pos += sym_bits_[sym];
    ones += sym_ones_[sym];
    sym = top_[++k];
  }
  std::uint64_t t = j - ones;
  while (is_rule(sym)) {
    const std::uint64_t r = sym - term_zeros_.size();
    const std::uint64_t a = left_[r];
    if (t < sym_ones_[a]) {
      sym = a;
    } else {
      t -= sym_ones_[a];
      pos += sym_bits_[a];
      sym = right_[r];
    }
  }
  return pos + term_zeros_[sym] + t;
}

std::uint64_t GrammarBitvector::size_in_bytes() const {
  return term_zeros_.size_in_bytes() + term_ones_.size_in_bytes() + left_.size_in_bytes() + right_.size_in_bytes() +
         sym_bits_.size_in_bytes() + sym_ones_.size_in_bytes() + top_.size_in_bytes() + sample_bits_.size_in_bytes() +
         sample_ones_.size_in_bytes() + 2 * sizeof(std::uint64_t);
}

void GrammarBitvector::serialize(io::Writer& w) const {
  w.u64(size_);
  w.u64(ones_);
  for (const IntVector* v : {&term_zeros_, &term_ones_, &left_, &right_, &sym_bits_, &sym_ones_, &top_, &sample_bits_, &sample_ones_})
    v->serialize(w);
}

GrammarBitvector GrammarBitvector::load(io::Reader& r) {
  GrammarBitvector g{Raw{}};
  g.size_ = r.u64();
  g.ones_ = r.u64();
  for (IntVector* v : {&g.term_zeros_, &g.term_ones_, &g.left_, &g.right_, &g.sym_bits_, &g.sym_ones_, &g.top_, &g.sample_bits_, &g.sample_ones_})
    *v = IntVector::load(r);
  if (g.left_.size() != g.right_.size() || g.term_zeros_.size() != g.term_ones_.size() ||
      g.sym_bits_.size() != g.term_zeros_.size() + g.left_.size())
    throw Error(ErrorCode::FormatError, "grammar bitvector shape mismatch");
  return g;
}

}  // namespace rdoc::succinct
