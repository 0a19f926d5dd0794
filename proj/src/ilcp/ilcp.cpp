#include "rdoc/ilcp/ilcp.hpp"

#include <algorithm>

#include "rdoc/error.hpp"

namespace rdoc {

std::vector<std::uint32_t> build_ilcp(const SuffixOracle& oracle) {
  const Collection& c = oracle.collection();
  const std::string& text = c.text();
  const std::vector<std::uint32_t>& sa = oracle.suffix_array();
  const std::size_t n = sa.size();
  const std::size_t d = c.doc_count();
  const std::vector<std::uint32_t> da = oracle.document_array();

  // Stable partition of the suffix array by document: grouped[begin[j] ..] lists the
  // suffixes of document j in lexicographic order.
  std::vector<std::uint32_t> begin(d + 1, 0);
  for (auto doc : da) ++begin[doc + 1];
  for (std::size_t j = 0; j < d; ++j) begin[j + 1] += begin[j];
  std::vector<std::uint32_t> grouped(n);
  {
    std::vector<std::uint32_t> fill(begin.begin(), begin.end() - 1);
    for (std::size_t i = 0; i < n; ++i) grouped[fill[da[i]]++] = sa[i];
  }

  // Kasai within each document.
  std::vector<std::uint32_t> lcp(n, 0);
  {
    std::vector<std::uint32_t> rank(n);
    for (std::size_t k = 0; k < n; ++k) rank[grouped[k]] = static_cast<std::uint32_t>(k);
    for (std::size_t j = 0; j < d; ++j) {
      std::uint32_t h = 0;
      const std::uint64_t end = c.doc_end(j);
      for (std::uint64_t p = c.doc_start(j); p <= end; ++p) {
        const std::uint32_t k = rank[p];
        if (k == begin[j]) {
          h = 0;
          continue;
        }
        const std::uint64_t q = grouped[k - 1];
        while (text[p + h] == text[q + h] && text[p + h] != kTerminator) ++h;
        lcp[k] = h;
        if (h > 0) --h;
      }
    }
  }

  // Interleave in global suffix-array order.
  std::vector<std::uint32_t> ilcp(n);
  std::vector<std::uint32_t> next(begin.begin(), begin.end() - 1);
  for (std::size_t i = 0; i < n; ++i) ilcp[i] = lcp[next[da[i]]++];
  return ilcp;
}

std::uint64_t count_ilcp_runs(std::span<const std::uint32_t> ilcp) {
  std::uint64_t runs = 0;
  for (std::size_t i = 0; i < ilcp.size(); ++i)
    if (i == 0 || ilcp[i] != ilcp[i - 1]) ++runs;
  return runs;
}

IlcpIndex::IlcpIndex(std::span<const std::uint32_t> ilcp) : n_(ilcp.size()) {
  std::vector<std::uint64_t> starts;
  std::vector<std::uint64_t> heads;
  for (std::size_t i = 0; i < ilcp.size(); ++i) {
    if (i == 0 || ilcp[i] != ilcp[i - 1]) {
      starts.push_back(i);
      heads.push_back(ilcp[i]);
    }
  }
  rho_ = starts.size();
  lambda_ = heads.empty() ? 0 : *std::max_element(heads.begin(), heads.end());
  run_starts_ = succinct::SparseBitvector(starts, n_);

  // Regroup run lengths by head value, keeping text order within a value.
  std::vector<std::uint64_t> base(heads.empty() ? 0 : lambda_ + 2, 0);
  for (auto v : heads) ++base[v + 1];
  for (std::size_t v = 1; v < base.size(); ++v) base[v] += base[v - 1];
  std::vector<std::uint64_t> lengths(rho_);
  {
    std::vector<std::uint64_t> slot(base.begin(), base.empty() ? base.begin() : base.end() - 1);
    for (std::uint64_t k = 0; k < rho_; ++k) {
      const std::uint64_t len = (k + 1 < rho_ ? starts[k + 1] : n_) - starts[k];
      lengths[slot[heads[k]]++] = len;
    }
  }
  std::vector<std::uint64_t> leaf_starts(rho_);
  std::uint64_t pos = 0;
  for (std::uint64_t k = 0; k < rho_; ++k) {
    leaf_starts[k] = pos;
    pos += lengths[k];
  }
  leaf_runs_ = succinct::SparseBitvector(leaf_starts, n_);
  if (!base.empty()) base.pop_back();
  value_base_ = succinct::IntVector::from(base);

  heads_ = succinct::WaveletTree(heads, succinct::WaveletShape::Skewed, succinct::BitvectorKind::Plain);
  rmq_ = succinct::RmqIndex(std::span<const std::uint64_t>(heads));
}

std::vector<std::uint64_t> IlcpIndex::vilcp() const {
  std::vector<std::uint64_t> out(rho_);
  for (std::uint64_t k = 0; k < rho_; ++k) out[k] = heads_.access(k);
  return out;
}

std::vector<std::uint64_t> IlcpIndex::list(const SuffixOracle& oracle, LexRange range, std::vector<char>& marks) const {
  std::vector<std::uint64_t> out;
  if (range.empty()) return out;
  if (range.hi >= n_) throw Error(ErrorCode::OutOfRange, "range beyond the index");
  const std::uint64_t l = range.lo;
  const std::uint64_t r = range.hi;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> stack;
  stack.emplace_back(run_starts_.rank1(l + 1) - 1, run_starts_.rank1(r + 1) - 1);
  while (!stack.empty()) {
    const auto [a, b] = stack.back();
    stack.pop_back();
    const std::uint64_t run = rmq_.rmq(a, b);
    const std::uint64_t i = std::max(l, run_start(run));
    const std::uint64_t j = std::min(r, run_start(run + 1) - 1);
    bool stopped = false;
    for (std::uint64_t k = i; k <= j; ++k) {
      const std::uint64_t g = oracle.doc_of(k);
      if (marks[g]) {
        stopped = true;
        break;
      }
      marks[g] = 1;
      out.push_back(g);
    }
    if (stopped) continue;
    if (run < b) stack.emplace_back(run + 1, b);
    if (run > a) stack.emplace_back(a, run - 1);
  }
  for (auto g : out) marks[g] = 0;
  return out;
}

std::vector<std::uint64_t> IlcpIndex::list(const SuffixOracle& oracle, LexRange range) const {
  std::vector<char> marks(oracle.collection().doc_count(), 0);
  return list(oracle, range, marks);
}

std::uint64_t IlcpIndex::count(LexRange range, std::uint64_t m) const {
  if (range.empty() || m == 0) return 0;
  if (range.hi >= n_) throw Error(ErrorCode::OutOfRange, "range beyond the index");
  const std::uint64_t first = run_starts_.rank1(range.lo + 1) - 1;
  const std::uint64_t last = run_starts_.rank1(range.hi + 1) - 1;
  std::uint64_t c = 0;
  heads_.for_each_value_below(first, last + 1, m, [&](std::uint64_t v, std::uint64_t lo, std::uint64_t hi) {
    const std::uint64_t base = value_base_[v];
    c += leaf_run_start(base + hi) - leaf_run_start(base + lo);
  });
  if (heads_.access(first) < m) c -= range.lo - run_start(first);
  if (heads_.access(last) < m) c -= run_start(last + 1) - 1 - range.hi;
  return c;
}

std::uint64_t IlcpIndex::size_in_bytes() const {
  return run_starts_.size_in_bytes() + leaf_runs_.size_in_bytes() + heads_.size_in_bytes() + rmq_.size_in_bytes() +
         value_base_.size_in_bytes() + 3 * sizeof(std::uint64_t);
}

void IlcpIndex::serialize(io::Writer& w) const {
  w.u64(n_);
  w.u64(rho_);
  w.u64(lambda_);
  run_starts_.serialize(w);
  leaf_runs_.serialize(w);
  heads_.serialize(w);
  rmq_.serialize(w);
  value_base_.serialize(w);
}

IlcpIndex IlcpIndex::load(io::Reader& r) {
  IlcpIndex idx;
  idx.n_ = r.u64();
  idx.rho_ = r.u64();
  idx.lambda_ = r.u64();
  idx.run_starts_ = succinct::SparseBitvector::load(r);
  idx.leaf_runs_ = succinct::SparseBitvector::load(r);
  idx.heads_ = succinct::WaveletTree::load(r);
  idx.rmq_ = succinct::RmqIndex::load(r);
  idx.value_base_ = succinct::IntVector::load(r);
  if (idx.run_starts_.count_ones() != idx.rho_ || idx.leaf_runs_.count_ones() != idx.rho_ || idx.heads_.size() != idx.rho_ ||
      idx.rmq_.size() != idx.rho_ || idx.run_starts_.size() != idx.n_)
    throw Error(ErrorCode::FormatError, "ILCP section is inconsistent");
  return idx;
}

}  // namespace rdoc
