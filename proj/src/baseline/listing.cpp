#include "rdoc/baseline/listing.hpp"

#include <algorithm>
#include <unordered_map>

#include "rdoc/error.hpp"

namespace rdoc {

namespace {

void check_range(LexRange range, std::uint64_t n) {
  if (!range.empty() && range.hi >= n) throw Error(ErrorCode::OutOfRange, "range beyond suffix array");
}

std::vector<DocFreq> rank_counts(std::vector<std::uint64_t> docs, std::uint64_t k) {
  std::sort(docs.begin(), docs.end());
  std::vector<DocFreq> out;
  for (std::size_t i = 0; i < docs.size();) {
    std::size_t j = i;
    while (j < docs.size() && docs[j] == docs[i]) ++j;
    out.push_back({docs[i], j - i});
    i = j;
  }
  const std::size_t keep = std::min<std::uint64_t>(k, out.size());
  std::partial_sort(out.begin(), out.begin() + static_cast<std::ptrdiff_t>(keep), out.end(), by_frequency);
  out.resize(keep);
  return out;
}

}  // namespace

std::vector<std::uint64_t> brute_list_L(const SuffixOracle& oracle, LexRange range) {
  check_range(range, oracle.size());
  std::vector<std::uint64_t> docs;
  docs.reserve(range.size());
  for (std::uint64_t i = range.lo; i <= range.hi && !range.empty(); ++i) docs.push_back(oracle.doc_of(i));
  std::sort(docs.begin(), docs.end());
  docs.erase(std::unique(docs.begin(), docs.end()), docs.end());
  return docs;
}

std::vector<std::uint64_t> brute_list_D(std::span<const std::uint32_t> da, LexRange range) {
  check_range(range, da.size());
  if (range.empty()) return {};
  std::vector<std::uint64_t> docs(da.begin() + static_cast<std::ptrdiff_t>(range.lo), da.begin() + static_cast<std::ptrdiff_t>(range.hi + 1));
  std::sort(docs.begin(), docs.end());
  docs.erase(std::unique(docs.begin(), docs.end()), docs.end());
  return docs;
}

std::vector<DocFreq> brute_topk(std::span<const std::uint32_t> da, LexRange range, std::uint64_t k) {
  check_range(range, da.size());
  if (range.empty()) return {};
  return rank_counts({da.begin() + static_cast<std::ptrdiff_t>(range.lo), da.begin() + static_cast<std::ptrdiff_t>(range.hi + 1)}, k);
}

std::vector<DocFreq> brute_topk_L(const SuffixOracle& oracle, LexRange range, std::uint64_t k) {
  check_range(range, oracle.size());
  if (range.empty()) return {};
  std::vector<std::uint64_t> docs;
  docs.reserve(range.size());
  for (std::uint64_t i = range.lo; i <= range.hi; ++i) docs.push_back(oracle.doc_of(i));
  return rank_counts(std::move(docs), k);
}

SadaIndex::SadaIndex(std::span<const std::uint32_t> da) {
  // C shifted by one so that "no previous occurrence" is 0.
  std::vector<std::uint64_t> c(da.size());
  std::unordered_map<std::uint32_t, std::uint64_t> last;
  for (std::uint64_t i = 0; i < da.size(); ++i) {
    auto [it, fresh] = last.try_emplace(da[i], i + 1);
    c[i] = fresh ? 0 : it->second;
    it->second = i + 1;
  }
  rmq_ = succinct::RmqIndex{std::span<const std::uint64_t>(c)};
}

template <typename DocOf>
std::vector<std::uint64_t> SadaIndex::list_with(DocOf&& doc_of, LexRange range, std::vector<char>& marks) const {
  std::vector<std::uint64_t> out;
  if (range.empty()) return out;
  if (range.hi >= size()) throw Error(ErrorCode::OutOfRange, "range beyond suffix array");
  std::vector<std::pair<std::uint64_t, std::uint64_t>> stack{{range.lo, range.hi}};
  while (!stack.empty()) {
    const auto [lo, hi] = stack.back();
    stack.pop_back();
    const std::uint64_t k = rmq_.rmq(lo, hi);
    const std::uint64_t doc = doc_of(k);
    if (marks[doc]) continue;
    marks[doc] = 1;
    out.push_back(doc);
    if (k < hi) stack.emplace_back(k + 1, hi);
    if (k > lo) stack.emplace_back(lo, k - 1);
  }
  for (auto doc : out) marks[doc] = 0;
  return out;
}

std::vector<std::uint64_t> SadaIndex::list(const SuffixOracle& oracle, LexRange range, std::vector<char>& marks) const {
  return list_with([&](std::uint64_t i) { return oracle.doc_of(i); }, range, marks);
}

std::vector<std::uint64_t> SadaIndex::list(const SuffixOracle& oracle, LexRange range) const {
  std::vector<char> marks(oracle.collection().doc_count(), 0);
  return list(oracle, range, marks);
}

std::vector<std::uint64_t> SadaIndex::list(std::span<const std::uint32_t> da, LexRange range, std::vector<char>& marks) const {
  return list_with([&](std::uint64_t i) { return static_cast<std::uint64_t>(da[i]); }, range, marks);
}

SadaIndex SadaIndex::load(io::Reader& r) {
  SadaIndex idx;
  idx.rmq_ = succinct::RmqIndex::load(r);
  return idx;
}

}  // namespace rdoc
