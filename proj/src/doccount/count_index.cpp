#include "rdoc/doccount/count_index.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <string>

#include "rdoc/error.hpp"

namespace rdoc {

using succinct::AnyBitvector;
using succinct::BitBuffer;
using succinct::BitvectorKind;

HArray build_h(const SuffixOracle& oracle) {
  const std::uint64_t n = oracle.size();
  const std::uint64_t slots = n == 0 ? 0 : n - 1;
  HArray out;
  out.h.assign(slots, 0);
  out.multi_doc = BitBuffer(slots);
  if (slots == 0) return out;

  const std::vector<std::uint32_t> da = oracle.document_array();
  const std::vector<std::uint32_t> lcp = build_lcp(oracle.collection(), oracle.suffix_array());

  // h of each binary node, by slot. Consecutive occurrences j < i of a document meet at the
  // binary node whose slot precedes the rightmost minimum of lcp[j+1..i].
  std::vector<std::uint32_t> cnt(slots, 0);
  {
    constexpr std::uint32_t kUnseen = std::numeric_limits<std::uint32_t>::max();
    std::vector<std::uint32_t> last(oracle.collection().doc_count(), kUnseen);
    std::vector<std::uint32_t> mins;  // positions q, lcp strictly increasing bottom to top
    for (std::uint64_t i = 0; i < n; ++i) {
      if (i > 0) {
        while (!mins.empty() && lcp[mins.back()] >= lcp[i]) mins.pop_back();
        mins.push_back(static_cast<std::uint32_t>(i));
      }
      const std::uint32_t j = last[da[i]];
      if (j != kUnseen) {
        const auto it = std::lower_bound(mins.begin(), mins.end(), j + 1);
        ++cnt[*it - 1];
      }
      last[da[i]] = static_cast<std::uint32_t>(i);
    }
  }

  // Walk the lcp-interval tree; each node's binary h values are summed into the slot before
  // its last child. cnt is reused to hold the owning node id of every slot.
  struct Frame {
    std::int64_t lcp;
    std::uint64_t lb;
    std::uint64_t own;      // sum of h over this node's own slots
    std::uint64_t below;    // sum of h over descendant nodes
    std::uint64_t last_slot;
    std::uint32_t id;
  };
  std::vector<bool> node_multi;
  std::vector<Frame> stack;
  stack.push_back(Frame{0, 0, 0, 0, 0, 0});
  node_multi.push_back(false);
  for (std::uint64_t q = 1; q <= n; ++q) {
    const std::int64_t cur = q < n ? static_cast<std::int64_t>(lcp[q]) : -1;
    std::uint64_t lb = q - 1;
    std::uint64_t orphan = 0;  // h total of a closed node that becomes a child of a new node
    while (!stack.empty() && cur < stack.back().lcp) {
      const Frame f = stack.back();
      stack.pop_back();
      out.h[f.last_slot] = static_cast<std::uint32_t>(f.own);
      const std::uint64_t total = f.own + f.below;
      const std::uint64_t df = (q - 1 - f.lb + 1) - total;
      node_multi[f.id] = df > 1;
      lb = f.lb;
      if (!stack.empty() && cur <= stack.back().lcp)
        stack.back().below += total;
      else
        orphan = total;
    }
    if (q == n) break;
    const std::uint64_t slot = q - 1;
    const std::uint32_t h = cnt[slot];
    if (!stack.empty() && cur == stack.back().lcp) {
      stack.back().own += h;
      stack.back().last_slot = slot;
      cnt[slot] = stack.back().id;
    } else {
      const auto id = static_cast<std::uint32_t>(node_multi.size());
      node_multi.push_back(false);
      stack.push_back(Frame{cur, lb, h, orphan, slot, id});
      cnt[slot] = id;
    }
  }
  for (std::uint64_t s = 0; s < slots; ++s)
    if (node_multi[cnt[s]]) out.multi_doc.set(s);
  return out;
}

std::uint64_t measure_h_runs(const HArray& h) {
  if (h.h.empty()) return 0;
  std::uint64_t runs = 1;
  for (std::size_t i = 1; i < h.h.size(); ++i)
    if (h.h[i - 1] > 0) ++runs;
  return runs;
}

std::string_view to_string(CountKind kind) {
  switch (kind) {
    case CountKind::Sada: return "sada";
    case CountKind::SadaR: return "sada-r";
    case CountKind::SadaR2: return "sada-r2";
    case CountKind::SadaD: return "sada-d";
    case CountKind::SadaG: return "sada-g";
    case CountKind::PrunedG: return "p-g";
    case CountKind::PrunedRR: return "p-rr";
    case CountKind::RunG: return "rr-g";
    case CountKind::RunRR: return "rr-rr";
    case CountKind::SparseS: return "s-s";
    case CountKind::SparseS1: return "s";
    case CountKind::RunS1: return "rs";
    case CountKind::DeltaS1: return "ds";
  }
  return "unknown";
}

CountKind parse_count_kind(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
  for (auto kind : kAllCountKinds)
    if (to_string(kind) == lower) return kind;
  throw Error(ErrorCode::InvalidParam, "unknown count encoding '" + std::string(name) + "'");
}

namespace {

/// Unary code of the selected values: a 1 followed by value zeros each.
BitBuffer unary(const std::vector<std::uint32_t>& values) {
  BitBuffer b;
  for (auto v : values) {
    b.push_back(true);
    b.append_run(false, v);
  }
  return b;
}

}  // namespace

CountIndex::CountIndex(const HArray& h, CountKind kind) : kind_(kind), slots_(h.h.size()) {
  const std::vector<std::uint32_t>& values = h.h;
  auto hprime_kind = BitvectorKind::Plain;
  auto filter_kind = BitvectorKind::Plain;
  bool use_ones_filter = false;
  switch (kind) {
    case CountKind::Sada: break;
    case CountKind::SadaR: hprime_kind = BitvectorKind::RunLength; break;
    case CountKind::SadaR2: hprime_kind = BitvectorKind::SparseRun; break;
    case CountKind::SadaD: hprime_kind = BitvectorKind::DeltaBlock; break;
    case CountKind::SadaG: hprime_kind = BitvectorKind::Grammar; break;
    case CountKind::PrunedG: filter_kind_ = Filter::Pruned; filter_kind = BitvectorKind::Gap; break;
    case CountKind::PrunedRR: filter_kind_ = Filter::Pruned; filter_kind = BitvectorKind::RunLength; break;
    case CountKind::RunG:
      filter_kind_ = Filter::Pruned;
      hprime_kind = BitvectorKind::RunLength;
      filter_kind = BitvectorKind::Gap;
      break;
    case CountKind::RunRR:
      filter_kind_ = Filter::Pruned;
      hprime_kind = BitvectorKind::RunLength;
      filter_kind = BitvectorKind::RunLength;
      break;
    case CountKind::SparseS:
      filter_kind_ = Filter::Sparse;
      hprime_kind = BitvectorKind::Sparse;
      filter_kind = BitvectorKind::Sparse;
      break;
    case CountKind::SparseS1:
      filter_kind_ = Filter::Sparse;
      hprime_kind = BitvectorKind::Sparse;
      filter_kind = BitvectorKind::Sparse;
      use_ones_filter = true;
      break;
    case CountKind::RunS1: hprime_kind = BitvectorKind::SparseRun; use_ones_filter = true; break;
    case CountKind::DeltaS1: hprime_kind = BitvectorKind::DeltaBlock; use_ones_filter = true; break;
    default: throw Error(ErrorCode::InvalidParam, "unknown count encoding");
  }

  if (use_ones_filter) {
    BitBuffer f1(slots_);
    for (std::uint64_t s = 0; s < slots_; ++s)
      if (values[s] == 1) f1.set(s);
    ones_filter_ = AnyBitvector(f1, BitvectorKind::Sparse);
  }
  // Value of a kept slot once the 1-filter has absorbed the H = 1 entries.
  auto encoded = [&](std::uint64_t s) -> std::uint32_t { return use_ones_filter && values[s] == 1 ? 0 : values[s]; };

  std::vector<std::uint32_t> kept;
  switch (filter_kind_) {
    case Filter::None:
      kept.reserve(slots_);
      for (std::uint64_t s = 0; s < slots_; ++s) kept.push_back(encoded(s));
      break;
    case Filter::Pruned: {
      filter_ = AnyBitvector(h.multi_doc, filter_kind);
      for (std::uint64_t s = 0; s < slots_; ++s)
        if (h.multi_doc[s]) kept.push_back(values[s]);
      break;
    }
    case Filter::Sparse: {
      const std::uint32_t threshold = use_ones_filter ? 1 : 0;
      BitBuffer fs(slots_);
      for (std::uint64_t s = 0; s < slots_; ++s) {
        if (values[s] > threshold) {
          fs.set(s);
          kept.push_back(values[s]);
        }
      }
      filter_ = AnyBitvector(fs, filter_kind);
      break;
    }
  }
  hprime_ = AnyBitvector(unary(kept), hprime_kind);
}

std::uint64_t CountIndex::count(LexRange range) const {
  if (range.empty()) return 0;
  if (range.hi > slots_) throw Error(ErrorCode::OutOfRange, "range beyond the index");
  const std::uint64_t l = range.lo;
  const std::uint64_t r = range.hi;
  if (l == r) return 1;
  const std::uint64_t ones = ones_filter_ ? ones_filter_->rank1(r) - ones_filter_->rank1(l) : 0;
  switch (filter_kind_) {
    case Filter::Pruned: {
      const std::uint64_t a = filter_->rank1(l);
      const std::uint64_t b = filter_->rank1(r);
      return 1 + (b - a) - encoded_sum(a, b);
    }
    case Filter::Sparse: {
      const std::uint64_t a = filter_->rank1(l);
      const std::uint64_t b = filter_->rank1(r);
      return (r - l + 1) - encoded_sum(a, b) - ones;
    }
    case Filter::None: break;
  }
  return (r - l + 1) - encoded_sum(l, r) - ones;
}

std::uint64_t CountIndex::filter_bytes() const {
  return (filter_ ? filter_->size_in_bytes() : 0) + (ones_filter_ ? ones_filter_->size_in_bytes() : 0);
}

std::uint64_t CountIndex::size_in_bytes() const { return hprime_.size_in_bytes() + filter_bytes() + 3; }

void CountIndex::serialize(io::Writer& w) const {
  w.u8(static_cast<std::uint8_t>(kind_));
  w.u8(static_cast<std::uint8_t>(filter_kind_));
  w.u64(slots_);
  hprime_.serialize(w);
  w.u8(filter_ ? 1 : 0);
  if (filter_) filter_->serialize(w);
  w.u8(ones_filter_ ? 1 : 0);
  if (ones_filter_) ones_filter_->serialize(w);
}

CountIndex CountIndex::load(io::Reader& r) {
  CountIndex idx;
  const std::uint8_t kind = r.u8();
  if (kind > static_cast<std::uint8_t>(CountKind::DeltaS1)) throw Error(ErrorCode::FormatError, "unknown count encoding tag");
  idx.kind_ = static_cast<CountKind>(kind);
  const std::uint8_t filter = r.u8();
  if (filter > 2) throw Error(ErrorCode::FormatError, "unknown count filter tag");
  idx.filter_kind_ = static_cast<Filter>(filter);
  idx.slots_ = r.u64();
  idx.hprime_ = AnyBitvector::load(r);
  if (r.u8()) idx.filter_ = AnyBitvector::load(r);
  if (r.u8()) idx.ones_filter_ = AnyBitvector::load(r);
  if ((idx.filter_kind_ != Filter::None) != idx.filter_.has_value() || (idx.filter_ && idx.filter_->size() != idx.slots_))
    throw Error(ErrorCode::FormatError, "count filter does not match its encoding");
  return idx;
}

}  // namespace rdoc
