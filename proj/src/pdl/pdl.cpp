#include "rdoc/pdl/pdl.hpp"

#include <algorithm>
#include <numeric>

#include "rdoc/error.hpp"

namespace rdoc {

std::string_view to_string(PdlVariant variant) {
  switch (variant) {
    case PdlVariant::Listing: return "listing";
    case PdlVariant::TopK: return "topk";
    case PdlVariant::TopKF: return "topk+F";
    case PdlVariant::Pruned: return "pruned";
  }
  return "?";
}

PdlVariant parse_pdl_variant(std::string_view name) {
  for (auto v : {PdlVariant::Listing, PdlVariant::TopK, PdlVariant::TopKF, PdlVariant::Pruned})
    if (to_string(v) == name) return v;
  throw Error(ErrorCode::InvalidParam, "unknown PDL variant " + std::string(name));
}

namespace {

constexpr std::int64_t kSmall = -1;

struct Piece {
  std::uint64_t lb;
  std::uint64_t rb;
  std::int64_t node;  // internal node id, or kSmall
};

/// Suffix tree nodes with more than b suffixes (post-order) and the maximal nodes with at
/// most b suffixes below them (the leaf blocks).
struct RawTree {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> leaves;
  std::vector<std::uint64_t> child_begin{0};
  std::vector<std::int64_t> children;  // >= 0: internal id, < 0: -(leaf + 1)

  std::uint64_t internal() const { return child_begin.size() - 1; }
};

RawTree sample_tree(const std::vector<std::uint32_t>& lcp, std::uint64_t b) {
  const std::uint64_t n = lcp.size();
  RawTree t;
  struct Frame {
    std::int64_t lcp;
    std::uint64_t lb;
    std::uint64_t child_start;
    std::size_t piece_base;
  };
  std::vector<Piece> pieces;
  std::vector<Frame> stack{{0, 0, 0, 0}};

  auto finish = [&](const Frame& f, std::uint64_t rb) -> Piece {
    Piece out{f.lb, rb, kSmall};
    if (rb - f.lb + 1 > b) {
      out.node = static_cast<std::int64_t>(t.internal());
      for (std::size_t p = f.piece_base; p < pieces.size(); ++p) {
        if (pieces[p].node != kSmall) {
          t.children.push_back(pieces[p].node);
        } else {
          t.children.push_back(-static_cast<std::int64_t>(t.leaves.size()) - 1);
          t.leaves.emplace_back(pieces[p].lb, pieces[p].rb);
        }
      }
      t.child_begin.push_back(t.children.size());
    }
    pieces.resize(f.piece_base);
    return out;
  };
  // The child of f ending at `end` is the interval closed last when it starts at f's child
  // boundary, and a single suffix otherwise.
  auto add_piece = [&](Frame& f, std::uint64_t end, const std::optional<Piece>& done) {
    if (done && done->lb == f.child_start && done->rb == end)
      pieces.push_back(*done);
    else
      pieces.push_back({f.child_start, end, kSmall});
  };

  std::optional<Piece> root;
  for (std::uint64_t i = 1; i <= n; ++i) {
    const std::int64_t cur = i < n ? static_cast<std::int64_t>(lcp[i]) : -1;
    std::optional<Piece> done;
    while (!stack.empty() && cur < stack.back().lcp) {
      Frame f = stack.back();
      stack.pop_back();
      add_piece(f, i - 1, done);
      done = finish(f, i - 1);
    }
    if (i == n) {
      root = done;
      break;
    }
    if (cur > stack.back().lcp) {
      const std::uint64_t lb = done ? done->lb : i - 1;
      stack.push_back({cur, lb, lb, pieces.size()});
    }
    add_piece(stack.back(), i - 1, done);
    stack.back().child_start = i;
  }
  if (n == 1 || !root || root->node == kSmall) {
    t = RawTree{};
    t.leaves.emplace_back(0, n - 1);
  }
  return t;
}

struct Entry {
  std::uint32_t doc;
  std::uint32_t tf;
};

}  // namespace

PdlIndex build_pdl(const SuffixOracle& oracle, PdlVariant variant, std::uint64_t b, double beta) {
  if (b < 2) throw Error(ErrorCode::InvalidParam, "block size must be at least 2");
  const bool prune = variant == PdlVariant::Listing || variant == PdlVariant::Pruned;
  if (prune && !(beta >= 1.0)) throw Error(ErrorCode::InvalidParam, "storing factor must be at least 1");

  const Collection& c = oracle.collection();
  const std::uint64_t n = oracle.size();
  const std::uint64_t d = c.doc_count();
  RawTree tree;
  {
    const auto lcp = build_lcp(c, oracle.suffix_array());
    tree = sample_tree(lcp, b);
  }
  const std::uint64_t leaves = tree.leaves.size();
  const std::uint64_t big = tree.internal();

  // Leaves left to right.
  std::vector<std::uint64_t> order(leaves);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](auto x, auto y) { return tree.leaves[x].first < tree.leaves[y].first; });
  std::vector<std::uint64_t> leaf_rank(leaves);
  for (std::uint64_t i = 0; i < leaves; ++i) leaf_rank[order[i]] = i;
  // Node references: leaves 0..L-1, internal node v at L + v.
  auto ref = [&](std::int64_t child) -> std::uint64_t {
    return child >= 0 ? leaves + static_cast<std::uint64_t>(child) : leaf_rank[static_cast<std::uint64_t>(-child - 1)];
  };

  // Document sets with frequencies, by doc id.
  std::vector<std::vector<Entry>> sets(leaves + big);
  {
    const auto da = oracle.document_array();
    std::vector<std::uint32_t> acc(d, 0);
    std::vector<std::uint32_t> touched;
    auto collect = [&](std::vector<Entry>& out) {
      std::sort(touched.begin(), touched.end());
      out.reserve(touched.size());
      for (auto doc : touched) {
        out.push_back({doc, acc[doc]});
        acc[doc] = 0;
      }
      touched.clear();
    };
    auto add = [&](std::uint32_t doc, std::uint32_t tf) {
      if (acc[doc] == 0) touched.push_back(doc);
      acc[doc] += tf;
    };
    for (std::uint64_t l = 0; l < leaves; ++l) {
      const auto [lb, rb] = tree.leaves[order[l]];
      for (std::uint64_t i = lb; i <= rb; ++i) add(da[i], 1);
      collect(sets[l]);
    }
    for (std::uint64_t v = 0; v < big; ++v) {
      for (std::uint64_t k = tree.child_begin[v]; k < tree.child_begin[v + 1]; ++k)
        for (const Entry& e : sets[ref(tree.children[k])]) add(e.doc, e.tf);
      collect(sets[leaves + v]);
    }
  }

  // Bottom-up pruning; children of a removed node move to its parent.
  std::vector<char> kept(big, 1);
  std::vector<std::vector<std::uint64_t>> kids(big);
  for (std::uint64_t v = 0; v < big; ++v) {
    std::vector<std::uint64_t> list;
    std::uint64_t total = 0;
    for (std::uint64_t k = tree.child_begin[v]; k < tree.child_begin[v + 1]; ++k) {
      const std::uint64_t u = ref(tree.children[k]);
      if (u < leaves || kept[u - leaves]) {
        list.push_back(u);
        total += sets[u].size();
      } else {
        for (auto w : kids[u - leaves]) {
          list.push_back(w);
          total += sets[w].size();
        }
        std::vector<std::uint64_t>().swap(kids[u - leaves]);
      }
    }
    const bool root = v + 1 == big;
    if (prune && !root && static_cast<double>(total) <= beta * static_cast<double>(sets[leaves + v].size())) {
      kept[v] = 0;
      std::vector<Entry>().swap(sets[leaves + v]);
    }
    kids[v] = std::move(list);
  }
  std::vector<std::uint64_t> starts(leaves);
  for (std::uint64_t l = 0; l < leaves; ++l) starts[l] = tree.leaves[order[l]].first;
  tree = RawTree{};

  std::vector<std::uint64_t> internal_rank(big, 0);
  std::uint64_t internal = 0;
  for (std::uint64_t v = 0; v < big; ++v)
    if (kept[v]) internal_rank[v] = internal++;
  auto final_ref = [&](std::uint64_t u) { return u < leaves ? u : leaves + internal_rank[u - leaves]; };

  PdlIndex idx;
  idx.variant_ = variant;
  idx.b_ = b;
  idx.beta_ = prune ? beta : 0.0;
  idx.n_ = n;
  idx.docs_ = d;
  idx.leaves_ = leaves;
  idx.internal_ = internal;
  idx.leaf_starts_ = succinct::SparseBitvector(starts, n);

  // First-child marks, parents and next leaves; post-order puts children before parents.
  std::vector<std::uint64_t> parent_of(leaves + internal, internal);
  std::vector<std::uint64_t> next_leaf(internal);
  for (std::uint64_t v = 0; v < big; ++v) {
    if (!kept[v]) continue;
    const std::uint64_t k = internal_rank[v];
    const auto& list = kids[v];
    parent_of[final_ref(list.front())] = k;
    const std::uint64_t last = final_ref(list.back());
    next_leaf[k] = last < leaves ? last + 1 : next_leaf[last - leaves];
  }
  succinct::BitBuffer first(leaves + internal);
  std::vector<std::uint64_t> parents;
  for (std::uint64_t i = 0; i < leaves + internal; ++i) {
    if (parent_of[i] == internal) continue;
    first.set(i);
    parents.push_back(parent_of[i]);
  }
  idx.first_child_ = succinct::PlainBitvector(std::move(first));
  idx.parents_ = succinct::IntVector::from(parents);
  idx.next_leaf_ = succinct::IntVector::from(next_leaf);
  kids.clear();

  // Stored lists by node index.
  std::vector<std::vector<std::uint32_t>> doc_lists;
  std::vector<std::vector<std::uint32_t>> freq_lists;
  doc_lists.reserve(leaves + internal);
  for (std::uint64_t u = 0; u < leaves + big; ++u) {
    if (u >= leaves && !kept[u - leaves]) continue;
    auto& set = sets[u];
    if (variant != PdlVariant::Listing)
      std::sort(set.begin(), set.end(), [](const Entry& x, const Entry& y) { return x.tf != y.tf ? x.tf > y.tf : x.doc < y.doc; });
    idx.raw_tokens_ += set.size();
    std::vector<std::uint32_t> docs_only;
    std::vector<std::uint32_t> tfs;
    docs_only.reserve(set.size());
    for (const Entry& e : set) {
      docs_only.push_back(e.doc);
      if (idx.has_frequencies()) tfs.push_back(e.tf);
    }
    std::vector<Entry>().swap(set);
    doc_lists.push_back(std::move(docs_only));
    if (idx.has_frequencies()) freq_lists.push_back(std::move(tfs));
  }
  sets.clear();
  if (variant == PdlVariant::Listing) {
    idx.sets_ = pdl::SetStore(doc_lists, d);
  } else {
    idx.sequences_ = pdl::SequenceStore(doc_lists, d);
    if (idx.has_frequencies()) idx.frequencies_ = pdl::FrequencyStore(freq_lists);
  }
  return idx;
}

// ---------------------------------------------------------------- queries

template <typename F>
void PdlIndex::for_each_cover(std::uint64_t ln, std::uint64_t rn, F&& f) const {
  std::uint64_t i = ln;
  while (i <= rn) {
    std::uint64_t next = i + 1;
    while (first_child_[i]) {
      const auto [p, after] = parent(i);
      if (after > rn + 1) break;
      i = p;
      next = after;
    }
    f(i);
    i = next;
  }
}

template <typename F>
void PdlIndex::for_each_document(std::uint64_t node, F&& f) const {
  if (variant_ == PdlVariant::Listing)
    sets_.for_each(node, f);
  else
    sequences_.for_each(node, f);
}

namespace {

/// Splits a range into partial leaf blocks at its ends and the run of whole leaves between.
template <typename Partial, typename Whole>
void split_range(const PdlIndex& idx, LexRange range, std::uint64_t n, const succinct::SparseBitvector& leaf_starts,
                 Partial&& partial, Whole&& whole) {
  if (range.empty()) return;
  if (range.hi >= n) throw Error(ErrorCode::OutOfRange, "range beyond suffix array");
  const std::uint64_t leaves = idx.leaves();
  auto start = [&](std::uint64_t l) { return l < leaves ? leaf_starts.select1(l) : n; };
  std::uint64_t ln = leaf_starts.rank1(range.lo + 1) - 1;
  if (start(ln) < range.lo) {
    const std::uint64_t r = std::min(start(ln + 1) - 1, range.hi);
    partial(range.lo, r);
    if (r == range.hi) return;
    ++ln;
  }
  std::uint64_t rn_end = leaf_starts.rank1(range.hi + 1);  // leaves starting at or before hi
  if (start(rn_end) > range.hi + 1) {
    partial(start(rn_end - 1), range.hi);
    --rn_end;
  }
  if (ln < rn_end) whole(ln, rn_end - 1);
}

}  // namespace

std::vector<std::uint64_t> PdlIndex::list(const SuffixOracle& oracle, LexRange range, std::vector<char>& marks) const {
  std::vector<std::uint64_t> out;
  auto report = [&](std::uint64_t doc) {
    if (marks[doc]) return;
    marks[doc] = 1;
    out.push_back(doc);
  };
  split_range(
      *this, range, n_, leaf_starts_,
      [&](std::uint64_t lo, std::uint64_t hi) {
        for (std::uint64_t i = lo; i <= hi; ++i) report(oracle.doc_of(i));
      },
      [&](std::uint64_t ln, std::uint64_t rn) {
        for_each_cover(ln, rn, [&](std::uint64_t node) { for_each_document(node, report); });
      });
  for (auto doc : out) marks[doc] = 0;
  return out;
}

std::vector<std::uint64_t> PdlIndex::list(const SuffixOracle& oracle, LexRange range) const {
  std::vector<char> marks(docs_, 0);
  return list(oracle, range, marks);
}

std::optional<std::uint64_t> PdlIndex::node_for(LexRange range) const {
  if (range.empty() || range.hi >= n_) return std::nullopt;
  const std::uint64_t ln = leaf_starts_.rank1(range.lo + 1) - 1;
  if (leaf_start(ln) != range.lo) return std::nullopt;
  const std::uint64_t rn_end = leaf_starts_.rank1(range.hi + 1);
  if (leaf_start(rn_end) != range.hi + 1) return std::nullopt;
  std::uint64_t i = ln;
  std::uint64_t next = ln + 1;
  while (next < rn_end && first_child_[i]) std::tie(i, next) = parent(i);
  if (next != rn_end) return std::nullopt;
  return i;
}

std::vector<DocFreq> PdlIndex::topk(const SuffixOracle& oracle, LexRange range, std::uint64_t k) const {
  if (variant_ == PdlVariant::Listing) throw Error(ErrorCode::UnsupportedVariant, "listing PDL does not answer top-k");
  if (k == 0) throw Error(ErrorCode::InvalidParam, "k must be positive");
  if (range.empty()) return {};
  if (auto node = node_for(range)) {
    std::vector<DocFreq> out;
    auto docs = sequences_.cursor(*node);
    pdl::FrequencyStore::Cursor freqs;
    if (has_frequencies()) freqs = frequencies_.cursor(*node);
    std::uint64_t doc;
    while (out.size() < k && docs.next(doc)) out.push_back({doc, has_frequencies() ? freqs.next() : 0});
    return out;
  }
  if (!has_frequencies() || range.size() <= b_) return brute_topk_L(oracle, range, k);

  std::vector<std::uint64_t> acc(docs_, 0);
  std::vector<std::uint64_t> touched;
  auto add = [&](std::uint64_t doc, std::uint64_t tf) {
    if (acc[doc] == 0) touched.push_back(doc);
    acc[doc] += tf;
  };
  split_range(
      *this, range, n_, leaf_starts_,
      [&](std::uint64_t lo, std::uint64_t hi) {
        for (std::uint64_t i = lo; i <= hi; ++i) add(oracle.doc_of(i), 1);
      },
      [&](std::uint64_t ln, std::uint64_t rn) {
        for_each_cover(ln, rn, [&](std::uint64_t node) {
          auto docs = sequences_.cursor(node);
          auto freqs = frequencies_.cursor(node);
          std::uint64_t doc;
          while (docs.next(doc)) add(doc, freqs.next());
        });
      });
  std::vector<DocFreq> out;
  out.reserve(touched.size());
  for (auto doc : touched) out.push_back({doc, acc[doc]});
  const std::size_t keep = std::min<std::uint64_t>(k, out.size());
  std::partial_sort(out.begin(), out.begin() + static_cast<std::ptrdiff_t>(keep), out.end(), by_frequency);
  out.resize(keep);
  return out;
}

PdlCursor PdlIndex::cursor(const SuffixOracle& oracle, LexRange range) const {
  if (variant_ != PdlVariant::TopK && variant_ != PdlVariant::TopKF)
    throw Error(ErrorCode::UnsupportedVariant, "incremental top-k needs a full-answer PDL");
  PdlCursor c;
  c.has_freq_ = has_frequencies();
  if (range.empty()) return c;
  if (auto node = node_for(range)) {
    c.lazy_ = true;
    c.docs_ = sequences_.cursor(*node);
    if (c.has_freq_) c.freqs_ = frequencies_.cursor(*node);
  } else {
    c.has_freq_ = true;
    c.list_ = brute_topk_L(oracle, range, range.size());
  }
  return c;
}

std::vector<LexRange> PdlIndex::node_ranges() const {
  std::vector<LexRange> out(nodes());
  for (std::uint64_t l = 0; l < leaves_; ++l) {
    out[l] = LexRange{leaf_start(l), leaf_start(l + 1) - 1};
    std::uint64_t i = l;
    while (first_child_[i]) {
      const auto [p, after] = parent(i);
      out[p] = LexRange{leaf_start(l), leaf_start(after) - 1};
      i = p;
    }
  }
  return out;
}

std::vector<std::uint64_t> PdlIndex::node_documents(std::uint64_t node) const {
  if (node >= nodes()) throw Error(ErrorCode::OutOfRange, "node index beyond sampled tree");
  std::vector<std::uint64_t> out;
  for_each_document(node, [&](std::uint64_t doc) { out.push_back(doc); });
  return out;
}

std::vector<std::uint64_t> PdlIndex::node_frequencies(std::uint64_t node) const {
  if (!has_frequencies()) throw Error(ErrorCode::UnsupportedVariant, "PDL variant stores no frequencies");
  const std::uint64_t len = node_documents(node).size();
  auto freqs = frequencies_.cursor(node);
  std::vector<std::uint64_t> out(len);
  for (auto& f : out) f = freqs.next();
  return out;
}

std::uint64_t PdlIndex::stored_tokens() const {
  return variant_ == PdlVariant::Listing ? sets_.tokens() : sequences_.tokens();
}

std::uint64_t PdlIndex::store_bytes() const {
  return variant_ == PdlVariant::Listing ? sets_.size_in_bytes() : sequences_.size_in_bytes() + frequencies_.size_in_bytes();
}

std::uint64_t PdlIndex::size_in_bytes() const {
  return store_bytes() + leaf_starts_.size_in_bytes() + first_child_.size_in_bytes() + parents_.size_in_bytes() +
         next_leaf_.size_in_bytes() + 8 * sizeof(std::uint64_t);
}

void PdlIndex::serialize(io::Writer& w) const {
  w.u8(static_cast<std::uint8_t>(variant_));
  w.u64(b_);
  w.f64(beta_);
  w.u64(n_);
  w.u64(docs_);
  w.u64(leaves_);
  w.u64(internal_);
  w.u64(raw_tokens_);
  leaf_starts_.serialize(w);
  first_child_.serialize(w);
  parents_.serialize(w);
  next_leaf_.serialize(w);
  if (variant_ == PdlVariant::Listing) {
    sets_.serialize(w);
  } else {
    sequences_.serialize(w);
    if (has_frequencies()) frequencies_.serialize(w);
  }
}

PdlIndex PdlIndex::load(io::Reader& r) {
  PdlIndex idx;
  const std::uint8_t v = r.u8();
  if (v > static_cast<std::uint8_t>(PdlVariant::Pruned)) throw Error(ErrorCode::FormatError, "unknown PDL variant");
  idx.variant_ = static_cast<PdlVariant>(v);
  idx.b_ = r.u64();
  idx.beta_ = r.f64();
  idx.n_ = r.u64();
  idx.docs_ = r.u64();
  idx.leaves_ = r.u64();
  idx.internal_ = r.u64();
  idx.raw_tokens_ = r.u64();
  idx.leaf_starts_ = succinct::SparseBitvector::load(r);
  idx.first_child_ = succinct::PlainBitvector::load(r);
  idx.parents_ = succinct::IntVector::load(r);
  idx.next_leaf_ = succinct::IntVector::load(r);
  if (idx.variant_ == PdlVariant::Listing) {
    idx.sets_ = pdl::SetStore::load(r);
  } else {
    idx.sequences_ = pdl::SequenceStore::load(r);
    if (idx.has_frequencies()) idx.frequencies_ = pdl::FrequencyStore::load(r);
  }
  if (idx.leaf_starts_.count_ones() != idx.leaves_ || idx.first_child_.size() != idx.nodes() ||
      idx.next_leaf_.size() != idx.internal_)
    throw Error(ErrorCode::FormatError, "PDL tree shape mismatch");
  return idx;
}

// ---------------------------------------------------------------- PdlCursor

std::optional<DocFreq> PdlCursor::pull() {
  if (!lazy_) {
    if (pos_ == list_.size()) return std::nullopt;
    return list_[pos_++];
  }
  std::uint64_t doc;
  if (!docs_.next(doc)) return std::nullopt;
  return DocFreq{doc, has_freq_ ? freqs_.next() : 0};
}

std::optional<DocFreq> PdlCursor::peek() {
  if (!ahead_) ahead_ = pull();
  return ahead_;
}

std::optional<DocFreq> PdlCursor::next() {
  if (ahead_) {
    auto out = ahead_;
    ahead_.reset();
    return out;
  }
  return pull();
}

}  // namespace rdoc
