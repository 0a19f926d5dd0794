#include "rdoc/succinct/wavelet_tree.hpp"

#include <algorithm>

#include "rdoc/error.hpp"

namespace rdoc::succinct {

WaveletTree::WaveletTree(std::span<const std::uint64_t> values, WaveletShape shape, BitvectorKind kind)
    : size_(values.size()), shape_(shape) {
  if (values.empty()) return;
  sigma_ = *std::max_element(values.begin(), values.end()) + 1;
  balanced_width_ = sigma_ <= 1 ? 0 : bits_for(sigma_ - 1);
  std::vector<std::uint64_t> all(values.begin(), values.end());
  build(all, 0, kind);
}

unsigned WaveletTree::code_length(std::uint64_t value) const {
  if (shape_ == WaveletShape::Balanced) return balanced_width_;
  return 2 * floor_log2(value + 1) + 1;
}

unsigned WaveletTree::code_bit(std::uint64_t value, unsigned k) const {
  if (shape_ == WaveletShape::Balanced) return static_cast<unsigned>((value >> (balanced_width_ - 1 - k)) & 1U);
  const std::uint64_t i = value + 1;
  const unsigned g = floor_log2(i);
  if (k < g) return 1;
  if (k == g) return 0;
  return static_cast<unsigned>((i >> (2 * g - k)) & 1U);
}

std::int64_t WaveletTree::build(std::vector<std::uint64_t>& values, unsigned depth, BitvectorKind kind) {
  const auto id = static_cast<std::int64_t>(nodes_.size());
  nodes_.emplace_back();
  nodes_.back().min_value = *std::min_element(values.begin(), values.end());
  if (code_length(values.front()) == depth) {
    // codes are prefix-free, so every value here is the same
    nodes_.back().leaf = true;
    values.clear();
    values.shrink_to_fit();
    return id;
  }
  BitBuffer bits(values.size());
  std::vector<std::uint64_t> left;
  std::vector<std::uint64_t> right;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (code_bit(values[i], depth)) {
      bits.set(i);
      right.push_back(values[i]);
    } else {
      left.push_back(values[i]);
    }
  }
  values.clear();
  values.shrink_to_fit();
  const bool binary = !left.empty() && !right.empty();
  std::int64_t l = -1;
  std::int64_t r = -1;
  if (!left.empty()) l = build(left, depth + 1, kind);
  if (!right.empty()) r = build(right, depth + 1, kind);
  Node& node = nodes_[static_cast<std::size_t>(id)];
  node.child[0] = l;
  node.child[1] = r;
  if (binary) node.bits = AnyBitvector(bits, kind);
  return id;
}

std::uint64_t WaveletTree::access(std::uint64_t i) const {
  if (i >= size_) throw Error(ErrorCode::OutOfRange, "wavelet tree access beyond sequence");
  std::int64_t v = 0;
  for (;;) {
    const Node& node = nodes_[static_cast<std::size_t>(v)];
    if (node.leaf) return node.min_value;
    if (!has_bits(node)) {
      v = node.child[0] >= 0 ? node.child[0] : node.child[1];
      continue;
    }
    if (node.bits.access(i)) {
      i = node.bits.rank1(i);
      v = node.child[1];
    } else {
      i = node.bits.rank0(i);
      v = node.child[0];
    }
  }
}

std::uint64_t WaveletTree::rank(std::uint64_t value, std::uint64_t i) const {
  if (i > size_) throw Error(ErrorCode::OutOfRange, "wavelet tree rank beyond sequence");
  if (nodes_.empty() || value >= sigma_) return 0;
  std::int64_t v = 0;
  for (unsigned depth = 0;; ++depth) {
    const Node& node = nodes_[static_cast<std::size_t>(v)];
    if (node.leaf) return node.min_value == value ? i : 0;
    const unsigned bit = code_bit(value, depth);
    if (node.child[bit] < 0) return 0;
    if (has_bits(node)) i = bit ? node.bits.rank1(i) : node.bits.rank0(i);
    v = node.child[bit];
  }
}

std::uint64_t WaveletTree::select(std::uint64_t value, std::uint64_t j) const {
  if (nodes_.empty() || value >= sigma_) throw Error(ErrorCode::OutOfRange, "value does not occur");
  std::vector<std::pair<std::int64_t, unsigned>> path;
  std::int64_t v = 0;
  for (unsigned depth = 0;; ++depth) {
    const Node& node = nodes_[static_cast<std::size_t>(v)];
    if (node.leaf) {
      if (node.min_value != value) throw Error(ErrorCode::OutOfRange, "value does not occur");
      break;
    }
    const unsigned bit = code_bit(value, depth);
    if (node.child[bit] < 0) throw Error(ErrorCode::OutOfRange, "value does not occur");
    path.emplace_back(v, bit);
    v = node.child[bit];
  }
  for (auto it = path.rbegin(); it != path.rend(); ++it) {
    const Node& node = nodes_[static_cast<std::size_t>(it->first)];
    if (!has_bits(node)) continue;
    j = it->second ? node.bits.select1(j) : node.bits.select0(j);
  }
  if (j >= size_) throw Error(ErrorCode::OutOfRange, "select rank beyond occurrences");
  return j;
}

int WaveletTree::leaf_depth(std::uint64_t value) const {
  if (nodes_.empty() || value >= sigma_) return -1;
  std::int64_t v = 0;
  for (unsigned depth = 0;; ++depth) {
    const Node& node = nodes_[static_cast<std::size_t>(v)];
    if (node.leaf) return node.min_value == value ? static_cast<int>(depth) : -1;
    const unsigned bit = code_bit(value, depth);
    if (node.child[bit] < 0) return -1;
    v = node.child[bit];
  }
}

std::uint64_t WaveletTree::size_in_bytes() const {
  std::uint64_t total = 3 * sizeof(std::uint64_t);
  for (const auto& n : nodes_) total += 2 * sizeof(std::int64_t) + sizeof(std::uint64_t) + 1 + (has_bits(n) ? n.bits.size_in_bytes() : 0);
  return total;
}

void WaveletTree::serialize(io::Writer& w) const {
  w.u8(static_cast<std::uint8_t>(shape_));
  w.u64(size_);
  w.u64(sigma_);
  w.u64(nodes_.size());
  for (const auto& n : nodes_) {
    w.pod(n.child[0]);
    w.pod(n.child[1]);
    w.u64(n.min_value);
    w.u8(n.leaf ? 1 : 0);
    if (has_bits(n)) n.bits.serialize(w);
  }
}

WaveletTree WaveletTree::load(io::Reader& r) {
  WaveletTree t;
  t.shape_ = static_cast<WaveletShape>(r.u8());
  if (t.shape_ != WaveletShape::Balanced && t.shape_ != WaveletShape::Skewed)
    throw Error(ErrorCode::FormatError, "unknown wavelet tree shape");
  t.size_ = r.u64();
  t.sigma_ = r.u64();
  t.balanced_width_ = t.sigma_ <= 1 ? 0 : bits_for(t.sigma_ - 1);
  const std::uint64_t count = r.u64();
  if (count > t.size_ * 130 + 1) throw Error(ErrorCode::FormatError, "implausible wavelet tree node count");
  t.nodes_.resize(count);
  for (auto& n : t.nodes_) {
    n.child[0] = r.pod<std::int64_t>();
    n.child[1] = r.pod<std::int64_t>();
    n.min_value = r.u64();
    n.leaf = r.u8() != 0;
    for (auto c : n.child)
      if (c >= static_cast<std::int64_t>(count)) throw Error(ErrorCode::FormatError, "wavelet tree child out of range");
    if (t.has_bits(n)) n.bits = AnyBitvector::load(r);
  }
  return t;
}

}  // namespace rdoc::succinct
