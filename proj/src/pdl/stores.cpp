#include "rdoc/pdl/stores.hpp"

#include <unordered_map>

#include "rdoc/error.hpp"
#include "rdoc/grammar/repair.hpp"

namespace rdoc::pdl {

namespace {

std::vector<std::vector<std::uint64_t>> widen(const std::vector<std::vector<std::uint32_t>>& in) {
  std::vector<std::vector<std::uint64_t>> out;
  out.reserve(in.size());
  for (const auto& s : in) {
    if (s.empty()) throw Error(ErrorCode::InvalidParam, "stored sets must be non-empty");
    out.emplace_back(s.begin(), s.end());
  }
  return out;
}

succinct::SparseBitvector starts_of(const std::vector<std::vector<std::uint64_t>>& seqs, std::uint64_t total) {
  std::vector<std::uint64_t> starts;
  starts.reserve(seqs.size());
  std::uint64_t pos = 0;
  for (const auto& s : seqs) {
    starts.push_back(pos);
    pos += s.size();
  }
  return succinct::SparseBitvector(starts, total);
}

succinct::IntVector flatten(const std::vector<std::vector<std::uint64_t>>& seqs, std::uint64_t total) {
  std::uint64_t max_value = 0;
  for (const auto& s : seqs)
    for (auto v : s) max_value = std::max(max_value, v);
  succinct::IntVector out(total, succinct::bits_for(max_value));
  std::uint64_t pos = 0;
  for (const auto& s : seqs)
    for (auto v : s) out.set(pos++, v);
  return out;
}

std::uint64_t total_length(const std::vector<std::vector<std::uint64_t>>& seqs) {
  std::uint64_t total = 0;
  for (const auto& s : seqs) total += s.size();
  return total;
}

}  // namespace

// ---------------------------------------------------------------- SetStore

SetStore::SetStore(const std::vector<std::vector<std::uint32_t>>& sets, std::uint64_t docs) : docs_(docs) {
  grammar::Grammar g = grammar::repair(widen(sets), docs);

  // Only rules referenced from the sets are kept, each expanded to its documents.
  std::unordered_map<std::uint64_t, std::uint64_t> renumber;
  std::vector<std::vector<std::uint64_t>> bodies;
  for (auto& seq : g.sequences) {
    for (auto& sym : seq) {
      if (!g.is_rule(sym)) continue;
      auto [it, fresh] = renumber.try_emplace(sym, docs + bodies.size());
      if (fresh) {
        bodies.emplace_back();
        g.expand(sym, [&](std::uint64_t t) { bodies.back().push_back(t); });
      }
      sym = it->second;
    }
  }
  const std::uint64_t a_len = total_length(g.sequences);
  a_ = flatten(g.sequences, a_len);
  set_starts_ = starts_of(g.sequences, a_len);
  const std::uint64_t g_len = total_length(bodies);
  g_ = flatten(bodies, g_len);
  rule_starts_ = starts_of(bodies, g_len);
}

std::uint64_t SetStore::size_in_bytes() const {
  return a_.size_in_bytes() + set_starts_.size_in_bytes() + g_.size_in_bytes() + rule_starts_.size_in_bytes() + sizeof(docs_);
}

void SetStore::serialize(io::Writer& w) const {
  w.u64(docs_);
  a_.serialize(w);
  set_starts_.serialize(w);
  g_.serialize(w);
  rule_starts_.serialize(w);
}

SetStore SetStore::load(io::Reader& r) {
  SetStore s;
  s.docs_ = r.u64();
  s.a_ = succinct::IntVector::load(r);
  s.set_starts_ = succinct::SparseBitvector::load(r);
  s.g_ = succinct::IntVector::load(r);
  s.rule_starts_ = succinct::SparseBitvector::load(r);
  if (s.set_starts_.size() != s.a_.size() || s.rule_starts_.size() != s.g_.size())
    throw Error(ErrorCode::FormatError, "set store shape mismatch");
  return s;
}

// ---------------------------------------------------------------- SequenceStore

SequenceStore::SequenceStore(const std::vector<std::vector<std::uint32_t>>& sequences, std::uint64_t docs) : docs_(docs) {
  grammar::Grammar g = grammar::repair(widen(sequences), docs);
  const std::uint64_t a_len = total_length(g.sequences);
  a_ = flatten(g.sequences, a_len);
  starts_ = starts_of(g.sequences, a_len);
  std::vector<std::uint64_t> left;
  std::vector<std::uint64_t> right;
  for (const auto& [x, y] : g.rules) {
    left.push_back(x);
    right.push_back(y);
  }
  left_ = succinct::IntVector::from(left);
  right_ = succinct::IntVector::from(right);
}

SequenceStore::Cursor SequenceStore::cursor(std::uint64_t i) const {
  Cursor c;
  c.store_ = this;
  c.pos_ = starts_.select1(i);
  c.end_ = i + 1 < sequences() ? starts_.select1(i + 1) : a_.size();
  return c;
}

bool SequenceStore::Cursor::next(std::uint64_t& doc) {
  for (;;) {
    if (stack_.empty()) {
      if (pos_ == end_) return false;
      stack_.push_back(store_->a_[pos_++]);
    }
    const std::uint64_t sym = stack_.back();
    stack_.pop_back();
    if (sym < store_->docs_) {
      doc = sym;
      return true;
    }
    const std::uint64_t r = sym - store_->docs_;
    stack_.push_back(store_->right_[r]);
    stack_.push_back(store_->left_[r]);
  }
}

std::uint64_t SequenceStore::size_in_bytes() const {
  return a_.size_in_bytes() + starts_.size_in_bytes() + left_.size_in_bytes() + right_.size_in_bytes() + sizeof(docs_);
}

void SequenceStore::serialize(io::Writer& w) const {
  w.u64(docs_);
  a_.serialize(w);
  starts_.serialize(w);
  left_.serialize(w);
  right_.serialize(w);
}

SequenceStore SequenceStore::load(io::Reader& r) {
  SequenceStore s;
  s.docs_ = r.u64();
  s.a_ = succinct::IntVector::load(r);
  s.starts_ = succinct::SparseBitvector::load(r);
  s.left_ = succinct::IntVector::load(r);
  s.right_ = succinct::IntVector::load(r);
  if (s.starts_.size() != s.a_.size() || s.left_.size() != s.right_.size())
    throw Error(ErrorCode::FormatError, "sequence store shape mismatch");
  return s;
}

// ---------------------------------------------------------------- FrequencyStore

FrequencyStore::FrequencyStore(const std::vector<std::vector<std::uint32_t>>& frequencies) {
  std::vector<std::uint64_t> starts;
  starts.reserve(frequencies.size());
  for (const auto& f : frequencies) {
    if (f.empty()) throw Error(ErrorCode::InvalidParam, "frequency sequences must be non-empty");
    starts.push_back(codes_.size());
    std::vector<std::pair<std::uint64_t, std::uint64_t>> runs;  // (head, length)
    for (auto v : f) {
      if (v == 0 || (!runs.empty() && v > runs.back().first))
        throw Error(ErrorCode::InvalidParam, "frequencies must be positive and non-increasing");
      if (!runs.empty() && runs.back().first == v)
        ++runs.back().second;
      else
        runs.emplace_back(v, 1);
    }
    std::uint64_t prev = 0;
    for (std::size_t k = 0; k < runs.size(); ++k) {
      succinct::write_delta(codes_, k == 0 ? runs[k].first : prev - runs[k].first);
      succinct::write_delta(codes_, runs[k].second);
      prev = runs[k].first;
    }
  }
  starts_ = succinct::SparseBitvector(starts, codes_.size());
}

FrequencyStore::Cursor FrequencyStore::cursor(std::uint64_t i) const {
  return Cursor(&codes_, starts_.select1(i));
}

std::uint64_t FrequencyStore::Cursor::next() {
  if (run_left_ == 0) {
    succinct::DeltaReader reader(*codes_, pos_);
    const std::uint64_t head = reader.next();
    value_ = started_ ? value_ - head : head;
    run_left_ = reader.next();
    pos_ = reader.position();
    started_ = true;
  }
  --run_left_;
  return value_;
}

void FrequencyStore::serialize(io::Writer& w) const {
  codes_.serialize(w);
  starts_.serialize(w);
}

FrequencyStore FrequencyStore::load(io::Reader& r) {
  FrequencyStore s;
  s.codes_ = succinct::BitBuffer::load(r);
  s.starts_ = succinct::SparseBitvector::load(r);
  if (s.starts_.size() != s.codes_.size()) throw Error(ErrorCode::FormatError, "frequency store shape mismatch");
  return s;
}

}  // namespace rdoc::pdl
