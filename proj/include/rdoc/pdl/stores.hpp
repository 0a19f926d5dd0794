#pragma once

#include <cstdint>
#include <vector>

#include "rdoc/succinct/bits.hpp"
#include "rdoc/succinct/sparse_bitvector.hpp"

namespace rdoc::pdl {

/// Unordered document sets compressed with one-level rules: array A holds document ids
/// (below d) and rule ids (d + r), and rule r expands to a plain list of at least two
/// documents stored in G. Sets must be sorted and duplicate free.
class SetStore {
 public:
  SetStore() = default;
  SetStore(const std::vector<std::vector<std::uint32_t>>& sets, std::uint64_t docs);

  std::uint64_t sets() const { return set_starts_.count_ones(); }
  std::uint64_t rules() const { return rule_starts_.count_ones(); }
  /// Stored tokens |A| + |G|.
  std::uint64_t tokens() const { return a_.size() + g_.size(); }

  template <typename F>
  void for_each(std::uint64_t i, F&& f) const {
    const std::uint64_t end = i + 1 < sets() ? set_starts_.select1(i + 1) : a_.size();
    for (std::uint64_t j = set_starts_.select1(i); j < end; ++j) {
      const std::uint64_t sym = a_[j];
      if (sym < docs_) {
        f(sym);
        continue;
      }
      const std::uint64_t r = sym - docs_;
      const std::uint64_t rule_end = r + 1 < rules() ? rule_starts_.select1(r + 1) : g_.size();
      for (std::uint64_t k = rule_starts_.select1(r); k < rule_end; ++k) f(g_[k]);
    }
  }

  std::uint64_t size_in_bytes() const;
  void serialize(io::Writer& w) const;
  static SetStore load(io::Reader& r);

 private:
  std::uint64_t docs_ = 0;
  succinct::IntVector a_;
  succinct::SparseBitvector set_starts_;  // B_A
  succinct::IntVector g_;
  succinct::SparseBitvector rule_starts_;  // B_G
};

/// Ordered document sequences compressed with Re-Pair; rules nest.
class SequenceStore {
 public:
  SequenceStore() = default;
  SequenceStore(const std::vector<std::vector<std::uint32_t>>& sequences, std::uint64_t docs);

  std::uint64_t sequences() const { return starts_.count_ones(); }
  std::uint64_t rules() const { return left_.size(); }
  /// Stored tokens |A| + 2 * rules.
  std::uint64_t tokens() const { return a_.size() + 2 * rules(); }

  /// Left-to-right expansion of one sequence; can stop at any point.
  class Cursor {
   public:
    Cursor() = default;
    bool next(std::uint64_t& doc);

   private:
    friend class SequenceStore;
    const SequenceStore* store_ = nullptr;
    std::uint64_t pos_ = 0;
    std::uint64_t end_ = 0;
    std::vector<std::uint64_t> stack_;
  };

  Cursor cursor(std::uint64_t i) const;

  template <typename F>
  void for_each(std::uint64_t i, F&& f) const {
    Cursor c = cursor(i);
    std::uint64_t doc;
    while (c.next(doc)) f(doc);
  }

  std::uint64_t size_in_bytes() const;
  void serialize(io::Writer& w) const;
  static SequenceStore load(io::Reader& r);

 private:
  std::uint64_t docs_ = 0;
  succinct::IntVector a_;
  succinct::SparseBitvector starts_;  // B_A
  succinct::IntVector left_;
  succinct::IntVector right_;
};

/// Non-increasing frequency sequences, one per node: run-length encoded with the run heads
/// stored as differences, all as delta codes.
class FrequencyStore {
 public:
  FrequencyStore() = default;
  explicit FrequencyStore(const std::vector<std::vector<std::uint32_t>>& frequencies);

  std::uint64_t sequences() const { return starts_.count_ones(); }

  class Cursor {
   public:
    Cursor() = default;
    std::uint64_t next();

   private:
    friend class FrequencyStore;
    Cursor(const succinct::BitBuffer* codes, std::uint64_t pos) : codes_(codes), pos_(pos) {}
    const succinct::BitBuffer* codes_ = nullptr;
    std::uint64_t pos_ = 0;
    std::uint64_t run_left_ = 0;
    std::uint64_t value_ = 0;
    bool started_ = false;
  };

  Cursor cursor(std::uint64_t i) const;

  std::uint64_t size_in_bytes() const { return codes_.size_in_bytes() + starts_.size_in_bytes(); }
  void serialize(io::Writer& w) const;
  static FrequencyStore load(io::Reader& r);

 private:
  succinct::BitBuffer codes_;
  succinct::SparseBitvector starts_;
};

}  // namespace rdoc::pdl
