#pragma once

#include <cstdint>
#include <string_view>
#include <variant>

#include "rdoc/succinct/bits.hpp"
#include "rdoc/succinct/delta_block_bitvector.hpp"
#include "rdoc/succinct/grammar_bitvector.hpp"
#include "rdoc/succinct/plain_bitvector.hpp"
#include "rdoc/succinct/run_length_bitvector.hpp"
#include "rdoc/succinct/sparse_bitvector.hpp"
#include "rdoc/succinct/sparse_run_bitvector.hpp"

namespace rdoc::succinct {

enum class BitvectorKind : std::uint8_t {
  Plain = 0,
  Sparse = 1,
  RunLength = 2,
  Gap = 3,
  SparseRun = 4,
  DeltaBlock = 5,
  Grammar = 6,
};

std::string_view to_string(BitvectorKind kind);

/// A bitvector whose encoding is chosen at run time. Serialized with a one-byte kind tag.
class AnyBitvector {
 public:
  AnyBitvector() = default;
  AnyBitvector(const BitBuffer& bits, BitvectorKind kind);

  BitvectorKind kind() const { return static_cast<BitvectorKind>(impl_.index()); }

  std::uint64_t size() const {
    return std::visit([](const auto& b) { return b.size(); }, impl_);
  }
  std::uint64_t count_ones() const {
    return std::visit([](const auto& b) { return b.count_ones(); }, impl_);
  }
  std::uint64_t rank1(std::uint64_t i) const {
    return std::visit([i](const auto& b) { return b.rank1(i); }, impl_);
  }
  std::uint64_t rank0(std::uint64_t i) const { return i - rank1(i); }
  std::uint64_t select1(std::uint64_t j) const {
    return std::visit([j](const auto& b) { return b.select1(j); }, impl_);
  }
  /// Position of the j-th zero. Native for plain bitvectors, a binary search over rank otherwise.
  std::uint64_t select0(std::uint64_t j) const;
  bool access(std::uint64_t i) const {
    return std::visit([i](const auto& b) { return b.access(i); }, impl_);
  }
  std::uint64_t size_in_bytes() const {
    return 1 + std::visit([](const auto& b) { return b.size_in_bytes(); }, impl_);
  }

  void serialize(io::Writer& w) const;
  static AnyBitvector load(io::Reader& r);

 private:
  // Alternative order must match BitvectorKind.
  using Impl = std::variant<PlainBitvector, SparseBitvector, RunLengthBitvector, GapBitvector, SparseRunBitvector,
                            DeltaBlockBitvector, GrammarBitvector>;
  explicit AnyBitvector(Impl impl) : impl_(std::move(impl)) {}

  Impl impl_;
};

}  // namespace rdoc::succinct
