#include "rdoc/succinct/any_bitvector.hpp"

#include "rdoc/error.hpp"

namespace rdoc::succinct {

std::string_view to_string(BitvectorKind kind) {
  switch (kind) {
    case BitvectorKind::Plain: return "plain";
    case BitvectorKind::Sparse: return "sparse";
    case BitvectorKind::RunLength: return "run-length";
    case BitvectorKind::Gap: return "gap";
    case BitvectorKind::SparseRun: return "sparse-run";
    case BitvectorKind::DeltaBlock: return "delta-block";
    case BitvectorKind::Grammar: return "grammar";
  }
  return "unknown";
}

AnyBitvector::AnyBitvector(const BitBuffer& bits, BitvectorKind kind) {
  switch (kind) {
    case BitvectorKind::Plain: impl_ = PlainBitvector(bits); break;
    case BitvectorKind::Sparse: impl_ = SparseBitvector(bits); break;
    case BitvectorKind::RunLength: impl_ = RunLengthBitvector(bits); break;
    case BitvectorKind::Gap: impl_ = GapBitvector(bits); break;
    case BitvectorKind::SparseRun: impl_ = SparseRunBitvector(bits); break;
    case BitvectorKind::DeltaBlock: impl_ = DeltaBlockBitvector(bits); break;
    case BitvectorKind::Grammar: impl_ = GrammarBitvector(bits); break;
    default: throw Error(ErrorCode::InvalidParam, "unknown bitvector kind");
  }
}

std::uint64_t AnyBitvector::select0(std::uint64_t j) const {
  if (const auto* plain = std::get_if<PlainBitvector>(&impl_)) return plain->select0(j);
  if (j >= size() - count_ones()) throw Error(ErrorCode::OutOfRange, "select0 rank beyond count of zeros");
  // smallest p with rank0(p + 1) > j
  std::uint64_t lo = j;
  std::uint64_t hi = size() - 1;
  while (lo < hi) {
    const std::uint64_t mid = lo + (hi - lo) / 2;
    if (rank0(mid + 1) > j)
      hi = mid;
    else
      lo = mid + 1;
  }
  return lo;
}

void AnyBitvector::serialize(io::Writer& w) const {
  w.u8(static_cast<std::uint8_t>(impl_.index()));
  std::visit([&w](const auto& b) { b.serialize(w); }, impl_);
}

AnyBitvector AnyBitvector::load(io::Reader& r) {
  switch (static_cast<BitvectorKind>(r.u8())) {
    case BitvectorKind::Plain: return AnyBitvector(Impl(PlainBitvector::load(r)));
    case BitvectorKind::Sparse: return AnyBitvector(Impl(SparseBitvector::load(r)));
    case BitvectorKind::RunLength: return AnyBitvector(Impl(RunLengthBitvector::load(r)));
    case BitvectorKind::Gap: return AnyBitvector(Impl(GapBitvector::load(r)));
    case BitvectorKind::SparseRun: return AnyBitvector(Impl(SparseRunBitvector::load(r)));
    case BitvectorKind::DeltaBlock: return AnyBitvector(Impl(DeltaBlockBitvector::load(r)));
    case BitvectorKind::Grammar: return AnyBitvector(Impl(GrammarBitvector::load(r)));
  }
  throw Error(ErrorCode::FormatError, "unknown bitvector kind tag");
}

}  // namespace rdoc::succinct
