#include "rdoc/corpus/suffix_oracle.hpp"

#include <algorithm>

#include "rdoc/corpus/sais.hpp"
#include "rdoc/error.hpp"

namespace rdoc {

SuffixOracle::SuffixOracle(std::shared_ptr<const Collection> collection, std::uint32_t sample_period)
    : collection_(std::move(collection)), sample_period_(sample_period) {
  if (!collection_) throw Error(ErrorCode::InvalidParam, "suffix oracle needs a collection");
  if (sample_period_ == 0) throw Error(ErrorCode::InvalidParam, "sample period must be positive");
  const Collection& c = *collection_;
  const std::string& text = c.text();
  const auto d = static_cast<std::uint32_t>(c.doc_count());
  // Terminator of document j becomes d-1-j; byte b becomes d+b-1.
  std::vector<std::uint32_t> s(text.size());
  std::uint32_t doc = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const auto b = static_cast<unsigned char>(text[i]);
    if (b == 0)
      s[i] = d - 1 - doc++;
    else
      s[i] = d + b - 1;
  }
  sa_ = sais(s, d + 255);
}

LexRange SuffixOracle::find(std::string_view pattern) const {
  if (pattern.find(kTerminator) != std::string_view::npos)
    throw Error(ErrorCode::ReservedSymbol, "pattern contains the terminator byte");
  if (pattern.empty()) return LexRange{0, size() - 1};
  const std::string& text = collection_->text();
  const std::uint64_t n = text.size();
  // compare the suffix's first |P| bytes with P; terminators sort below every byte
  auto cmp = [&](std::uint32_t pos) {
    const std::uint64_t len = std::min<std::uint64_t>(pattern.size(), n - pos);
    for (std::uint64_t k = 0; k < len; ++k) {
      const auto a = static_cast<unsigned char>(text[pos + k]);
      const auto b = static_cast<unsigned char>(pattern[k]);
      if (a != b) return a < b ? -1 : 1;
      if (a == 0) return -1;
    }
    return len == pattern.size() ? 0 : -1;
  };
  const auto lo = std::partition_point(sa_.begin(), sa_.end(), [&](std::uint32_t p) { return cmp(p) < 0; });
  const auto hi = std::partition_point(lo, sa_.end(), [&](std::uint32_t p) { return cmp(p) == 0; });
  if (lo == hi) return LexRange{};
  return LexRange{static_cast<std::uint64_t>(lo - sa_.begin()), static_cast<std::uint64_t>(hi - sa_.begin()) - 1};
}

std::uint64_t SuffixOracle::doc_of(std::uint64_t i) const {
  if (i >= sa_.size()) throw Error(ErrorCode::OutOfRange, "suffix array index beyond text");
  return collection_->doc_of_position(sa_[i]);
}

std::vector<std::uint32_t> SuffixOracle::document_array() const {
  std::vector<std::uint32_t> da(sa_.size());
  // Document of each text position by a linear pass, then permute.
  std::vector<std::uint32_t> doc_at(sa_.size());
  const std::string& text = collection_->text();
  std::uint32_t doc = 0;
  for (std::size_t p = 0; p < text.size(); ++p) {
    doc_at[p] = doc;
    if (text[p] == kTerminator) ++doc;
  }
  for (std::size_t i = 0; i < sa_.size(); ++i) da[i] = doc_at[sa_[i]];
  return da;
}

void SuffixOracle::serialize(io::Writer& w) const {
  w.u32(sample_period_);
  w.vec(sa_);
}

SuffixOracle SuffixOracle::load(io::Reader& r, std::shared_ptr<const Collection> collection) {
  SuffixOracle o;
  o.collection_ = std::move(collection);
  o.sample_period_ = r.u32();
  o.sa_ = r.vec<std::uint32_t>();
  if (o.sa_.size() != o.collection_->size() || o.sample_period_ == 0)
    throw Error(ErrorCode::FormatError, "suffix array does not match the collection");
  for (auto p : o.sa_)
    if (p >= o.sa_.size()) throw Error(ErrorCode::FormatError, "suffix array entry out of range");
  return o;
}

std::vector<std::uint32_t> build_lcp(const Collection& c, const std::vector<std::uint32_t>& sa) {
  const std::string& text = c.text();
  const std::size_t n = sa.size();
  std::vector<std::uint32_t> rank(n);
  for (std::size_t i = 0; i < n; ++i) rank[sa[i]] = static_cast<std::uint32_t>(i);
  std::vector<std::uint32_t> lcp(n, 0);
  std::uint32_t h = 0;
  for (std::size_t p = 0; p < n; ++p) {
    if (rank[p] == 0) {
      h = 0;
      continue;
    }
    const std::size_t q = sa[rank[p] - 1];
    while (p + h < n && q + h < n && text[p + h] == text[q + h] && text[p + h] != kTerminator) ++h;
    lcp[rank[p]] = h;
    if (h > 0) --h;
  }
  return lcp;
}

}  // namespace rdoc
