#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "rdoc/succinct/plain_bitvector.hpp"

namespace rdoc {

/// Byte ending every document. It may not appear inside a document or a pattern.
inline constexpr char kTerminator = '\0';

/// Document collection: the concatenation of d terminator-ended documents plus the bitvector
/// B marking the first position of each document. Positions and document ids are 0-based.
class Collection {
 public:
  Collection() = default;

  const std::string& text() const { return text_; }
  std::uint64_t size() const { return text_.size(); }
  std::uint64_t doc_count() const { return doc_starts_.size(); }
  const succinct::PlainBitvector& boundaries() const { return boundaries_; }

  std::uint64_t doc_start(std::uint64_t doc) const { return doc_starts_.at(doc); }
  /// Position of the document's terminator.
  std::uint64_t doc_end(std::uint64_t doc) const {
    return (doc + 1 < doc_count() ? doc_starts_[doc + 1] : size()) - 1;
  }
  /// Document containing text position p.
  std::uint64_t doc_of_position(std::uint64_t p) const { return boundaries_.rank1(p + 1) - 1; }
  std::string_view document(std::uint64_t doc) const {
    const std::uint64_t s = doc_start(doc);
    return std::string_view(text_).substr(s, doc_end(doc) - s);
  }

  std::uint64_t size_in_bytes() const { return text_.size() + boundaries_.size_in_bytes(); }

  void serialize(io::Writer& w) const;
  static Collection load(io::Reader& r);

  friend Collection build_collection(const std::vector<std::string>& documents);

 private:
  void index_boundaries();

  std::string text_;
  std::vector<std::uint64_t> doc_starts_;
  succinct::PlainBitvector boundaries_;
};

/// Concatenates the documents in order, appending a terminator to each.
/// Throws EmptyInput for an empty list and ReservedSymbol if a document holds the terminator.
Collection build_collection(const std::vector<std::string>& documents);

enum class DocsFormat { Files, Lines, Nul };

DocsFormat parse_docs_format(std::string_view name);

/// Reads documents from a directory (one file per document, in name order), or from a single
/// file split into lines or on NUL bytes.
std::vector<std::string> load_documents(const std::filesystem::path& path, DocsFormat format);

}  // namespace rdoc
