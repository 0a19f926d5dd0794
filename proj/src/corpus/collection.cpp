#include "rdoc/corpus/collection.hpp"

#include <algorithm>
#include <fstream>
#include <iterator>
#include <sstream>

#include "rdoc/error.hpp"

namespace rdoc {

Collection build_collection(const std::vector<std::string>& documents) {
  if (documents.empty()) throw Error(ErrorCode::EmptyInput, "collection needs at least one document");
  Collection c;
  std::uint64_t total = 0;
  for (const auto& doc : documents) total += doc.size() + 1;
  if (total >= (std::uint64_t{1} << 32) - 1) throw Error(ErrorCode::InvalidParam, "collection exceeds 4 GiB");
  c.text_.reserve(total);
  c.doc_starts_.reserve(documents.size());
  for (std::size_t j = 0; j < documents.size(); ++j) {
    if (documents[j].find(kTerminator) != std::string::npos)
      throw Error(ErrorCode::ReservedSymbol, "document " + std::to_string(j) + " contains the terminator byte");
    c.doc_starts_.push_back(c.text_.size());
    c.text_ += documents[j];
    c.text_.push_back(kTerminator);
  }
  c.index_boundaries();
  return c;
}

void Collection::index_boundaries() {
  succinct::BitBuffer b(text_.size());
  for (auto s : doc_starts_) b.set(s);
  boundaries_ = succinct::PlainBitvector(std::move(b));
}

void Collection::serialize(io::Writer& w) const {
  w.u64(text_.size());
  w.u64(doc_starts_.size());
  w.str(text_);
  boundaries_.serialize(w);
}

Collection Collection::load(io::Reader& r) {
  Collection c;
  const std::uint64_t n = r.u64();
  const std::uint64_t d = r.u64();
  c.text_ = r.str();
  c.boundaries_ = succinct::PlainBitvector::load(r);
  if (c.text_.size() != n || c.boundaries_.size() != n || c.boundaries_.count_ones() != d || d == 0)
    throw Error(ErrorCode::FormatError, "collection header does not match its contents");
  c.doc_starts_.reserve(d);
  for (std::uint64_t j = 0; j < d; ++j) c.doc_starts_.push_back(c.boundaries_.select1(j));
  if (c.doc_starts_[0] != 0 || c.text_.back() != kTerminator)
    throw Error(ErrorCode::FormatError, "malformed document boundaries");
  for (std::uint64_t j = 1; j < d; ++j)
    if (c.text_[c.doc_starts_[j] - 1] != kTerminator) throw Error(ErrorCode::FormatError, "malformed document boundaries");
  return c;
}

DocsFormat parse_docs_format(std::string_view name) {
  if (name == "files") return DocsFormat::Files;
  if (name == "lines") return DocsFormat::Lines;
  if (name == "nul") return DocsFormat::Nul;
  throw Error(ErrorCode::InvalidParam, "unknown document format '" + std::string(name) + "' (files|lines|nul)");
}

namespace {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IOError, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw Error(ErrorCode::IOError, "cannot read " + path.string());
  return ss.str();
}

}  // namespace

std::vector<std::string> load_documents(const std::filesystem::path& path, DocsFormat format) {
  std::vector<std::string> docs;
  if (format == DocsFormat::Files) {
    if (!std::filesystem::is_directory(path)) throw Error(ErrorCode::IOError, path.string() + " is not a directory");
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(path))
      if (entry.is_regular_file()) files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    for (const auto& f : files) docs.push_back(read_file(f));
    return docs;
  }
  const std::string data = read_file(path);
  const char sep = format == DocsFormat::Lines ? '\n' : '\0';
  std::size_t start = 0;
  while (start < data.size()) {
    std::size_t end = data.find(sep, start);
    if (end == std::string::npos) end = data.size();
    std::string doc = data.substr(start, end - start);
    if (format == DocsFormat::Lines && !doc.empty() && doc.back() == '\r') doc.pop_back();
    docs.push_back(std::move(doc));
    start = end + 1;
  }
  return docs;
}

}  // namespace rdoc
