#include "rdoc/bundle/bundle.hpp"

#include <fstream>
#include <sstream>

#include "rdoc/error.hpp"

namespace rdoc {

void parse_index_list(std::string_view list, BundleOptions& options) {
  options.ilcp = options.pdl = options.pdl_topk = options.count = false;
  std::size_t start = 0;
  while (start <= list.size()) {
    const std::size_t comma = std::min(list.find(',', start), list.size());
    const std::string_view name = list.substr(start, comma - start);
    if (name == "ilcp") options.ilcp = true;
    else if (name == "pdl") options.pdl = true;
    else if (name == "pdl-topk") options.pdl_topk = true;
    else if (name == "count") options.count = true;
    else if (!name.empty()) throw Error(ErrorCode::InvalidParam, "unknown index " + std::string(name));
    start = comma + 1;
  }
}

std::uint64_t corpus_hash(const Collection& c) {
  io::Fnv1a h;
  h.update(c.text().data(), c.text().size());
  return h.digest();
}

IndexBundle build_bundle(const std::vector<std::string>& documents, const BundleOptions& options) {
  IndexBundle b;
  b.collection = std::make_shared<const Collection>(build_collection(documents));
  b.oracle = SuffixOracle(b.collection);
  b.corpus_hash = corpus_hash(*b.collection);
  if (options.ilcp) b.ilcp.emplace(build_ilcp(b.oracle));
  if (options.pdl) b.pdl = build_pdl(b.oracle, PdlVariant::Listing, options.block_size, options.beta);
  if (options.pdl_topk) {
    if (options.topk_variant == PdlVariant::Listing)
      throw Error(ErrorCode::UnsupportedVariant, "the top-k section needs a top-k variant");
    b.pdl_topk = build_pdl(b.oracle, options.topk_variant, options.block_size, options.beta);
  }
  if (options.count) b.count.emplace(build_h(b.oracle), options.count_kind);
  return b;
}

namespace {

template <typename T>
std::string payload_of(const T& index) {
  std::ostringstream out(std::ios::binary);
  io::Writer w(out);
  index.serialize(w);
  return std::move(out).str();
}

template <typename T>
void for_each_section(const IndexBundle& b, T&& f) {
  if (b.ilcp) f("ILCP", *b.ilcp);
  if (b.pdl) f("PDLL", *b.pdl);
  if (b.pdl_topk) f("PDLK", *b.pdl_topk);
  if (b.count) f("DCNT", *b.count);
}

}  // namespace

std::vector<SectionInfo> IndexBundle::sections() const {
  std::vector<SectionInfo> out;
  out.push_back({"CORP", sizeof(corpus_hash) + payload_of(*collection).size() + payload_of(oracle).size(),
                 collection->size_in_bytes() + oracle.size_in_bytes()});
  for_each_section(*this, [&](const char* tag, const auto& index) {
    out.push_back({tag, payload_of(index).size(), index.size_in_bytes()});
  });
  return out;
}

void save_bundle(const IndexBundle& b, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IOError, "cannot write " + path.string());
  io::Writer w(out);
  w.tag("RDOC");
  w.u32(kBundleVersion);
  w.tag("CORP");
  w.u64(b.corpus_hash);
  b.collection->serialize(w);
  b.oracle.serialize(w);
  std::uint32_t count = 0;
  for_each_section(b, [&](const char*, const auto&) { ++count; });
  w.u32(count);
  for_each_section(b, [&](const char* tag, const auto& index) {
    const std::string payload = payload_of(index);
    w.bytes(tag, 4);
    w.u64(b.corpus_hash);
    w.u64(payload.size());
    w.bytes(payload.data(), payload.size());
  });
  out.flush();
  if (!out) throw Error(ErrorCode::IOError, "write failed for " + path.string());
}

IndexBundle load_bundle(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IOError, "cannot open " + path.string());
  io::Reader r(in);
  r.expect_tag("RDOC");
  if (const auto version = r.u32(); version != kBundleVersion)
    throw Error(ErrorCode::FormatError, "unsupported bundle version " + std::to_string(version));
  r.expect_tag("CORP");
  IndexBundle b;
  b.corpus_hash = r.u64();
  b.collection = std::make_shared<const Collection>(Collection::load(r));
  if (corpus_hash(*b.collection) != b.corpus_hash) throw Error(ErrorCode::FormatError, "corpus hash mismatch");
  b.oracle = SuffixOracle::load(r, b.collection);
  const std::uint32_t count = r.u32();
  for (std::uint32_t s = 0; s < count; ++s) {
    char tag[5] = {};
    r.bytes(tag, 4);
    if (r.u64() != b.corpus_hash) throw Error(ErrorCode::FormatError, std::string("section ") + tag + " belongs to another corpus");
    const std::uint64_t length = r.u64();
    std::string payload(length, '\0');
    r.bytes(payload.data(), length);
    std::istringstream body(std::move(payload), std::ios::binary);
    io::Reader pr(body);
    const std::string_view t(tag, 4);
    if (t == "ILCP") b.ilcp = IlcpIndex::load(pr);
    else if (t == "PDLL") b.pdl = PdlIndex::load(pr);
    else if (t == "PDLK") b.pdl_topk = PdlIndex::load(pr);
    else if (t == "DCNT") b.count = CountIndex::load(pr);
    else throw Error(ErrorCode::FormatError, "unknown section " + std::string(t));
  }
  return b;
}

}  // namespace rdoc
