#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "rdoc/corpus/suffix_oracle.hpp"
#include "rdoc/doccount/count_index.hpp"
#include "rdoc/ilcp/ilcp.hpp"
#include "rdoc/pdl/pdl.hpp"

namespace rdoc {

inline constexpr std::uint32_t kBundleVersion = 1;

struct BundleOptions {
  bool ilcp = true;
  bool pdl = true;       // listing variant
  bool pdl_topk = true;  // top-k variant given by topk_variant
  bool count = true;
  std::uint64_t block_size = kDefaultBlockSize;
  double beta = kDefaultBeta;
  PdlVariant topk_variant = PdlVariant::TopKF;
  CountKind count_kind = CountKind::RunRR;
};

/// Parses a comma-separated list of ilcp, pdl, pdl-topk, count into the flags of `options`.
void parse_index_list(std::string_view list, BundleOptions& options);

struct SectionInfo {
  std::string tag;
  std::uint64_t file_bytes = 0;    // payload bytes in the bundle file
  std::uint64_t memory_bytes = 0;  // size_in_bytes of the loaded structure
};

/// File layout: "RDOC", u32 version, "CORP" section (hash, collection, suffix array), u32
/// section count, then per section: tag, u64 corpus hash, u64 payload length, payload.
/// Sections: ILCP, PDLL (listing), PDLK (top-k), DCNT (counting).
struct IndexBundle {
  std::shared_ptr<const Collection> collection;
  SuffixOracle oracle;
  std::uint64_t corpus_hash = 0;
  std::optional<IlcpIndex> ilcp;
  std::optional<PdlIndex> pdl;
  std::optional<PdlIndex> pdl_topk;
  std::optional<CountIndex> count;

  std::vector<SectionInfo> sections() const;
};

std::uint64_t corpus_hash(const Collection& c);

IndexBundle build_bundle(const std::vector<std::string>& documents, const BundleOptions& options);
void save_bundle(const IndexBundle& bundle, const std::filesystem::path& path);
IndexBundle load_bundle(const std::filesystem::path& path);

}  // namespace rdoc
