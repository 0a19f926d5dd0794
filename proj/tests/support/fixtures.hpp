#pragma once

#include <memory>
#include <string>
#include <vector>

#include "rdoc/corpus/suffix_oracle.hpp"

namespace fixture {

/// The three-document running example, with '$' written as the terminator byte.
inline std::vector<std::string> running_example() { return {"TATA", "LATA", "AAAA"}; }

struct Built {
  std::shared_ptr<const rdoc::Collection> collection;
  rdoc::SuffixOracle oracle;
};

inline Built build(const std::vector<std::string>& docs) {
  auto c = std::make_shared<const rdoc::Collection>(rdoc::build_collection(docs));
  return Built{c, rdoc::SuffixOracle(c)};
}

}  // namespace fixture
