#pragma once

#include <cstdint>
#include <vector>

namespace rdoc {

/// Suffix array of s[0..n) by induced sorting. Symbols are in [0, alphabet) and s[n-1] must
/// be the unique smallest symbol.
std::vector<std::uint32_t> sais(const std::vector<std::uint32_t>& s, std::uint32_t alphabet);

}  // namespace rdoc
