#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "rdoc/corpus/suffix_oracle.hpp"

namespace rdoc {

/// DNA: every variant of every base is a document, bases are the source prefix mutated at
/// rate min(10p, 1). Version: variants of distinct source chunks, one document each.
/// Concat: the variants of each base concatenated into one document.
enum class SynthFamily { Dna, Concat, Version };

std::string_view to_string(SynthFamily family);

struct SynthSpec {
  std::string name;  // defaults to a description of the parameters
  SynthFamily family = SynthFamily::Dna;
  std::uint64_t base_count = 1;
  std::uint64_t variants_per_base = 10;
  std::uint64_t base_length = 1000;
  double mutation_rate = 0.001;
  std::string alphabet = "ACGT";
  std::string source;  // optional text file supplying the base documents
  std::uint64_t seed = 1;

  std::string label() const;
};

struct SynthCollection {
  std::vector<std::string> documents;
  /// Positions where the documents differ from the source text they were copied from.
  std::uint64_t edits = 0;
  /// Length of the distinct source material (r in the run bounds).
  std::uint64_t source_length = 0;
};

/// Deterministic for a given spec. Mutations replace a symbol by one drawn from the symbol
/// distribution of the sequence being mutated, so the zero-order statistics are preserved.
SynthCollection generate(const SynthSpec& spec);

/// Blocks of key=value pairs separated by blank lines; '#' starts a comment.
/// Keys: name, family, bases, variants, length, p, alphabet, source, seed.
std::vector<SynthSpec> parse_synth_specs(std::istream& in);
SynthSpec parse_synth_spec(std::string_view text);

/// Random substrings of `length` symbols that do not cross document ends, deduplicated,
/// keeping the `keep` with the largest occ/df ratio (ties by pattern).
std::vector<std::string> select_patterns(const SuffixOracle& oracle, std::uint64_t length, std::uint64_t samples,
                                         std::uint64_t keep, std::uint64_t seed);

}  // namespace rdoc
