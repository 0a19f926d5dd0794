#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rdoc/pdl/pdl.hpp"
#include "rdoc/synthgen/synth.hpp"

namespace rdoc {

enum class ExperimentKind { IlcpRuns, HprimeRuns, ListingBench, TopkBench, CountBench };

std::string_view to_string(ExperimentKind kind);
ExperimentKind parse_experiment_kind(std::string_view name);

/// A collection fed to the experiments. `source_length`, `mutation_rate` and `edits` only
/// matter for the run-count experiments.
struct ExperimentInput {
  std::string name;
  std::vector<std::string> documents;
  std::uint64_t source_length = 0;
  double mutation_rate = 0.0;
  std::uint64_t edits = 0;
};

ExperimentInput make_input(const SynthSpec& spec);

struct ExperimentOptions {
  std::uint64_t pattern_length = 6;
  std::uint64_t pattern_samples = 2000;
  std::uint64_t pattern_keep = 200;
  std::uint64_t pattern_seed = 7;
  std::uint64_t k = 10;
  std::uint64_t block_size = kDefaultBlockSize;
  double beta = kDefaultBeta;
  /// Keep timing a pattern set until this much time has passed.
  double min_seconds = 0.02;
};

/// Every report has the same columns; cells that do not apply to a row are left empty.
/// bps is the size of the structure in bits per collection symbol, us_per_query the mean
/// retrieval time with pattern ranges resolved beforehand. For ilcp_runs, `bound` is
/// r + c_fit * s * log2(r + s) with c_fit the smallest constant covering every row
/// (r + 1 when s = 0). For hprime_runs it is 2 * (sigma/2 + 1) * r * sqrt(d).
struct ExperimentReport {
  static const std::vector<std::string>& columns();
  std::vector<std::vector<std::string>> rows;
  double c_fit = 0.0;
  /// Benchmark pattern sets, per collection name.
  std::vector<std::pair<std::string, std::vector<std::string>>> patterns;

  void write_csv(std::ostream& out) const;
};

ExperimentReport run_experiments(ExperimentKind kind, const std::vector<ExperimentInput>& inputs,
                                 const ExperimentOptions& options = {});

/// Generates every spec, runs the experiment and writes the CSV to `output` (when not
/// empty) together with one pattern file per collection for the benchmark kinds.
ExperimentReport run_experiments(ExperimentKind kind, const std::vector<SynthSpec>& specs,
                                 const std::filesystem::path& output, const ExperimentOptions& options = {});

/// Writes the report CSV and, for the benchmark kinds, `<stem>-<collection>.patterns`.
void write_report(const ExperimentReport& report, const std::filesystem::path& output);

}  // namespace rdoc
