#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "rdoc/baseline/listing.hpp"
#include "rdoc/bundle/bundle.hpp"
#include "rdoc/error.hpp"
#include "rdoc/multiterm/ranked.hpp"
#include "rdoc/synthgen/experiments.hpp"
#include "rdoc/synthgen/synth.hpp"

using namespace rdoc;

namespace {

constexpr int kUsage = 1;
constexpr int kDataError = 2;

using Clock = std::chrono::steady_clock;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::ostream& open_output(const std::string& path, std::ofstream& file) {
  if (path.empty() || path == "-") return std::cout;
  file.open(path, std::ios::binary | std::ios::trunc);
  if (!file) throw Error(ErrorCode::IOError, "cannot write " + path);
  return file;
}

std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IOError, "cannot open " + path);
  std::vector<std::string> out;
  for (std::string line; std::getline(in, line);) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) out.push_back(line);
  }
  return out;
}

void print_timing(std::uint64_t queries, double seconds) {
  std::fprintf(stderr, "queries\t%llu\ntotal_seconds\t%.6f\nmean_us_per_query\t%.3f\n",
               static_cast<unsigned long long>(queries), seconds,
               queries ? seconds * 1e6 / static_cast<double>(queries) : 0.0);
}

// ---------------------------------------------------------------- build

struct BuildArgs {
  std::string input;
  std::string output;
  std::string docs_format = "lines";
  std::string indexes = "ilcp,pdl,pdl-topk,count";
  std::uint64_t b = kDefaultBlockSize;
  double beta = kDefaultBeta;
  std::string count_encoding = "rr-rr";
  std::string topk_variant = "topk+F";
};

int cmd_build(const BuildArgs& a) {
  BundleOptions options;
  parse_index_list(a.indexes, options);
  options.block_size = a.b;
  options.beta = a.beta;
  options.count_kind = parse_count_kind(a.count_encoding);
  options.topk_variant = parse_pdl_variant(a.topk_variant);
  const auto docs = load_documents(a.input, parse_docs_format(a.docs_format));
  const auto start = Clock::now();
  const IndexBundle bundle = build_bundle(docs, options);
  save_bundle(bundle, a.output);
  std::fprintf(stderr, "built %s: n=%llu d=%llu in %.3f s\n", a.output.c_str(),
               static_cast<unsigned long long>(bundle.collection->size()),
               static_cast<unsigned long long>(bundle.collection->doc_count()),
               std::chrono::duration<double>(Clock::now() - start).count());
  return 0;
}

// ---------------------------------------------------------------- query

struct QueryArgs {
  std::string bundle;
  std::string task = "list";
  std::vector<std::string> patterns;
  std::string pattern_file;
  std::string output;
  std::string mode = "or";
  std::uint64_t k = 10;
  unsigned threads = 1;
  std::string algo;
};

const PdlIndex& need(const std::optional<PdlIndex>& idx, const char* what) {
  if (!idx) throw Error(ErrorCode::MissingSection, std::string("bundle has no ") + what + " section");
  return *idx;
}

int cmd_query(const QueryArgs& a) {
  static const std::vector<std::string> tasks = {"list", "topk", "count", "ranked"};
  if (std::find(tasks.begin(), tasks.end(), a.task) == tasks.end())
    throw Error(ErrorCode::UnknownTask, "unknown task " + a.task + " (list|topk|count|ranked)");

  std::vector<std::string> inputs = a.patterns;
  if (!a.pattern_file.empty()) {
    const auto more = read_lines(a.pattern_file);
    inputs.insert(inputs.end(), more.begin(), more.end());
  }
  if (inputs.empty()) throw UsageError("no patterns given (use --pattern or --patterns)");

  const IndexBundle b = load_bundle(a.bundle);
  std::ofstream file;
  std::ostream& out = open_output(a.output, file);
  const SuffixOracle& oracle = b.oracle;

  if (a.task == "ranked") {
    if (a.mode != "and" && a.mode != "or") throw UsageError("--mode must be and or or");
    const PdlIndex& pdl = need(b.pdl_topk, "pdl-topk");
    if (!b.count) throw Error(ErrorCode::MissingSection, "bundle has no count section");
    std::ostringstream text;
    for (const auto& line : inputs) text << line << '\n';
    std::istringstream in(text.str());
    const auto queries = parse_queries(in, a.mode == "and" ? QueryMode::And : QueryMode::Or, a.k);
    const RankedIndexes indexes{&oracle, &pdl, &*b.count};
    const BatchResult result = batch_query(indexes, queries, std::max(1u, a.threads));
    for (std::size_t q = 0; q < result.results.size(); ++q)
      for (const auto& s : result.results[q]) out << q + 1 << '\t' << s.doc + 1 << '\t' << s.score << '\n';
    print_timing(queries.size(), result.wall_seconds);
    std::fprintf(stderr, "queries_per_second\t%.1f\n", result.queries_per_second());
    return 0;
  }

  // Ranges are resolved before the clock starts.
  std::vector<LexRange> ranges;
  for (const auto& p : inputs) ranges.push_back(oracle.find(p));
  std::vector<std::uint32_t> da;
  std::optional<SadaIndex> sada;
  const bool needs_da = a.algo == "sada-d" || a.algo == "brute-d";
  if (needs_da || a.algo == "sada-l") da = oracle.document_array();
  if (a.algo == "sada-l" || a.algo == "sada-d") sada.emplace(da);
  std::vector<char> marks(b.collection->doc_count(), 0);

  std::vector<std::vector<DocFreq>> results(ranges.size());
  const auto start = Clock::now();
  if (a.task == "list") {
    std::string algo = a.algo;
    if (algo.empty()) algo = b.pdl ? "pdl" : b.ilcp ? "ilcp" : "brute-l";
    for (std::size_t q = 0; q < ranges.size(); ++q) {
      std::vector<std::uint64_t> docs;
      if (algo == "pdl") docs = need(b.pdl, "pdl").list(oracle, ranges[q], marks);
      else if (algo == "ilcp") {
        if (!b.ilcp) throw Error(ErrorCode::MissingSection, "bundle has no ilcp section");
        docs = b.ilcp->list(oracle, ranges[q], marks);
      } else if (algo == "sada-l") docs = sada->list(oracle, ranges[q], marks);
      else if (algo == "sada-d") docs = sada->list(da, ranges[q], marks);
      else if (algo == "brute-l") docs = brute_list_L(oracle, ranges[q]);
      else if (algo == "brute-d") docs = brute_list_D(da, ranges[q]);
      else throw UsageError("unknown listing algorithm " + algo + " (pdl|ilcp|sada-l|sada-d|brute-l|brute-d)");
      for (auto d : docs) results[q].push_back({d, 0});
    }
  } else if (a.task == "topk") {
    const std::string algo = a.algo.empty() ? "pdl" : a.algo;
    for (std::size_t q = 0; q < ranges.size(); ++q) {
      if (algo == "pdl") results[q] = need(b.pdl_topk, "pdl-topk").topk(oracle, ranges[q], a.k);
      else if (algo == "brute-l") results[q] = brute_topk_L(oracle, ranges[q], a.k);
      else if (algo == "brute-d") results[q] = brute_topk(da, ranges[q], a.k);
      else throw UsageError("unknown top-k algorithm " + algo + " (pdl|brute-l|brute-d)");
    }
  } else {
    std::string algo = a.algo;
    if (algo.empty()) algo = b.count ? "count" : b.ilcp ? "ilcp" : "brute-l";
    for (std::size_t q = 0; q < ranges.size(); ++q) {
      std::uint64_t df = 0;
      if (algo == "count") {
        if (!b.count) throw Error(ErrorCode::MissingSection, "bundle has no count section");
        df = b.count->count(ranges[q]);
      } else if (algo == "ilcp") {
        if (!b.ilcp) throw Error(ErrorCode::MissingSection, "bundle has no ilcp section");
        df = b.ilcp->count(ranges[q], inputs[q].size());
      } else if (algo == "brute-l") {
        df = brute_list_L(oracle, ranges[q]).size();
      } else if (algo == "brute-d") {
        df = brute_list_D(da, ranges[q]).size();
      } else {
        throw UsageError("unknown counting algorithm " + algo + " (count|ilcp|brute-l|brute-d)");
      }
      results[q].push_back({df, 0});
    }
  }
  const double seconds = std::chrono::duration<double>(Clock::now() - start).count();

  for (std::size_t q = 0; q < results.size(); ++q) {
    auto& r = results[q];
    if (a.task == "list") {
      std::sort(r.begin(), r.end(), [](const DocFreq& x, const DocFreq& y) { return x.doc < y.doc; });
      for (const auto& e : r) out << q + 1 << '\t' << e.doc + 1 << '\n';
    } else if (a.task == "topk") {
      for (const auto& e : r) out << q + 1 << '\t' << e.doc + 1 << '\t' << e.tf << '\n';
    } else {
      out << q + 1 << '\t' << r[0].doc << '\n';
    }
  }
  print_timing(ranges.size(), seconds);
  return 0;
}

// ---------------------------------------------------------------- synth / bench / stats

struct SynthArgs {
  std::vector<std::string> settings;
  std::string spec_file;
  std::string output;
  std::string format = "lines";
};

SynthSpec single_spec(const std::vector<std::string>& settings, const std::string& spec_file) {
  if (!spec_file.empty()) {
    std::ifstream in(spec_file);
    if (!in) throw Error(ErrorCode::IOError, "cannot open " + spec_file);
    auto specs = parse_synth_specs(in);
    if (specs.size() != 1) throw Error(ErrorCode::InvalidSpec, "expected exactly one collection in " + spec_file);
    return specs[0];
  }
  std::string joined;
  for (const auto& s : settings) joined += s + " ";
  return parse_synth_spec(joined);
}

int cmd_synth(const SynthArgs& a) {
  if (a.format != "lines" && a.format != "nul") throw UsageError("--format must be lines or nul");
  const SynthSpec spec = single_spec(a.settings, a.spec_file);
  const SynthCollection c = generate(spec);
  const char sep = a.format == "lines" ? '\n' : '\0';
  if (sep == '\n')
    for (const auto& doc : c.documents)
      if (doc.find('\n') != std::string::npos) throw Error(ErrorCode::InvalidSpec, "documents contain newlines; use --format nul");
  std::ofstream file;
  std::ostream& out = open_output(a.output, file);
  for (const auto& doc : c.documents) out << doc << sep;
  out.flush();
  if (!out) throw Error(ErrorCode::IOError, "write failed");
  std::fprintf(stderr, "%s: %zu documents, %llu edits\n", spec.label().c_str(), c.documents.size(),
               static_cast<unsigned long long>(c.edits));
  return 0;
}

struct BenchArgs {
  std::string kind;
  std::string spec_file;
  std::string docs;
  std::string docs_format = "lines";
  std::string output;
  ExperimentOptions options;
};

int cmd_bench(const BenchArgs& a) {
  const ExperimentKind kind = parse_experiment_kind(a.kind);
  std::vector<ExperimentInput> inputs;
  if (!a.spec_file.empty()) {
    std::ifstream in(a.spec_file);
    if (!in) throw Error(ErrorCode::IOError, "cannot open " + a.spec_file);
    for (const auto& spec : parse_synth_specs(in)) inputs.push_back(make_input(spec));
  }
  if (!a.docs.empty()) {
    ExperimentInput input;
    input.name = std::filesystem::path(a.docs).filename().string();
    input.documents = load_documents(a.docs, parse_docs_format(a.docs_format));
    inputs.push_back(std::move(input));
  }
  if (inputs.empty()) throw UsageError("give --spec and/or --docs");
  const ExperimentReport report = run_experiments(kind, inputs, a.options);
  if (a.output.empty() || a.output == "-")
    report.write_csv(std::cout);
  else
    write_report(report, a.output);
  if (kind == ExperimentKind::IlcpRuns) std::fprintf(stderr, "c_fit\t%.6f\n", report.c_fit);
  return 0;
}

int cmd_stats(const std::string& path) {
  const IndexBundle b = load_bundle(path);
  const auto n = b.collection->size();
  std::cout << "n\t" << n << "\nd\t" << b.collection->doc_count() << "\ncorpus_hash\t" << std::hex << b.corpus_hash
            << std::dec << '\n';
  if (b.pdl) std::cout << "pdl_nodes\t" << b.pdl->nodes() << '\n';
  if (b.pdl_topk) std::cout << "pdl_topk_variant\t" << to_string(b.pdl_topk->variant()) << '\n';
  if (b.count) std::cout << "count_encoding\t" << to_string(b.count->kind()) << '\n';
  if (b.ilcp) std::cout << "ilcp_runs\t" << b.ilcp->runs() << '\n';
  std::cout << "section\tfile_bytes\tmemory_bytes\tbps\n";
  for (const auto& s : b.sections()) {
    char bps[32];
    std::snprintf(bps, sizeof(bps), "%.4f", static_cast<double>(s.memory_bytes) * 8.0 / static_cast<double>(n));
    std::cout << s.tag << '\t' << s.file_bytes << '\t' << s.memory_bytes << '\t' << bps << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Document retrieval indexes for repetitive collections"};
  app.require_subcommand(1);

  BuildArgs build;
  auto* b = app.add_subcommand("build", "Build an index bundle from a document collection");
  b->add_option("input", build.input, "Document file (lines, nul) or directory (files)")->required();
  b->add_option("-o,--output", build.output, "Bundle path")->required();
  b->add_option("--docs-format", build.docs_format, "files|lines|nul")->capture_default_str();
  b->add_option("--indexes", build.indexes, "Comma-separated subset of ilcp,pdl,pdl-topk,count")->capture_default_str();
  b->add_option("--b", build.b, "PDL block size")->capture_default_str()->check(CLI::PositiveNumber);
  b->add_option("--beta", build.beta, "PDL pruning factor")->capture_default_str();
  b->add_option("--count-encoding", build.count_encoding, "H' encoding")->capture_default_str();
  b->add_option("--topk-variant", build.topk_variant, "topk|topk+F|pruned")->capture_default_str();

  QueryArgs query;
  auto* q = app.add_subcommand("query", "Run queries against a bundle");
  q->add_option("bundle", query.bundle, "Bundle path")->required();
  q->add_option("--task", query.task, "list|topk|count|ranked")->capture_default_str();
  q->add_option("-p,--pattern", query.patterns, "Pattern (or query for ranked); repeatable");
  q->add_option("--patterns", query.pattern_file, "File with one pattern or query per line");
  q->add_option("-o,--output", query.output, "TSV output path (default stdout)");
  q->add_option("--mode", query.mode, "and|or (ranked)")->capture_default_str();
  q->add_option("--k", query.k, "Results per query")->capture_default_str()->check(CLI::PositiveNumber);
  q->add_option("--threads", query.threads, "Workers for ranked batches")->capture_default_str();
  q->add_option("--algo", query.algo, "Algorithm: pdl|ilcp|sada-l|sada-d|brute-l|brute-d|count");

  SynthArgs synth;
  auto* s = app.add_subcommand("synth", "Generate a synthetic collection");
  s->add_option("settings", synth.settings, "key=value settings");
  s->add_option("--spec", synth.spec_file, "Spec file with one collection");
  s->add_option("-o,--output", synth.output, "Output path (default stdout)");
  s->add_option("--format", synth.format, "lines|nul")->capture_default_str();

  BenchArgs bench;
  auto* be = app.add_subcommand("bench", "Run an experiment and write a CSV report");
  be->add_option("kind", bench.kind, "ilcp_runs|hprime_runs|listing_bench|topk_bench|count_bench")->required();
  be->add_option("--spec", bench.spec_file, "Spec file, collections separated by blank lines");
  be->add_option("--docs", bench.docs, "Existing collection to include");
  be->add_option("--docs-format", bench.docs_format, "files|lines|nul")->capture_default_str();
  be->add_option("-o,--output", bench.output, "CSV path (default stdout)");
  be->add_option("--pattern-length", bench.options.pattern_length)->capture_default_str()->check(CLI::PositiveNumber);
  be->add_option("--pattern-samples", bench.options.pattern_samples)->capture_default_str();
  be->add_option("--pattern-keep", bench.options.pattern_keep)->capture_default_str();
  be->add_option("--pattern-seed", bench.options.pattern_seed)->capture_default_str();
  be->add_option("--k", bench.options.k)->capture_default_str()->check(CLI::PositiveNumber);
  be->add_option("--b", bench.options.block_size)->capture_default_str()->check(CLI::PositiveNumber);
  be->add_option("--beta", bench.options.beta)->capture_default_str();
  be->add_option("--min-seconds", bench.options.min_seconds, "Minimum timing per index")->capture_default_str();

  std::string stats_path;
  auto* st = app.add_subcommand("stats", "Report bundle section sizes");
  st->add_option("bundle", stats_path, "Bundle path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }

  try {
    if (*b) return cmd_build(build);
    if (*q) return cmd_query(query);
    if (*s) return cmd_synth(synth);
    if (*be) return cmd_bench(bench);
    if (*st) return cmd_stats(stats_path);
  } catch (const UsageError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kUsage;
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    const bool usage = e.code() == ErrorCode::UnknownTask || e.code() == ErrorCode::InvalidParam;
    return usage ? kUsage : kDataError;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kDataError;
  }
  return kUsage;
}
