#include "rdoc/synthgen/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <memory>
#include <ostream>
#include <sstream>

#include "rdoc/baseline/listing.hpp"
#include "rdoc/doccount/count_index.hpp"
#include "rdoc/error.hpp"
#include "rdoc/ilcp/ilcp.hpp"

namespace rdoc {

std::string_view to_string(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::IlcpRuns: return "ilcp_runs";
    case ExperimentKind::HprimeRuns: return "hprime_runs";
    case ExperimentKind::ListingBench: return "listing_bench";
    case ExperimentKind::TopkBench: return "topk_bench";
    case ExperimentKind::CountBench: return "count_bench";
  }
  return "?";
}

ExperimentKind parse_experiment_kind(std::string_view name) {
  for (auto kind : {ExperimentKind::IlcpRuns, ExperimentKind::HprimeRuns, ExperimentKind::ListingBench,
                    ExperimentKind::TopkBench, ExperimentKind::CountBench})
    if (to_string(kind) == name) return kind;
  throw Error(ErrorCode::InvalidParam, "unknown experiment " + std::string(name));
}

ExperimentInput make_input(const SynthSpec& spec) {
  SynthCollection c = generate(spec);
  return {spec.label(), std::move(c.documents), c.source_length, spec.mutation_rate, c.edits};
}

const std::vector<std::string>& ExperimentReport::columns() {
  static const std::vector<std::string> cols = {"collection", "index", "bps",  "us_per_query", "n",     "docs",
                                                "r",          "p",     "edits", "runs",        "bound", "c_fit"};
  return cols;
}

void ExperimentReport::write_csv(std::ostream& out) const {
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << cells[i];
    out << '\n';
  };
  line(columns());
  for (const auto& row : rows) line(row);
}

namespace {

std::string fmt(double v) {
  std::ostringstream out;
  out.precision(6);
  out << v;
  return out.str();
}

struct Row {
  std::string collection, index, bps, us, n, docs, r, p, edits, runs, bound, c_fit;
  std::vector<std::string> cells() const { return {collection, index, bps, us, n, docs, r, p, edits, runs, bound, c_fit}; }
};

volatile std::uint64_t g_sink = 0;

/// Mean microseconds per query over the pattern ranges.
template <typename F>
double time_queries(const std::vector<LexRange>& ranges, double min_seconds, F&& query) {
  if (ranges.empty()) return 0.0;
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  std::uint64_t done = 0;
  std::uint64_t sink = 0;
  double elapsed = 0.0;
  do {
    for (std::uint64_t q = 0; q < ranges.size(); ++q) sink += query(q, ranges[q]);
    done += ranges.size();
    elapsed = std::chrono::duration<double>(Clock::now() - start).count();
  } while (elapsed < min_seconds);
  g_sink = g_sink + sink;
  return elapsed * 1e6 / static_cast<double>(done);
}

std::uint64_t bits_for(std::uint64_t values) {
  std::uint64_t w = 1;
  while (w < 64 && (std::uint64_t{1} << w) < values) ++w;
  return w;
}

std::uint64_t distinct_symbols(const Collection& c) {
  std::vector<char> seen(256, 0);
  for (unsigned char ch : c.text()) seen[ch] = 1;
  seen[static_cast<unsigned char>(kTerminator)] = 0;
  return static_cast<std::uint64_t>(std::count(seen.begin(), seen.end(), 1));
}

}  // namespace

ExperimentReport run_experiments(ExperimentKind kind, const std::vector<ExperimentInput>& inputs,
                                 const ExperimentOptions& options) {
  ExperimentReport report;
  std::vector<Row> rows;
  struct Fit {
    std::size_t row;
    double r, s, rho;
  };
  std::vector<Fit> fits;

  for (const auto& input : inputs) {
    auto collection = std::make_shared<const Collection>(build_collection(input.documents));
    const SuffixOracle oracle(collection);
    const std::uint64_t n = collection->size();
    const std::uint64_t d = collection->doc_count();
    const double bits_per = 8.0 / static_cast<double>(n);
    Row base;
    base.collection = input.name;
    base.n = std::to_string(n);
    base.docs = std::to_string(d);

    if (kind == ExperimentKind::IlcpRuns || kind == ExperimentKind::HprimeRuns) {
      base.r = std::to_string(input.source_length);
      base.p = fmt(input.mutation_rate);
      base.edits = std::to_string(input.edits);
      if (kind == ExperimentKind::IlcpRuns) {
        const std::uint64_t rho = count_ilcp_runs(build_ilcp(oracle));
        base.index = "ILCP";
        base.runs = std::to_string(rho);
        fits.push_back({rows.size(), static_cast<double>(input.source_length), static_cast<double>(input.edits),
                        static_cast<double>(rho)});
      } else {
        const std::uint64_t runs = measure_h_runs(build_h(oracle));
        const double sigma = static_cast<double>(distinct_symbols(*collection));
        const double per_doc = static_cast<double>(n - d) / static_cast<double>(d);
        base.index = "H'";
        base.runs = std::to_string(runs);
        base.r = fmt(per_doc);
        base.bound = fmt(2.0 * (sigma / 2.0 + 1.0) * per_doc * std::sqrt(static_cast<double>(d)));
      }
      rows.push_back(base);
      continue;
    }

    std::vector<std::string> patterns =
        select_patterns(oracle, options.pattern_length, options.pattern_samples, options.pattern_keep, options.pattern_seed);
    std::vector<LexRange> ranges;
    std::vector<std::uint64_t> lengths;
    for (const auto& p : patterns) {
      ranges.push_back(oracle.find(p));
      lengths.push_back(p.size());
    }
    report.patterns.emplace_back(input.name, patterns);

    auto add = [&](std::string index, double bytes, double us) {
      Row row = base;
      row.index = std::move(index);
      row.bps = fmt(bytes * bits_per);
      row.us = fmt(us);
      rows.push_back(std::move(row));
    };
    const double t = options.min_seconds;
    std::vector<char> marks(d, 0);

    if (kind == ExperimentKind::CountBench) {
      const HArray h = build_h(oracle);
      for (CountKind ck : kAllCountKinds) {
        const CountIndex idx(h, ck);
        add(std::string(to_string(ck)), static_cast<double>(idx.size_in_bytes()),
            time_queries(ranges, t, [&](std::uint64_t, LexRange r) { return idx.count(r); }));
      }
      const IlcpIndex ilcp(build_ilcp(oracle));
      add("ILCP", static_cast<double>(ilcp.size_in_bytes()),
          time_queries(ranges, t, [&](std::uint64_t q, LexRange r) { return ilcp.count(r, lengths[q]); }));
      continue;
    }

    const std::vector<std::uint32_t> da = oracle.document_array();
    const double da_bytes = static_cast<double>(n * bits_for(d)) / 8.0;

    if (kind == ExperimentKind::ListingBench) {
      {
        const IlcpIndex ilcp(build_ilcp(oracle));
        add("ILCP", static_cast<double>(ilcp.size_in_bytes()),
            time_queries(ranges, t, [&](std::uint64_t, LexRange r) { return ilcp.list(oracle, r, marks).size(); }));
      }
      {
        const PdlIndex pdl = build_pdl_listing(oracle, options.block_size, options.beta);
        add("PDL", static_cast<double>(pdl.size_in_bytes()),
            time_queries(ranges, t, [&](std::uint64_t, LexRange r) { return pdl.list(oracle, r, marks).size(); }));
      }
      const SadaIndex sada(da);
      add("Sada-L", static_cast<double>(sada.size_in_bytes()),
          time_queries(ranges, t, [&](std::uint64_t, LexRange r) { return sada.list(oracle, r, marks).size(); }));
      add("Sada-D", static_cast<double>(sada.size_in_bytes()) + da_bytes,
          time_queries(ranges, t, [&](std::uint64_t, LexRange r) { return sada.list(da, r, marks).size(); }));
      add("Brute-L", 0.0, time_queries(ranges, t, [&](std::uint64_t, LexRange r) { return brute_list_L(oracle, r).size(); }));
      add("Brute-D", da_bytes, time_queries(ranges, t, [&](std::uint64_t, LexRange r) { return brute_list_D(da, r).size(); }));
      continue;
    }

    const std::uint64_t k = options.k;
    for (PdlVariant v : {PdlVariant::TopK, PdlVariant::TopKF, PdlVariant::Pruned}) {
      const PdlIndex pdl = build_pdl(oracle, v, options.block_size, options.beta);
      add("PDL-" + std::string(to_string(v)), static_cast<double>(pdl.size_in_bytes()),
          time_queries(ranges, t, [&](std::uint64_t, LexRange r) { return pdl.topk(oracle, r, k).size(); }));
    }
    add("Brute-L", 0.0, time_queries(ranges, t, [&](std::uint64_t, LexRange r) { return brute_topk_L(oracle, r, k).size(); }));
    add("Brute-D", da_bytes, time_queries(ranges, t, [&](std::uint64_t, LexRange r) { return brute_topk(da, r, k).size(); }));
  }

  if (kind == ExperimentKind::IlcpRuns) {
    double c = 0.0;
    for (const auto& f : fits)
      if (f.s > 0 && f.rho > f.r) c = std::max(c, (f.rho - f.r) / (f.s * std::log2(f.r + f.s)));
    report.c_fit = c;
    for (const auto& f : fits) {
      rows[f.row].bound = fmt(f.s > 0 ? f.r + c * f.s * std::log2(f.r + f.s) : f.r + 1);
      rows[f.row].c_fit = fmt(c);
    }
  }
  for (const auto& row : rows) report.rows.push_back(row.cells());
  return report;
}

void write_report(const ExperimentReport& report, const std::filesystem::path& output) {
  std::ofstream out(output);
  if (!out) throw Error(ErrorCode::IOError, "cannot write " + output.string());
  report.write_csv(out);
  if (!out) throw Error(ErrorCode::IOError, "write failed for " + output.string());
  for (const auto& [name, patterns] : report.patterns) {
    std::filesystem::path path = output;
    path.replace_filename(output.stem().string() + "-" + name + ".patterns");
    std::ofstream pf(path);
    if (!pf) throw Error(ErrorCode::IOError, "cannot write " + path.string());
    for (const auto& p : patterns) pf << p << '\n';
  }
}

ExperimentReport run_experiments(ExperimentKind kind, const std::vector<SynthSpec>& specs,
                                 const std::filesystem::path& output, const ExperimentOptions& options) {
  std::vector<ExperimentInput> inputs;
  for (const auto& spec : specs) inputs.push_back(make_input(spec));
  ExperimentReport report = run_experiments(kind, inputs, options);
  if (!output.empty()) write_report(report, output);
  return report;
}

}  // namespace rdoc
