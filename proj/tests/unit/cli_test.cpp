#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <random>
#include <sstream>

#include "rdoc/bundle/bundle.hpp"
#include "rdoc/error.hpp"
#include "rdoc/multiterm/ranked.hpp"
#include "rdoc/synthgen/synth.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace rdoc;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(RDOC_CLI_PATH) + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  for (std::size_t got; (got = fread(buf, 1, sizeof(buf), pipe)) > 0;) r.out.append(buf, got);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir = fs::temp_directory_path() / ("rdoc_cli_" + std::to_string(::getpid()));
    fs::create_directories(dir);
  }
  void TearDown() override { fs::remove_all(dir); }
  std::string path(const std::string& name) const { return (dir / name).string(); }
  void write(const std::string& name, const std::string& text) const { std::ofstream(dir / name, std::ios::binary) << text; }

  fs::path dir;
};

}  // namespace

TEST_F(CliTest, BundleRoundTripAndDeterminism) {
  BundleOptions options;
  options.block_size = 2;
  const auto built = build_bundle(fixture::running_example(), options);
  save_bundle(built, path("a.rdoc"));
  save_bundle(build_bundle(fixture::running_example(), options), path("b.rdoc"));
  EXPECT_EQ(slurp(path("a.rdoc")), slurp(path("b.rdoc")));

  const auto loaded = load_bundle(path("a.rdoc"));
  EXPECT_EQ(loaded.corpus_hash, built.corpus_hash);
  ASSERT_TRUE(loaded.ilcp && loaded.pdl && loaded.pdl_topk && loaded.count);
  const LexRange ta = loaded.oracle.find("TA");
  EXPECT_EQ(ta, (LexRange{12, 14}));
  EXPECT_EQ(loaded.count->count(ta), 2u);
  EXPECT_EQ(loaded.pdl_topk->topk(loaded.oracle, ta, 1), (std::vector<DocFreq>{{0, 2}}));
  const auto sections = loaded.sections();
  ASSERT_EQ(sections.size(), 5u);
  const auto before = built.sections();
  for (std::size_t i = 0; i < sections.size(); ++i) {
    EXPECT_EQ(sections[i].tag, before[i].tag);
    EXPECT_EQ(sections[i].memory_bytes, before[i].memory_bytes);
    EXPECT_EQ(sections[i].file_bytes, before[i].file_bytes);
  }
  std::uint64_t total = 4 + 4 + 4 + 4;  // magic, version, CORP tag, section count
  for (const auto& s : sections) total += s.file_bytes + (s.tag == "CORP" ? 0 : 4 + 8 + 8);
  EXPECT_EQ(fs::file_size(path("a.rdoc")), total);
}

TEST_F(CliTest, BundleRejectsCorruption) {
  BundleOptions options;
  parse_index_list("ilcp", options);
  EXPECT_FALSE(options.pdl || options.pdl_topk || options.count);
  EXPECT_THROW(parse_index_list("ilcp,tree", options), Error);
  save_bundle(build_bundle(fixture::running_example(), options), path("a.rdoc"));
  std::string bytes = slurp(path("a.rdoc"));
  const auto at = bytes.find("LATA");
  ASSERT_NE(at, std::string::npos);
  bytes[at] = 'M';
  write("bad.rdoc", bytes);
  try {
    load_bundle(path("bad.rdoc"));
    FAIL() << "corrupt corpus accepted";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::FormatError);
  }
  write("short.rdoc", slurp(path("a.rdoc")).substr(0, 40));
  EXPECT_THROW(load_bundle(path("short.rdoc")), Error);
  write("magic.rdoc", "RDOX");
  EXPECT_THROW(load_bundle(path("magic.rdoc")), Error);
}

TEST_F(CliTest, RunningExampleQueries) {
  write("ex.txt", "TATA\nLATA\nAAAA\n");
  ASSERT_EQ(run("build " + path("ex.txt") + " -o " + path("ex.rdoc") + " --b 2").code, 0);
  for (const char* algo : {"pdl", "ilcp", "sada-l", "sada-d", "brute-l", "brute-d"}) {
    const auto r = run("query " + path("ex.rdoc") + " -p TA --algo " + algo);
    EXPECT_EQ(r.code, 0) << algo;
    EXPECT_EQ(r.out, "1\t1\n1\t2\n") << algo;
  }
  EXPECT_EQ(run("query " + path("ex.rdoc") + " --task count -p TA -p GG").out, "1\t2\n2\t0\n");
  EXPECT_EQ(run("query " + path("ex.rdoc") + " --task count -p GG --algo ilcp").out, "1\t0\n");
  EXPECT_EQ(run("query " + path("ex.rdoc") + " --task topk --k 1 -p TA").out, "1\t1\t2\n");
  EXPECT_EQ(run("query " + path("ex.rdoc") + " -p GG").out, "");
}

TEST_F(CliTest, ExitCodes) {
  write("ex.txt", "TATA\nLATA\nAAAA\n");
  EXPECT_EQ(run("").code, 1);
  EXPECT_EQ(run("frobnicate").code, 1);
  EXPECT_EQ(run("build " + path("ex.txt")).code, 1);
  EXPECT_EQ(run("build " + path("missing.txt") + " -o " + path("x.rdoc")).code, 2);
  EXPECT_EQ(run("build " + path("ex.txt") + " -o " + path("x.rdoc") + " --indexes bogus").code, 1);
  ASSERT_EQ(run("build " + path("ex.txt") + " -o " + path("ilcp.rdoc") + " --indexes ilcp").code, 0);
  EXPECT_EQ(run("query " + path("ilcp.rdoc") + " --task dance -p TA").code, 1);
  EXPECT_EQ(run("query " + path("ilcp.rdoc") + " --task topk -p TA").code, 2);
  EXPECT_EQ(run("query " + path("ilcp.rdoc") + " --task ranked -p TA").code, 2);
  EXPECT_EQ(run("query " + path("ilcp.rdoc") + " --task list -p TA").out, "1\t1\n1\t2\n");
  EXPECT_EQ(run("query " + path("ilcp.rdoc") + " --task list").code, 1);
  write("junk.rdoc", "not a bundle");
  EXPECT_EQ(run("query " + path("junk.rdoc") + " -p TA").code, 2);
}

TEST_F(CliTest, OutputsMatchLibraryCalls) {
  SynthSpec spec;
  spec.family = SynthFamily::Version;
  spec.base_count = 3;
  spec.variants_per_base = 6;
  spec.base_length = 300;
  spec.mutation_rate = 0.02;
  const auto docs = generate(spec).documents;
  std::string text;
  for (const auto& d : docs) text += d + "\n";
  write("docs.txt", text);
  ASSERT_EQ(run("build " + path("docs.txt") + " -o " + path("c.rdoc") + " --b 32").code, 0);

  BundleOptions options;
  options.block_size = 32;
  const auto lib = build_bundle(docs, options);
  std::mt19937_64 rng(5);
  std::vector<std::string> patterns;
  for (int i = 0; i < 40; ++i) {
    const auto& d = docs[rng() % docs.size()];
    const std::size_t len = 1 + rng() % 6;
    patterns.push_back(d.substr(rng() % (d.size() - len), len));
  }
  patterns.push_back("ACGTACGTACGTACGT");
  std::string pf;
  for (const auto& p : patterns) pf += p + "\n";
  write("patterns.txt", pf);

  std::ostringstream topk, list, count;
  for (std::size_t q = 0; q < patterns.size(); ++q) {
    const LexRange r = lib.oracle.find(patterns[q]);
    for (const auto& e : lib.pdl_topk->topk(lib.oracle, r, 5)) topk << q + 1 << '\t' << e.doc + 1 << '\t' << e.tf << '\n';
    auto docs_q = lib.pdl->list(lib.oracle, r);
    std::sort(docs_q.begin(), docs_q.end());
    for (auto d : docs_q) list << q + 1 << '\t' << d + 1 << '\n';
    count << q + 1 << '\t' << lib.count->count(r) << '\n';
  }
  const std::string bundle = path("c.rdoc") + " --patterns " + path("patterns.txt");
  EXPECT_EQ(run("query " + bundle + " --task topk --k 5").out, topk.str());
  EXPECT_EQ(run("query " + bundle + " --task topk --k 5 --algo brute-d").out, topk.str());
  EXPECT_EQ(run("query " + bundle + " --task list").out, list.str());
  EXPECT_EQ(run("query " + bundle + " --task count").out, count.str());
  EXPECT_EQ(run("query " + bundle + " --task count --algo ilcp").out, count.str());

  write("queries.txt", "ACG TT\nGATTACA A\nCC GG TA\n");
  std::ifstream qin(path("queries.txt"));
  const auto queries = parse_queries(qin, QueryMode::And, 4);
  const RankedIndexes idx{&lib.oracle, &*lib.pdl_topk, &*lib.count};
  std::ostringstream ranked;
  for (std::size_t q = 0; q < queries.size(); ++q)
    for (const auto& s : ranked_query(idx, queries[q])) ranked << q + 1 << '\t' << s.doc + 1 << '\t' << s.score << '\n';
  EXPECT_EQ(run("query " + path("c.rdoc") + " --task ranked --mode and --k 4 --threads 3 --patterns " + path("queries.txt")).out,
            ranked.str());

  const auto stats = run("stats " + path("c.rdoc"));
  ASSERT_EQ(stats.code, 0);
  for (const auto& s : lib.sections()) {
    char line[128];
    std::snprintf(line, sizeof(line), "%s\t%llu\t%llu\t%.4f\n", s.tag.c_str(), static_cast<unsigned long long>(s.file_bytes),
                  static_cast<unsigned long long>(s.memory_bytes),
                  static_cast<double>(s.memory_bytes) * 8.0 / static_cast<double>(lib.collection->size()));
    EXPECT_NE(stats.out.find(line), std::string::npos) << line;
  }
}

TEST_F(CliTest, SynthAndBench) {
  const std::string args = "synth family=dna variants=4 length=500 p=0.01 seed=3";
  const auto a = run(args + " -o " + path("a.txt"));
  ASSERT_EQ(a.code, 0);
  ASSERT_EQ(run(args + " -o " + path("b.txt")).code, 0);
  EXPECT_EQ(slurp(path("a.txt")), slurp(path("b.txt")));
  EXPECT_EQ(run(args).out, slurp(path("a.txt")));
  EXPECT_EQ(run("synth p=7").code, 2);

  write("ex.txt", "TATA\nLATA\nAAAA\n");
  const std::string header = "collection,index,bps,us_per_query,n,docs,r,p,edits,runs,bound,c_fit";
  const auto start = std::chrono::steady_clock::now();
  for (const char* kind : {"listing_bench", "topk_bench", "count_bench"}) {
    const auto r = run(std::string("bench ") + kind + " --docs " + path("ex.txt") + " --pattern-length 2 --b 2");
    ASSERT_EQ(r.code, 0) << kind;
    EXPECT_EQ(r.out.substr(0, r.out.find('\n')), header) << kind;
    EXPECT_NE(r.out.find("\nex.txt,"), std::string::npos);
  }
  EXPECT_LT(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count(), 60.0);

  write("specs.txt", "family=version variants=5 length=300 p=0\n\nfamily=version variants=5 length=300 p=0.05\n");
  const auto runs = run("bench ilcp_runs --spec " + path("specs.txt") + " -o " + path("runs.csv"));
  ASSERT_EQ(runs.code, 0);
  const std::string csv = slurp(path("runs.csv"));
  EXPECT_EQ(csv.substr(0, csv.find('\n')), header);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 3);
  EXPECT_EQ(run("bench nonsense --spec " + path("specs.txt")).code, 1);
  EXPECT_EQ(run("bench count_bench").code, 1);
}
