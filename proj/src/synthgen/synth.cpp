#include "rdoc/synthgen/synth.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <random>
#include <sstream>

#include "rdoc/baseline/listing.hpp"
#include "rdoc/error.hpp"

namespace rdoc {

std::string_view to_string(SynthFamily family) {
  switch (family) {
    case SynthFamily::Dna: return "dna";
    case SynthFamily::Concat: return "concat";
    case SynthFamily::Version: return "version";
  }
  return "?";
}

std::string SynthSpec::label() const {
  if (!name.empty()) return name;
  std::ostringstream out;
  out << to_string(family) << "-b" << base_count << "-v" << variants_per_base << "-r" << base_length << "-p" << mutation_rate
      << "-s" << seed;
  return out.str();
}

namespace {

void validate(const SynthSpec& spec) {
  if (spec.base_count == 0 || spec.variants_per_base == 0 || spec.base_length == 0)
    throw Error(ErrorCode::InvalidSpec, "counts and lengths must be positive");
  if (!(spec.mutation_rate >= 0.0 && spec.mutation_rate <= 1.0))
    throw Error(ErrorCode::InvalidSpec, "mutation rate must lie in [0, 1]");
  if (spec.source.empty() && spec.alphabet.empty()) throw Error(ErrorCode::InvalidSpec, "alphabet must not be empty");
  if (spec.alphabet.find('\0') != std::string::npos) throw Error(ErrorCode::InvalidSpec, "alphabet contains the terminator");
}

/// Point mutations at rate p.
void mutate(std::string& s, double p, std::mt19937_64& rng) {
  if (p <= 0.0 || s.empty()) return;
  const std::string original = s;
  std::bernoulli_distribution hit(p);
  std::uniform_int_distribution<std::size_t> any(0, original.size() - 1);
  for (auto& ch : s)
    if (hit(rng)) ch = original[any(rng)];
}

std::string read_source(const std::string& path, std::uint64_t bytes) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IOError, "cannot open source text " + path);
  std::string out;
  out.reserve(bytes);
  char buf[1 << 16];
  while (out.size() < bytes && in) {
    in.read(buf, sizeof(buf));
    for (std::streamsize i = 0; i < in.gcount() && out.size() < bytes; ++i)
      if (buf[i] != '\0') out.push_back(buf[i]);
  }
  if (out.size() < bytes) throw Error(ErrorCode::InvalidSpec, "source text shorter than the requested base documents");
  return out;
}

}  // namespace

SynthCollection generate(const SynthSpec& spec) {
  validate(spec);
  std::mt19937_64 rng(spec.seed);
  const std::uint64_t r = spec.base_length;
  const bool chunks = spec.family != SynthFamily::Dna;

  std::string source;
  if (!spec.source.empty()) {
    source = read_source(spec.source, chunks ? r * spec.base_count : r);
  } else {
    std::uniform_int_distribution<std::size_t> pick(0, spec.alphabet.size() - 1);
    source.resize(chunks ? r * spec.base_count : r);
    for (auto& ch : source) ch = spec.alphabet[pick(rng)];
  }

  SynthCollection out;
  out.source_length = source.size();
  for (std::uint64_t j = 0; j < spec.base_count; ++j) {
    const std::string_view origin = chunks ? std::string_view(source).substr(j * r, r) : std::string_view(source);
    std::string base(origin);
    if (!chunks) mutate(base, std::min(1.0, 10.0 * spec.mutation_rate), rng);
    std::string joined;
    for (std::uint64_t v = 0; v < spec.variants_per_base; ++v) {
      std::string variant = base;
      mutate(variant, spec.mutation_rate, rng);
      for (std::uint64_t i = 0; i < r; ++i) out.edits += variant[i] != origin[i];
      if (spec.family == SynthFamily::Concat)
        joined += variant;
      else
        out.documents.push_back(std::move(variant));
    }
    if (spec.family == SynthFamily::Concat) out.documents.push_back(std::move(joined));
  }
  return out;
}

namespace {

std::uint64_t parse_count(std::string_view key, std::string_view value) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (ec != std::errc{} || ptr != value.data() + value.size())
    throw Error(ErrorCode::InvalidSpec, "bad integer for " + std::string(key) + ": " + std::string(value));
  return v;
}

void apply(SynthSpec& spec, std::string_view key, std::string_view value) {
  if (key == "name") {
    spec.name = value;
  } else if (key == "family") {
    if (value == "dna") spec.family = SynthFamily::Dna;
    else if (value == "concat") spec.family = SynthFamily::Concat;
    else if (value == "version") spec.family = SynthFamily::Version;
    else throw Error(ErrorCode::InvalidSpec, "unknown family " + std::string(value));
  } else if (key == "bases") {
    spec.base_count = parse_count(key, value);
  } else if (key == "variants") {
    spec.variants_per_base = parse_count(key, value);
  } else if (key == "length") {
    spec.base_length = parse_count(key, value);
  } else if (key == "p") {
    try {
      std::size_t used = 0;
      spec.mutation_rate = std::stod(std::string(value), &used);
      if (used != value.size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw Error(ErrorCode::InvalidSpec, "bad mutation rate " + std::string(value));
    }
  } else if (key == "alphabet") {
    spec.alphabet = value;
  } else if (key == "source") {
    spec.source = value;
  } else if (key == "seed") {
    spec.seed = parse_count(key, value);
  } else {
    throw Error(ErrorCode::InvalidSpec, "unknown key " + std::string(key));
  }
}

void apply_line(SynthSpec& spec, std::string_view line) {
  std::istringstream words{std::string(line)};
  for (std::string word; words >> word;) {
    const auto eq = word.find('=');
    if (eq == std::string::npos || eq == 0) throw Error(ErrorCode::InvalidSpec, "expected key=value, got " + word);
    apply(spec, std::string_view(word).substr(0, eq), std::string_view(word).substr(eq + 1));
  }
}

}  // namespace

SynthSpec parse_synth_spec(std::string_view text) {
  SynthSpec spec;
  apply_line(spec, text);
  validate(spec);
  return spec;
}

std::vector<SynthSpec> parse_synth_specs(std::istream& in) {
  std::vector<SynthSpec> out;
  SynthSpec current;
  bool open = false;
  std::string line;
  auto close = [&]() {
    if (!open) return;
    validate(current);
    out.push_back(current);
    current = SynthSpec{};
    open = false;
  };
  while (std::getline(in, line)) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) {
      close();
      continue;
    }
    apply_line(current, line);
    open = true;
  }
  close();
  return out;
}

std::vector<std::string> select_patterns(const SuffixOracle& oracle, std::uint64_t length, std::uint64_t samples,
                                         std::uint64_t keep, std::uint64_t seed) {
  if (length == 0) throw Error(ErrorCode::InvalidParam, "pattern length must be positive");
  const Collection& c = oracle.collection();
  std::mt19937_64 rng(seed);
  std::vector<std::string> picked;
  if (c.size() > length) {
    std::uniform_int_distribution<std::uint64_t> pos(0, c.size() - length - 1);
    const std::string_view text = c.text();
    // Bounded retries so collections of only short documents still terminate.
    for (std::uint64_t tries = 0; picked.size() < samples && tries < 4 * samples + 16; ++tries) {
      const std::string_view s = text.substr(pos(rng), length);
      if (s.find(kTerminator) == std::string_view::npos) picked.emplace_back(s);
    }
  }
  std::sort(picked.begin(), picked.end());
  picked.erase(std::unique(picked.begin(), picked.end()), picked.end());

  struct Scored {
    double ratio;
    std::string pattern;
  };
  std::vector<Scored> scored;
  std::vector<char> marks(c.doc_count(), 0);
  for (auto& p : picked) {
    const LexRange range = oracle.find(p);
    std::vector<std::uint64_t> docs;
    for (std::uint64_t i = range.lo; i <= range.hi; ++i) {
      const std::uint64_t doc = oracle.doc_of(i);
      if (!marks[doc]) {
        marks[doc] = 1;
        docs.push_back(doc);
      }
    }
    for (auto doc : docs) marks[doc] = 0;
    scored.push_back({static_cast<double>(range.size()) / static_cast<double>(docs.size()), std::move(p)});
  }
  std::sort(scored.begin(), scored.end(), [](const Scored& a, const Scored& b) {
    return a.ratio != b.ratio ? a.ratio > b.ratio : a.pattern < b.pattern;
  });
  if (scored.size() > keep) scored.resize(keep);
  std::vector<std::string> out;
  for (auto& s : scored) out.push_back(std::move(s.pattern));
  return out;
}

}  // namespace rdoc
