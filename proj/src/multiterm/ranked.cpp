#include "rdoc/multiterm/ranked.hpp"

#include <atomic>
#include <chrono>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>
#include <unordered_map>
#include <unordered_set>

#include "rdoc/error.hpp"

namespace rdoc {

namespace {

constexpr double kNoMatch = -std::numeric_limits<double>::infinity();

struct Term {
  PdlCursor cursor;
  double weight = 0.0;
  bool exhausted = false;
  std::uint64_t next_tf = 0;
  std::vector<std::uint64_t> all_docs;  // sorted; AND mode only
};

bool ranks_before(double score_a, std::uint64_t a, double score_b, std::uint64_t b) {
  return score_a != score_b ? score_a > score_b : a < b;
}

}  // namespace

std::vector<ScoredDoc> ranked_query(const RankedIndexes& indexes, const Query& query, const ScoreModel& model,
                                    const std::function<void(const BoundSnapshot&)>& observer) {
  if (!indexes.oracle || !indexes.pdl || !indexes.counts)
    throw Error(ErrorCode::InvalidParam, "ranked queries need a suffix oracle, a PDL index and a counting index");
  if (query.terms.empty()) throw Error(ErrorCode::InvalidParam, "query has no terms");
  if (query.k == 0) throw Error(ErrorCode::InvalidParam, "k must be positive");
  if (!indexes.pdl->has_frequencies() || indexes.pdl->variant() != PdlVariant::TopKF)
    throw Error(ErrorCode::UnsupportedVariant, "ranked queries need the topk+F PDL variant");

  const SuffixOracle& oracle = *indexes.oracle;
  const std::uint64_t d = oracle.collection().doc_count();
  const bool conjunctive = query.mode == QueryMode::And;

  std::vector<Term> terms;
  for (const auto& text : query.terms) {
    const LexRange range = oracle.find(text);
    if (range.empty()) {
      if (conjunctive) return {};
      continue;
    }
    Term t;
    t.weight = model.df_weight(indexes.counts->count(range), d);
    t.cursor = indexes.pdl->cursor(oracle, range);
    if (conjunctive) {
      t.all_docs = indexes.pdl->list(oracle, range);
      std::sort(t.all_docs.begin(), t.all_docs.end());
    }
    terms.push_back(std::move(t));
  }
  if (terms.empty()) return {};
  const std::size_t m = terms.size();

  // Candidate tf values, m per candidate; 0 means not yet extracted from that list.
  std::unordered_map<std::uint64_t, std::size_t> slot;
  std::vector<std::uint64_t> cand_doc;
  std::vector<std::uint64_t> cand_tf;
  std::unordered_set<std::uint64_t> dropped;
  auto contribution = [&](std::size_t i, std::uint64_t tf) { return tf == 0 ? 0.0 : model.tf_weight(tf) * terms[i].weight; };
  auto matches_all = [&](std::uint64_t doc) {
    for (const auto& t : terms)
      if (!std::binary_search(t.all_docs.begin(), t.all_docs.end(), doc)) return false;
    return true;
  };

  std::vector<ScoredDoc> top;
  for (std::uint64_t step = 2 * query.k;; step = std::min(step * 2, std::numeric_limits<std::uint64_t>::max() / 4)) {
    // 1. Extract more documents from every list.
    for (std::size_t i = 0; i < m; ++i) {
      Term& t = terms[i];
      for (std::uint64_t e = 0; e < step && !t.exhausted; ++e) {
        const auto entry = t.cursor.next();
        if (!entry) {
          t.exhausted = true;
          break;
        }
        if (dropped.count(entry->doc)) continue;
        auto [it, fresh] = slot.try_emplace(entry->doc, cand_doc.size());
        if (fresh) {
          // 2. Conjunctive queries discard documents missing from some full list.
          if (conjunctive && !matches_all(entry->doc)) {
            slot.erase(it);
            dropped.insert(entry->doc);
            continue;
          }
          cand_doc.push_back(entry->doc);
          cand_tf.resize(cand_tf.size() + m, 0);
        }
        cand_tf[it->second * m + i] = entry->tf;
      }
      const auto ahead = t.cursor.peek();
      t.exhausted = !ahead;
      t.next_tf = ahead ? ahead->tf : 0;
    }

    // 3-4. Bounds.
    const std::size_t c = cand_doc.size();
    std::vector<double> lower(c, 0.0);
    std::vector<double> upper(c, 0.0);
    std::vector<char> known(c, 1);
    for (std::size_t j = 0; j < c; ++j) {
      for (std::size_t i = 0; i < m; ++i) {
        const std::uint64_t tf = cand_tf[j * m + i];
        if (tf != 0) {
          lower[j] += contribution(i, tf);
          upper[j] += contribution(i, tf);
        } else if (!terms[i].exhausted) {
          upper[j] += contribution(i, terms[i].next_tf);
          known[j] = 0;
        }
      }
    }
    bool all_exhausted = true;
    bool any_exhausted = false;
    double unseen = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      all_exhausted = all_exhausted && terms[i].exhausted;
      any_exhausted = any_exhausted || terms[i].exhausted;
      if (!terms[i].exhausted) unseen += contribution(i, terms[i].next_tf);
    }
    if (all_exhausted || (conjunctive && any_exhausted)) unseen = kNoMatch;
    if (observer) observer(BoundSnapshot{step, cand_doc, lower, upper, unseen});

    // Current top-k by lower bound.
    std::vector<std::size_t> order(c);
    for (std::size_t j = 0; j < c; ++j) order[j] = j;
    const std::size_t keep = std::min<std::size_t>(query.k, c);
    std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(keep), order.end(), [&](auto x, auto y) {
      return ranks_before(lower[x], cand_doc[x], lower[y], cand_doc[y]);
    });
    top.clear();
    for (std::size_t r = 0; r < keep; ++r) top.push_back({cand_doc[order[r]], lower[order[r]]});
    if (all_exhausted) break;
    if (keep < query.k) continue;

    // 5-6. Stop once no other document can displace the top-k set.
    const double floor = lower[order[keep - 1]];
    std::uint64_t floor_id = 0;
    bool settled = unseen < floor;
    for (std::size_t r = 0; r < keep; ++r) {
      if (lower[order[r]] == floor) floor_id = std::max(floor_id, cand_doc[order[r]]);
      if (conjunctive && !known[order[r]]) settled = false;
    }
    std::vector<std::size_t> losers;
    for (std::size_t r = keep; r < c; ++r) {
      const std::size_t j = order[r];
      if (upper[j] < floor) losers.push_back(j);
      else if (!(upper[j] == floor && cand_doc[j] > floor_id)) settled = false;
    }
    if (settled) break;
    if (!conjunctive && !losers.empty()) {
      // Drop documents that can no longer reach the top-k; the k-th lower bound never decreases.
      std::sort(losers.begin(), losers.end());
      std::vector<std::uint64_t> docs;
      std::vector<std::uint64_t> tfs;
      std::size_t next_loser = 0;
      slot.clear();
      for (std::size_t j = 0; j < c; ++j) {
        if (next_loser < losers.size() && losers[next_loser] == j) {
          dropped.insert(cand_doc[j]);
          ++next_loser;
          continue;
        }
        slot.emplace(cand_doc[j], docs.size());
        docs.push_back(cand_doc[j]);
        tfs.insert(tfs.end(), cand_tf.begin() + static_cast<std::ptrdiff_t>(j * m),
                   cand_tf.begin() + static_cast<std::ptrdiff_t>((j + 1) * m));
      }
      cand_doc = std::move(docs);
      cand_tf = std::move(tfs);
    }
  }
  return top;
}

BatchResult batch_query(const RankedIndexes& indexes, const std::vector<Query>& queries, unsigned workers, const ScoreModel& model) {
  if (workers == 0) throw Error(ErrorCode::InvalidParam, "worker count must be positive");
  BatchResult out;
  out.results.resize(queries.size());
  out.micros.resize(queries.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&]() {
    for (std::size_t q = next++; q < queries.size(); q = next++) {
      try {
        const auto start = std::chrono::steady_clock::now();
        out.results[q] = ranked_query(indexes, queries[q], model);
        out.micros[q] = std::chrono::duration<double, std::micro>(std::chrono::steady_clock::now() - start).count();
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const auto start = std::chrono::steady_clock::now();
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  out.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (failure) std::rethrow_exception(failure);
  return out;
}

std::vector<Query> parse_queries(std::istream& in, QueryMode mode, std::uint64_t k) {
  std::vector<Query> out;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::istringstream words(line);
    Query q;
    q.mode = mode;
    q.k = k;
    for (std::string w; words >> w;) q.terms.push_back(w);
    if (!q.terms.empty()) out.push_back(std::move(q));
  }
  return out;
}

}  // namespace rdoc
