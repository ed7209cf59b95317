// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 corpusmatch contributors

#include "corpusmatch/detection.hpp"

#include "corpusmatch/utf8.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

namespace corpusmatch {

void DetectionConfig::validate() const {
  if (!(threshold >= 0.0 && threshold <= 100.0)) {
    throw std::invalid_argument("threshold must be within [0, 100]");
  }
  if (max_results < 1) throw std::invalid_argument("max_results must be at least 1");
}

unsigned resolve_parallelism(unsigned requested) {
  if (requested > 0) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

SimilarityScore score_page(const CleanText& prepared_query, const Page& page,
                           const StopwordSet& stops, Kernel kernel) {
  const auto query = utf8::decode(prepared_query.str());
  const auto text = utf8::decode(prepare_clean(page.clean_text, stops).str());
  return similarity(query, text, kernel);
}

void rank_matches(std::vector<MatchResult>& matches) {
  std::sort(matches.begin(), matches.end(), [](const MatchResult& a, const MatchResult& b) {
    if (a.score != b.score) return a.score > b.score;
    if (a.book_id != b.book_id) return a.book_id < b.book_id;
    return a.page_no < b.page_no;
  });
}

DetectionReport detect(std::string_view query, const CorpusStore& store,
                       const DetectionConfig& config, const StopwordSet& stops) {
  config.validate();
  const auto started = std::chrono::steady_clock::now();

  const CleanText prepared = prepare_for_comparison(query, store.script_range(), stops);
  if (prepared.empty()) throw EmptyQueryError();
  const std::u32string query_cps = utf8::decode(prepared.str());

  const std::vector<PageRef> refs = store.page_refs();
  const auto& books = store.books();

  // Slot i holds the score of refs[i] when it reaches the threshold.
  std::vector<std::optional<SimilarityScore>> scores(refs.size());
  std::atomic<std::size_t> next{0};
  std::atomic<bool> abort{false};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&] {
    try {
      for (std::size_t i = next++; i < refs.size() && !abort; i = next++) {
        if (config.deadline && std::chrono::steady_clock::now() > *config.deadline) {
          throw DetectionTimeout();
        }
        const Page page = store.read_page(refs[i]);
        const auto text = utf8::decode(prepare_clean(page.clean_text, stops).str());
        scores[i] = similarity_at_least(query_cps, text, config.threshold, config.kernel);
      }
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
      abort = true;
    }
  };

  const unsigned threads = std::min<unsigned>(resolve_parallelism(config.parallelism),
                                              static_cast<unsigned>(std::max<std::size_t>(refs.size(), 1)));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);

  DetectionReport report;
  report.query_length_chars = query_cps.size();
  report.pages_scanned = refs.size();
  for (std::size_t i = 0; i < refs.size(); ++i) {
    if (!scores[i]) continue;
    const Book& book = books[refs[i].book_index];
    report.matches.push_back({book.id, book.title, book.author, refs[i].page_no, *scores[i]});
  }
  rank_matches(report.matches);
  if (report.matches.size() > config.max_results) report.matches.resize(config.max_results);

  report.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                          std::chrono::steady_clock::now() - started)
                          .count();
  return report;
}

nlohmann::json to_json(const MatchResult& match) {
  return {{"book_id", match.book_id}, {"title", match.title},   {"author", match.author},
          {"page_no", match.page_no}, {"score", match.score}};
}

nlohmann::json matches_to_json(const std::vector<MatchResult>& matches) {
  auto out = nlohmann::json::array();
  for (const auto& m : matches) out.push_back(to_json(m));
  return out;
}

}  // namespace corpusmatch
