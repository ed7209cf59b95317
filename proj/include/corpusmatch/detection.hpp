// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 corpusmatch contributors

#pragma once

#include "corpusmatch/corpus_store.hpp"
#include "corpusmatch/normalization.hpp"
#include "corpusmatch/similarity.hpp"

#include <chrono>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace corpusmatch {

/// Default minimum score for a page to count as a match.
inline constexpr SimilarityScore kDefaultThreshold = 20.0;

struct DetectionConfig {
  SimilarityScore threshold = kDefaultThreshold;
  std::size_t max_results = 10;
  Kernel kernel = Kernel::fast;
  /// Worker threads; 0 means one per hardware thread.
  unsigned parallelism = 0;
  /// Abort the scan with DetectionTimeout once this instant passes.
  std::optional<std::chrono::steady_clock::time_point> deadline;

  /// Throws std::invalid_argument naming the offending field.
  void validate() const;
};

struct MatchResult {
  std::string book_id;
  std::string title;
  std::string author;
  std::size_t page_no = 0;
  SimilarityScore score = 0;

  friend bool operator==(const MatchResult&, const MatchResult&) = default;
};

struct DetectionReport {
  std::size_t query_length_chars = 0;  // prepared query, in codepoints
  std::size_t pages_scanned = 0;
  std::int64_t elapsed_ms = 0;
  std::vector<MatchResult> matches;  // score desc, then book id, page asc
};

/// The query had no comparable text once cleaned and stopword-filtered.
class EmptyQueryError : public std::runtime_error {
 public:
  EmptyQueryError() : std::runtime_error("empty query after normalization") {}
};

class DetectionTimeout : public std::runtime_error {
 public:
  DetectionTimeout() : std::runtime_error("detection deadline exceeded") {}
};

/// Scores the prepared query against every page of `store`, keeps pages
/// scoring at least the threshold and returns the best max_results of them.
/// Store errors (e.g. a tampered page) propagate as StoreError.
DetectionReport detect(std::string_view query, const CorpusStore& store,
                       const DetectionConfig& config, const StopwordSet& stops);

/// Score of one page against an already prepared query.
SimilarityScore score_page(const CleanText& prepared_query, const Page& page,
                           const StopwordSet& stops, Kernel kernel);

/// Sorts by score descending, then (book_id, page_no) ascending.
void rank_matches(std::vector<MatchResult>& matches);

nlohmann::json to_json(const MatchResult& match);
nlohmann::json matches_to_json(const std::vector<MatchResult>& matches);

unsigned resolve_parallelism(unsigned requested);

}  // namespace corpusmatch
