// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 corpusmatch contributors

#pragma once

#include "corpusmatch/normalization.hpp"
#include "corpusmatch/similarity.hpp"

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace corpusmatch {

inline constexpr const char* kDefaultOcrCommand = "tesseract {image} stdout -l {lang}";

struct OcrJob {
  std::vector<std::filesystem::path> image_paths;
  std::string language_code = "ben";
  /// Shell command; {image} and {lang} are replaced by quoted values. The
  /// engine must print the recognized text on standard output.
  std::string engine_command = kDefaultOcrCommand;
  unsigned parallelism = 1;
};

/// One slot per input image, in input order.
struct OcrPageResult {
  std::filesystem::path image;
  std::optional<std::string> text;
  std::string error;

  bool ok() const { return text.has_value(); }
};

/// The engine executable named by the command template could not be found.
class OcrEngineUnavailable : public std::runtime_error {
 public:
  explicit OcrEngineUnavailable(const std::string& command)
      : std::runtime_error("engine unavailable: " + command), command_(command) {}
  const std::string& command() const { return command_; }

 private:
  std::string command_;
};

/// Runs the engine once per image. Text is returned unmodified. Per-page
/// failures (unreadable or empty image, nonzero exit) fill that page's
/// error and leave the other pages unaffected.
std::vector<OcrPageResult> run_ocr(const OcrJob& job);

/// Result of one shell command: exit status and captured streams.
struct CommandOutput {
  int exit_code = -1;
  std::string out;
  std::string err;
};

CommandOutput run_command(const std::string& shell_command);

std::string shell_quote(std::string_view arg);

struct PageText {
  std::string page_id;
  std::string text;
};

struct PageScore {
  std::string page_id;
  SimilarityScore score = 0;
};

struct AccuracyReport {
  std::vector<PageScore> page_scores;  // ground-truth order
  SimilarityScore mean = 0;
};

struct AccuracyOptions {
  /// Compare clean_text of both sides instead of the raw strings.
  bool cleaned = false;
  ScriptRange range;
  Kernel kernel = Kernel::fast;
};

/// Thrown when the two page lists do not cover the same ids.
class PageSetMismatch : public std::invalid_argument {
 public:
  PageSetMismatch(std::vector<std::string> only_truth, std::vector<std::string> only_extracted);
  const std::vector<std::string>& only_in_truth() const { return only_truth_; }
  const std::vector<std::string>& only_in_extracted() const { return only_extracted_; }

 private:
  std::vector<std::string> only_truth_;
  std::vector<std::string> only_extracted_;
};

/// Per-page similarity of extracted text against the manual transcription
/// and their mean.
AccuracyReport evaluate_ocr_accuracy(const std::vector<PageText>& ground_truth,
                                     const std::vector<PageText>& extracted,
                                     const AccuracyOptions& options = {});

/// Loads <page_no>.txt files from `dir`, ordered by page number. The page
/// id is the decimal page number.
std::vector<PageText> load_page_texts(const std::filesystem::path& dir);

}  // namespace corpusmatch
