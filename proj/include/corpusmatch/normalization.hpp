// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 corpusmatch contributors

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace corpusmatch {

/// Inclusive codepoint interval retained by cleanup.
class ScriptRange {
 public:
  /// Bengali block, U+0980..U+09FF.
  constexpr ScriptRange() = default;
  /// Throws std::invalid_argument if low > high or high > U+10FFFF.
  ScriptRange(char32_t low, char32_t high);

  constexpr char32_t low() const { return low_; }
  constexpr char32_t high() const { return high_; }
  constexpr bool contains(char32_t cp) const { return cp >= low_ && cp <= high_; }

  /// "U+0980-U+09FF"
  std::string to_string() const;
  /// Accepts "U+0980-U+09FF", "0980-09FF" or the name "bengali".
  static std::optional<ScriptRange> parse(std::string_view text);

  friend constexpr bool operator==(const ScriptRange&, const ScriptRange&) = default;

 private:
  char32_t low_ = 0x0980;
  char32_t high_ = 0x09FF;
};

std::string format_codepoint(char32_t cp);
std::optional<char32_t> parse_codepoint(std::string_view text);

/// UTF-8 text whose characters are all inside a ScriptRange or single ASCII
/// spaces, with no leading, trailing or doubled spaces.
class CleanText {
 public:
  CleanText() = default;

  const std::string& str() const { return text_; }
  bool empty() const { return text_.empty(); }

  /// For text already produced by clean_text (e.g. reloaded from a store).
  /// The caller vouches for the invariant.
  static CleanText trusted(std::string text) { return CleanText(std::move(text)); }

  friend bool operator==(const CleanText&, const CleanText&) = default;

 private:
  explicit CleanText(std::string text) : text_(std::move(text)) {}
  std::string text_;
};

/// Replaces every character outside `range` (and all whitespace) with a
/// separator, collapses separator runs to one space and trims.
CleanText clean_text(std::string_view raw, const ScriptRange& range = {});

using Tokens = std::vector<std::string>;

Tokens tokenize(const CleanText& text);

/// Immutable set of words dropped before comparison.
class StopwordSet {
 public:
  StopwordSet() = default;

  /// Small default Bengali list; entries outside `range` are dropped.
  static StopwordSet builtin(const ScriptRange& range = {});
  /// One word per line, UTF-8; blank lines and lines starting with '#'
  /// are ignored. Throws std::runtime_error if the file cannot be read.
  static StopwordSet load(const std::filesystem::path& path, const ScriptRange& range = {});
  static StopwordSet from_words(const std::vector<std::string>& words,
                                const ScriptRange& range = {}, std::string source = "inline");

  bool contains(std::string_view word) const;
  std::size_t size() const { return words_.size(); }
  bool empty() const { return words_.empty(); }
  const std::string& source() const { return source_; }

 private:
  std::unordered_set<std::string> words_;
  std::string source_ = "empty";
};

Tokens remove_stopwords(const Tokens& tokens, const StopwordSet& stops);

CleanText join_tokens(const Tokens& tokens);

/// clean_text -> tokenize -> remove_stopwords -> rejoin. The canonical form
/// compared by the detector, for queries and pages alike.
CleanText prepare_for_comparison(std::string_view raw, const ScriptRange& range,
                                 const StopwordSet& stops);

/// Same pipeline for text that is already clean.
CleanText prepare_clean(const CleanText& text, const StopwordSet& stops);

}  // namespace corpusmatch
