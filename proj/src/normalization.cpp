// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 corpusmatch contributors

#include "corpusmatch/normalization.hpp"

#include "corpusmatch/utf8.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace corpusmatch {
namespace {

bool is_unicode_space(char32_t cp) {
  switch (cp) {
    case 0x09: case 0x0A: case 0x0B: case 0x0C: case 0x0D: case 0x20:
    case 0x85: case 0xA0: case 0x1680: case 0x2028: case 0x2029:
    case 0x202F: case 0x205F: case 0x3000:
      return true;
    default:
      return cp >= 0x2000 && cp <= 0x200A;
  }
}

// Common function words. Kept short on purpose; operators supply a file
// for anything more.
constexpr const char* kBuiltinBengali[] = {
    "এবং", "ও",   "কিন্তু", "যে",   "এই",  "সেই", "না",  "তার",  "তাকে", "আর",
    "করে", "হয়",  "থেকে",  "জন্য", "দিয়ে", "একটি", "এক",  "আমি",  "তুমি", "সে",
    "কি",  "তা",  "এ",    "বা",   "হতে", "ছিল", "হবে", "যা",   "তবে", "এর",
};

}  // namespace

ScriptRange::ScriptRange(char32_t low, char32_t high) : low_(low), high_(high) {
  if (low > high) throw std::invalid_argument("script range low bound exceeds high bound");
  if (high > 0x10FFFF) throw std::invalid_argument("script range beyond U+10FFFF");
}

std::string format_codepoint(char32_t cp) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "U+%04X", static_cast<unsigned>(cp));
  return buf;
}

std::optional<char32_t> parse_codepoint(std::string_view text) {
  if (text.starts_with("U+") || text.starts_with("u+")) text.remove_prefix(2);
  if (text.empty() || text.size() > 6) return std::nullopt;
  unsigned value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value, 16);
  if (ec != std::errc{} || ptr != text.data() + text.size() || value > 0x10FFFF) {
    return std::nullopt;
  }
  return static_cast<char32_t>(value);
}

std::string ScriptRange::to_string() const {
  return format_codepoint(low_) + "-" + format_codepoint(high_);
}

std::optional<ScriptRange> ScriptRange::parse(std::string_view text) {
  if (text == "bengali" || text == "Bengali") return ScriptRange{};
  const auto dash = text.find('-');
  if (dash == std::string_view::npos) return std::nullopt;
  const auto low = parse_codepoint(text.substr(0, dash));
  const auto high = parse_codepoint(text.substr(dash + 1));
  if (!low || !high || *low > *high) return std::nullopt;
  return ScriptRange(*low, *high);
}

CleanText clean_text(std::string_view raw, const ScriptRange& range) {
  std::string out;
  out.reserve(raw.size());
  bool pending_space = false;
  for (char32_t cp : utf8::decode(raw)) {
    if (!range.contains(cp) || is_unicode_space(cp)) {
      pending_space = true;
      continue;
    }
    if (pending_space && !out.empty()) out.push_back(' ');
    pending_space = false;
    utf8::append(out, cp);
  }
  return CleanText::trusted(std::move(out));
}

Tokens tokenize(const CleanText& text) {
  Tokens tokens;
  std::string_view rest = text.str();
  while (!rest.empty()) {
    const auto space = rest.find(' ');
    const auto word = rest.substr(0, space);
    if (!word.empty()) tokens.emplace_back(word);
    if (space == std::string_view::npos) break;
    rest.remove_prefix(space + 1);
  }
  return tokens;
}

StopwordSet StopwordSet::from_words(const std::vector<std::string>& words,
                                    const ScriptRange& range, std::string source) {
  StopwordSet set;
  set.source_ = std::move(source);
  for (const auto& word : words) {
    for (auto& token : tokenize(clean_text(word, range))) set.words_.insert(std::move(token));
  }
  return set;
}

StopwordSet StopwordSet::builtin(const ScriptRange& range) {
  std::vector<std::string> words(std::begin(kBuiltinBengali), std::end(kBuiltinBengali));
  return from_words(words, range, "builtin");
}

StopwordSet StopwordSet::load(const std::filesystem::path& path, const ScriptRange& range) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read stopword file: " + path.string());
  std::vector<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    words.push_back(line);
  }
  if (in.bad()) throw std::runtime_error("error reading stopword file: " + path.string());
  return from_words(words, range, path.string());
}

bool StopwordSet::contains(std::string_view word) const {
  return words_.find(std::string(word)) != words_.end();
}

Tokens remove_stopwords(const Tokens& tokens, const StopwordSet& stops) {
  Tokens kept;
  kept.reserve(tokens.size());
  for (const auto& token : tokens) {
    if (!stops.contains(token)) kept.push_back(token);
  }
  return kept;
}

CleanText join_tokens(const Tokens& tokens) {
  std::string out;
  for (const auto& token : tokens) {
    if (!out.empty()) out.push_back(' ');
    out += token;
  }
  return CleanText::trusted(std::move(out));
}

CleanText prepare_clean(const CleanText& text, const StopwordSet& stops) {
  if (stops.empty()) return text;
  return join_tokens(remove_stopwords(tokenize(text), stops));
}

CleanText prepare_for_comparison(std::string_view raw, const ScriptRange& range,
                                 const StopwordSet& stops) {
  return prepare_clean(clean_text(raw, range), stops);
}

}  // namespace corpusmatch
