// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 corpusmatch contributors

#pragma once

#include "corpusmatch/corpus_store.hpp"

#include <filesystem>
#include <random>
#include <string>
#include <vector>

namespace corpusmatch::testing {

/// Directory removed on destruction.
class TempDir {
 public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& child) const { return path_ / child; }

 private:
  std::filesystem::path path_;
};

void write_text(const std::filesystem::path& path, const std::string& contents);

/// Assigned letters of the Bengali block (independent vowels and consonants).
const std::u32string& bengali_letters();

/// Random Bengali "prose": words of 2..7 letters separated by single spaces,
/// at least `min_chars` codepoints long. Every 9th word is drawn from
/// `sprinkle` when it is non-empty.
std::string random_bengali_text(std::mt19937& rng, std::size_t min_chars,
                                const std::vector<std::string>& sprinkle = {});

/// Replaces `fraction` of the codepoints (distinct positions, at least one)
/// with a different Bengali letter.
std::string substitute_fraction(std::mt19937& rng, const std::string& text, double fraction);

/// Random string over `alphabet` with length drawn from [0, max_len].
std::u32string random_string(std::mt19937& rng, const std::u32string& alphabet, std::size_t max_len);

struct FixtureBook {
  BookMetadata meta;
  std::vector<std::string> pages;
};

/// `books` synthetic books of `pages` pages each, ids "book-00".."book-NN".
std::vector<FixtureBook> make_fixture_books(std::mt19937& rng, std::size_t books, std::size_t pages,
                                            std::size_t min_chars);

CorpusStore build_store(const std::filesystem::path& root, const std::vector<FixtureBook>& books);

}  // namespace corpusmatch::testing
