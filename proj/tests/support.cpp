// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 corpusmatch contributors

#include "support.hpp"

#include "corpusmatch/utf8.hpp"

#include <fstream>
#include <stdexcept>

namespace fs = std::filesystem;

namespace corpusmatch::testing {

TempDir::TempDir() {
  std::random_device rd;
  const auto base = fs::temp_directory_path();
  for (int attempt = 0; attempt < 100; ++attempt) {
    auto candidate = base / ("corpusmatch-test-" + std::to_string(rd()));
    if (fs::create_directory(candidate)) {
      path_ = candidate;
      return;
    }
  }
  throw std::runtime_error("cannot create temporary directory");
}

TempDir::~TempDir() {
  std::error_code ec;
  fs::remove_all(path_, ec);
}

void write_text(const fs::path& path, const std::string& contents) {
  fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  out << contents;
  if (!out) throw std::runtime_error("cannot write " + path.string());
}

const std::u32string& bengali_letters() {
  static const std::u32string letters = [] {
    std::u32string out;
    for (char32_t c = 0x0985; c <= 0x0994; ++c) {
      if (c != 0x098D && c != 0x098E && c != 0x0991 && c != 0x0992) out.push_back(c);
    }
    for (char32_t c = 0x0995; c <= 0x09B9; ++c) {
      if (c != 0x09A9 && c != 0x09B1 && c != 0x09B3 && c != 0x09B4 && c != 0x09B5) out.push_back(c);
    }
    return out;
  }();
  return letters;
}

std::string random_bengali_text(std::mt19937& rng, std::size_t min_chars,
                                const std::vector<std::string>& sprinkle) {
  const auto& letters = bengali_letters();
  std::uniform_int_distribution<std::size_t> pick(0, letters.size() - 1);
  std::uniform_int_distribution<std::size_t> word_len(2, 7);
  std::u32string out;
  std::size_t words = 0;
  while (out.size() < min_chars) {
    if (!out.empty()) out.push_back(U' ');
    ++words;
    if (!sprinkle.empty() && words % 9 == 0) {
      out += utf8::decode(sprinkle[words / 9 % sprinkle.size()]);
      continue;
    }
    for (std::size_t n = word_len(rng); n > 0; --n) out.push_back(letters[pick(rng)]);
  }
  return utf8::encode(out);
}

std::string substitute_fraction(std::mt19937& rng, const std::string& text, double fraction) {
  auto cps = utf8::decode(text);
  if (cps.empty()) return text;
  std::vector<std::size_t> positions(cps.size());
  for (std::size_t i = 0; i < positions.size(); ++i) positions[i] = i;
  std::shuffle(positions.begin(), positions.end(), rng);
  const auto count = std::max<std::size_t>(1, static_cast<std::size_t>(fraction * static_cast<double>(cps.size())));
  const auto& letters = bengali_letters();
  std::uniform_int_distribution<std::size_t> pick(0, letters.size() - 1);
  for (std::size_t k = 0; k < count && k < positions.size(); ++k) {
    char32_t& c = cps[positions[k]];
    char32_t replacement = c;
    while (replacement == c) replacement = letters[pick(rng)];
    c = replacement;
  }
  return utf8::encode(cps);
}

std::u32string random_string(std::mt19937& rng, const std::u32string& alphabet, std::size_t max_len) {
  std::uniform_int_distribution<std::size_t> len(0, max_len);
  std::uniform_int_distribution<std::size_t> pick(0, alphabet.size() - 1);
  std::u32string out(len(rng), U'\0');
  for (auto& c : out) c = alphabet[pick(rng)];
  return out;
}

std::vector<FixtureBook> make_fixture_books(std::mt19937& rng, std::size_t books, std::size_t pages,
                                            std::size_t min_chars) {
  const std::vector<std::string> sprinkle = {"এবং", "কিন্তু", "থেকে"};
  std::vector<FixtureBook> out;
  for (std::size_t b = 0; b < books; ++b) {
    char id[32];
    std::snprintf(id, sizeof id, "book-%02zu", b);
    FixtureBook book;
    book.meta = {id, "শিরোনাম " + std::to_string(b), "লেখক " + std::to_string(b), "synthetic"};
    for (std::size_t p = 0; p < pages; ++p) {
      // Page furniture a scanner would pick up; cleanup must drop it.
      book.pages.push_back("Page " + std::to_string(p + 1) + "\n" +
                           random_bengali_text(rng, min_chars, sprinkle) + "\n-- " +
                           std::to_string(p + 1) + " --");
    }
    out.push_back(std::move(book));
  }
  return out;
}

CorpusStore build_store(const fs::path& root, const std::vector<FixtureBook>& books) {
  auto store = CorpusStore::create(root);
  for (const auto& b : books) store.add_book(b.meta, b.pages);
  return store;
}

}  // namespace corpusmatch::testing
