// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 corpusmatch contributors

#pragma once

#include "corpusmatch/normalization.hpp"

#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace corpusmatch {

enum class StoreErrorCode {
  store_exists,
  not_a_store,
  io,
  duplicate_book,
  invalid_id,
  invalid_book,
  schema,
  digest_mismatch,
  corrupt,
  read_only,
};

std::string_view to_string(StoreErrorCode code);

class StoreError : public std::runtime_error {
 public:
  StoreError(StoreErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}
  StoreErrorCode code() const { return code_; }

 private:
  StoreErrorCode code_;
};

/// 1-64 characters from [A-Za-z0-9_-].
bool is_valid_book_id(std::string_view id);

struct BookMetadata {
  std::string id;
  std::string title;
  std::string author;
  std::string source;
};

struct Book {
  std::string id;
  std::string title;
  std::string author;
  std::string source;
  std::size_t page_count = 0;

  friend bool operator==(const Book&, const Book&) = default;
};

struct Page {
  std::string book_id;
  std::size_t page_no = 0;  // 1-based
  std::string raw_text;
  CleanText clean_text;

  friend bool operator==(const Page&, const Page&) = default;
};

/// Position of a page in iteration order: index into books() and page number.
struct PageRef {
  std::size_t book_index = 0;
  std::size_t page_no = 0;
};

struct ImportRowError {
  std::size_t row = 0;  // 1-based data row, header excluded
  std::string book_id;
  StoreErrorCode code = StoreErrorCode::io;
  std::string message;
};

struct ImportSummary {
  std::size_t imported = 0;
  std::vector<ImportRowError> errors;
};

/// Directory-backed book/page corpus:
///
///   <root>/manifest.json          format, script range, digests
///   <root>/books.json             book records, sorted by id
///   <root>/pages/<id>/<n>.txt     clean text of page n
///   <root>/pages/<id>/<n>.raw.txt raw extracted text of page n
///
/// The manifest is rewritten last on every mutation and is the commit point.
/// One writer at a time; a store opened read-only may be shared by readers.
class CorpusStore {
 public:
  enum class Mode { read_only, read_write };

  static constexpr int kFormatVersion = 1;
  static constexpr const char* kDigestAlgorithm = "sha256";

  /// Throws StoreError{store_exists} if `root` already holds a manifest,
  /// StoreError{io} if the directory cannot be written.
  static CorpusStore create(const std::filesystem::path& root, const ScriptRange& range = {});
  /// Loads the manifest and book records and checks books.json against its
  /// digest.
  static CorpusStore open(const std::filesystem::path& root, Mode mode = Mode::read_only);

  const std::filesystem::path& root() const { return root_; }
  const ScriptRange& script_range() const { return range_; }
  const std::string& created_at() const { return created_at_; }
  Mode mode() const { return mode_; }

  const std::vector<Book>& books() const { return books_; }
  const Book* find_book(std::string_view id) const;
  std::size_t total_pages() const;

  Book add_book(const BookMetadata& meta, const std::vector<std::string>& raw_pages);

  /// Registers every row of a comma-delimited file with header
  /// id,title,author,source,text_dir. A missing column throws
  /// StoreError{schema}; per-row failures are collected in the summary.
  ImportSummary import_metadata(const std::filesystem::path& csv_file);

  /// All pages in (book id, page_no) ascending order.
  std::vector<PageRef> page_refs() const;
  /// Reads and digest-checks one page. Throws StoreError{digest_mismatch}
  /// naming the file on tampering.
  Page read_page(const PageRef& ref) const;
  void iterate_pages(const std::function<void(const Book&, const Page&)>& visit) const;
  std::optional<Page> get_page(std::string_view id, std::size_t page_no) const;

  /// Checks every file listed in the manifest.
  void verify() const;

 private:
  CorpusStore() = default;

  void write_metadata();
  std::string read_checked(const std::string& relative) const;

  std::filesystem::path root_;
  ScriptRange range_;
  std::string created_at_;
  Mode mode_ = Mode::read_only;
  std::vector<Book> books_;
  std::map<std::string, std::string> digests_;  // relative path -> hex
};

std::string page_relative_path(std::string_view id, std::size_t page_no, bool raw);

}  // namespace corpusmatch
