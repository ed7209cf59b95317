// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 corpusmatch contributors

#include "corpusmatch/corpus_store.hpp"

#include "corpusmatch/csv.hpp"
#include "corpusmatch/digest.hpp"
#include "corpusmatch/file_util.hpp"
#include "corpusmatch/json_text.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <charconv>
#include <ctime>

namespace fs = std::filesystem;
using nlohmann::json;

namespace corpusmatch {
namespace {

constexpr const char* kManifest = "manifest.json";
constexpr const char* kBooks = "books.json";

std::string utc_now() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

[[noreturn]] void fail(StoreErrorCode code, const std::string& message) {
  throw StoreError(code, message);
}

json book_to_json(const Book& b) {
  return {{"id", b.id},
          {"title", b.title},
          {"author", b.author},
          {"source", b.source},
          {"page_count", b.page_count}};
}

// Numeric stem of "<digits>.txt", or nullopt for anything else.
std::optional<std::size_t> page_file_number(const fs::path& p) {
  if (p.extension() != ".txt") return std::nullopt;
  const std::string stem = p.stem().string();
  if (stem.empty() || !std::all_of(stem.begin(), stem.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    return std::nullopt;
  }
  std::size_t value = 0;
  const auto [ptr, ec] = std::from_chars(stem.data(), stem.data() + stem.size(), value);
  if (ec != std::errc{}) return std::nullopt;
  return value;
}

}  // namespace

std::string_view to_string(StoreErrorCode code) {
  switch (code) {
    case StoreErrorCode::store_exists: return "store_exists";
    case StoreErrorCode::not_a_store: return "not_a_store";
    case StoreErrorCode::io: return "io";
    case StoreErrorCode::duplicate_book: return "duplicate_book";
    case StoreErrorCode::invalid_id: return "invalid_id";
    case StoreErrorCode::invalid_book: return "invalid_book";
    case StoreErrorCode::schema: return "schema";
    case StoreErrorCode::digest_mismatch: return "digest_mismatch";
    case StoreErrorCode::corrupt: return "corrupt";
    case StoreErrorCode::read_only: return "read_only";
  }
  return "unknown";
}

bool is_valid_book_id(std::string_view id) {
  if (id.empty() || id.size() > 64) return false;
  return std::all_of(id.begin(), id.end(), [](char c) {
    return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') ||
           c == '_' || c == '-';
  });
}

std::string page_relative_path(std::string_view id, std::size_t page_no, bool raw) {
  return "pages/" + std::string(id) + "/" + std::to_string(page_no) + (raw ? ".raw.txt" : ".txt");
}

CorpusStore CorpusStore::create(const fs::path& root, const ScriptRange& range) {
  std::error_code ec;
  if (fs::exists(root / kManifest, ec)) {
    fail(StoreErrorCode::store_exists, "store exists: " + (root / kManifest).string());
  }
  fs::create_directories(root / "pages", ec);
  if (ec) fail(StoreErrorCode::io, "cannot create " + (root / "pages").string() + ": " + ec.message());

  CorpusStore store;
  store.root_ = root;
  store.range_ = range;
  store.created_at_ = utc_now();
  store.mode_ = Mode::read_write;
  store.write_metadata();
  return store;
}

CorpusStore CorpusStore::open(const fs::path& root, Mode mode) {
  const auto manifest_text = read_file(root / kManifest);
  if (!manifest_text) fail(StoreErrorCode::not_a_store, "no readable manifest at " + (root / kManifest).string());

  CorpusStore store;
  store.root_ = root;
  store.mode_ = mode;
  try {
    const json manifest = json::parse(*manifest_text);
    const int version = manifest.at("format_version").get<int>();
    if (version != kFormatVersion) {
      fail(StoreErrorCode::corrupt, "unsupported store format version " + std::to_string(version));
    }
    const auto& range = manifest.at("script_range");
    const auto low = parse_codepoint(range.at("low").get<std::string>());
    const auto high = parse_codepoint(range.at("high").get<std::string>());
    if (!low || !high || *low > *high) fail(StoreErrorCode::corrupt, "bad script_range in manifest");
    store.range_ = ScriptRange(*low, *high);
    store.created_at_ = manifest.at("created_at").get<std::string>();

    const auto& checksum = manifest.at("checksum");
    if (checksum.at("algorithm").get<std::string>() != kDigestAlgorithm) {
      fail(StoreErrorCode::corrupt, "unsupported checksum algorithm");
    }
    store.digests_ = checksum.at("files").get<std::map<std::string, std::string>>();

    const json books = json::parse(store.read_checked(kBooks));
    for (const auto& b : books) {
      store.books_.push_back(Book{b.at("id").get<std::string>(), b.at("title").get<std::string>(),
                                  b.at("author").get<std::string>(),
                                  b.at("source").get<std::string>(),
                                  b.at("page_count").get<std::size_t>()});
    }
    if (manifest.at("book_count").get<std::size_t>() != store.books_.size()) {
      fail(StoreErrorCode::corrupt, "manifest book_count does not match books.json");
    }
  } catch (const json::exception& e) {
    fail(StoreErrorCode::corrupt, std::string("malformed store metadata: ") + e.what());
  }
  std::sort(store.books_.begin(), store.books_.end(),
            [](const Book& a, const Book& b) { return a.id < b.id; });
  return store;
}

const Book* CorpusStore::find_book(std::string_view id) const {
  const auto it = std::lower_bound(books_.begin(), books_.end(), id,
                                   [](const Book& b, std::string_view key) { return b.id < key; });
  return it != books_.end() && it->id == id ? &*it : nullptr;
}

std::size_t CorpusStore::total_pages() const {
  std::size_t n = 0;
  for (const auto& b : books_) n += b.page_count;
  return n;
}

void CorpusStore::write_metadata() {
  json books = json::array();
  for (const auto& b : books_) books.push_back(book_to_json(b));
  const std::string books_text = json_text(books, 2) + "\n";
  digests_[kBooks] = sha256_hex(books_text);

  json manifest = {
      {"format_version", kFormatVersion},
      {"script_range", {{"low", format_codepoint(range_.low())}, {"high", format_codepoint(range_.high())}}},
      {"book_count", books_.size()},
      {"created_at", created_at_},
      {"checksum", {{"algorithm", kDigestAlgorithm}, {"files", digests_}}},
  };
  try {
    write_file_atomic(root_ / kBooks, books_text);
    write_file_atomic(root_ / kManifest, json_text(manifest, 2) + "\n");
  } catch (const std::exception& e) {
    fail(StoreErrorCode::io, e.what());
  }
}

Book CorpusStore::add_book(const BookMetadata& meta, const std::vector<std::string>& raw_pages) {
  if (mode_ != Mode::read_write) fail(StoreErrorCode::read_only, "store opened read-only");
  if (!is_valid_book_id(meta.id)) fail(StoreErrorCode::invalid_id, "invalid id: \"" + meta.id + "\"");
  if (find_book(meta.id)) fail(StoreErrorCode::duplicate_book, "duplicate book: " + meta.id);
  if (meta.title.empty()) fail(StoreErrorCode::invalid_book, "book " + meta.id + " has an empty title");

  std::error_code ec;
  const fs::path dir = root_ / "pages" / meta.id;
  fs::create_directories(dir, ec);
  if (ec) fail(StoreErrorCode::io, "cannot create " + dir.string() + ": " + ec.message());

  auto digests = digests_;
  try {
    for (std::size_t i = 0; i < raw_pages.size(); ++i) {
      const std::size_t page_no = i + 1;
      const std::string clean = clean_text(raw_pages[i], range_).str();
      write_file_atomic(root_ / page_relative_path(meta.id, page_no, false), clean);
      write_file_atomic(root_ / page_relative_path(meta.id, page_no, true), raw_pages[i]);
      digests[page_relative_path(meta.id, page_no, false)] = sha256_hex(clean);
      digests[page_relative_path(meta.id, page_no, true)] = sha256_hex(raw_pages[i]);
    }
  } catch (const std::exception& e) {
    fail(StoreErrorCode::io, e.what());
  }

  Book book{meta.id, meta.title, meta.author, meta.source, raw_pages.size()};
  const auto pos = std::lower_bound(books_.begin(), books_.end(), book.id,
                                    [](const Book& b, const std::string& key) { return b.id < key; });
  const auto inserted = books_.insert(pos, book);
  auto previous = std::move(digests_);
  digests_ = std::move(digests);
  try {
    write_metadata();
  } catch (...) {
    books_.erase(inserted);
    digests_ = std::move(previous);
    throw;
  }
  return book;
}

ImportSummary CorpusStore::import_metadata(const fs::path& csv_file) {
  const auto text = read_file(csv_file);
  if (!text) fail(StoreErrorCode::io, "cannot read metadata file " + csv_file.string());

  std::vector<std::vector<std::string>> rows;
  try {
    rows = csv::parse(*text);
  } catch (const csv::ParseError& e) {
    fail(StoreErrorCode::schema, csv_file.string() + ": " + e.what());
  }
  if (rows.empty()) fail(StoreErrorCode::schema, "metadata file has no header row");

  const auto& header = rows.front();
  std::map<std::string, std::size_t> column;
  for (const char* name : {"id", "title", "author", "source", "text_dir"}) {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) fail(StoreErrorCode::schema, std::string("missing column: ") + name);
    column[name] = static_cast<std::size_t>(it - header.begin());
  }

  const fs::path base = csv_file.parent_path();
  ImportSummary summary;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    ImportRowError err;
    err.row = r;
    if (row.size() != header.size()) {
      err.code = StoreErrorCode::schema;
      err.message = "row " + std::to_string(r) + ": expected " + std::to_string(header.size()) +
                    " fields, found " + std::to_string(row.size());
      summary.errors.push_back(std::move(err));
      continue;
    }
    BookMetadata meta{row[column["id"]], row[column["title"]], row[column["author"]],
                      row[column["source"]]};
    err.book_id = meta.id;

    fs::path dir = row[column["text_dir"]];
    if (dir.is_relative()) dir = base / dir;
    std::error_code ec;
    if (!fs::is_directory(dir, ec)) {
      err.code = StoreErrorCode::io;
      err.message = "row " + std::to_string(r) + ": text_dir not found: " + dir.string();
      summary.errors.push_back(std::move(err));
      continue;
    }

    std::vector<std::pair<std::size_t, fs::path>> files;
    for (const auto& entry : fs::directory_iterator(dir, ec)) {
      if (!entry.is_regular_file()) continue;
      if (const auto n = page_file_number(entry.path())) files.emplace_back(*n, entry.path());
    }
    std::sort(files.begin(), files.end());

    try {
      std::vector<std::string> pages;
      pages.reserve(files.size());
      for (const auto& [n, path] : files) {
        auto content = read_file(path);
        if (!content) fail(StoreErrorCode::io, "cannot read " + path.string());
        pages.push_back(std::move(*content));
      }
      add_book(meta, pages);
      ++summary.imported;
    } catch (const StoreError& e) {
      err.code = e.code();
      err.message = "row " + std::to_string(r) + ": " + e.what();
      summary.errors.push_back(std::move(err));
    }
  }
  return summary;
}

std::string CorpusStore::read_checked(const std::string& relative) const {
  const auto it = digests_.find(relative);
  if (it == digests_.end()) fail(StoreErrorCode::corrupt, "file not listed in manifest: " + relative);
  const auto data = read_file(root_ / relative);
  if (!data) fail(StoreErrorCode::io, "cannot read store file " + (root_ / relative).string());
  if (sha256_hex(*data) != it->second) {
    fail(StoreErrorCode::digest_mismatch, "digest mismatch: " + (root_ / relative).string());
  }
  return *data;
}

std::vector<PageRef> CorpusStore::page_refs() const {
  std::vector<PageRef> refs;
  refs.reserve(total_pages());
  for (std::size_t b = 0; b < books_.size(); ++b) {
    for (std::size_t p = 1; p <= books_[b].page_count; ++p) refs.push_back({b, p});
  }
  return refs;
}

Page CorpusStore::read_page(const PageRef& ref) const {
  const Book& book = books_.at(ref.book_index);
  Page page;
  page.book_id = book.id;
  page.page_no = ref.page_no;
  page.clean_text = CleanText::trusted(read_checked(page_relative_path(book.id, ref.page_no, false)));
  page.raw_text = read_checked(page_relative_path(book.id, ref.page_no, true));
  return page;
}

void CorpusStore::iterate_pages(const std::function<void(const Book&, const Page&)>& visit) const {
  for (const auto& ref : page_refs()) visit(books_[ref.book_index], read_page(ref));
}

std::optional<Page> CorpusStore::get_page(std::string_view id, std::size_t page_no) const {
  const Book* book = find_book(id);
  if (!book || page_no == 0 || page_no > book->page_count) return std::nullopt;
  return read_page({static_cast<std::size_t>(book - books_.data()), page_no});
}

void CorpusStore::verify() const {
  for (const auto& [relative, digest] : digests_) read_checked(relative);
  for (const auto& ref : page_refs()) {
    for (bool raw : {false, true}) {
      const auto rel = page_relative_path(books_[ref.book_index].id, ref.page_no, raw);
      if (!digests_.count(rel)) fail(StoreErrorCode::corrupt, "page file missing from manifest: " + rel);
    }
  }
}

}  // namespace corpusmatch
