// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 corpusmatch contributors

#include "corpusmatch/cli.hpp"

#include "corpusmatch/corpus_store.hpp"
#include "corpusmatch/detection.hpp"
#include "corpusmatch/file_util.hpp"
#include "corpusmatch/ingestion.hpp"
#include "corpusmatch/json_text.hpp"
#include "corpusmatch/service.hpp"
#include "corpusmatch/utf8.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;
using nlohmann::json;

namespace corpusmatch {
namespace {

constexpr const char* kStoreEnv = "CORPUS_MATCH_STORE";

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DetectionFlags {
  std::string store;
  double threshold = kDefaultThreshold;
  std::size_t max_results = 10;
  std::string kernel = "fast";
  std::string stopwords;
  std::string parallelism = "auto";
};

void add_store_flag(CLI::App* cmd, std::string& store) {
  cmd->add_option("--store", store, std::string("Corpus store directory (default: $") + kStoreEnv + ")");
}

void add_detection_flags(CLI::App* cmd, DetectionFlags& f) {
  add_store_flag(cmd, f.store);
  cmd->add_option("--threshold", f.threshold, "Minimum similarity score, 0..100")
      ->check(CLI::Range(0.0, 100.0));
  cmd->add_option("--max-results", f.max_results, "Maximum matches reported")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--kernel", f.kernel, "Edit-distance kernel")
      ->check(CLI::IsMember({"reference", "fast"}));
  cmd->add_option("--stopwords", f.stopwords, "Stopword file (default: builtin list)");
  cmd->add_option("--parallelism", f.parallelism, "Worker threads, or 'auto'");
}

std::string resolve_store(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv(kStoreEnv); env && *env) return env;
  throw UsageError(std::string("--store is required (or set ") + kStoreEnv + ")");
}

unsigned parse_parallelism(const std::string& text) {
  if (text == "auto") return 0;
  unsigned value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || value == 0) {
    throw UsageError("--parallelism must be a positive integer or 'auto'");
  }
  return value;
}

ScriptRange parse_range(const std::string& text) {
  const auto range = ScriptRange::parse(text);
  if (!range) throw UsageError("invalid --range '" + text + "' (expected e.g. U+0980-U+09FF)");
  return *range;
}

DetectionConfig make_config(const DetectionFlags& f) {
  DetectionConfig cfg;
  cfg.threshold = f.threshold;
  cfg.max_results = f.max_results;
  cfg.kernel = *parse_kernel(f.kernel);
  cfg.parallelism = parse_parallelism(f.parallelism);
  return cfg;
}

StopwordSet make_stopwords(const DetectionFlags& f, const ScriptRange& range) {
  return f.stopwords.empty() ? StopwordSet::builtin(range) : StopwordSet::load(f.stopwords, range);
}

std::string query_text(const std::string& text, const std::string& file) {
  if (!text.empty() && !file.empty()) throw UsageError("give either --text or --file, not both");
  if (!file.empty()) {
    auto content = file == "-" ? std::optional<std::string>(std::string(
                                     std::istreambuf_iterator<char>(std::cin), {}))
                               : read_file(file);
    if (!content) throw std::runtime_error("cannot read query file " + file);
    return *content;
  }
  return text;
}

std::string fixed(double value, int digits = 2) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(digits) << value;
  return os.str();
}

void print_matches(std::ostream& out, const DetectionReport& report) {
  out << "rank  score   book_id  page  title  /  author\n";
  std::size_t rank = 1;
  for (const auto& m : report.matches) {
    out << std::left << std::setw(6) << rank++ << std::setw(8) << fixed(m.score) << std::setw(9)
        << m.book_id << std::setw(6) << m.page_no << m.title << "  /  " << m.author << "\n";
  }
  if (report.matches.empty()) out << "(no matches above threshold)\n";
  out << "pages scanned: " << report.pages_scanned << ", elapsed: " << report.elapsed_ms << " ms\n";
}

int run_init(const std::string& store_flag, const std::string& range_text, std::ostream& out) {
  const auto store = CorpusStore::create(resolve_store(store_flag), parse_range(range_text));
  out << "created store " << store.root().string() << " (" << store.script_range().to_string() << ")\n";
  return kExitOk;
}

int run_ingest(const std::string& store_flag, const std::string& metadata, std::ostream& out,
               std::ostream& err) {
  auto store = CorpusStore::open(resolve_store(store_flag), CorpusStore::Mode::read_write);
  const ImportSummary summary = store.import_metadata(metadata);
  for (const auto& e : summary.errors) err << "error: " << e.message << "\n";
  out << "imported " << summary.imported << " book(s), " << summary.errors.size() << " error(s)\n";
  return summary.errors.empty() ? kExitOk : kExitError;
}

int run_ocr_command(OcrJob job, const std::string& out_dir, std::ostream& out, std::ostream& err) {
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw std::runtime_error("cannot create " + out_dir + ": " + ec.message());
  const auto results = run_ocr(job);
  std::size_t failed = 0;
  for (std::size_t i = 0; i < results.size(); ++i) {
    const auto& r = results[i];
    if (!r.ok()) {
      ++failed;
      err << "page " << i + 1 << ": " << r.error << "\n";
      continue;
    }
    write_file_atomic(fs::path(out_dir) / (std::to_string(i + 1) + ".txt"), *r.text);
  }
  out << "wrote " << results.size() - failed << " of " << results.size() << " page(s) to " << out_dir
      << "\n";
  return failed == 0 ? kExitOk : kExitError;
}

int run_eval(const std::string& truth_dir, const std::string& extracted_dir, bool cleaned,
             const std::string& range_text, const std::string& format, std::ostream& out) {
  AccuracyOptions options;
  options.cleaned = cleaned;
  options.range = parse_range(range_text);
  const auto report =
      evaluate_ocr_accuracy(load_page_texts(truth_dir), load_page_texts(extracted_dir), options);
  if (format == "json") {
    json pages = json::array();
    for (const auto& p : report.page_scores) pages.push_back({{"page", p.page_id}, {"score", p.score}});
    out << json_text(json{{"pages", pages}, {"mean", report.mean}}, 2) << "\n";
    return kExitOk;
  }
  out << "page    score\n";
  for (const auto& p : report.page_scores) {
    out << std::left << std::setw(8) << p.page_id << fixed(p.score) << "\n";
  }
  out << "mean    " << fixed(report.mean) << "\n";
  return kExitOk;
}

json report_to_json(const DetectionReport& report) {
  return {{"matches", matches_to_json(report.matches)},
          {"pages_scanned", report.pages_scanned},
          {"elapsed_ms", report.elapsed_ms},
          {"normalized_query_length", report.query_length_chars}};
}

int run_check(const DetectionFlags& flags, const std::string& text, const std::string& file,
              const std::string& format, std::ostream& out, std::ostream& err) {
  const DetectionConfig cfg = make_config(flags);
  const auto store = CorpusStore::open(resolve_store(flags.store));
  const StopwordSet stops = make_stopwords(flags, store.script_range());
  const std::string query = query_text(text, file);
  try {
    const auto report = detect(query, store, cfg, stops);
    if (format == "json") {
      out << json_text(report_to_json(report), 2) << "\n";
    } else {
      print_matches(out, report);
    }
  } catch (const EmptyQueryError& e) {
    err << "warning: " << e.what() << "\n";
    if (format == "json") {
      out << json_text(json{{"matches", json::array()},
                            {"pages_scanned", 0},
                            {"elapsed_ms", 0},
                            {"normalized_query_length", 0},
                            {"warning", e.what()}},
                       2)
          << "\n";
    } else {
      out << "(no matches above threshold)\n";
    }
  }
  return kExitOk;
}

int run_serve(const DetectionFlags& flags, const std::string& host, int port, int timeout_secs,
              const std::string& ui_dir, std::ostream& out) {
  ServiceConfig config;
  config.store_path = resolve_store(flags.store);
  config.defaults = make_config(flags);
  const auto store = CorpusStore::open(config.store_path);
  config.stops = make_stopwords(flags, store.script_range());
  config.timeout = std::chrono::seconds(timeout_secs);
  if (!ui_dir.empty()) config.ui_dir = ui_dir;
  const Service service(std::move(config));
  out << "serving " << service.config().store_path.string() << " on http://" << host << ":" << port
      << std::endl;
  if (!serve(service, host, port)) throw std::runtime_error("cannot listen on " + host + ":" + std::to_string(port));
  return kExitOk;
}

int run_bench(const DetectionFlags& flags, const std::string& text, const std::string& file,
              std::size_t query_chars, int repeat, std::ostream& out) {
  DetectionConfig cfg = make_config(flags);
  const auto store = CorpusStore::open(resolve_store(flags.store));
  const StopwordSet stops = make_stopwords(flags, store.script_range());

  std::string query = query_text(text, file);
  if (query.empty()) {
    // Default query: the head of the first page, so at least one match exists.
    if (store.total_pages() == 0) throw std::runtime_error("store is empty; nothing to benchmark");
    query = store.read_page(store.page_refs().front()).clean_text.str();
  }
  auto cps = utf8::decode(query);
  if (cps.size() > query_chars) cps.resize(query_chars);
  query = utf8::encode(cps);

  struct Row {
    Kernel kernel;
    double best_ms = 0;
    double mean_ms = 0;
    DetectionReport report;
  };
  std::vector<Row> rows;
  for (Kernel kernel : {Kernel::reference, Kernel::fast}) {
    cfg.kernel = kernel;
    Row row{kernel, 0, 0, {}};
    double total = 0;
    for (int i = 0; i < repeat; ++i) {
      const auto t0 = std::chrono::steady_clock::now();
      row.report = detect(query, store, cfg, stops);
      const double ms =
          std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
      total += ms;
      row.best_ms = i == 0 ? ms : std::min(row.best_ms, ms);
    }
    row.mean_ms = total / repeat;
    rows.push_back(std::move(row));
  }

  const bool identical = rows[0].report.matches == rows[1].report.matches;
  out << "query chars: " << utf8::length(query) << ", pages: " << rows[0].report.pages_scanned
      << ", repeats: " << repeat << "\n";
  out << "kernel      best_ms    mean_ms    matches\n";
  for (const auto& r : rows) {
    out << std::left << std::setw(12) << to_string(r.kernel) << std::setw(11) << fixed(r.best_ms, 3)
        << std::setw(11) << fixed(r.mean_ms, 3) << r.report.matches.size() << "\n";
  }
  out << "speedup (reference/fast, best): "
      << fixed(rows[1].best_ms > 0 ? rows[0].best_ms / rows[1].best_ms : 0.0) << "x\n";
  out << "results identical: " << (identical ? "yes" : "NO") << "\n";
  return identical ? kExitOk : kExitError;
}

}  // namespace

int cli_dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Page-level text similarity search over a book corpus", "corpusmatch"};
  app.require_subcommand(1);

  std::string store_flag;
  std::string range_text = "U+0980-U+09FF";
  auto* init = app.add_subcommand("init", "Create an empty corpus store");
  add_store_flag(init, store_flag);
  init->add_option("--range", range_text, "Retained script range");

  std::string metadata;
  auto* ingest = app.add_subcommand("ingest", "Import books from a metadata CSV");
  add_store_flag(ingest, store_flag);
  ingest->add_option("--metadata,metadata", metadata, "CSV with id,title,author,source,text_dir")
      ->required();

  OcrJob job;
  std::string ocr_out;
  std::vector<std::string> images;
  std::string ocr_parallelism = "1";
  auto* ocr = app.add_subcommand("ocr", "Run the OCR engine over page images");
  ocr->add_option("--out", ocr_out, "Directory receiving <n>.txt page files")->required();
  ocr->add_option("--lang", job.language_code, "Engine language code");
  ocr->add_option("--engine", job.engine_command, "Command template with {image} and {lang}");
  ocr->add_option("--parallelism", ocr_parallelism, "Concurrent engine processes, or 'auto'");
  ocr->add_option("images", images, "Page images in page order")->required();

  std::string truth_dir;
  std::string extracted_dir;
  bool cleaned = false;
  std::string eval_format = "table";
  auto* eval = app.add_subcommand("eval-ocr", "Score OCR output against manual transcriptions");
  eval->add_option("truth", truth_dir, "Directory of ground-truth <n>.txt files")->required();
  eval->add_option("extracted", extracted_dir, "Directory of OCR <n>.txt files")->required();
  eval->add_flag("--cleaned", cleaned, "Compare cleaned text instead of raw text");
  eval->add_option("--range", range_text, "Script range used with --cleaned");
  eval->add_option("--format", eval_format)->check(CLI::IsMember({"table", "json"}));

  DetectionFlags flags;
  std::string text;
  std::string file;
  std::string format = "table";
  auto* check = app.add_subcommand("check", "Rank corpus pages against a query text");
  add_detection_flags(check, flags);
  check->add_option("--text", text, "Query text");
  check->add_option("--file", file, "Read the query from a file ('-' for stdin)");
  check->add_option("--format", format)->check(CLI::IsMember({"table", "json"}));

  std::string host = "127.0.0.1";
  int port = 8080;
  int timeout_secs = 120;
  std::string ui_dir;
  auto* serve_cmd = app.add_subcommand("serve", "Serve the HTTP API");
  add_detection_flags(serve_cmd, flags);
  serve_cmd->add_option("--host", host);
  serve_cmd->add_option("--port", port)->check(CLI::Range(0, 65535));
  serve_cmd->add_option("--timeout-secs", timeout_secs)->check(CLI::PositiveNumber);
  serve_cmd->add_option("--ui-dir", ui_dir, "Directory with the built web UI");

  std::size_t query_chars = 500;
  int repeat = 3;
  auto* bench = app.add_subcommand("bench", "Time the reference and fast kernels on a store");
  add_detection_flags(bench, flags);
  bench->add_option("--text", text);
  bench->add_option("--file", file);
  bench->add_option("--query-chars", query_chars, "Truncate the query to this many characters")
      ->check(CLI::PositiveNumber);
  bench->add_option("--repeat", repeat)->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, err, err);
    return kExitUsage;
  }

  try {
    if (*init) return run_init(store_flag, range_text, out);
    if (*ingest) return run_ingest(store_flag, metadata, out, err);
    if (*ocr) {
      job.image_paths.assign(images.begin(), images.end());
      job.parallelism = resolve_parallelism(parse_parallelism(ocr_parallelism));
      return run_ocr_command(job, ocr_out, out, err);
    }
    if (*eval) return run_eval(truth_dir, extracted_dir, cleaned, range_text, eval_format, out);
    if (*check) return run_check(flags, text, file, format, out, err);
    if (*serve_cmd) return run_serve(flags, host, port, timeout_secs, ui_dir, out);
    if (*bench) return run_bench(flags, text, file, query_chars, repeat, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitUsage;
}

}  // namespace corpusmatch
