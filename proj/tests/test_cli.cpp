// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 corpusmatch contributors

#include "corpusmatch/cli.hpp"

#include "corpusmatch/corpus_store.hpp"
#include "support.hpp"

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include <cstdlib>
#include <filesystem>
#include <random>
#include <sstream>

using namespace corpusmatch;
using corpusmatch::testing::TempDir;
using corpusmatch::testing::write_text;
namespace fs = std::filesystem;

namespace {

struct Run {
  int status;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "corpusmatch");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int status = cli_dispatch(static_cast<int>(argv.size()), argv.data(), out, err);
  return {status, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    ::unsetenv("CORPUS_MATCH_STORE");
    std::mt19937 rng(83);
    books_ = corpusmatch::testing::make_fixture_books(rng, 2, 2, 150);
    for (std::size_t b = 0; b < books_.size(); ++b) {
      for (std::size_t p = 0; p < books_[b].pages.size(); ++p) {
        write_text(dir_ / ("texts/" + books_[b].meta.id + "/" + std::to_string(p + 1) + ".txt"),
                   books_[b].pages[p]);
      }
    }
    write_text(dir_ / "meta.csv",
               "id,title,author,source,text_dir\n" + row(0) + row(1));
    store_ = (dir_ / "store").string();
  }

  std::string row(std::size_t b) const {
    const auto& m = books_[b].meta;
    return m.id + "," + m.title + "," + m.author + "," + m.source + ",texts/" + m.id + "\n";
  }

  void init_and_ingest() {
    ASSERT_EQ(run({"init", "--store", store_}).status, kExitOk);
    const auto r = run({"ingest", "--store", store_, "--metadata", (dir_ / "meta.csv").string()});
    ASSERT_EQ(r.status, kExitOk) << r.err;
  }

  TempDir dir_;
  std::vector<corpusmatch::testing::FixtureBook> books_;
  std::string store_;
};

}  // namespace

TEST(Cli, UsageErrors) {
  ::unsetenv("CORPUS_MATCH_STORE");
  EXPECT_EQ(run({"nonsense"}).status, kExitUsage);
  EXPECT_EQ(run({}).status, kExitUsage);
  EXPECT_EQ(run({"check", "--bogus"}).status, kExitUsage);
  const auto r = run({"check", "--text", "কলম"});
  EXPECT_EQ(r.status, kExitUsage);
  EXPECT_NE(r.err.find("--store"), std::string::npos);
  EXPECT_EQ(run({"check", "--store", "x", "--threshold", "150", "--text", "a"}).status, kExitUsage);
  EXPECT_EQ(run({"check", "--store", "x", "--parallelism", "many", "--text", "a"}).status, kExitUsage);
  EXPECT_EQ(run({"check", "--store", "x", "--kernel", "quantum", "--text", "a"}).status, kExitUsage);
  EXPECT_EQ(run({"--help"}).status, kExitOk);
}

TEST_F(CliTest, InitTwiceFails) {
  EXPECT_EQ(run({"init", "--store", store_}).status, kExitOk);
  const auto r = run({"init", "--store", store_});
  EXPECT_EQ(r.status, kExitError);
  EXPECT_NE(r.err.find("store exists"), std::string::npos);
}

TEST_F(CliTest, IngestReportsRowErrors) {
  init_and_ingest();
  const auto r = run({"ingest", "--store", store_, "--metadata", (dir_ / "meta.csv").string()});
  EXPECT_EQ(r.status, kExitError);
  EXPECT_NE(r.out.find("imported 0 book(s), 2 error(s)"), std::string::npos) << r.out;
}

TEST_F(CliTest, CheckExactPagePrintsScore100Row) {
  init_and_ingest();
  const auto r = run({"check", "--store", store_, "--text", books_[1].pages[0]});
  ASSERT_EQ(r.status, kExitOk) << r.err;
  std::istringstream lines(r.out);
  std::string header, first;
  std::getline(lines, header);
  std::getline(lines, first);
  std::istringstream cols(first);
  std::string rank, score, id, page;
  cols >> rank >> score >> id >> page;
  EXPECT_EQ(rank, "1");
  EXPECT_EQ(score, "100.00");
  EXPECT_EQ(id, books_[1].meta.id);
  EXPECT_EQ(page, "1");
  EXPECT_NE(r.out.find("pages scanned: 4"), std::string::npos);
  EXPECT_EQ(r.out.find("100.00", r.out.find("100.00") + 1), std::string::npos);
}

TEST_F(CliTest, CheckJsonAndEnvStore) {
  init_and_ingest();
  ::setenv("CORPUS_MATCH_STORE", store_.c_str(), 1);
  write_text(dir_ / "q.txt", books_[0].pages[1]);
  const auto r = run({"check", "--file", (dir_ / "q.txt").string(), "--format", "json",
                      "--kernel", "reference", "--parallelism", "2"});
  ::unsetenv("CORPUS_MATCH_STORE");
  ASSERT_EQ(r.status, kExitOk) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["matches"][0]["book_id"], books_[0].meta.id);
  EXPECT_EQ(j["matches"][0]["page_no"], 2);
  EXPECT_EQ(j["pages_scanned"], 4);
}

TEST_F(CliTest, CheckEmptyQueryWarns) {
  init_and_ingest();
  const auto r = run({"check", "--store", store_, "--text", "latin only"});
  EXPECT_EQ(r.status, kExitOk);
  EXPECT_NE(r.err.find("empty query after normalization"), std::string::npos);
}

TEST_F(CliTest, CheckOnTamperedStoreFails) {
  init_and_ingest();
  write_text(fs::path(store_) / "pages" / books_[0].meta.id / "1.txt", "ক");
  const auto r = run({"check", "--store", store_, "--text", books_[1].pages[0]});
  EXPECT_EQ(r.status, kExitError);
  EXPECT_NE(r.err.find("digest mismatch"), std::string::npos);
}

TEST_F(CliTest, EvalOcrIdenticalDirectories) {
  write_text(dir_ / "truth/1.txt", "আমি কথা");
  write_text(dir_ / "truth/2.txt", "বই");
  fs::copy(dir_ / "truth", dir_ / "ocr");
  const auto r = run({"eval-ocr", (dir_ / "truth").string(), (dir_ / "ocr").string()});
  ASSERT_EQ(r.status, kExitOk) << r.err;
  EXPECT_NE(r.out.find("mean    100.00"), std::string::npos) << r.out;

  write_text(dir_ / "ocr/3.txt", "extra");
  const auto bad = run({"eval-ocr", (dir_ / "truth").string(), (dir_ / "ocr").string()});
  EXPECT_EQ(bad.status, kExitError);
  EXPECT_NE(bad.err.find("only in extracted: 3"), std::string::npos);
}

TEST_F(CliTest, OcrWritesPageFiles) {
  const auto engine = dir_ / "engine";
  write_text(engine, "#!/bin/sh\ncat \"$1\"\n");
  fs::permissions(engine, fs::perms::owner_all);
  write_text(dir_ / "img/a.png", "প্রথম");
  write_text(dir_ / "img/b.png", "দ্বিতীয়");
  const auto r = run({"ocr", "--out", (dir_ / "out").string(), "--engine", engine.string() + " {image}",
                      (dir_ / "img/a.png").string(), (dir_ / "img/b.png").string()});
  ASSERT_EQ(r.status, kExitOk) << r.err;
  EXPECT_TRUE(fs::exists(dir_ / "out/1.txt"));
  EXPECT_TRUE(fs::exists(dir_ / "out/2.txt"));

  write_text(dir_ / "img/empty.png", "");
  const auto partial = run({"ocr", "--out", (dir_ / "out2").string(), "--engine",
                            engine.string() + " {image}", (dir_ / "img/empty.png").string(),
                            (dir_ / "img/a.png").string()});
  EXPECT_EQ(partial.status, kExitError);
  EXPECT_FALSE(fs::exists(dir_ / "out2/1.txt"));
  EXPECT_TRUE(fs::exists(dir_ / "out2/2.txt"));

  const auto missing = run({"ocr", "--out", (dir_ / "out3").string(), "--engine", "no-such-engine {image}",
                            (dir_ / "img/a.png").string()});
  EXPECT_EQ(missing.status, kExitError);
  EXPECT_NE(missing.err.find("engine unavailable"), std::string::npos);
}

TEST_F(CliTest, BenchComparesKernels) {
  init_and_ingest();
  const auto r = run({"bench", "--store", store_, "--repeat", "1", "--query-chars", "120"});
  ASSERT_EQ(r.status, kExitOk) << r.err;
  EXPECT_NE(r.out.find("reference"), std::string::npos);
  EXPECT_NE(r.out.find("results identical: yes"), std::string::npos);
  EXPECT_NE(r.out.find("query chars: 120"), std::string::npos);
}
