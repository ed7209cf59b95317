// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 corpusmatch contributors

#include "corpusmatch/ingestion.hpp"

#include "corpusmatch/file_util.hpp"

#include <fcntl.h>
#include <poll.h>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <cerrno>
#include <charconv>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <map>
#include <numeric>
#include <thread>

namespace fs = std::filesystem;

namespace corpusmatch {
namespace {

std::string substitute(std::string_view tmpl, const std::string& image, const std::string& lang) {
  std::string out;
  std::size_t pos = 0;
  while (pos < tmpl.size()) {
    if (tmpl.compare(pos, 7, "{image}") == 0) {
      out += shell_quote(image);
      pos += 7;
    } else if (tmpl.compare(pos, 6, "{lang}") == 0) {
      out += shell_quote(lang);
      pos += 6;
    } else {
      out.push_back(tmpl[pos++]);
    }
  }
  return out;
}

std::string first_word(std::string_view command) {
  const auto begin = command.find_first_not_of(" \t");
  if (begin == std::string_view::npos) return {};
  const auto end = command.find_first_of(" \t", begin);
  return std::string(command.substr(begin, end == std::string_view::npos ? end : end - begin));
}

bool is_executable(const fs::path& p) {
  std::error_code ec;
  return fs::is_regular_file(p, ec) && ::access(p.c_str(), X_OK) == 0;
}

bool engine_resolvable(const std::string& program) {
  if (program.empty()) return false;
  if (program.find('/') != std::string::npos) return is_executable(program);
  const char* path = std::getenv("PATH");
  std::string_view dirs = path ? path : "/usr/bin:/bin";
  while (true) {
    const auto colon = dirs.find(':');
    const auto dir = dirs.substr(0, colon);
    if (is_executable(fs::path(dir.empty() ? "." : std::string(dir)) / program)) return true;
    if (colon == std::string_view::npos) return false;
    dirs.remove_prefix(colon + 1);
  }
}

// Empty string when the image looks readable, otherwise the reason.
std::string image_problem(const fs::path& image) {
  std::error_code ec;
  if (!fs::exists(image, ec)) return "image not found: " + image.string();
  if (!fs::is_regular_file(image, ec)) return "not a regular file: " + image.string();
  std::ifstream probe(image, std::ios::binary);
  if (!probe) return "image unreadable: " + image.string();
  if (fs::file_size(image, ec) == 0) return "image is empty (0 bytes): " + image.string();
  return {};
}

}  // namespace

std::string shell_quote(std::string_view arg) {
  std::string out = "'";
  for (char c : arg) {
    if (c == '\'') {
      out += "'\\''";
    } else {
      out.push_back(c);
    }
  }
  out.push_back('\'');
  return out;
}

CommandOutput run_command(const std::string& shell_command) {
  int out_pipe[2];
  int err_pipe[2];
  if (::pipe(out_pipe) != 0) return {-1, {}, std::strerror(errno)};
  if (::pipe(err_pipe) != 0) {
    ::close(out_pipe[0]);
    ::close(out_pipe[1]);
    return {-1, {}, std::strerror(errno)};
  }

  const pid_t pid = ::fork();
  if (pid < 0) {
    for (int fd : {out_pipe[0], out_pipe[1], err_pipe[0], err_pipe[1]}) ::close(fd);
    return {-1, {}, std::strerror(errno)};
  }
  if (pid == 0) {
    ::dup2(out_pipe[1], STDOUT_FILENO);
    ::dup2(err_pipe[1], STDERR_FILENO);
    for (int fd : {out_pipe[0], out_pipe[1], err_pipe[0], err_pipe[1]}) ::close(fd);
    const int devnull = ::open("/dev/null", O_RDONLY);
    if (devnull >= 0) ::dup2(devnull, STDIN_FILENO);
    ::execl("/bin/sh", "sh", "-c", shell_command.c_str(), static_cast<char*>(nullptr));
    ::_exit(127);
  }
  ::close(out_pipe[1]);
  ::close(err_pipe[1]);

  CommandOutput result;
  pollfd fds[2] = {{out_pipe[0], POLLIN, 0}, {err_pipe[0], POLLIN, 0}};
  std::string* sinks[2] = {&result.out, &result.err};
  int open_fds = 2;
  char buf[8192];
  while (open_fds > 0) {
    if (::poll(fds, 2, -1) < 0) {
      if (errno == EINTR) continue;
      break;
    }
    for (int i = 0; i < 2; ++i) {
      if (fds[i].fd < 0 || !(fds[i].revents & (POLLIN | POLLHUP | POLLERR))) continue;
      const ssize_t n = ::read(fds[i].fd, buf, sizeof buf);
      if (n > 0) {
        sinks[i]->append(buf, static_cast<std::size_t>(n));
      } else if (n == 0 || errno != EINTR) {
        ::close(fds[i].fd);
        fds[i].fd = -1;
        --open_fds;
      }
    }
  }
  for (auto& fd : fds) {
    if (fd.fd >= 0) ::close(fd.fd);
  }

  int status = 0;
  while (::waitpid(pid, &status, 0) < 0 && errno == EINTR) {
  }
  if (WIFEXITED(status)) {
    result.exit_code = WEXITSTATUS(status);
  } else if (WIFSIGNALED(status)) {
    result.exit_code = 128 + WTERMSIG(status);
  }
  return result;
}

std::vector<OcrPageResult> run_ocr(const OcrJob& job) {
  const std::string program = first_word(job.engine_command);
  if (!engine_resolvable(program)) throw OcrEngineUnavailable(job.engine_command);

  std::vector<OcrPageResult> results(job.image_paths.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < results.size(); i = next++) {
      OcrPageResult& slot = results[i];
      slot.image = job.image_paths[i];
      if (auto problem = image_problem(slot.image); !problem.empty()) {
        slot.error = std::move(problem);
        continue;
      }
      const std::string command =
          substitute(job.engine_command, slot.image.string(), job.language_code);
      CommandOutput run = run_command(command);
      if (run.exit_code == 127 && run.out.empty()) {
        slot.error = "engine unavailable: " + command + (run.err.empty() ? "" : ": " + run.err);
      } else if (run.exit_code != 0) {
        slot.error = "engine exited with status " + std::to_string(run.exit_code) + " on " +
                     slot.image.string() + (run.err.empty() ? "" : ": " + run.err);
      } else {
        slot.text = std::move(run.out);
      }
    }
  };

  const unsigned threads =
      std::max(1u, std::min<unsigned>(job.parallelism, static_cast<unsigned>(results.size())));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  return results;
}

PageSetMismatch::PageSetMismatch(std::vector<std::string> only_truth,
                                 std::vector<std::string> only_extracted)
    : std::invalid_argument([&] {
        std::string msg = "page sets differ";
        auto list = [&](const char* label, const std::vector<std::string>& ids) {
          if (ids.empty()) return;
          msg += std::string("; only in ") + label + ":";
          for (const auto& id : ids) msg += " " + id;
        };
        list("ground truth", only_truth);
        list("extracted", only_extracted);
        return msg;
      }()),
      only_truth_(std::move(only_truth)),
      only_extracted_(std::move(only_extracted)) {}

AccuracyReport evaluate_ocr_accuracy(const std::vector<PageText>& ground_truth,
                                     const std::vector<PageText>& extracted,
                                     const AccuracyOptions& options) {
  std::map<std::string, const std::string*> by_id;
  for (const auto& page : extracted) by_id[page.page_id] = &page.text;

  std::vector<std::string> only_truth;
  std::vector<std::string> only_extracted;
  std::map<std::string, bool> truth_ids;
  for (const auto& page : ground_truth) {
    truth_ids[page.page_id] = true;
    if (!by_id.count(page.page_id)) only_truth.push_back(page.page_id);
  }
  for (const auto& [id, text] : by_id) {
    if (!truth_ids.count(id)) only_extracted.push_back(id);
  }
  if (!only_truth.empty() || !only_extracted.empty() ||
      truth_ids.size() != ground_truth.size() || by_id.size() != extracted.size()) {
    if (only_truth.empty() && only_extracted.empty()) {
      throw std::invalid_argument("duplicate page ids in accuracy input");
    }
    throw PageSetMismatch(std::move(only_truth), std::move(only_extracted));
  }
  if (ground_truth.empty()) throw std::invalid_argument("no pages to evaluate");

  AccuracyReport report;
  for (const auto& page : ground_truth) {
    const std::string& other = *by_id[page.page_id];
    SimilarityScore score = 0;
    if (options.cleaned) {
      score = similarity(clean_text(page.text, options.range).str(),
                         clean_text(other, options.range).str(), options.kernel);
    } else {
      score = similarity(std::string_view(page.text), std::string_view(other), options.kernel);
    }
    report.page_scores.push_back({page.page_id, score});
  }

  // Summing in ascending score order makes the mean independent of page order.
  std::vector<SimilarityScore> scores;
  for (const auto& s : report.page_scores) scores.push_back(s.score);
  std::sort(scores.begin(), scores.end());
  report.mean = std::accumulate(scores.begin(), scores.end(), 0.0) / static_cast<double>(scores.size());
  return report;
}

std::vector<PageText> load_page_texts(const fs::path& dir) {
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) throw std::runtime_error("not a directory: " + dir.string());
  std::vector<std::pair<std::size_t, fs::path>> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file() || entry.path().extension() != ".txt") continue;
    const std::string stem = entry.path().stem().string();
    std::size_t n = 0;
    const auto [ptr, err] = std::from_chars(stem.data(), stem.data() + stem.size(), n);
    if (err != std::errc{} || ptr != stem.data() + stem.size() || stem.empty()) continue;
    files.emplace_back(n, entry.path());
  }
  std::sort(files.begin(), files.end());

  std::vector<PageText> pages;
  for (const auto& [n, path] : files) {
    auto text = read_file(path);
    if (!text) throw std::runtime_error("cannot read " + path.string());
    pages.push_back({std::to_string(n), std::move(*text)});
  }
  return pages;
}

}  // namespace corpusmatch
