#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>

#include "doctest.h"
#include "rstctg/cli.hpp"
#include "test_support.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run cli(std::vector<std::string> args) {
  args.insert(args.begin(), "rstctg");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = rstctg::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

struct TempDir {
  fs::path path;
  TempDir() : path(fs::temp_directory_path() / ("rstctg_cli_" + std::to_string(::getpid()))) {
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

void write(const std::string& path, const std::string& text) { std::ofstream(path) << text; }

}  // namespace

TEST_CASE("generate") {
  auto r = cli({"generate", "--prompt", "He came to my house,", "--relation", "Contrast_NN"});
  CHECK(r.code == 0);
  CHECK(r.out == "but he went to my house,\n");

  r = cli({"generate", "--prompt", "He came to my house.", "--normalize-prompt", "--relation", "Cause_NS", "--trace"});
  CHECK(r.code == 0);
  CHECK(r.out.find("\"prompt\":\"He came to my house,\"") != std::string::npos);
  CHECK(r.out.find("\"relation\":\"Cause_NS\"") != std::string::npos);

  r = cli({"generate", "--prompt", "He came to my house,", "--relation", "None", "--trace"});
  CHECK(r.code == 0);
  CHECK(r.out.find("\"alpha\":0.0") != std::string::npos);
}

TEST_CASE("usage errors exit 1") {
  CHECK(cli({"generate", "--prompt", "x,", "--relation", "Bogus_XX"}).code == 1);
  CHECK(cli({"generate", "--prompt", "x,", "--relation", "Contrast"}).code == 1);
  CHECK(cli({"generate", "--prompt", "x,", "--p", "1.5"}).code == 1);
  CHECK(cli({"generate", "--prompt", "   "}).code == 1);
  CHECK(cli({"generate"}).code == 1);
  CHECK(cli({}).code == 1);
  CHECK(cli({"generate", "--prompt", "x,", "--endpoint", "http://127.0.0.1:1"}).code == 1);

  TempDir tmp;
  write(tmp.file("empty.txt"), "\n  \n");
  auto r = cli({"batch", "--prompts", tmp.file("empty.txt"), "--out", tmp.file("r.jsonl")});
  CHECK(r.code == 1);
  CHECK(r.err.find("empty") != std::string::npos);
}

TEST_CASE("runtime failures exit 2") {
  CHECK(cli({"generate", "--prompt", "x,", "--backend", "remote", "--endpoint", "http://127.0.0.1:1"}).code == 2);
  CHECK(cli({"evaluate", "--records", "/nonexistent/r.jsonl"}).code == 2);
  CHECK(cli({"serve-check", "--endpoint", "http://127.0.0.1:1"}).code == 2);
}

TEST_CASE("batch, evaluate, perturb") {
  TempDir tmp;
  write(tmp.file("prompts.txt"), "He came to my house,\nIt was late.\n");
  const std::vector<std::string> batch{"batch", "--prompts", tmp.file("prompts.txt"), "--normalize-prompt",
                                       "--relations", "Contrast_NN,Cause_NS", "--out"};
  auto args = batch;
  args.push_back(tmp.file("a.jsonl"));
  auto r = cli(args);
  REQUIRE(r.code == 0);
  CHECK(r.out.find("wrote 6 records") != std::string::npos);
  args.back() = tmp.file("b.jsonl");
  args.push_back("--workers");
  args.push_back("3");
  REQUIRE(cli(args).code == 0);
  CHECK(testing::read_file(tmp.file("a.jsonl")) == testing::read_file(tmp.file("b.jsonl")));

  r = cli({"evaluate", "--records", tmp.file("a.jsonl"), "--out", tmp.file("report.csv")});
  CHECK(r.code == 0);
  CHECK(r.out.find("Contrast_NN") != std::string::npos);
  CHECK(testing::read_file(tmp.file("report.csv")).rfind("relation,correct_percent,perplexity,n\n", 0) == 0);

  r = cli({"perturb", "--records", tmp.file("a.jsonl"), "--out", tmp.file("curve.csv")});
  CHECK(r.code == 0);
  CHECK(r.out.find("over 4 generations") != std::string::npos);

  // drop the baselines: the report refuses the batch
  std::istringstream all(testing::read_file(tmp.file("a.jsonl")));
  std::string line, kept;
  while (std::getline(all, line)) {
    if (line.find("\"relation\":null") == std::string::npos) kept += line + "\n";
  }
  write(tmp.file("no_base.jsonl"), kept);
  CHECK(cli({"evaluate", "--records", tmp.file("no_base.jsonl")}).code == 1);
}

TEST_CASE("train-lm writes a loadable model") {
  TempDir tmp;
  REQUIRE(cli({"train-lm", "--order", "3", "--out", tmp.file("lm.txt")}).code == 0);
  auto r = cli({"generate", "--prompt", "He came to my house,", "--relation", "Contrast_NN", "--lm-model",
                tmp.file("lm.txt")});
  CHECK(r.code == 0);
  CHECK_FALSE(r.out.empty());
  // same model trained in memory
  CHECK(cli({"generate", "--prompt", "He came to my house,", "--relation", "Contrast_NN", "--order", "3"}).out == r.out);
}
