#include "rstctg/batch.hpp"

#include <atomic>
#include <fstream>
#include <thread>

#include "rstctg/error.hpp"
#include "text_util.hpp"

namespace rstctg {

std::string normalize_prompt(std::string_view prompt) {
  std::string_view s = detail::trim(prompt);
  while (!s.empty() && std::string_view(".,;:!?").find(s.back()) != std::string_view::npos) {
    s.remove_suffix(1);
    s = detail::trim(s);
  }
  return std::string(s) + ",";
}

std::vector<std::string> read_prompts(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoFailure, "cannot open prompts " + path.string());
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    auto t = detail::trim(line);
    if (!t.empty()) out.emplace_back(t);
  }
  return out;
}

std::vector<GenerationResult> batch_generate(const LanguageModel& lm, const DiscourseParser& parser,
                                             const std::vector<std::string>& prompts,
                                             const std::vector<Relation>& relations, const GenerationConfig& config,
                                             unsigned workers) {
  config.validate();
  struct Job {
    const std::string* prompt;
    std::optional<Relation> relation;
  };
  std::vector<Job> jobs;
  for (const auto& prompt : prompts) {
    for (const auto& r : relations) jobs.push_back(Job{&prompt, r});
    jobs.push_back(Job{&prompt, std::nullopt});
  }

  std::vector<GenerationResult> results(jobs.size());
  auto run = [&](std::size_t i) {
    const Job& job = jobs[i];
    GenerationConfig cfg = config;
    if (!job.relation) cfg.alpha = 0.0;
    try {
      results[i] = generate(lm, parser, *job.prompt, job.relation, cfg);
    } catch (const Error& e) {
      GenerationResult failed;
      failed.prompt = *job.prompt;
      if (job.relation) failed.relation = job.relation->name();
      failed.config = cfg;
      failed.error = e.what();
      results[i] = std::move(failed);
    }
  };

  workers = std::max(1u, workers);
  if (workers == 1 || jobs.size() < 2) {
    for (std::size_t i = 0; i < jobs.size(); ++i) run(i);
    return results;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  for (unsigned w = 0; w < std::min<std::size_t>(workers, jobs.size()); ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < jobs.size(); i = next++) run(i);
    });
  }
  pool.clear();
  return results;
}

}  // namespace rstctg
