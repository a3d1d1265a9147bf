#include "rstctg/eval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <set>

#include "rstctg/error.hpp"

namespace rstctg {

bool relation_correct(const DiscourseParser& parser, std::string_view prompt_text, std::string_view completion_text,
                      const Relation& r) {
  const auto left = parser.codec().tokenize(prompt_text);
  const auto right = parser.codec().tokenize(completion_text);
  if (left.empty() || right.empty()) throw Error(ErrorCode::EmptyText, "prompt and completion must be non-empty");
  const auto logits = parser.relation_logits(left, right);
  const auto best = static_cast<std::size_t>(std::max_element(logits.begin(), logits.end()) - logits.begin());
  return best == r.index;
}

double completion_perplexity(const LanguageModel& lm, std::string_view prompt_text, std::string_view completion_text) {
  const auto prompt = lm.codec().tokenize(prompt_text);
  const auto completion = lm.codec().tokenize(completion_text);
  if (completion.empty()) throw Error(ErrorCode::EmptyText, "completion has no tokens");
  const double lp = sequence_logprob(lm, prompt, completion);
  return std::exp(-lp / static_cast<double>(completion.size()));
}

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct Scored {
  bool correct = false;
  bool has_ppl = false;
  double ppl = 0.0;
};

Scored score(const LanguageModel& lm, const DiscourseParser& parser, const GenerationResult& g, const Relation* r) {
  Scored s;
  if (g.error || lm.codec().tokenize(g.completion_text).empty()) return s;
  s.has_ppl = true;
  s.ppl = completion_perplexity(lm, g.prompt, g.completion_text);
  if (r && !parser.codec().tokenize(g.completion_text).empty()) s.correct = relation_correct(parser, g.prompt, g.completion_text, *r);
  return s;
}

RelationRow summarize(std::string name, const std::vector<Scored>& items) {
  RelationRow row;
  row.relation = std::move(name);
  row.n = items.size();
  double ppl_sum = 0.0;
  for (const auto& s : items) {
    row.n_correct += s.correct ? 1 : 0;
    if (s.has_ppl) {
      ppl_sum += s.ppl;
      ++row.n_scored;
    }
  }
  row.correct_percent = row.n ? 100.0 * static_cast<double>(row.n_correct) / static_cast<double>(row.n) : 0.0;
  row.mean_perplexity = row.n_scored ? ppl_sum / static_cast<double>(row.n_scored) : kNaN;
  return row;
}

}  // namespace

EvalReport build_report(const LanguageModel& lm, const DiscourseParser& parser, const Taxonomy& taxonomy,
                        const std::vector<GenerationResult>& generations) {
  // canonical order: (prompt, relation), so sums do not depend on batch order
  std::map<std::string, std::map<std::string, const GenerationResult*>> by_prompt;
  std::set<std::string> relations;
  const std::string kNone;  // key for uncontrolled generations
  for (const auto& g : generations) {
    const std::string key = g.relation.value_or(kNone);
    if (g.relation) relations.insert(*g.relation);
    if (!by_prompt[g.prompt].emplace(key, &g).second) {
      throw Error(ErrorCode::InconsistentBatch, "duplicate generation for prompt '" + g.prompt + "' and relation '" +
                                                    (key.empty() ? "None" : key) + "'");
    }
  }
  if (by_prompt.empty()) throw Error(ErrorCode::InconsistentBatch, "empty batch");
  if (relations.empty()) throw Error(ErrorCode::InconsistentBatch, "batch has no relation-controlled generations");
  for (const auto& [prompt, entries] : by_prompt) {
    if (!entries.count(kNone)) throw Error(ErrorCode::InconsistentBatch, "missing baseline generation for '" + prompt + "'");
    for (const auto& r : relations) {
      if (!entries.count(r)) throw Error(ErrorCode::InconsistentBatch, "missing " + r + " generation for '" + prompt + "'");
    }
  }

  EvalReport report;
  report.n_per_relation = by_prompt.size();
  std::vector<Scored> all;
  for (const auto& name : relations) {
    const Relation& rel = taxonomy.parse_relation_name(name);
    std::vector<Scored> items;
    for (const auto& [prompt, entries] : by_prompt) items.push_back(score(lm, parser, *entries.at(name), &rel));
    all.insert(all.end(), items.begin(), items.end());
    report.rows.push_back(summarize(name, items));
  }
  report.all_relations = summarize("All Relations", all);

  std::vector<Scored> baseline;
  for (const auto& [prompt, entries] : by_prompt) baseline.push_back(score(lm, parser, *entries.at(kNone), nullptr));
  const auto none = summarize("None", baseline);
  report.baseline_mean_perplexity = none.mean_perplexity;
  report.n_baseline = none.n;
  return report;
}

namespace {

std::string fmt(double v, int precision) {
  if (std::isnan(v)) return "-";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", precision, v);
  return buf;
}

}  // namespace

void write_report_csv(std::ostream& out, const EvalReport& report) {
  out << "relation,correct_percent,perplexity,n\n";
  auto row = [&](const RelationRow& r) {
    out << r.relation << ',' << fmt(r.correct_percent, 1) << ',' << fmt(r.mean_perplexity, 1) << ',' << r.n << '\n';
  };
  for (const auto& r : report.rows) row(r);
  row(report.all_relations);
  out << "None,-," << fmt(report.baseline_mean_perplexity, 1) << ',' << report.n_baseline << '\n';
}

void write_report_table(std::ostream& out, const EvalReport& report) {
  std::size_t width = std::string("All Relations").size();
  for (const auto& r : report.rows) width = std::max(width, r.relation.size());
  char buf[256];
  std::snprintf(buf, sizeof buf, "%-*s  %9s  %10s\n", static_cast<int>(width), "Relation", "Correct%", "Perplexity");
  out << buf;
  auto row = [&](const std::string& name, const std::string& correct, double ppl) {
    std::snprintf(buf, sizeof buf, "%-*s  %9s  %10s\n", static_cast<int>(width), name.c_str(), correct.c_str(),
                  fmt(ppl, 1).c_str());
    out << buf;
  };
  for (const auto& r : report.rows) row(r.relation, fmt(r.correct_percent, 1), r.mean_perplexity);
  row("All Relations", fmt(report.all_relations.correct_percent, 1), report.all_relations.mean_perplexity);
  row("None", "-", report.baseline_mean_perplexity);
}

}  // namespace rstctg
