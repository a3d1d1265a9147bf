#pragma once

#include <cstddef>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "rstctg/decoder.hpp"
#include "rstctg/discourse.hpp"
#include "rstctg/lm.hpp"
#include "rstctg/taxonomy.hpp"

namespace rstctg {

/// True when the parser's top relation between prompt and completion (preset
/// two-segment attribution, ties to the lowest index) is `r`.
bool relation_correct(const DiscourseParser& parser, std::string_view prompt_text, std::string_view completion_text,
                      const Relation& r);

/// exp(-sequence_logprob / T) over the T completion tokens, conditioned on
/// the prompt.
double completion_perplexity(const LanguageModel& lm, std::string_view prompt_text, std::string_view completion_text);

struct RelationRow {
  std::string relation;
  std::size_t n = 0;
  std::size_t n_correct = 0;
  double correct_percent = 0.0;
  double mean_perplexity = 0.0;  // NaN when no completion could be scored
  std::size_t n_scored = 0;

  friend bool operator==(const RelationRow&, const RelationRow&) = default;
};

struct EvalReport {
  std::vector<RelationRow> rows;  // sorted by relation name
  RelationRow all_relations;
  double baseline_mean_perplexity = 0.0;
  std::size_t n_baseline = 0;
  std::size_t n_per_relation = 0;
};

/// Per-relation correct% and mean perplexity plus the uncontrolled baseline.
/// Every prompt must carry exactly one generation per relation present in
/// the batch and one with no relation; otherwise InconsistentBatch. Rows
/// with an error or an empty completion count as incorrect and are left
/// out of the perplexity means.
EvalReport build_report(const LanguageModel& lm, const DiscourseParser& parser, const Taxonomy& taxonomy,
                        const std::vector<GenerationResult>& generations);

void write_report_csv(std::ostream& out, const EvalReport& report);
void write_report_table(std::ostream& out, const EvalReport& report);

}  // namespace rstctg
