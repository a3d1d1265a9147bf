#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rstctg/config.hpp"
#include "rstctg/discourse.hpp"
#include "rstctg/lm.hpp"
#include "rstctg/taxonomy.hpp"

namespace rstctg {

struct NucleusMember {
  TokenId id = 0;
  double probability = 0.0;

  friend bool operator==(const NucleusMember&, const NucleusMember&) = default;
};

/// Top-p vocabulary capped at k members, ordered by descending probability
/// then ascending token id.
struct NucleusSet {
  std::vector<NucleusMember> members;

  std::size_t size() const { return members.size(); }
  double mass() const;
};

/// Smallest highest-probability prefix whose mass reaches `p`, truncated to
/// at most `k` members. Equal probabilities are ranked by ascending id.
NucleusSet nucleus(std::span<const double> dist, double p, std::size_t k);

/// Detokenizes with `source` and tokenizes the text with `target`. One source
/// token may become several target tokens, or none.
TokenSeq retokenize(std::span<const Token> tokens, const Codec& source, const Codec& target);

/// exp(l_i / tau) / sum_j exp(l_j / tau), evaluated after subtracting the
/// largest logit. Entries of -inf get probability 0; if every entry is -inf
/// the result is uniform.
std::vector<double> temperature_softmax(std::span<const double> logits, double tau);

/// Parser score of each candidate continuation for relation `r`: the
/// temperature softmax, across candidates, of the logit of r between the
/// prompt and `generated` followed by the candidate. Empty candidates get a
/// logit of -inf.
std::vector<double> parser_scores(const DiscourseParser& parser, std::span<const Token> prompt,
                                  std::span<const Token> generated, std::span<const TokenSeq> candidates,
                                  const Relation& r, double tau);

/// Position in `nucleus.members` maximising
///   (1 - alpha) * ln P(y) + alpha * ln score(y),
/// ties going to the smaller token id. Terms with a zero weight are skipped,
/// so alpha = 0 ignores the scores and alpha = 1 ignores the probabilities.
std::size_t fuse_select(const NucleusSet& nucleus, std::span<const double> scores, double alpha);

/// True once segmenting prompt + generated yields more than prompt_edus + 1
/// EDUs.
bool should_stop(const DiscourseParser& parser, std::span<const Token> prompt, std::span<const Token> generated,
                 std::size_t prompt_edus);

/// Range of `generated` kept after stopping: segment prompt + generated, take
/// the shortest EDU prefix e_1..e_N that strictly extends the prompt, drop
/// the prompt. Throws NoProperPrefix when no such N exists.
Span trim_span(const DiscourseParser& parser, std::span<const Token> prompt, std::span<const Token> generated);

/// trim_span, detokenized by the parser codec.
std::string trim_output(const DiscourseParser& parser, std::span<const Token> prompt, std::span<const Token> generated);

enum class StopReason { EduComplete, MaxTokens, Period, EndOfSequence };

std::string_view to_string(StopReason reason);
std::optional<StopReason> parse_stop_reason(std::string_view text);

struct StepRecord {
  std::size_t step = 0;
  std::size_t nucleus_size = 0;
  double parser_score_max = 0.0;
  double parser_score_min = 0.0;
  Token chosen_token;
  double chosen_lm_prob = 0.0;
  double chosen_parser_score = 0.0;

  friend bool operator==(const StepRecord&, const StepRecord&) = default;
};

struct GenerationResult {
  std::string prompt;
  std::optional<std::string> relation;  // nullopt for uncontrolled generation
  GenerationConfig config;
  std::string completion_text;
  TokenSeq completion_tokens;  // every generated LM token, before trimming
  std::vector<StepRecord> steps;
  StopReason stop_reason = StopReason::MaxTokens;
  std::optional<std::string> error;  // set by batch runs when a row failed

  friend bool operator==(const GenerationResult&, const GenerationResult&) = default;
};

/// Parser-guided greedy decoding of one continuation.
///
/// Each step takes the nucleus of the LM distribution, scores every member
/// with the parser, and appends the fused argmax. Generation ends when the
/// segmentation of prompt + continuation exceeds the prompt's EDU count by
/// more than one (the continuation is then trimmed to one EDU), or is
/// forced to end after `max_new_tokens` tokens, a token ending in '.'
/// (if `stop_on_period`), or the LM's end-of-sequence token. Forced stops
/// return the untrimmed text.
///
/// With `relation` unset the parser is only used for stopping and every
/// candidate gets the same score.
GenerationResult generate(const LanguageModel& lm, const DiscourseParser& parser, std::string_view prompt,
                          const std::optional<Relation>& relation, const GenerationConfig& config);

}  // namespace rstctg
