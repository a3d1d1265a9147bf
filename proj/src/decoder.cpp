#include "rstctg/decoder.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "rstctg/error.hpp"
#include "text_util.hpp"

namespace rstctg {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

TokenSeq concat(std::span<const Token> a, std::span<const Token> b) {
  TokenSeq out;
  out.reserve(a.size() + b.size());
  out.insert(out.end(), a.begin(), a.end());
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

}  // namespace

double NucleusSet::mass() const {
  double s = 0.0;
  for (const auto& m : members) s += m.probability;
  return s;
}

NucleusSet nucleus(std::span<const double> dist, double p, std::size_t k) {
  std::vector<TokenId> order(dist.size());
  std::iota(order.begin(), order.end(), 0);
  const std::size_t cap = std::min(k, dist.size());
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(cap), order.end(), [&](TokenId a, TokenId b) {
    const double pa = dist[static_cast<std::size_t>(a)];
    const double pb = dist[static_cast<std::size_t>(b)];
    return pa != pb ? pa > pb : a < b;
  });

  NucleusSet out;
  double mass = 0.0;
  for (std::size_t i = 0; i < cap; ++i) {
    const TokenId id = order[i];
    out.members.push_back(NucleusMember{id, dist[static_cast<std::size_t>(id)]});
    mass += dist[static_cast<std::size_t>(id)];
    if (mass >= p) break;
  }
  return out;
}

TokenSeq retokenize(std::span<const Token> tokens, const Codec& source, const Codec& target) {
  return target.tokenize(source.detokenize(tokens));
}

std::vector<double> temperature_softmax(std::span<const double> logits, double tau) {
  std::vector<double> out(logits.size(), 0.0);
  if (logits.empty()) return out;
  const double top = *std::max_element(logits.begin(), logits.end());
  if (top == kNegInf) {
    std::fill(out.begin(), out.end(), 1.0 / static_cast<double>(logits.size()));
    return out;
  }
  double total = 0.0;
  for (std::size_t i = 0; i < logits.size(); ++i) {
    out[i] = logits[i] == kNegInf ? 0.0 : std::exp((logits[i] - top) / tau);
    total += out[i];
  }
  for (auto& v : out) v /= total;
  return out;
}

std::vector<double> parser_scores(const DiscourseParser& parser, std::span<const Token> prompt,
                                  std::span<const Token> generated, std::span<const TokenSeq> candidates,
                                  const Relation& r, double tau) {
  std::vector<double> logits;
  logits.reserve(candidates.size());
  for (const auto& cand : candidates) {
    if (cand.empty()) {
      logits.push_back(kNegInf);
      continue;
    }
    const auto right = concat(generated, cand);
    logits.push_back(parser.relation_logits(prompt, right).at(r.index));
  }
  return temperature_softmax(logits, tau);
}

std::size_t fuse_select(const NucleusSet& nucleus, std::span<const double> scores, double alpha) {
  std::size_t best = 0;
  double best_value = kNegInf;
  bool have = false;
  for (std::size_t i = 0; i < nucleus.members.size(); ++i) {
    const auto& m = nucleus.members[i];
    double value = 0.0;
    if (alpha < 1.0) value += (1.0 - alpha) * std::log(m.probability);
    if (alpha > 0.0) value += alpha * std::log(scores[i]);
    if (!have || value > best_value || (value == best_value && m.id < nucleus.members[best].id)) {
      best = i;
      best_value = value;
      have = true;
    }
  }
  return best;
}

bool should_stop(const DiscourseParser& parser, std::span<const Token> prompt, std::span<const Token> generated,
                 std::size_t prompt_edus) {
  return count_edus(parser, concat(prompt, generated)) > prompt_edus + 1;
}

Span trim_span(const DiscourseParser& parser, std::span<const Token> prompt, std::span<const Token> generated) {
  if (generated.empty()) throw Error(ErrorCode::NoProperPrefix, "nothing was generated");
  const auto seg = parser.segment(concat(prompt, generated));
  for (const auto& s : seg.spans) {
    if (s.end > prompt.size()) return Span{0, s.end - prompt.size()};
  }
  throw Error(ErrorCode::NoProperPrefix, "no EDU prefix strictly extends the prompt");
}

std::string trim_output(const DiscourseParser& parser, std::span<const Token> prompt, std::span<const Token> generated) {
  const Span kept = trim_span(parser, prompt, generated);
  return parser.codec().detokenize(generated.subspan(kept.begin, kept.size()));
}

std::string_view to_string(StopReason reason) {
  switch (reason) {
    case StopReason::EduComplete: return "EduComplete";
    case StopReason::MaxTokens: return "MaxTokens";
    case StopReason::Period: return "Period";
    case StopReason::EndOfSequence: return "EndOfSequence";
  }
  return "MaxTokens";
}

std::optional<StopReason> parse_stop_reason(std::string_view text) {
  for (auto r : {StopReason::EduComplete, StopReason::MaxTokens, StopReason::Period, StopReason::EndOfSequence}) {
    if (to_string(r) == text) return r;
  }
  return std::nullopt;
}

GenerationResult generate(const LanguageModel& lm, const DiscourseParser& parser, std::string_view prompt,
                          const std::optional<Relation>& relation, const GenerationConfig& config) {
  config.validate();
  const Codec& lm_codec = lm.codec();
  const Codec& parser_codec = parser.codec();

  const TokenSeq x = lm_codec.tokenize(prompt);
  if (x.empty()) throw Error(ErrorCode::EmptyPrompt, "prompt has no tokens");
  const TokenSeq x_parser = retokenize(x, lm_codec, parser_codec);
  if (x_parser.empty()) throw Error(ErrorCode::EmptyPrompt, "prompt has no parser tokens");
  const std::size_t prompt_edus = count_edus(parser, x_parser);

  GenerationResult result;
  result.prompt = std::string(prompt);
  if (relation) result.relation = relation->name();
  result.config = config;

  TokenSeq& y = result.completion_tokens;
  TokenSeq y_parser;
  // y_parser size after each generated token, for mapping a trim back to y
  std::vector<std::size_t> parser_offsets{0};
  const auto eos = lm_codec.vocabulary().eos_id();

  for (std::size_t t = 0; t < config.max_new_tokens; ++t) {
    const TokenDistribution dist = lm.next_distribution(x, y);
    const NucleusSet nuc = nucleus(dist, config.p, config.k);

    std::vector<TokenSeq> candidates;
    candidates.reserve(nuc.size());
    for (const auto& m : nuc.members) {
      const Token tok = lm_codec.vocabulary().token(m.id);
      candidates.push_back(retokenize(std::span<const Token>(&tok, 1), lm_codec, parser_codec));
    }

    std::vector<double> scores;
    if (relation) {
      scores = parser_scores(parser, x_parser, y_parser, candidates, *relation, config.tau);
    } else {
      scores.assign(nuc.size(), 1.0 / static_cast<double>(nuc.size()));
    }
    const std::size_t pick = fuse_select(nuc, scores, config.alpha);

    StepRecord rec;
    rec.step = t;
    rec.nucleus_size = nuc.size();
    rec.parser_score_max = *std::max_element(scores.begin(), scores.end());
    rec.parser_score_min = *std::min_element(scores.begin(), scores.end());
    rec.chosen_token = lm_codec.vocabulary().token(nuc.members[pick].id);
    rec.chosen_lm_prob = nuc.members[pick].probability;
    rec.chosen_parser_score = scores[pick];
    result.steps.push_back(rec);

    y.push_back(rec.chosen_token);
    y_parser.insert(y_parser.end(), candidates[pick].begin(), candidates[pick].end());
    parser_offsets.push_back(y_parser.size());

    if (eos && rec.chosen_token.id == *eos) {
      result.stop_reason = StopReason::EndOfSequence;
      result.completion_text = lm_codec.detokenize(y);
      return result;
    }
    if (!y_parser.empty() && should_stop(parser, x_parser, y_parser, prompt_edus)) {
      const Span kept = trim_span(parser, x_parser, y_parser);
      result.stop_reason = StopReason::EduComplete;
      auto it = std::find(parser_offsets.begin(), parser_offsets.end(), kept.end);
      if (it != parser_offsets.end()) {
        const auto n = static_cast<std::size_t>(it - parser_offsets.begin());
        result.completion_text = lm_codec.detokenize(std::span<const Token>(y).first(n));
      } else {
        result.completion_text = parser_codec.detokenize(std::span<const Token>(y_parser).first(kept.end));
      }
      return result;
    }
    if (config.stop_on_period && detail::ends_with(rec.chosen_token.surface, ".")) {
      result.stop_reason = StopReason::Period;
      result.completion_text = lm_codec.detokenize(y);
      return result;
    }
  }
  result.stop_reason = StopReason::MaxTokens;
  result.completion_text = lm_codec.detokenize(y);
  return result;
}

}  // namespace rstctg
