#pragma once

#include <span>
#include <vector>

#include "rstctg/vocabulary.hpp"

namespace rstctg {

/// Probability vector over a language model's vocabulary for one step.
using TokenDistribution = std::vector<double>;

/// Next-token distributions conditioned on a prompt and the tokens generated
/// so far. Implementations must be safe for concurrent const calls.
class LanguageModel {
 public:
  virtual ~LanguageModel() = default;

  virtual const Codec& codec() const = 0;

  /// Returns |V| non-negative entries summing to 1 within 1e-9.
  virtual TokenDistribution next_distribution(std::span<const Token> prompt,
                                              std::span<const Token> generated) const = 0;
};

/// Sum over t of ln P(continuation[t] | prompt, continuation[<t]).
/// Throws EmptyContinuation when `continuation` is empty.
double sequence_logprob(const LanguageModel& lm, std::span<const Token> prompt, std::span<const Token> continuation);

}  // namespace rstctg
