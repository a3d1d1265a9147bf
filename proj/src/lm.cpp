#include "rstctg/lm.hpp"

#include <cmath>

#include "rstctg/error.hpp"

namespace rstctg {

double sequence_logprob(const LanguageModel& lm, std::span<const Token> prompt, std::span<const Token> continuation) {
  if (continuation.empty()) throw Error(ErrorCode::EmptyContinuation, "cannot score an empty continuation");
  double total = 0.0;
  for (std::size_t t = 0; t < continuation.size(); ++t) {
    const auto dist = lm.next_distribution(prompt, continuation.first(t));
    total += std::log(dist.at(static_cast<std::size_t>(continuation[t].id)));
  }
  return total;
}

}  // namespace rstctg
