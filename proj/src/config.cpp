#include "rstctg/config.hpp"

#include <cmath>
#include <string>

#include "rstctg/error.hpp"

namespace rstctg {

void GenerationConfig::validate() const {
  if (!(p > 0.0 && p <= 1.0)) throw Error(ErrorCode::InvalidP, "p must lie in (0, 1], got " + std::to_string(p));
  if (k < 1) throw Error(ErrorCode::InvalidK, "k must be at least 1");
  if (!(tau > 0.0) || !std::isfinite(tau)) throw Error(ErrorCode::InvalidTau, "tau must be a positive finite number");
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw Error(ErrorCode::InvalidAlpha, "alpha must lie in [0, 1], got " + std::to_string(alpha));
  }
  if (max_new_tokens < 1) throw Error(ErrorCode::InvalidMaxTokens, "max_new_tokens must be at least 1");
}

}  // namespace rstctg
