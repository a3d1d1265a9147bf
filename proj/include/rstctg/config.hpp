#pragma once

#include <cstddef>
#include <cstdint>

namespace rstctg {

/// Decoding parameters. The defaults are the published experimental settings.
struct GenerationConfig {
  double p = 0.75;
  std::size_t k = 100;
  double tau = 0.1;
  double alpha = 0.7;
  std::size_t max_new_tokens = 30;
  bool stop_on_period = true;
  std::int64_t seed = 0;  // reserved, decoding is deterministic

  /// Throws Error with InvalidP / InvalidK / InvalidTau / InvalidAlpha /
  /// InvalidMaxTokens for the first out-of-range field.
  void validate() const;

  friend bool operator==(const GenerationConfig&, const GenerationConfig&) = default;
};

}  // namespace rstctg
