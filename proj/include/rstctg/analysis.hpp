#pragma once

#include <cstddef>
#include <filesystem>
#include <istream>
#include <ostream>
#include <vector>

#include "rstctg/decoder.hpp"

namespace rstctg {

/// Mean spread (max minus min parser score over the nucleus) per decoding
/// step, across a batch of generations.
struct PerturbationCurve {
  std::vector<double> per_step_mean_spread;
  std::size_t n_generations = 0;
  std::vector<std::size_t> n_observations_per_step;

  friend bool operator==(const PerturbationCurve&, const PerturbationCurve&) = default;
};

/// Throws EmptyInput when `results` is empty or has no steps at all.
PerturbationCurve perturbation_curve(const std::vector<GenerationResult>& results);

/// CSV with header "step,mean_spread,n_observations".
void write_curve(std::ostream& out, const PerturbationCurve& curve);
void export_curve(const PerturbationCurve& curve, const std::filesystem::path& path);
PerturbationCurve read_curve(std::istream& in);

}  // namespace rstctg
