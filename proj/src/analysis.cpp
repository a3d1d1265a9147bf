#include "rstctg/analysis.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "rstctg/error.hpp"
#include "text_util.hpp"

namespace rstctg {

PerturbationCurve perturbation_curve(const std::vector<GenerationResult>& results) {
  if (results.empty()) throw Error(ErrorCode::EmptyInput, "no generations to aggregate");
  PerturbationCurve curve;
  curve.n_generations = results.size();
  std::vector<double> sums;
  for (const auto& r : results) {
    if (r.steps.size() > sums.size()) {
      sums.resize(r.steps.size(), 0.0);
      curve.n_observations_per_step.resize(r.steps.size(), 0);
    }
    for (std::size_t t = 0; t < r.steps.size(); ++t) {
      sums[t] += r.steps[t].parser_score_max - r.steps[t].parser_score_min;
      ++curve.n_observations_per_step[t];
    }
  }
  if (sums.empty()) throw Error(ErrorCode::EmptyInput, "generations carry no step records");
  curve.per_step_mean_spread.resize(sums.size());
  for (std::size_t t = 0; t < sums.size(); ++t) {
    curve.per_step_mean_spread[t] = sums[t] / static_cast<double>(curve.n_observations_per_step[t]);
  }
  return curve;
}

void write_curve(std::ostream& out, const PerturbationCurve& curve) {
  out << "step,mean_spread,n_observations\n";
  char buf[64];
  for (std::size_t t = 0; t < curve.per_step_mean_spread.size(); ++t) {
    std::snprintf(buf, sizeof buf, "%.17g", curve.per_step_mean_spread[t]);
    out << t << ',' << buf << ',' << curve.n_observations_per_step[t] << '\n';
  }
}

void export_curve(const PerturbationCurve& curve, const std::filesystem::path& path) {
  if (curve.per_step_mean_spread.empty()) throw Error(ErrorCode::EmptyInput, "refusing to export an empty curve");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoFailure, "cannot write " + path.string());
  write_curve(out, curve);
  if (!out) throw Error(ErrorCode::IoFailure, "failed writing " + path.string());
}

PerturbationCurve read_curve(std::istream& in) {
  PerturbationCurve curve;
  std::string line;
  if (!std::getline(in, line) || detail::trim(line) != "step,mean_spread,n_observations") {
    throw Error(ErrorCode::MalformedRecord, "missing curve header");
  }
  while (std::getline(in, line)) {
    if (detail::trim(line).empty()) continue;
    auto cols = detail::split(detail::trim(line), ',');
    if (cols.size() != 3) throw Error(ErrorCode::MalformedRecord, "bad curve row: " + line);
    std::istringstream ss(cols[1]);
    ss.imbue(std::locale::classic());
    double spread = 0.0;
    if (!(ss >> spread)) throw Error(ErrorCode::MalformedRecord, "bad spread: " + line);
    curve.per_step_mean_spread.push_back(spread);
    curve.n_observations_per_step.push_back(std::stoul(cols[2]));
  }
  if (!curve.n_observations_per_step.empty()) curve.n_generations = curve.n_observations_per_step.front();
  return curve;
}

}  // namespace rstctg
