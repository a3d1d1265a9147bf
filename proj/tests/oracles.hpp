#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "rstctg/config.hpp"
#include "rstctg/discourse.hpp"
#include "rstctg/lm.hpp"

// Independent reference implementations shared by the unit and acceptance
// tests. None of them call into the decoder.
namespace testing {

using rstctg::TokenId;
using rstctg::Token;

// Exhaustive nucleus oracle: among all subsets that respect dominance (no
// member less likely than a non-member), take the smallest one reaching p,
// or of size k if that is smaller; prefer lower ids among equal candidates.
inline std::vector<TokenId> nucleus_oracle(const std::vector<double>& dist, double p, std::size_t k) {
  const std::size_t n = dist.size();
  std::size_t best_size = n + 1;
  std::vector<TokenId> best;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    std::vector<TokenId> members;
    double mass = 0.0;
    double min_in = 2.0, max_out = -1.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (1u << i)) {
        members.push_back(static_cast<TokenId>(i));
        mass += dist[i];
        min_in = std::min(min_in, dist[i]);
      } else {
        max_out = std::max(max_out, dist[i]);
      }
    }
    if (min_in < max_out) continue;
    const bool ok = members.size() <= k && (mass >= p || members.size() == k);
    if (!ok) continue;
    if (members.size() < best_size || (members.size() == best_size && members < best)) {
      best_size = members.size();
      best = members;
    }
  }
  return best;
}

inline std::vector<double> random_distribution(std::mt19937& rng, std::size_t n) {
  std::vector<double> w(n);
  const bool quantized = rng() % 3 == 0;  // forces ties
  for (auto& v : w) {
    v = quantized ? static_cast<double>(rng() % 4) : std::uniform_real_distribution<double>(0.0, 1.0)(rng);
  }
  if (std::accumulate(w.begin(), w.end(), 0.0) == 0.0) w[0] = 1.0;
  const double total = std::accumulate(w.begin(), w.end(), 0.0);
  for (auto& v : w) v /= total;
  return w;
}

// Reference decoder: pure greedy on the LM argmax (lowest id on ties) with
// the same stopping rules, written without nucleus() or fuse_select().
inline std::vector<TokenId> greedy_reference(const rstctg::LanguageModel& lm, const rstctg::DiscourseParser& parser, const std::string& prompt,
                                      const rstctg::GenerationConfig& cfg) {
  const auto x = lm.codec().tokenize(prompt);
  const auto xp = parser.codec().tokenize(lm.codec().detokenize(x));
  const std::size_t prompt_edus = parser.segment(xp).size();
  std::vector<Token> y;
  auto all = xp;
  std::vector<TokenId> out;
  for (std::size_t t = 0; t < cfg.max_new_tokens; ++t) {
    const auto d = lm.next_distribution(x, y);
    TokenId best = 0;
    for (std::size_t i = 1; i < d.size(); ++i) {
      if (d[i] > d[static_cast<std::size_t>(best)]) best = static_cast<TokenId>(i);
    }
    const Token tok = lm.codec().vocabulary().token(best);
    y.push_back(tok);
    out.push_back(best);
    if (best == lm.codec().vocabulary().eos_id()) break;
    const auto piece = parser.codec().tokenize(lm.codec().detokenize(std::vector<Token>{tok}));
    all.insert(all.end(), piece.begin(), piece.end());
    if (all.size() > xp.size() && parser.segment(all).size() > prompt_edus + 1) break;
    if (cfg.stop_on_period && !tok.surface.empty() && tok.surface.back() == '.') break;
  }
  return out;
}

}  // namespace testing
