#pragma once

#include <cstdint>
#include <filesystem>
#include <istream>
#include <map>
#include <ostream>
#include <vector>

#include "rstctg/lm.hpp"

namespace rstctg {

/// Add-delta smoothed word n-gram model.
///
/// The vocabulary is the sorted set of corpus words followed by `<unk>` and
/// `<eos>`. Each corpus line is one sentence; `<eos>` closes a sentence and
/// also pads the left context at sentence starts. With counts c:
///
///   P(w | h) = (c(h, w) + delta) / (c(h) + delta * |V|)
///
/// where h is the previous order-1 tokens.
class NgramModel final : public LanguageModel {
 public:
  static constexpr const char* kUnknown = "<unk>";
  static constexpr const char* kEndOfSequence = "<eos>";

  struct ContextCounts {
    std::uint64_t total = 0;
    std::map<TokenId, std::uint64_t> next;

    friend bool operator==(const ContextCounts&, const ContextCounts&) = default;
  };
  using Context = std::vector<TokenId>;

  /// Throws EmptyCorpus if the corpus has no tokens, InvalidModel for
  /// order < 1 or delta <= 0.
  static NgramModel train(std::istream& corpus, int order, double delta);
  static NgramModel train_file(const std::filesystem::path& path, int order, double delta);

  /// Versioned text persistence; see docs/formats.md.
  void save(std::ostream& out) const;
  void save_file(const std::filesystem::path& path) const;
  static NgramModel load(std::istream& in);
  static NgramModel load_file(const std::filesystem::path& path);

  const Codec& codec() const override { return codec_; }
  TokenDistribution next_distribution(std::span<const Token> prompt, std::span<const Token> generated) const override;

  int order() const { return order_; }
  double delta() const { return delta_; }
  const std::map<Context, ContextCounts>& counts() const { return counts_; }

  /// Context of order-1 ids ending right before position `history.size()`.
  Context context_of(std::span<const TokenId> history) const;
  double probability(const Context& context, TokenId next) const;

  friend bool operator==(const NgramModel& a, const NgramModel& b) {
    return a.order_ == b.order_ && a.delta_ == b.delta_ && a.codec_.vocabulary().entries() == b.codec_.vocabulary().entries() &&
           a.counts_ == b.counts_;
  }

 private:
  NgramModel(int order, double delta, Vocabulary vocab, std::map<Context, ContextCounts> counts);

  int order_ = 1;
  double delta_ = 1.0;
  Codec codec_;
  std::map<Context, ContextCounts> counts_;
};

}  // namespace rstctg
