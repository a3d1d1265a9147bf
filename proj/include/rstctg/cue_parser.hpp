#pragma once

#include <filesystem>
#include <istream>
#include <set>
#include <string>
#include <vector>

#include "rstctg/discourse.hpp"
#include "rstctg/taxonomy.hpp"

namespace rstctg {

struct CueEntry {
  std::vector<std::string> phrase;  // parser-vocabulary surfaces
  std::size_t relation = 0;         // taxonomy index
  double weight = 0.0;
};

/// Cue phrases with relation weights, plus the token sets that drive
/// segmentation.
///
/// File format (UTF-8, tab separated):
///   # comment
///   @boundary <tab> tok <tab> tok ...     tokens that open a new EDU
///   @terminator <tab> tok <tab> tok ...   tokens that close an EDU
///   cue phrase <tab> Relation_NS <tab> weight
struct CueLexicon {
  std::vector<CueEntry> entries;
  std::set<std::string> boundary_cues;
  std::set<std::string> terminators;

  static CueLexicon parse(std::istream& in, const Taxonomy& taxonomy);
  static CueLexicon load(const std::filesystem::path& path, const Taxonomy& taxonomy);
};

/// Deterministic rule-based stand-in for a neural RST parser.
///
/// Relation logits are additive over cue matches in the right segment. A
/// match inside the leading run of cues (every token before it is itself
/// part of a cue match) contributes its full weight, any later match half
/// of it. The left segment does not influence the logits.
///
/// Segmentation puts an EDU boundary after every terminator and before every
/// boundary cue.
class CueParser final : public DiscourseParser {
 public:
  /// `vocab` is the parser vocabulary V'; tokenization lowercases.
  CueParser(const Taxonomy& taxonomy, CueLexicon lexicon, Vocabulary vocab);

  const Codec& codec() const override { return codec_; }
  std::size_t relation_count() const override { return relation_count_; }
  const CueLexicon& lexicon() const { return lexicon_; }

 protected:
  std::vector<double> compute_relation_logits(std::span<const Token> left, std::span<const Token> right) const override;
  Segmentation compute_segmentation(std::span<const Token> tokens) const override;

 private:
  bool matches_at(const CueEntry& e, std::span<const Token> tokens, std::size_t pos) const;

  std::size_t relation_count_;
  CueLexicon lexicon_;
  Codec codec_;
};

/// Lowercased word vocabulary over the corpus, the lexicon's cue and
/// boundary tokens, plus `<unk>`.
Vocabulary build_parser_vocabulary(std::istream& corpus, const CueLexicon& lexicon);

}  // namespace rstctg
