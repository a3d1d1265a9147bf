#include "rstctg/cue_parser.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "rstctg/error.hpp"
#include "text_util.hpp"

namespace rstctg {

CueLexicon CueLexicon::parse(std::istream& in, const Taxonomy& taxonomy) {
  CueLexicon lex;
  std::string line;
  std::size_t lineno = 0;
  auto fail = [&](const std::string& what) {
    return Error(ErrorCode::InvalidLexicon, "line " + std::to_string(lineno) + ": " + what);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (detail::trim(line).empty() || line.front() == '#') continue;
    auto cols = detail::split(line, '\t');
    if (cols[0] == "@boundary" || cols[0] == "@terminator") {
      auto& target = cols[0] == "@boundary" ? lex.boundary_cues : lex.terminators;
      for (std::size_t i = 1; i < cols.size(); ++i) {
        for (auto& w : split_words(cols[i], true)) target.insert(std::move(w));
      }
      continue;
    }
    if (cols.size() != 3) throw fail("expected 3 tab-separated columns");
    CueEntry entry;
    entry.phrase = split_words(cols[0], true);
    if (entry.phrase.empty()) throw fail("empty cue phrase");
    try {
      entry.relation = taxonomy.parse_relation_name(detail::trim(cols[1])).index;
    } catch (const Error& e) {
      throw fail(e.what());
    }
    std::istringstream ws{std::string(detail::trim(cols[2]))};
    ws.imbue(std::locale::classic());
    if (!(ws >> entry.weight) || !std::isfinite(entry.weight)) throw fail("weight must be a finite number");
    lex.entries.push_back(std::move(entry));
  }
  return lex;
}

CueLexicon CueLexicon::load(const std::filesystem::path& path, const Taxonomy& taxonomy) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoFailure, "cannot open lexicon " + path.string());
  return parse(in, taxonomy);
}

CueParser::CueParser(const Taxonomy& taxonomy, CueLexicon lexicon, Vocabulary vocab)
    : relation_count_(taxonomy.size()), lexicon_(std::move(lexicon)), codec_(std::move(vocab), true) {}

bool CueParser::matches_at(const CueEntry& e, std::span<const Token> tokens, std::size_t pos) const {
  if (pos + e.phrase.size() > tokens.size()) return false;
  for (std::size_t i = 0; i < e.phrase.size(); ++i) {
    if (tokens[pos + i].surface != e.phrase[i]) return false;
  }
  return true;
}

std::vector<double> CueParser::compute_relation_logits(std::span<const Token>, std::span<const Token> right) const {
  std::vector<double> logits(relation_count_, 0.0);

  // the leading run: consecutive cue matches starting at position 0
  std::vector<bool> leading(right.size(), false);
  std::size_t pos = 0;
  while (pos < right.size()) {
    std::size_t longest = 0;
    for (const auto& e : lexicon_.entries) {
      if (matches_at(e, right, pos)) longest = std::max(longest, e.phrase.size());
    }
    if (longest == 0) break;
    leading[pos] = true;
    pos += longest;
  }

  for (std::size_t i = 0; i < right.size(); ++i) {
    for (const auto& e : lexicon_.entries) {
      if (matches_at(e, right, i)) logits[e.relation] += leading[i] ? e.weight : 0.5 * e.weight;
    }
  }
  return logits;
}

Segmentation CueParser::compute_segmentation(std::span<const Token> tokens) const {
  std::vector<std::size_t> starts;
  for (std::size_t i = 1; i < tokens.size(); ++i) {
    if (lexicon_.terminators.count(tokens[i - 1].surface) || lexicon_.boundary_cues.count(tokens[i].surface)) {
      starts.push_back(i);
    }
  }
  return Segmentation::from_starts(starts, tokens.size());
}

Vocabulary build_parser_vocabulary(std::istream& corpus, const CueLexicon& lexicon) {
  std::set<std::string> words;
  std::string line;
  while (std::getline(corpus, line)) {
    for (auto& w : split_words(line, true)) words.insert(std::move(w));
  }
  for (const auto& e : lexicon.entries) words.insert(e.phrase.begin(), e.phrase.end());
  words.insert(lexicon.boundary_cues.begin(), lexicon.boundary_cues.end());
  words.insert(lexicon.terminators.begin(), lexicon.terminators.end());
  words.erase("<unk>");
  std::vector<std::string> entries(words.begin(), words.end());
  entries.emplace_back("<unk>");
  return Vocabulary(std::move(entries), "<unk>");
}

}  // namespace rstctg
