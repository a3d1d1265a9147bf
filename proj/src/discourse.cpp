#include "rstctg/discourse.hpp"

#include "rstctg/error.hpp"

namespace rstctg {

bool Segmentation::covers(std::size_t length) const {
  std::size_t pos = 0;
  for (const auto& s : spans) {
    if (s.begin != pos || s.end <= s.begin) return false;
    pos = s.end;
  }
  return pos == length && !spans.empty();
}

Segmentation Segmentation::from_starts(std::span<const std::size_t> starts, std::size_t length) {
  Segmentation seg;
  std::size_t begin = 0;
  for (auto s : starts) {
    if (s == 0 || s <= begin || s >= length) continue;
    seg.spans.push_back(Span{begin, s});
    begin = s;
  }
  if (length > 0) seg.spans.push_back(Span{begin, length});
  return seg;
}

std::vector<double> DiscourseParser::relation_logits(std::span<const Token> left, std::span<const Token> right) const {
  if (left.empty() || right.empty()) throw Error(ErrorCode::EmptySegment, "relation attribution needs two non-empty segments");
  return compute_relation_logits(left, right);
}

Segmentation DiscourseParser::segment(std::span<const Token> tokens) const {
  if (tokens.empty()) throw Error(ErrorCode::EmptyInput, "cannot segment an empty sequence");
  return compute_segmentation(tokens);
}

std::size_t count_edus(const DiscourseParser& parser, std::span<const Token> tokens) {
  return parser.segment(tokens).size();
}

}  // namespace rstctg
