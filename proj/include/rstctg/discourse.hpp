#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "rstctg/vocabulary.hpp"

namespace rstctg {

struct Span {
  std::size_t begin = 0;
  std::size_t end = 0;  // exclusive

  std::size_t size() const { return end - begin; }
  friend bool operator==(const Span&, const Span&) = default;
};

/// EDU spans over a token sequence: contiguous, non-empty, covering it.
struct Segmentation {
  std::vector<Span> spans;

  std::size_t size() const { return spans.size(); }
  /// True when the spans tile [0, length) exactly.
  bool covers(std::size_t length) const;
  /// Builds the spans from sorted EDU start offsets (0 implied).
  static Segmentation from_starts(std::span<const std::size_t> starts, std::size_t length);
};

/// A discourse parser: relation attribution for a preset two-segment split,
/// and flat EDU segmentation.
class DiscourseParser {
 public:
  virtual ~DiscourseParser() = default;

  virtual const Codec& codec() const = 0;
  virtual std::size_t relation_count() const = 0;

  /// One logit per relation index for the relation holding between `left`
  /// and `right`. Throws EmptySegment when either side is empty.
  std::vector<double> relation_logits(std::span<const Token> left, std::span<const Token> right) const;

  /// Throws EmptyInput for an empty sequence.
  Segmentation segment(std::span<const Token> tokens) const;

 protected:
  virtual std::vector<double> compute_relation_logits(std::span<const Token> left, std::span<const Token> right) const = 0;
  virtual Segmentation compute_segmentation(std::span<const Token> tokens) const = 0;
};

std::size_t count_edus(const DiscourseParser& parser, std::span<const Token> tokens);

}  // namespace rstctg
