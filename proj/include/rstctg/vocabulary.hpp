#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace rstctg {

using TokenId = std::int32_t;

/// A token of some vocabulary. For out-of-vocabulary input the id is the
/// vocabulary's unknown id and `surface` keeps the original text.
struct Token {
  TokenId id = 0;
  std::string surface;

  friend bool operator==(const Token&, const Token&) = default;
};

using TokenSeq = std::vector<Token>;

class Vocabulary {
 public:
  Vocabulary() = default;
  /// Entries must be unique. `unknown` must be one of them; `end_of_sequence`
  /// is optional.
  Vocabulary(std::vector<std::string> entries, std::string_view unknown,
             std::optional<std::string_view> end_of_sequence = std::nullopt);

  std::size_t size() const { return entries_.size(); }
  const std::string& surface(TokenId id) const { return entries_.at(static_cast<std::size_t>(id)); }
  const std::vector<std::string>& entries() const { return entries_; }
  TokenId lookup(std::string_view surface) const;
  bool contains(std::string_view surface) const;
  TokenId unknown_id() const { return unknown_id_; }
  std::optional<TokenId> eos_id() const { return eos_id_; }
  bool is_special(TokenId id) const { return id == unknown_id_ || (eos_id_ && id == *eos_id_); }
  Token token(TokenId id) const { return Token{id, surface(id)}; }

 private:
  std::vector<std::string> entries_;
  std::unordered_map<std::string, TokenId> index_;
  TokenId unknown_id_ = 0;
  std::optional<TokenId> eos_id_;
};

/// Word-level tokenization: split on Unicode whitespace, split ASCII
/// punctuation into separate tokens (apostrophes and hyphens inside a word
/// stay attached), optionally lowercase.
std::vector<std::string> split_words(std::string_view text, bool lowercase);

/// Joins surfaces with single spaces, attaching closing punctuation to the
/// preceding word.
std::string join_words(std::span<const std::string> words);

/// A vocabulary together with the tokenizer that feeds it.
class Codec {
 public:
  Codec() = default;
  Codec(Vocabulary vocab, bool lowercase) : vocab_(std::move(vocab)), lowercase_(lowercase) {}

  const Vocabulary& vocabulary() const { return vocab_; }
  bool lowercase() const { return lowercase_; }

  TokenSeq tokenize(std::string_view text) const;
  /// Special tokens (unknown, end of sequence) without original text render
  /// as nothing.
  std::string detokenize(std::span<const Token> tokens) const;

 private:
  Vocabulary vocab_;
  bool lowercase_ = false;
};

}  // namespace rstctg
