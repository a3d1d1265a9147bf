#include "rstctg/vocabulary.hpp"

#include <cctype>

#include "rstctg/error.hpp"

namespace rstctg {

Vocabulary::Vocabulary(std::vector<std::string> entries, std::string_view unknown,
                       std::optional<std::string_view> end_of_sequence)
    : entries_(std::move(entries)) {
  index_.reserve(entries_.size());
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (!index_.emplace(entries_[i], static_cast<TokenId>(i)).second) {
      throw Error(ErrorCode::InvalidModel, "duplicate vocabulary entry '" + entries_[i] + "'");
    }
  }
  auto it = index_.find(std::string(unknown));
  if (it == index_.end()) throw Error(ErrorCode::InvalidModel, "unknown marker missing from vocabulary");
  unknown_id_ = it->second;
  if (end_of_sequence) {
    auto eos = index_.find(std::string(*end_of_sequence));
    if (eos == index_.end()) throw Error(ErrorCode::InvalidModel, "end-of-sequence marker missing from vocabulary");
    eos_id_ = eos->second;
  }
}

TokenId Vocabulary::lookup(std::string_view surface) const {
  auto it = index_.find(std::string(surface));
  return it == index_.end() ? unknown_id_ : it->second;
}

bool Vocabulary::contains(std::string_view surface) const { return index_.count(std::string(surface)) > 0; }

namespace {

// Length in bytes of a Unicode whitespace sequence starting at `s[i]`, or 0.
std::size_t whitespace_at(std::string_view s, std::size_t i) {
  const auto c = static_cast<unsigned char>(s[i]);
  if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v') return 1;
  auto byte = [&](std::size_t k) { return i + k < s.size() ? static_cast<unsigned char>(s[i + k]) : 0u; };
  if (c == 0xC2 && (byte(1) == 0x85 || byte(1) == 0xA0)) return 2;  // NEL, NBSP
  if (c == 0xE1 && byte(1) == 0x9A && byte(2) == 0x80) return 3;    // U+1680
  if (c == 0xE2 && byte(1) == 0x80) {
    const auto b = byte(2);
    if ((b >= 0x80 && b <= 0x8A) || b == 0xA8 || b == 0xA9 || b == 0xAF) return 3;
  }
  if (c == 0xE2 && byte(1) == 0x81 && byte(2) == 0x9F) return 3;  // U+205F
  if (c == 0xE3 && byte(1) == 0x80 && byte(2) == 0x80) return 3;  // U+3000
  return 0;
}

bool is_split_punct(char c) {
  const auto u = static_cast<unsigned char>(c);
  return u < 0x80 && std::ispunct(u) && c != '\'' && c != '-';
}

bool is_closing(std::string_view w) {
  if (w.empty()) return false;
  for (char c : w) {
    if (std::string_view(".,;:!?)]}%").find(c) == std::string_view::npos) return false;
  }
  return true;
}

bool is_opening(std::string_view w) { return w == "(" || w == "[" || w == "{"; }

}  // namespace

std::vector<std::string> split_words(std::string_view text, bool lowercase) {
  std::vector<std::string> out;
  std::string current;
  auto flush = [&] {
    if (!current.empty()) out.push_back(std::move(current));
    current.clear();
  };
  std::size_t i = 0;
  while (i < text.size()) {
    if (auto ws = whitespace_at(text, i); ws > 0) {
      flush();
      i += ws;
      continue;
    }
    const char c = text[i];
    if (is_split_punct(c)) {
      flush();
      out.emplace_back(1, c);
    } else {
      const auto u = static_cast<unsigned char>(c);
      current.push_back(lowercase && u < 0x80 ? static_cast<char>(std::tolower(u)) : c);
    }
    ++i;
  }
  flush();
  return out;
}

std::string join_words(std::span<const std::string> words) {
  std::string out;
  bool after_opening = false;
  for (const auto& w : words) {
    if (w.empty()) continue;
    if (!out.empty() && !is_closing(w) && !after_opening) out.push_back(' ');
    out += w;
    after_opening = is_opening(w);
  }
  return out;
}

TokenSeq Codec::tokenize(std::string_view text) const {
  TokenSeq out;
  for (auto& w : split_words(text, lowercase_)) {
    out.push_back(Token{vocab_.lookup(w), std::move(w)});
  }
  return out;
}

std::string Codec::detokenize(std::span<const Token> tokens) const {
  std::vector<std::string> words;
  words.reserve(tokens.size());
  for (const auto& t : tokens) {
    if (vocab_.is_special(t.id) && (t.surface.empty() || t.surface == vocab_.surface(t.id))) continue;
    words.push_back(t.surface);
  }
  return join_words(words);
}

}  // namespace rstctg
