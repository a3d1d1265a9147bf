#pragma once

#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "rstctg/desk.hpp"
#include "rstctg/error.hpp"
#include "rstctg/lm.hpp"

namespace testing {

inline std::filesystem::path data_dir() { return rstctg::default_data_dir(); }

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::vector<std::string> read_lines(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty()) out.push_back(line);
  }
  return out;
}

/// Desk backends built from the shipped data, shared across tests.
inline const rstctg::DeskBackends& desk() {
  static const rstctg::DeskBackends backends = rstctg::load_desk(rstctg::DeskSetup::defaults());
  return backends;
}

/// Language model whose next distribution is computed by a callback over the
/// number of tokens generated so far.
class ScriptedLm final : public rstctg::LanguageModel {
 public:
  using Script = std::function<rstctg::TokenDistribution(std::size_t step)>;

  ScriptedLm(std::vector<std::string> entries, Script script)
      : codec_(make_vocab(std::move(entries)), false), script_(std::move(script)) {}

  const rstctg::Codec& codec() const override { return codec_; }
  rstctg::TokenDistribution next_distribution(std::span<const rstctg::Token>,
                                              std::span<const rstctg::Token> generated) const override {
    return script_(generated.size());
  }

 private:
  static rstctg::Vocabulary make_vocab(std::vector<std::string> entries) {
    entries.emplace_back("<unk>");
    entries.emplace_back("<eos>");
    return rstctg::Vocabulary(std::move(entries), "<unk>", "<eos>");
  }

  rstctg::Codec codec_;
  Script script_;
};

template <typename F>
rstctg::ErrorCode error_code_of(F&& f) {
  try {
    f();
  } catch (const rstctg::Error& e) {
    return e.code();
  }
  throw std::runtime_error("expected an rstctg::Error");
}

}  // namespace testing
