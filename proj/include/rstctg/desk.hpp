#pragma once

#include <filesystem>
#include <memory>
#include <optional>

#include "rstctg/cue_parser.hpp"
#include "rstctg/ngram.hpp"
#include "rstctg/taxonomy.hpp"

namespace rstctg {

/// Directory holding the shipped taxonomy, lexicon, corpus and prompt
/// files. The RSTCTG_DATA_DIR environment variable overrides the built-in
/// location.
std::filesystem::path default_data_dir();

struct DeskSetup {
  std::filesystem::path taxonomy;
  std::filesystem::path lexicon;
  std::filesystem::path corpus;                   // trains the LM and feeds V'
  std::optional<std::filesystem::path> lm_model;  // pre-trained LM, replaces training
  int order = 2;
  double delta = 0.01;

  /// Paths into default_data_dir().
  static DeskSetup defaults();
};

/// The n-gram LM and cue parser built from desk-scale data files.
struct DeskBackends {
  std::shared_ptr<const Taxonomy> taxonomy;
  std::shared_ptr<const NgramModel> lm;
  std::shared_ptr<const CueParser> parser;
};

DeskBackends load_desk(const DeskSetup& setup);

}  // namespace rstctg
