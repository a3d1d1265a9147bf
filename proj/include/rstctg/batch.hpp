#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "rstctg/decoder.hpp"

namespace rstctg {

/// Drops trailing sentence punctuation and appends a comma.
std::string normalize_prompt(std::string_view prompt);

/// Non-empty trimmed lines of a UTF-8 prompts file.
std::vector<std::string> read_prompts(const std::filesystem::path& path);

/// For every prompt: one generation per relation, then one uncontrolled
/// generation with alpha = 0. Rows that fail carry `error` instead of
/// aborting the batch. Output order is input order for any worker count.
std::vector<GenerationResult> batch_generate(const LanguageModel& lm, const DiscourseParser& parser,
                                             const std::vector<std::string>& prompts,
                                             const std::vector<Relation>& relations, const GenerationConfig& config,
                                             unsigned workers = 1);

}  // namespace rstctg
