#pragma once

#include <filesystem>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "rstctg/decoder.hpp"

namespace rstctg {

/// One JSON object per line; field names are listed in docs/formats.md.
std::string to_record_line(const GenerationResult& result);
GenerationResult from_record_line(const std::string& line);

void write_records(std::ostream& out, const std::vector<GenerationResult>& results);
std::vector<GenerationResult> read_records(std::istream& in);
std::vector<GenerationResult> read_records_file(const std::filesystem::path& path);

}  // namespace rstctg
