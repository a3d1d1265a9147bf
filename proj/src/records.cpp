#include "rstctg/records.hpp"

#include <fstream>

#include "json.hpp"
#include "rstctg/error.hpp"

namespace rstctg {

using ojson = nlohmann::ordered_json;

std::string to_record_line(const GenerationResult& r) {
  ojson j;
  j["prompt"] = r.prompt;
  j["relation"] = r.relation ? ojson(*r.relation) : ojson(nullptr);
  j["config"] = ojson{{"p", r.config.p},
                      {"k", r.config.k},
                      {"tau", r.config.tau},
                      {"alpha", r.config.alpha},
                      {"max_new_tokens", r.config.max_new_tokens},
                      {"stop_on_period", r.config.stop_on_period},
                      {"seed", r.config.seed}};
  j["completion"] = r.completion_text;
  j["stop_reason"] = std::string(to_string(r.stop_reason));
  ojson tokens = ojson::array();
  for (const auto& t : r.completion_tokens) tokens.push_back(ojson::array({t.id, t.surface}));
  j["completion_tokens"] = std::move(tokens);
  ojson steps = ojson::array();
  for (const auto& s : r.steps) {
    steps.push_back(ojson{{"step", s.step},
                          {"nucleus_size", s.nucleus_size},
                          {"parser_score_max", s.parser_score_max},
                          {"parser_score_min", s.parser_score_min},
                          {"chosen_id", s.chosen_token.id},
                          {"chosen_surface", s.chosen_token.surface},
                          {"chosen_lm_prob", s.chosen_lm_prob},
                          {"chosen_parser_score", s.chosen_parser_score}});
  }
  j["steps"] = std::move(steps);
  if (r.error) j["error"] = *r.error;
  return j.dump();
}

GenerationResult from_record_line(const std::string& line) {
  try {
    const auto j = ojson::parse(line);
    GenerationResult r;
    r.prompt = j.at("prompt").get<std::string>();
    if (!j.at("relation").is_null()) r.relation = j.at("relation").get<std::string>();
    const auto& c = j.at("config");
    r.config.p = c.at("p").get<double>();
    r.config.k = c.at("k").get<std::size_t>();
    r.config.tau = c.at("tau").get<double>();
    r.config.alpha = c.at("alpha").get<double>();
    r.config.max_new_tokens = c.at("max_new_tokens").get<std::size_t>();
    r.config.stop_on_period = c.at("stop_on_period").get<bool>();
    r.config.seed = c.at("seed").get<std::int64_t>();
    r.completion_text = j.at("completion").get<std::string>();
    auto reason = parse_stop_reason(j.at("stop_reason").get<std::string>());
    if (!reason) throw Error(ErrorCode::MalformedRecord, "unknown stop_reason");
    r.stop_reason = *reason;
    for (const auto& t : j.at("completion_tokens")) {
      r.completion_tokens.push_back(Token{t.at(0).get<TokenId>(), t.at(1).get<std::string>()});
    }
    for (const auto& s : j.at("steps")) {
      StepRecord rec;
      rec.step = s.at("step").get<std::size_t>();
      rec.nucleus_size = s.at("nucleus_size").get<std::size_t>();
      rec.parser_score_max = s.at("parser_score_max").get<double>();
      rec.parser_score_min = s.at("parser_score_min").get<double>();
      rec.chosen_token = Token{s.at("chosen_id").get<TokenId>(), s.at("chosen_surface").get<std::string>()};
      rec.chosen_lm_prob = s.at("chosen_lm_prob").get<double>();
      rec.chosen_parser_score = s.at("chosen_parser_score").get<double>();
      r.steps.push_back(std::move(rec));
    }
    if (j.contains("error")) r.error = j.at("error").get<std::string>();
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::MalformedRecord, e.what());
  }
}

void write_records(std::ostream& out, const std::vector<GenerationResult>& results) {
  for (const auto& r : results) out << to_record_line(r) << '\n';
  if (!out) throw Error(ErrorCode::IoFailure, "failed writing records");
}

std::vector<GenerationResult> read_records(std::istream& in) {
  std::vector<GenerationResult> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    out.push_back(from_record_line(line));
  }
  return out;
}

std::vector<GenerationResult> read_records_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoFailure, "cannot open records " + path.string());
  return read_records(in);
}

}  // namespace rstctg
