#include <cmath>
#include <sstream>

#include "doctest.h"
#include "rstctg/batch.hpp"
#include "rstctg/records.hpp"
#include "test_support.hpp"

using namespace rstctg;
using testing::error_code_of;

namespace {

std::vector<Relation> tested_relations(const Taxonomy& tax) {
  std::vector<Relation> out;
  for (const char* name : {"Cause_NS", "Condition_NS", "Contrast_NN", "Elaboration_NS", "Evaluation_NS", "Joint_NN",
                           "Manner-Means_NS"}) {
    out.push_back(tax.parse_relation_name(name));
  }
  return out;
}

}  // namespace

TEST_CASE("normalize_prompt") {
  CHECK(normalize_prompt("He came to my house.") == "He came to my house,");
  CHECK(normalize_prompt("  He came to my house ?! ") == "He came to my house,");
  CHECK(normalize_prompt("He came to my house,") == "He came to my house,");
  CHECK(normalize_prompt("He came") == "He came,");
}

TEST_CASE("batch: relations x prompts plus one baseline each") {
  const auto& d = testing::desk();
  const std::vector<std::string> prompts{"He came to my house,", "She went home,"};
  const auto rels = tested_relations(*d.taxonomy);
  const auto out = batch_generate(*d.lm, *d.parser, prompts, rels, GenerationConfig{}, 1);
  REQUIRE(out.size() == 16);
  for (std::size_t p = 0; p < 2; ++p) {
    for (std::size_t r = 0; r < 7; ++r) {
      const auto& g = out[p * 8 + r];
      CHECK(g.prompt == prompts[p]);
      CHECK(g.relation == rels[r].name());
      CHECK(g.config.alpha == 0.7);
      CHECK_FALSE(g.error);
    }
    CHECK_FALSE(out[p * 8 + 7].relation);
    CHECK(out[p * 8 + 7].config.alpha == 0.0);
  }
  CHECK(out == batch_generate(*d.lm, *d.parser, prompts, rels, GenerationConfig{}, 4));
}

TEST_CASE("batch: failed rows carry an error and do not abort the run") {
  const auto& d = testing::desk();
  const auto rels = tested_relations(*d.taxonomy);
  const auto out = batch_generate(*d.lm, *d.parser, {"He came,", "   "}, {rels[0]}, GenerationConfig{}, 2);
  REQUIRE(out.size() == 4);
  CHECK_FALSE(out[0].error);
  REQUIRE(out[2].error);
  CHECK(out[2].relation == "Cause_NS");
  CHECK(out[3].error);
  CHECK(out[2].completion_text.empty());

  GenerationConfig bad;
  bad.tau = 0.0;
  CHECK(error_code_of([&] { batch_generate(*d.lm, *d.parser, {"a,"}, rels, bad, 1); }) == ErrorCode::InvalidTau);
}

TEST_CASE("records round trip") {
  const auto& d = testing::desk();
  auto out = batch_generate(*d.lm, *d.parser, {"He came to my house,", "It was late,"},
                            tested_relations(*d.taxonomy), GenerationConfig{}, 1);
  out.push_back(GenerationResult{});
  out.back().prompt = "  \"quoted\" ñ,";
  out.back().error = "backend unavailable";
  out.back().steps.push_back(StepRecord{0, 3, 0.1 + 0.2, 1e-300, Token{4, "x"}, 1.0 / 3.0, 0.5});

  std::ostringstream a;
  write_records(a, out);
  std::istringstream in(a.str());
  const auto back = read_records(in);
  CHECK(back == out);
  std::ostringstream b;
  write_records(b, back);
  CHECK(a.str() == b.str());

  const auto first = to_record_line(out[0]);
  CHECK(first.find('\n') == std::string::npos);
  CHECK(first.rfind("{\"prompt\":", 0) == 0);
}

TEST_CASE("malformed records") {
  CHECK(error_code_of([] { from_record_line("not json"); }) == ErrorCode::MalformedRecord);
  CHECK(error_code_of([] { from_record_line("{\"prompt\":\"x\"}"); }) == ErrorCode::MalformedRecord);
  std::istringstream bad_reason(
      "{\"prompt\":\"x\",\"relation\":null,\"config\":{\"p\":0.75,\"k\":100,\"tau\":0.1,\"alpha\":0.7,"
      "\"max_new_tokens\":30,\"stop_on_period\":true,\"seed\":0},\"completion\":\"\",\"stop_reason\":\"Nope\","
      "\"completion_tokens\":[],\"steps\":[]}\n");
  CHECK(error_code_of([&] { read_records(bad_reason); }) == ErrorCode::MalformedRecord);
  CHECK(error_code_of([] { read_records_file("/nonexistent/records.jsonl"); }) == ErrorCode::IoFailure);
}
