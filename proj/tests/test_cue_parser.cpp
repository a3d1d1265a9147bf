#include <random>
#include <set>

#include "doctest.h"
#include "rstctg/cue_parser.hpp"
#include "test_support.hpp"

using namespace rstctg;
using testing::error_code_of;

namespace {

const Taxonomy& taxonomy() { return *testing::desk().taxonomy; }

CueParser make_parser(const std::string& lexicon_text) {
  std::istringstream lex(lexicon_text);
  auto lexicon = CueLexicon::parse(lex, taxonomy());
  std::istringstream words("a b c he came to my house she left it rained goes");
  auto vocab = build_parser_vocabulary(words, lexicon);
  return CueParser(taxonomy(), std::move(lexicon), std::move(vocab));
}

std::size_t idx(const char* name) { return taxonomy().parse_relation_name(name).index; }

std::vector<std::size_t> span_sizes(const Segmentation& s) {
  std::vector<std::size_t> out;
  for (const auto& sp : s.spans) out.push_back(sp.size());
  return out;
}

// Independent rule scan: number of EDU starts after position 0, plus one.
std::size_t scan_edus(const std::vector<std::string>& toks, const std::set<std::string>& boundary,
                      const std::set<std::string>& terminators) {
  std::size_t n = 1;
  for (std::size_t i = 1; i < toks.size(); ++i) {
    if (terminators.count(toks[i - 1]) || boundary.count(toks[i])) ++n;
  }
  return n;
}

// Independent logit oracle for single-token cues: full weight while every
// earlier token is itself a cue, half weight afterwards.
std::vector<double> scan_logits(const std::vector<std::string>& toks, const std::map<std::string, std::pair<std::size_t, double>>& cues) {
  std::vector<double> out(taxonomy().size(), 0.0);
  bool leading = true;
  for (const auto& t : toks) {
    auto it = cues.find(t);
    if (it == cues.end()) {
      leading = false;
      continue;
    }
    out[it->second.first] += leading ? it->second.second : it->second.second / 2;
  }
  return out;
}

}  // namespace

TEST_CASE("relation_logits: single cue") {
  const auto p = make_parser("because\tCause_NS\t3.0\n");
  const auto left = p.codec().tokenize("he came");
  const auto logits = p.relation_logits(left, p.codec().tokenize("because it rained"));
  REQUIRE(logits.size() == 42);
  for (std::size_t i = 0; i < logits.size(); ++i) CHECK(logits[i] == (i == idx("Cause_NS") ? 3.0 : 0.0));

  const auto none = p.relation_logits(left, p.codec().tokenize("it rained"));
  CHECK(std::all_of(none.begin(), none.end(), [](double v) { return v == 0.0; }));
}

TEST_CASE("relation_logits: leading cues at full weight, later cues at half") {
  const auto p = make_parser("but\tContrast_NN\t3.0\nif\tCondition_NS\t2.0\n");
  const auto left = p.codec().tokenize("he came");
  const auto logits = p.relation_logits(left, p.codec().tokenize("but if he goes"));
  CHECK(logits[idx("Contrast_NN")] == 3.0);
  CHECK(logits[idx("Condition_NS")] == 2.0);

  const auto later = p.relation_logits(left, p.codec().tokenize("he goes but if"));
  CHECK(later[idx("Contrast_NN")] == 1.5);
  CHECK(later[idx("Condition_NS")] == 1.0);

  const auto repeated = p.relation_logits(left, p.codec().tokenize("but he goes but"));
  CHECK(repeated[idx("Contrast_NN")] == 4.5);
}

TEST_CASE("relation_logits: multi-token cue phrases") {
  const auto p = make_parser("in order to\tEnablement_NS\t2.0\nto\tManner-Means_NS\t1.0\n");
  const auto left = p.codec().tokenize("he came");
  const auto logits = p.relation_logits(left, p.codec().tokenize("in order to go"));
  CHECK(logits[idx("Enablement_NS")] == 2.0);
  // "to" matches inside the leading phrase, which is not its own leading slot
  CHECK(logits[idx("Manner-Means_NS")] == 0.5);
}

TEST_CASE("relation_logits is additive over matched cues (random segments)") {
  const std::string lex = "but\tContrast_NN\t3.0\nif\tCondition_NS\t2.0\nbecause\tCause_NS\t2.5\nand\tJoint_NN\t1.0\n";
  const auto p = make_parser(lex);
  const std::map<std::string, std::pair<std::size_t, double>> cues{{"but", {idx("Contrast_NN"), 3.0}},
                                                                   {"if", {idx("Condition_NS"), 2.0}},
                                                                   {"because", {idx("Cause_NS"), 2.5}},
                                                                   {"and", {idx("Joint_NN"), 1.0}}};
  const std::vector<std::string> pool{"but", "if", "because", "and", "he", "came", "it", "rained", "."};
  std::mt19937 rng(5);
  const auto left = p.codec().tokenize("he came");
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<std::string> words(1 + rng() % 8);
    for (auto& w : words) w = pool[rng() % pool.size()];
    std::string text;
    for (const auto& w : words) text += w + " ";
    CHECK(p.relation_logits(left, p.codec().tokenize(text)) == scan_logits(words, cues));
  }
}

TEST_CASE("relation_logits preconditions") {
  const auto p = make_parser("but\tContrast_NN\t3.0\n");
  const auto some = p.codec().tokenize("he came");
  CHECK(error_code_of([&] { p.relation_logits({}, some); }) == ErrorCode::EmptySegment);
  CHECK(error_code_of([&] { p.relation_logits(some, {}); }) == ErrorCode::EmptySegment);
}

TEST_CASE("segment") {
  const auto p = make_parser("@boundary\tbut\tbecause\n@terminator\t.\n");
  auto seg = [&](const char* text) { return p.segment(p.codec().tokenize(text)); };

  CHECK(span_sizes(seg("he came . she left .")) == std::vector<std::size_t>{3, 3});
  CHECK(span_sizes(seg("he came to my house but he left")) == std::vector<std::size_t>{5, 3});
  CHECK(seg("a because b but c").size() == 3);
  CHECK(seg("he came").size() == 1);
  CHECK(count_edus(p, p.codec().tokenize("he came to my house")) == 1);
  CHECK(count_edus(p, p.codec().tokenize("he came . she left")) == 2);
  CHECK(error_code_of([&] { p.segment({}); }) == ErrorCode::EmptyInput);
  CHECK(error_code_of([&] { count_edus(p, {}); }) == ErrorCode::EmptyInput);
}

TEST_CASE("count_edus on the desk prompts matches a rule scan") {
  const auto& parser = *testing::desk().parser;
  const auto& lex = parser.lexicon();
  for (const auto& prompt : testing::read_lines(testing::data_dir() / "desk_prompts_200.txt")) {
    const auto toks = parser.codec().tokenize(prompt);
    std::vector<std::string> words;
    for (const auto& t : toks) words.push_back(t.surface);
    CHECK(count_edus(parser, toks) == scan_edus(words, lex.boundary_cues, lex.terminators));
  }
}

TEST_CASE("segmentation covers the input and is prefix-monotone (random sequences)") {
  const auto& parser = *testing::desk().parser;
  const std::vector<std::string> pool{"he", "came", "but", "because", ".", ",", "and", "house", "which", "great", "if"};
  std::mt19937 rng(9);
  for (int trial = 0; trial < 500; ++trial) {
    std::string x, y;
    for (std::size_t i = 0, n = 1 + rng() % 10; i < n; ++i) x += pool[rng() % pool.size()] + " ";
    for (std::size_t i = 0, n = rng() % 10; i < n; ++i) y += pool[rng() % pool.size()] + " ";
    const auto xt = parser.codec().tokenize(x);
    const auto xy = parser.codec().tokenize(x + y);
    const auto s = parser.segment(xy);
    CHECK(s.covers(xy.size()));
    CHECK(count_edus(parser, xy) >= count_edus(parser, xt));
  }
}

TEST_CASE("lexicon parsing") {
  auto parse = [](const std::string& text) {
    std::istringstream in(text);
    return CueLexicon::parse(in, taxonomy());
  };
  const auto lex = parse("# c\n@boundary\tBut\tif\n@terminator\t.\t;\nBut Then\tContrast_NN\t1.5\n");
  CHECK(lex.boundary_cues == std::set<std::string>{"but", "if"});
  CHECK(lex.terminators == std::set<std::string>{".", ";"});
  REQUIRE(lex.entries.size() == 1);
  CHECK(lex.entries[0].phrase == std::vector<std::string>{"but", "then"});
  CHECK(lex.entries[0].weight == 1.5);

  CHECK(error_code_of([&] { parse("but\tBogus_NN\t1\n"); }) == ErrorCode::InvalidLexicon);
  CHECK(error_code_of([&] { parse("but\tContrast_NN\tabc\n"); }) == ErrorCode::InvalidLexicon);
  CHECK(error_code_of([&] { parse("but\tContrast_NN\tinf\n"); }) == ErrorCode::InvalidLexicon);
  CHECK(error_code_of([&] { parse("but\tContrast_NN\n"); }) == ErrorCode::InvalidLexicon);
  CHECK(error_code_of([&] { parse(" \tContrast_NN\t1\n"); }) == ErrorCode::InvalidLexicon);

  const auto shipped = CueLexicon::load(testing::data_dir() / "lexicon.tsv", taxonomy());
  std::set<std::string> relations;
  for (const auto& e : shipped.entries) relations.insert(taxonomy().at(e.relation).name());
  CHECK(relations == std::set<std::string>{"Cause_NS", "Condition_NS", "Contrast_NN", "Elaboration_NS", "Evaluation_NS",
                                           "Joint_NN", "Manner-Means_NS"});
}
