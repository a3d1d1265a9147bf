#include <algorithm>
#include <cctype>

#include "doctest.h"
#include "rstctg/decoder.hpp"
#include "rstctg/vocabulary.hpp"
#include "test_support.hpp"

using namespace rstctg;
using testing::error_code_of;

TEST_CASE("split_words") {
  using V = std::vector<std::string>;
  CHECK(split_words("He came to my house, but he left.", false) ==
        V{"He", "came", "to", "my", "house", ",", "but", "he", "left", "."});
  CHECK(split_words("He came", true) == V{"he", "came"});
  CHECK(split_words("don't well-known", false) == V{"don't", "well-known"});
  // no-break space and ideographic space separate words
  CHECK(split_words("a\xC2\xA0" "b\xE3\x80\x80" "c\td", false) == V{"a", "b", "c", "d"});
  CHECK(split_words("  \n ", false).empty());
  CHECK(split_words("\xC3\x89t\xC3\xA9", true) == V{"\xC3\x89t\xC3\xA9"});
}

TEST_CASE("join_words attaches closing punctuation") {
  std::vector<std::string> w{"but", "he", "left", ",", "(", "late", ")", "."};
  CHECK(join_words(w) == "but he left, (late).");
}

TEST_CASE("vocabulary invariants") {
  CHECK(error_code_of([] { Vocabulary({"a", "a", "<unk>"}, "<unk>"); }) == ErrorCode::InvalidModel);
  CHECK(error_code_of([] { Vocabulary({"a", "b"}, "<unk>"); }) == ErrorCode::InvalidModel);
  Vocabulary v({"a", "b", "<unk>"}, "<unk>");
  CHECK(v.lookup("b") == 1);
  CHECK(v.lookup("zzz") == v.unknown_id());
  Codec c(v, false);
  const auto toks = c.tokenize("a zzz b");
  CHECK(toks[1].id == v.unknown_id());
  CHECK(toks[1].surface == "zzz");
  CHECK(c.detokenize(toks) == "a zzz b");
  // a bare special token renders as nothing
  CHECK(c.detokenize(std::vector<Token>{v.token(0), v.token(v.unknown_id())}) == "a");
}

TEST_CASE("retokenize") {
  const Codec source(Vocabulary({"He", "House.", "came", "<unk>"}, "<unk>"), false);
  const Codec target(Vocabulary({"he", "house", "came", ".", "<unk>"}, "<unk>"), true);

  SUBCASE("identical vocabularies give the identity") {
    const auto toks = source.tokenize("He came");
    CHECK(retokenize(toks, source, source) == toks);
  }
  SUBCASE("one source token can map to several target tokens") {
    const std::vector<Token> one{source.vocabulary().token(1)};
    const auto out = retokenize(one, source, target);
    REQUIRE(out.size() == 2);
    CHECK(out[0].surface == "house");
    CHECK(out[1].surface == ".");
    CHECK(out[0].id == target.vocabulary().lookup("house"));
  }
  SUBCASE("unknown words map to the target unknown id") {
    const auto out = retokenize(source.tokenize("came zebra"), source, target);
    CHECK(out[1].id == target.vocabulary().unknown_id());
  }
}

TEST_CASE("retokenize round trip over the desk prompts") {
  const auto& d = testing::desk();
  const Codec& lm = d.lm->codec();
  const Codec& parser = d.parser->codec();
  const auto prompts = testing::read_lines(testing::data_dir() / "desk_prompts.txt");
  REQUIRE(prompts.size() == 80);
  for (const auto& p : prompts) {
    const auto x = lm.tokenize(p);
    const std::string text = lm.detokenize(x);
    std::string lowered = text;
    std::transform(lowered.begin(), lowered.end(), lowered.begin(), [](unsigned char c) { return std::tolower(c); });
    CHECK(parser.detokenize(retokenize(x, lm, parser)) == lowered);
    CHECK(text == p);
  }
}
