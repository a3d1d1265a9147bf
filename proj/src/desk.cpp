#include "rstctg/desk.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "rstctg/error.hpp"

#ifndef RSTCTG_DATA_DIR
#define RSTCTG_DATA_DIR "data"
#endif

namespace rstctg {

std::filesystem::path default_data_dir() {
  if (const char* env = std::getenv("RSTCTG_DATA_DIR"); env && *env) return env;
  return RSTCTG_DATA_DIR;
}

DeskSetup DeskSetup::defaults() {
  const auto dir = default_data_dir();
  DeskSetup s;
  s.taxonomy = dir / "taxonomy.txt";
  s.lexicon = dir / "lexicon.tsv";
  s.corpus = dir / "desk_corpus.txt";
  return s;
}

DeskBackends load_desk(const DeskSetup& setup) {
  DeskBackends out;
  out.taxonomy = std::make_shared<const Taxonomy>(Taxonomy::load(setup.taxonomy));
  auto lexicon = CueLexicon::load(setup.lexicon, *out.taxonomy);

  if (setup.lm_model) {
    out.lm = std::make_shared<const NgramModel>(NgramModel::load_file(*setup.lm_model));
  } else {
    out.lm = std::make_shared<const NgramModel>(NgramModel::train_file(setup.corpus, setup.order, setup.delta));
  }

  std::ostringstream words;
  if (!setup.corpus.empty() && std::filesystem::exists(setup.corpus)) {
    std::ifstream in(setup.corpus);
    words << in.rdbuf();
  } else {
    for (const auto& e : out.lm->codec().vocabulary().entries()) words << e << '\n';
  }
  std::istringstream corpus(words.str());
  auto vocab = build_parser_vocabulary(corpus, lexicon);
  out.parser = std::make_shared<const CueParser>(*out.taxonomy, std::move(lexicon), std::move(vocab));
  return out;
}

}  // namespace rstctg
