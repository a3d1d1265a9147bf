#include "rstctg/ngram.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "rstctg/error.hpp"
#include "text_util.hpp"

namespace rstctg {

namespace {

constexpr const char* kMagic = "rstctg-ngram";
constexpr int kFormatVersion = 1;

void check_params(int order, double delta) {
  if (order < 1) throw Error(ErrorCode::InvalidModel, "n-gram order must be at least 1");
  if (!(delta > 0.0)) throw Error(ErrorCode::InvalidModel, "smoothing delta must be positive");
}

}  // namespace

NgramModel::NgramModel(int order, double delta, Vocabulary vocab, std::map<Context, ContextCounts> counts)
    : order_(order), delta_(delta), codec_(std::move(vocab), false), counts_(std::move(counts)) {}

NgramModel NgramModel::train(std::istream& corpus, int order, double delta) {
  check_params(order, delta);
  std::vector<std::vector<std::string>> sentences;
  std::set<std::string> words;
  std::string line;
  while (std::getline(corpus, line)) {
    auto tokens = split_words(line, false);
    if (tokens.empty()) continue;
    words.insert(tokens.begin(), tokens.end());
    sentences.push_back(std::move(tokens));
  }
  if (sentences.empty()) throw Error(ErrorCode::EmptyCorpus, "corpus contains no tokens");
  words.erase(kUnknown);
  words.erase(kEndOfSequence);

  std::vector<std::string> entries(words.begin(), words.end());
  entries.emplace_back(kUnknown);
  entries.emplace_back(kEndOfSequence);
  Vocabulary vocab(std::move(entries), kUnknown, kEndOfSequence);
  const TokenId eos = *vocab.eos_id();

  std::map<Context, ContextCounts> counts;
  const auto history_len = static_cast<std::size_t>(order - 1);
  for (const auto& sentence : sentences) {
    std::vector<TokenId> ids(history_len, eos);
    for (const auto& w : sentence) ids.push_back(vocab.lookup(w));
    ids.push_back(eos);
    for (std::size_t i = history_len; i < ids.size(); ++i) {
      Context ctx(ids.begin() + static_cast<std::ptrdiff_t>(i - history_len), ids.begin() + static_cast<std::ptrdiff_t>(i));
      auto& cc = counts[ctx];
      ++cc.total;
      ++cc.next[ids[i]];
    }
  }
  return NgramModel(order, delta, std::move(vocab), std::move(counts));
}

NgramModel NgramModel::train_file(const std::filesystem::path& path, int order, double delta) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoFailure, "cannot open corpus " + path.string());
  return train(in, order, delta);
}

NgramModel::Context NgramModel::context_of(std::span<const TokenId> history) const {
  const auto n = static_cast<std::size_t>(order_ - 1);
  Context ctx(n, *codec_.vocabulary().eos_id());
  const std::size_t take = std::min(n, history.size());
  std::copy(history.end() - static_cast<std::ptrdiff_t>(take), history.end(), ctx.end() - static_cast<std::ptrdiff_t>(take));
  return ctx;
}

double NgramModel::probability(const Context& context, TokenId next) const {
  const double v = static_cast<double>(codec_.vocabulary().size());
  auto it = counts_.find(context);
  if (it == counts_.end()) return 1.0 / v;
  auto nt = it->second.next.find(next);
  const double c = nt == it->second.next.end() ? 0.0 : static_cast<double>(nt->second);
  return (c + delta_) / (static_cast<double>(it->second.total) + delta_ * v);
}

TokenDistribution NgramModel::next_distribution(std::span<const Token> prompt, std::span<const Token> generated) const {
  std::vector<TokenId> history;
  history.reserve(prompt.size() + generated.size());
  for (const auto& t : prompt) history.push_back(t.id);
  for (const auto& t : generated) history.push_back(t.id);
  const Context ctx = context_of(history);

  const std::size_t v = codec_.vocabulary().size();
  auto it = counts_.find(ctx);
  if (it == counts_.end()) return TokenDistribution(v, 1.0 / static_cast<double>(v));

  const double denom = static_cast<double>(it->second.total) + delta_ * static_cast<double>(v);
  TokenDistribution dist(v, delta_ / denom);
  for (const auto& [id, c] : it->second.next) dist[static_cast<std::size_t>(id)] = (static_cast<double>(c) + delta_) / denom;
  return dist;
}

void NgramModel::save(std::ostream& out) const {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", delta_);
  out << kMagic << ' ' << kFormatVersion << '\n';
  out << "order " << order_ << '\n';
  out << "delta " << buf << '\n';
  const auto& entries = codec_.vocabulary().entries();
  out << "vocab " << entries.size() << '\n';
  for (const auto& e : entries) out << e << '\n';
  std::size_t n = 0;
  for (const auto& [ctx, cc] : counts_) n += cc.next.size();
  out << "ngrams " << n << '\n';
  for (const auto& [ctx, cc] : counts_) {
    for (const auto& [id, c] : cc.next) {
      for (auto h : ctx) out << h << ' ';
      out << id << ' ' << c << '\n';
    }
  }
  if (!out) throw Error(ErrorCode::IoFailure, "failed writing n-gram model");
}

void NgramModel::save_file(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoFailure, "cannot write " + path.string());
  save(out);
}

NgramModel NgramModel::load(std::istream& in) {
  auto fail = [](const std::string& what) { return Error(ErrorCode::InvalidModel, "n-gram model file: " + what); };
  std::string magic;
  int version = 0;
  if (!(in >> magic >> version) || magic != kMagic) throw fail("bad header");
  if (version != kFormatVersion) throw fail("unsupported version " + std::to_string(version));

  std::string key;
  int order = 0;
  std::string delta_text;
  std::size_t vsize = 0;
  if (!(in >> key >> order) || key != "order") throw fail("missing order");
  if (!(in >> key >> delta_text) || key != "delta") throw fail("missing delta");
  double delta = 0.0;
  {
    std::istringstream ds(delta_text);
    ds.imbue(std::locale::classic());
    if (!(ds >> delta)) throw fail("bad delta");
  }
  check_params(order, delta);
  if (!(in >> key >> vsize) || key != "vocab") throw fail("missing vocab");
  std::vector<std::string> entries(vsize);
  for (auto& e : entries) {
    if (!(in >> e)) throw fail("truncated vocabulary");
  }
  Vocabulary vocab(std::move(entries), kUnknown, kEndOfSequence);

  std::size_t n = 0;
  if (!(in >> key >> n) || key != "ngrams") throw fail("missing ngram table");
  std::map<Context, ContextCounts> counts;
  const auto history_len = static_cast<std::size_t>(order - 1);
  for (std::size_t i = 0; i < n; ++i) {
    Context ctx(history_len);
    TokenId next = 0;
    std::uint64_t c = 0;
    for (auto& h : ctx) {
      if (!(in >> h)) throw fail("truncated ngram table");
    }
    if (!(in >> next >> c)) throw fail("truncated ngram table");
    for (auto h : ctx) {
      if (h < 0 || static_cast<std::size_t>(h) >= vocab.size()) throw fail("token id out of range");
    }
    if (next < 0 || static_cast<std::size_t>(next) >= vocab.size()) throw fail("token id out of range");
    auto& cc = counts[ctx];
    cc.total += c;
    cc.next[next] += c;
  }
  return NgramModel(order, delta, std::move(vocab), std::move(counts));
}

NgramModel NgramModel::load_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoFailure, "cannot open model " + path.string());
  return load(in);
}

}  // namespace rstctg
