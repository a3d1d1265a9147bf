#include "rstctg/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "rstctg/analysis.hpp"
#include "rstctg/batch.hpp"
#include "rstctg/desk.hpp"
#include "rstctg/error.hpp"
#include "rstctg/eval.hpp"
#include "rstctg/records.hpp"
#include "rstctg/remote.hpp"
#include "text_util.hpp"

namespace rstctg {

namespace {

constexpr const char* kEndpointEnv = "RSTCTG_ENDPOINT";
const char* const kTestedRelations = "Cause_NS,Condition_NS,Contrast_NN,Elaboration_NS,Evaluation_NS,Joint_NN,Manner-Means_NS";

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct BackendOptions {
  std::string backend = "desk";
  std::string endpoint;
  std::string taxonomy;
  std::string corpus;
  std::string lexicon;
  std::string lm_model;
  int order = 2;
  double delta = 0.01;
};

struct Backends {
  std::shared_ptr<const Taxonomy> taxonomy;
  std::shared_ptr<const LanguageModel> lm;
  std::shared_ptr<const DiscourseParser> parser;
};

void add_backend_options(CLI::App* cmd, BackendOptions& o) {
  cmd->add_option("--backend", o.backend, "desk or remote")->check(CLI::IsMember({"desk", "remote"}));
  cmd->add_option("--endpoint", o.endpoint, std::string("model service URL (default $") + kEndpointEnv + ")");
  cmd->add_option("--taxonomy", o.taxonomy, "relation taxonomy file");
  cmd->add_option("--corpus", o.corpus, "desk LM training corpus");
  cmd->add_option("--lexicon", o.lexicon, "desk parser cue lexicon");
  cmd->add_option("--lm-model", o.lm_model, "pre-trained desk LM file");
  cmd->add_option("--order", o.order, "desk LM n-gram order")->check(CLI::PositiveNumber);
  cmd->add_option("--delta", o.delta, "desk LM add-delta constant");
}

void add_generation_options(CLI::App* cmd, GenerationConfig& c, bool& no_period_stop) {
  cmd->add_option("--p", c.p, "nucleus mass threshold");
  cmd->add_option("--k", c.k, "nucleus size cap");
  cmd->add_option("--tau", c.tau, "parser softmax temperature");
  cmd->add_option("--alpha", c.alpha, "parser fusion weight");
  cmd->add_option("--max-tokens", c.max_new_tokens, "forced stop after this many tokens");
  cmd->add_flag("--no-period-stop", no_period_stop, "do not stop at a generated period");
}

Backends make_backends(const BackendOptions& o) {
  const auto defaults = DeskSetup::defaults();
  Backends b;
  if (o.backend == "remote") {
    std::string endpoint = o.endpoint;
    if (endpoint.empty()) {
      if (const char* env = std::getenv(kEndpointEnv)) endpoint = env;
    }
    if (endpoint.empty()) throw UsageError(std::string("--backend remote needs --endpoint or $") + kEndpointEnv);
    b.taxonomy = std::make_shared<const Taxonomy>(Taxonomy::load(o.taxonomy.empty() ? defaults.taxonomy : std::filesystem::path(o.taxonomy)));
    auto ep = std::make_shared<RemoteEndpoint>(endpoint);
    auto parser = std::make_shared<const RemoteDiscourseParser>(ep);
    if (parser->relation_count() != b.taxonomy->size()) {
      throw Error(ErrorCode::ProtocolMismatch, "parser reports " + std::to_string(parser->relation_count()) +
                                                   " relations, taxonomy has " + std::to_string(b.taxonomy->size()));
    }
    b.lm = std::make_shared<const RemoteLanguageModel>(ep);
    b.parser = parser;
    return b;
  }
  if (!o.endpoint.empty()) throw UsageError("--endpoint only applies to --backend remote");
  DeskSetup setup = defaults;
  if (!o.taxonomy.empty()) setup.taxonomy = o.taxonomy;
  if (!o.corpus.empty()) setup.corpus = o.corpus;
  if (!o.lexicon.empty()) setup.lexicon = o.lexicon;
  if (!o.lm_model.empty()) setup.lm_model = o.lm_model;
  setup.order = o.order;
  setup.delta = o.delta;
  auto desk = load_desk(setup);
  b.taxonomy = desk.taxonomy;
  b.lm = desk.lm;
  b.parser = desk.parser;
  return b;
}

std::optional<Relation> relation_arg(const Taxonomy& taxonomy, const std::string& name) {
  if (name.empty() || name == "None") return std::nullopt;
  return taxonomy.parse_relation_name(name);
}

std::vector<Relation> relation_list(const Taxonomy& taxonomy, const std::string& names) {
  std::vector<Relation> out;
  for (const auto& n : detail::split(names, ',')) {
    auto t = detail::trim(n);
    if (!t.empty()) out.push_back(taxonomy.parse_relation_name(t));
  }
  if (out.empty()) throw UsageError("--relations is empty");
  return out;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoFailure, "cannot write " + path);
  return out;
}

bool is_usage_error(ErrorCode c) {
  switch (c) {
    case ErrorCode::UnknownRelation:
    case ErrorCode::MalformedName:
    case ErrorCode::InvalidP:
    case ErrorCode::InvalidK:
    case ErrorCode::InvalidTau:
    case ErrorCode::InvalidAlpha:
    case ErrorCode::InvalidMaxTokens:
    case ErrorCode::EmptyPrompt:
    case ErrorCode::InconsistentBatch:
      return true;
    default:
      return false;
  }
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Relation-controlled text generation with parser-guided decoding", "rstctg"};
  app.require_subcommand(1);

  BackendOptions backend;
  GenerationConfig config;
  bool no_period_stop = false;
  std::string corpus, out_path, prompt, relation, prompts_path, relations = kTestedRelations, records_path, endpoint;
  int order = 2;
  double delta = 0.01;
  bool normalize = false;
  bool trace = false;
  unsigned workers = std::max(1u, std::min(8u, std::thread::hardware_concurrency()));

  auto* train = app.add_subcommand("train-lm", "train and save the desk n-gram LM");
  train->add_option("--corpus", corpus, "training corpus, one sentence per line");
  train->add_option("--order", order, "n-gram order")->check(CLI::PositiveNumber);
  train->add_option("--delta", delta, "add-delta constant");
  train->add_option("--out", out_path, "model file")->required();

  auto* gen = app.add_subcommand("generate", "generate one relation-controlled completion");
  gen->add_option("--prompt", prompt, "prompt text")->required();
  gen->add_option("--relation", relation, "relation name, e.g. Contrast_NN; omit or None for plain LM decoding");
  gen->add_flag("--normalize-prompt", normalize, "replace trailing punctuation with a comma");
  gen->add_flag("--trace", trace, "print the full JSON record instead of the completion");
  add_generation_options(gen, config, no_period_stop);
  add_backend_options(gen, backend);

  auto* batch = app.add_subcommand("batch", "generate every prompt x relation plus a baseline");
  batch->add_option("--prompts", prompts_path, "prompts file, one per line")->required();
  batch->add_option("--relations", relations, "comma-separated relation names");
  batch->add_option("--out", out_path, "records file (JSON lines)")->required();
  batch->add_option("--workers", workers, "concurrent generations")->check(CLI::PositiveNumber);
  batch->add_flag("--normalize-prompt", normalize, "replace trailing punctuation with a comma");
  add_generation_options(batch, config, no_period_stop);
  add_backend_options(batch, backend);

  auto* evaluate = app.add_subcommand("evaluate", "correct% and perplexity report for a records file");
  evaluate->add_option("--records", records_path, "records file from `batch`")->required();
  evaluate->add_option("--out", out_path, "write the report as CSV here");
  add_backend_options(evaluate, backend);

  auto* perturb = app.add_subcommand("perturb", "per-step parser score spread for a records file");
  perturb->add_option("--records", records_path, "records file from `batch`")->required();
  perturb->add_option("--out", out_path, "curve CSV")->required();

  auto* serve_check = app.add_subcommand("serve-check", "probe a model service");
  serve_check->add_option("--endpoint", endpoint, std::string("model service URL (default $") + kEndpointEnv + ")");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return 1;
  }
  config.stop_on_period = !no_period_stop;

  try {
    if (*train) {
      if (corpus.empty()) corpus = DeskSetup::defaults().corpus.string();
      NgramModel::train_file(corpus, order, delta).save_file(out_path);
      out << "wrote " << out_path << "\n";
    } else if (*gen) {
      config.validate();
      auto b = make_backends(backend);
      auto rel = relation_arg(*b.taxonomy, relation);
      if (!rel) config.alpha = 0.0;
      const std::string text = normalize ? normalize_prompt(prompt) : prompt;
      auto result = generate(*b.lm, *b.parser, text, rel, config);
      if (trace) {
        out << to_record_line(result) << "\n";
      } else {
        out << result.completion_text << "\n";
      }
    } else if (*batch) {
      config.validate();
      auto prompts = read_prompts(prompts_path);
      if (prompts.empty()) throw UsageError("prompts file " + prompts_path + " is empty");
      if (normalize) {
        for (auto& p : prompts) p = normalize_prompt(p);
      }
      auto b = make_backends(backend);
      auto rels = relation_list(*b.taxonomy, relations);
      auto results = batch_generate(*b.lm, *b.parser, prompts, rels, config, workers);
      auto f = open_out(out_path);
      write_records(f, results);
      std::size_t failed = 0;
      for (const auto& r : results) failed += r.error ? 1 : 0;
      out << "wrote " << results.size() << " records to " << out_path;
      if (failed) out << " (" << failed << " failed)";
      out << "\n";
    } else if (*evaluate) {
      auto records = read_records_file(records_path);
      auto b = make_backends(backend);
      auto report = build_report(*b.lm, *b.parser, *b.taxonomy, records);
      write_report_table(out, report);
      if (!out_path.empty()) {
        auto f = open_out(out_path);
        write_report_csv(f, report);
      }
    } else if (*perturb) {
      std::vector<GenerationResult> controlled;
      for (auto& r : read_records_file(records_path)) {
        if (r.relation && !r.error) controlled.push_back(std::move(r));
      }
      const auto curve = perturbation_curve(controlled);
      export_curve(curve, out_path);
      out << "wrote " << curve.per_step_mean_spread.size() << " steps over " << curve.n_generations
          << " generations to " << out_path << "\n";
    } else if (*serve_check) {
      if (endpoint.empty()) {
        if (const char* env = std::getenv(kEndpointEnv)) endpoint = env;
      }
      if (endpoint.empty()) throw UsageError(std::string("serve-check needs --endpoint or $") + kEndpointEnv);
      auto ep = std::make_shared<RemoteEndpoint>(endpoint, 10.0);
      const auto health = ep->get(wire::kHealthPath);
      wire::check_version(health);
      RemoteLanguageModel lm(ep);
      RemoteDiscourseParser parser(ep);
      out << "endpoint " << endpoint << " protocol_version " << wire::kProtocolVersion << "\n"
          << "lm_model " << health.value("lm_model", "?") << " vocabulary " << lm.codec().vocabulary().size() << "\n"
          << "parser_model " << health.value("parser_model", "?") << " relations " << parser.relation_count() << "\n";
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return is_usage_error(e.code()) ? 1 : 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

}  // namespace rstctg
