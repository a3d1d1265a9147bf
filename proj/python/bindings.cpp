#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <sstream>

#include "rstctg/analysis.hpp"
#include "rstctg/batch.hpp"
#include "rstctg/decoder.hpp"
#include "rstctg/desk.hpp"
#include "rstctg/error.hpp"
#include "rstctg/eval.hpp"
#include "rstctg/records.hpp"
#include "rstctg/remote.hpp"

namespace py = pybind11;
using namespace rstctg;

namespace {

// Either pair of backends behind one handle, so Python code does not care
// where the models run.
struct Backends {
  std::shared_ptr<const Taxonomy> taxonomy;
  std::shared_ptr<const LanguageModel> lm;
  std::shared_ptr<const DiscourseParser> parser;

  std::optional<Relation> relation(const std::optional<std::string>& name) const {
    if (!name || *name == "None") return std::nullopt;
    return taxonomy->parse_relation_name(*name);
  }
};

Backends desk(const std::optional<std::filesystem::path>& data_dir, int order, double delta,
              const std::optional<std::filesystem::path>& lm_model) {
  DeskSetup s = DeskSetup::defaults();
  if (data_dir) {
    s.taxonomy = *data_dir / "taxonomy.txt";
    s.lexicon = *data_dir / "lexicon.tsv";
    s.corpus = *data_dir / "desk_corpus.txt";
  }
  s.order = order;
  s.delta = delta;
  s.lm_model = lm_model;
  py::gil_scoped_release release;
  auto d = load_desk(s);
  return Backends{d.taxonomy, d.lm, d.parser};
}

Backends remote(const std::string& endpoint, const std::optional<std::filesystem::path>& taxonomy) {
  py::gil_scoped_release release;
  auto ep = std::make_shared<RemoteEndpoint>(endpoint);
  Backends b;
  b.taxonomy = std::make_shared<const Taxonomy>(Taxonomy::load(taxonomy.value_or(DeskSetup::defaults().taxonomy)));
  b.lm = std::make_shared<const RemoteLanguageModel>(ep);
  b.parser = std::make_shared<const RemoteDiscourseParser>(ep);
  return b;
}

GenerationConfig make_config(double p, std::size_t k, double tau, double alpha, std::size_t max_new_tokens,
                             bool stop_on_period) {
  GenerationConfig c;
  c.p = p;
  c.k = k;
  c.tau = tau;
  c.alpha = alpha;
  c.max_new_tokens = max_new_tokens;
  c.stop_on_period = stop_on_period;
  return c;
}

NucleusSet to_nucleus(const std::vector<std::pair<TokenId, double>>& members) {
  NucleusSet s;
  for (auto [id, p] : members) s.members.push_back({id, p});
  return s;
}

py::dict row_dict(const RelationRow& r) {
  py::dict d;
  d["relation"] = r.relation;
  d["n"] = r.n;
  d["n_correct"] = r.n_correct;
  d["correct_percent"] = r.correct_percent;
  d["mean_perplexity"] = r.mean_perplexity;
  d["n_scored"] = r.n_scored;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Relation-controlled generation with parser-guided decoding";

  static py::exception<Error> error_type(m, "Error");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      // args = (code name, message)
      PyErr_SetObject(error_type.ptr(), py::make_tuple(std::string(error_code_name(e.code())), e.what()).ptr());
    }
  });

  py::class_<Relation>(m, "Relation")
      .def_readonly("category", &Relation::category)
      .def_property_readonly("nuclearity",
                             [](const Relation& r) { return r.name().substr(r.category.size() + 1); })
      .def_readonly("index", &Relation::index)
      .def_property_readonly("name", &Relation::name)
      .def("__repr__", [](const Relation& r) { return "<Relation " + r.name() + ">"; })
      .def(py::self == py::self);

  py::class_<Taxonomy, std::shared_ptr<Taxonomy>>(m, "Taxonomy")
      .def_static("load", [](const std::filesystem::path& p) { return std::make_shared<Taxonomy>(Taxonomy::load(p)); })
      .def("parse", &Taxonomy::parse_relation_name, py::return_value_policy::copy)
      .def("__len__", &Taxonomy::size)
      .def("__getitem__", &Taxonomy::at, py::return_value_policy::copy)
      .def_property_readonly("names",
                             [](const Taxonomy& t) {
                               std::vector<std::string> out;
                               for (const auto& r : t.relations()) out.push_back(r.name());
                               return out;
                             })
      .def_property_readonly("categories", &Taxonomy::categories);

  py::class_<GenerationConfig>(m, "GenerationConfig")
      .def(py::init(&make_config), py::arg("p") = 0.75, py::arg("k") = 100, py::arg("tau") = 0.1,
           py::arg("alpha") = 0.7, py::arg("max_new_tokens") = 30, py::arg("stop_on_period") = true)
      .def_readwrite("p", &GenerationConfig::p)
      .def_readwrite("k", &GenerationConfig::k)
      .def_readwrite("tau", &GenerationConfig::tau)
      .def_readwrite("alpha", &GenerationConfig::alpha)
      .def_readwrite("max_new_tokens", &GenerationConfig::max_new_tokens)
      .def_readwrite("stop_on_period", &GenerationConfig::stop_on_period)
      .def("validate", &GenerationConfig::validate);

  py::class_<StepRecord>(m, "StepRecord")
      .def_readonly("step", &StepRecord::step)
      .def_readonly("nucleus_size", &StepRecord::nucleus_size)
      .def_readonly("parser_score_max", &StepRecord::parser_score_max)
      .def_readonly("parser_score_min", &StepRecord::parser_score_min)
      .def_property_readonly("chosen_id", [](const StepRecord& s) { return s.chosen_token.id; })
      .def_property_readonly("chosen_surface", [](const StepRecord& s) { return s.chosen_token.surface; })
      .def_readonly("chosen_lm_prob", &StepRecord::chosen_lm_prob)
      .def_readonly("chosen_parser_score", &StepRecord::chosen_parser_score);

  py::class_<GenerationResult>(m, "GenerationResult")
      .def_readonly("prompt", &GenerationResult::prompt)
      .def_readonly("relation", &GenerationResult::relation)
      .def_readonly("config", &GenerationResult::config)
      .def_readonly("completion", &GenerationResult::completion_text)
      .def_property_readonly("tokens",
                             [](const GenerationResult& g) {
                               std::vector<std::pair<TokenId, std::string>> out;
                               for (const auto& t : g.completion_tokens) out.emplace_back(t.id, t.surface);
                               return out;
                             })
      .def_readonly("steps", &GenerationResult::steps)
      .def_property_readonly("stop_reason", [](const GenerationResult& g) { return std::string(to_string(g.stop_reason)); })
      .def_readonly("error", &GenerationResult::error)
      .def("to_record", &to_record_line)
      .def_static("from_record", &from_record_line)
      .def(py::self == py::self)
      .def("__repr__", [](const GenerationResult& g) { return "<GenerationResult " + g.completion_text + ">"; });

  py::class_<Backends>(m, "Backends")
      .def_static("desk", &desk, py::arg("data_dir") = py::none(), py::arg("order") = 2, py::arg("delta") = 0.01,
                  py::arg("lm_model") = py::none(), "n-gram LM and cue-lexicon parser built from the data files")
      .def_static("remote", &remote, py::arg("endpoint"), py::arg("taxonomy") = py::none(),
                  "LM and parser served over the HTTP model protocol")
      .def_property_readonly("taxonomy", [](const Backends& b) { return std::make_shared<Taxonomy>(*b.taxonomy); })
      .def(
          "generate",
          [](const Backends& b, const std::string& prompt, const std::optional<std::string>& relation,
             GenerationConfig config) {
            auto rel = b.relation(relation);
            if (!rel) config.alpha = 0.0;
            py::gil_scoped_release release;
            return generate(*b.lm, *b.parser, prompt, rel, config);
          },
          py::arg("prompt"), py::arg("relation") = py::none(), py::arg("config") = GenerationConfig{})
      .def(
          "batch",
          [](const Backends& b, const std::vector<std::string>& prompts, const std::vector<std::string>& relations,
             const GenerationConfig& config, unsigned workers) {
            std::vector<Relation> rels;
            for (const auto& n : relations) rels.push_back(b.taxonomy->parse_relation_name(n));
            py::gil_scoped_release release;
            return batch_generate(*b.lm, *b.parser, prompts, rels, config, workers);
          },
          py::arg("prompts"), py::arg("relations"), py::arg("config") = GenerationConfig{}, py::arg("workers") = 1)
      .def(
          "evaluate",
          [](const Backends& b, const std::vector<GenerationResult>& results) {
            EvalReport r;
            {
              py::gil_scoped_release release;
              r = build_report(*b.lm, *b.parser, *b.taxonomy, results);
            }
            py::dict out;
            py::list rows;
            for (const auto& row : r.rows) rows.append(row_dict(row));
            out["rows"] = rows;
            out["all_relations"] = row_dict(r.all_relations);
            out["baseline_mean_perplexity"] = r.baseline_mean_perplexity;
            out["n_baseline"] = r.n_baseline;
            std::ostringstream csv;
            write_report_csv(csv, r);
            out["csv"] = csv.str();
            return out;
          },
          py::arg("results"))
      .def(
          "relation_logits",
          [](const Backends& b, const std::string& left, const std::string& right) {
            return b.parser->relation_logits(b.parser->codec().tokenize(left), b.parser->codec().tokenize(right));
          },
          py::arg("left"), py::arg("right"))
      .def(
          "next_distribution",
          [](const Backends& b, const std::string& prompt) {
            return b.lm->next_distribution(b.lm->codec().tokenize(prompt), {});
          },
          py::arg("prompt"));

  m.def(
      "nucleus",
      [](const std::vector<double>& dist, double p, std::size_t k) {
        std::vector<std::pair<TokenId, double>> out;
        for (const auto& mbr : nucleus(dist, p, k).members) out.emplace_back(mbr.id, mbr.probability);
        return out;
      },
      py::arg("dist"), py::arg("p") = 0.75, py::arg("k") = 100, "[(token id, probability)] of the top-p set");
  m.def(
      "temperature_softmax",
      [](const std::vector<double>& logits, double tau) { return temperature_softmax(logits, tau); },
      py::arg("logits"), py::arg("tau") = 0.1);
  m.def(
      "fuse_select",
      [](const std::vector<std::pair<TokenId, double>>& members, const std::vector<double>& scores, double alpha) {
        return fuse_select(to_nucleus(members), scores, alpha);
      },
      py::arg("members"), py::arg("scores"), py::arg("alpha") = 0.7, "position of the selected member");
  m.def(
      "perturbation_curve",
      [](const std::vector<GenerationResult>& results) {
        const auto c = perturbation_curve(results);
        py::dict out;
        out["mean_spread"] = c.per_step_mean_spread;
        out["n_observations"] = c.n_observations_per_step;
        out["n_generations"] = c.n_generations;
        return out;
      },
      py::arg("results"));
  m.def(
      "train_ngram",
      [](const std::filesystem::path& corpus, const std::filesystem::path& out, int order, double delta) {
        NgramModel::train_file(corpus, order, delta).save_file(out);
      },
      py::arg("corpus"), py::arg("out"), py::arg("order") = 2, py::arg("delta") = 0.01);
  m.def("normalize_prompt", &normalize_prompt);
  m.def("default_data_dir", &default_data_dir);
}
