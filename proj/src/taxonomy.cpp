#include "rstctg/taxonomy.hpp"

#include <fstream>
#include <set>

#include "rstctg/error.hpp"
#include "text_util.hpp"

namespace rstctg {

std::string_view to_string(Nuclearity n) {
  switch (n) {
    case Nuclearity::NN: return "NN";
    case Nuclearity::NS: return "NS";
    case Nuclearity::SN: return "SN";
  }
  return "NN";
}

std::optional<Nuclearity> parse_nuclearity(std::string_view text) {
  if (text == "NN") return Nuclearity::NN;
  if (text == "NS") return Nuclearity::NS;
  if (text == "SN") return Nuclearity::SN;
  return std::nullopt;
}

std::string Relation::name() const {
  std::string out = category;
  out += '_';
  out += to_string(nuclearity);
  return out;
}

namespace {

struct SplitName {
  std::string_view category;
  std::string_view suffix;
};

std::optional<SplitName> split_name(std::string_view name) {
  const auto pos = name.rfind('_');
  if (pos == std::string_view::npos || pos == 0 || pos + 1 == name.size()) return std::nullopt;
  return SplitName{name.substr(0, pos), name.substr(pos + 1)};
}

}  // namespace

Taxonomy Taxonomy::from_names(const std::vector<std::string>& names) {
  Taxonomy t;
  for (const auto& name : names) {
    auto parts = split_name(name);
    if (!parts) throw Error(ErrorCode::InvalidTaxonomy, "entry without nuclearity suffix: " + name);
    auto nuc = parse_nuclearity(parts->suffix);
    if (!nuc) throw Error(ErrorCode::InvalidTaxonomy, "bad nuclearity in entry: " + name);
    if (t.by_name_.count(name)) throw Error(ErrorCode::InvalidTaxonomy, "duplicate entry: " + name);
    const std::size_t index = t.relations_.size();
    t.relations_.push_back(Relation{std::string(parts->category), *nuc, index});
    t.by_name_.emplace(name, index);
  }
  if (t.relations_.size() != kRelationCount) {
    throw Error(ErrorCode::InvalidTaxonomy, "expected " + std::to_string(kRelationCount) +
                                                " relations, found " + std::to_string(t.relations_.size()));
  }
  if (t.categories().size() != kCategoryCount) {
    throw Error(ErrorCode::InvalidTaxonomy, "expected " + std::to_string(kCategoryCount) +
                                                " categories, found " + std::to_string(t.categories().size()));
  }
  return t;
}

Taxonomy Taxonomy::parse(std::istream& in) {
  std::vector<std::string> names;
  std::string line;
  while (std::getline(in, line)) {
    auto trimmed = detail::trim(line);
    if (trimmed.empty() || trimmed.front() == '#') continue;
    names.emplace_back(trimmed);
  }
  return from_names(names);
}

Taxonomy Taxonomy::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoFailure, "cannot open taxonomy file " + path.string());
  return parse(in);
}

const Relation& Taxonomy::parse_relation_name(std::string_view name) const {
  auto parts = split_name(name);
  if (!parts) throw Error(ErrorCode::MalformedName, "expected {Category}_{Nuclearity}, got '" + std::string(name) + "'");
  auto it = by_name_.find(std::string(name));
  if (it == by_name_.end()) throw Error(ErrorCode::UnknownRelation, "'" + std::string(name) + "' is not in the taxonomy");
  return relations_[it->second];
}

std::vector<std::string> Taxonomy::categories() const {
  std::vector<std::string> out;
  std::set<std::string> seen;
  for (const auto& r : relations_) {
    if (seen.insert(r.category).second) out.push_back(r.category);
  }
  return out;
}

}  // namespace rstctg
