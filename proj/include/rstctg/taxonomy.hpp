#pragma once

#include <cstddef>
#include <filesystem>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace rstctg {

enum class Nuclearity { NN, NS, SN };

std::string_view to_string(Nuclearity n);
std::optional<Nuclearity> parse_nuclearity(std::string_view text);

/// One labelled relation, e.g. Contrast_NN. `index` is the position of the
/// relation in a parser's logit vector.
struct Relation {
  std::string category;
  Nuclearity nuclearity = Nuclearity::NN;
  std::size_t index = 0;

  std::string name() const;

  friend bool operator==(const Relation&, const Relation&) = default;
};

/// The fixed relation inventory. Loaded from a text file: one relation name
/// per line, '#' comments, file order is index order.
class Taxonomy {
 public:
  static constexpr std::size_t kRelationCount = 42;
  static constexpr std::size_t kCategoryCount = 18;

  static Taxonomy load(const std::filesystem::path& path);
  static Taxonomy parse(std::istream& in);
  static Taxonomy from_names(const std::vector<std::string>& names);

  /// Throws MalformedName when `name` has no "_NN"-style suffix and
  /// UnknownRelation when it is well formed but not in the inventory.
  const Relation& parse_relation_name(std::string_view name) const;

  std::size_t relation_index(const Relation& r) const { return r.index; }
  const Relation& at(std::size_t index) const { return relations_.at(index); }
  std::size_t size() const { return relations_.size(); }
  const std::vector<Relation>& relations() const { return relations_; }
  std::vector<std::string> categories() const;

 private:
  std::vector<Relation> relations_;
  std::unordered_map<std::string, std::size_t> by_name_;
};

}  // namespace rstctg
