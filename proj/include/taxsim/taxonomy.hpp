#pragma once

#include <compare>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace taxsim {

/// Opaque concept identifier, unique within a taxonomy.
class ConceptId {
 public:
  ConceptId() = default;
  explicit ConceptId(std::string id) : id_(std::move(id)) {}

  const std::string& str() const noexcept { return id_; }

  friend auto operator<=>(const ConceptId&, const ConceptId&) = default;
  friend bool operator==(const ConceptId&, const ConceptId&) = default;

 private:
  std::string id_;
};

std::ostream& operator<<(std::ostream& os, const ConceptId& id);

/// Dense index of a concept inside one Taxonomy. Index order is the
/// lexicographic order of the concept ids, so sorting indices sorts ids.
using ConceptIndex = std::uint32_t;

/// Name of the synthetic root inserted when LoadOptions::virtual_root is set.
inline constexpr std::string_view kVirtualRootId = "__TOP__";

struct LoadOptions {
  bool virtual_root = false;
  /// Concept returned by senses() for words that have none.
  std::optional<std::string> fallback_concept;
};

/// One line of a taxonomy file before validation.
struct ConceptRecord {
  std::string id;
  std::vector<std::string> parents;
  std::vector<std::string> words;
  std::size_t line = 0;  // 0 when not read from a file
};

/// An ancestor of some concept together with the length of the shortest
/// upward IS-A path reaching it.
struct Ancestor {
  ConceptIndex node;
  unsigned distance;
};

/// Immutable IS-A DAG with multiple inheritance and a word -> sense index.
///
/// Everything derived from the graph (topological order, ancestor sets with
/// upward distances, depths) is computed at construction, so a Taxonomy can
/// be shared by any number of concurrent readers.
class Taxonomy {
 public:
  /// Validates the records and builds the graph. Throws Error(Load) on
  /// duplicate ids, dangling parents, cycles or a missing fallback concept.
  static Taxonomy from_records(std::vector<ConceptRecord> records,
                               const LoadOptions& options = {});

  std::size_t size() const noexcept { return ids_.size(); }

  std::optional<ConceptIndex> find(std::string_view id) const;
  /// Throws Error(Vocabulary) for unknown ids.
  ConceptIndex index_of(std::string_view id) const;
  const ConceptId& id(ConceptIndex c) const { return ids_[c]; }

  std::span<const ConceptIndex> parents(ConceptIndex c) const { return parents_[c]; }
  std::span<const ConceptIndex> children(ConceptIndex c) const { return children_[c]; }
  std::span<const std::string> words(ConceptIndex c) const { return words_[c]; }
  /// Parentless concepts. With a virtual root this is just the virtual root.
  std::span<const ConceptIndex> roots() const { return roots_; }
  std::optional<ConceptIndex> virtual_root() const { return virtual_root_; }
  std::optional<ConceptIndex> fallback_concept() const { return fallback_; }
  /// Parents always precede children.
  std::span<const ConceptIndex> topological_order() const { return topo_; }

  /// Concepts listing `word`, ignoring the fallback.
  std::span<const ConceptIndex> sense_index(std::string_view word) const;
  /// s(w): sense_index(word), or {fallback} when that is empty and a
  /// fallback concept is configured.
  std::vector<ConceptIndex> sense_indices(std::string_view word) const;
  bool knows_word(std::string_view word) const { return !sense_indices(word).empty(); }
  std::vector<std::string> vocabulary() const;

  /// Reflexive-transitive ancestors of c, sorted by index.
  std::span<const Ancestor> ancestors(ConceptIndex c) const { return ancestors_[c]; }
  /// True when `ancestor` subsumes c (reflexively).
  bool subsumes(ConceptIndex ancestor, ConceptIndex c) const;
  std::vector<ConceptIndex> common_ancestors(ConceptIndex c1, ConceptIndex c2) const;
  /// Shortest up-then-down path through a common ancestor, in edges.
  std::optional<unsigned> path_length(ConceptIndex c1, ConceptIndex c2) const;
  /// Minimum edge count from a root down to c.
  unsigned depth(ConceptIndex c) const { return depth_[c]; }
  unsigned max_depth() const noexcept { return max_depth_; }

  // Id-level conveniences. Results are in lexicographic id order and throw
  // Error(Vocabulary) on unknown concept ids.
  std::vector<ConceptId> senses(std::string_view word) const;
  std::vector<ConceptId> subsumers(std::string_view cid) const;
  std::vector<ConceptId> common_subsumers(std::string_view c1, std::string_view c2) const;
  std::optional<unsigned> shortest_path_edges(std::string_view c1, std::string_view c2) const;
  unsigned depth_edges(std::string_view cid) const;

  std::vector<ConceptId> to_ids(std::span<const ConceptIndex> concepts) const;

 private:
  Taxonomy() = default;

  std::vector<ConceptId> ids_;
  std::vector<std::vector<ConceptIndex>> parents_;
  std::vector<std::vector<ConceptIndex>> children_;
  std::vector<std::vector<std::string>> words_;
  std::vector<std::vector<Ancestor>> ancestors_;
  std::vector<unsigned> depth_;
  std::vector<ConceptIndex> roots_;
  std::vector<ConceptIndex> topo_;
  std::map<std::string, std::vector<ConceptIndex>, std::less<>> sense_index_;
  std::optional<ConceptIndex> virtual_root_;
  std::optional<ConceptIndex> fallback_;
  unsigned max_depth_ = 0;
};

/// Parses `concept_id<TAB>parent_ids<TAB>words` records. Trailing empty
/// fields may be omitted; '#' lines and blank lines are skipped.
std::vector<ConceptRecord> parse_taxonomy(std::istream& in);

Taxonomy load_taxonomy(std::istream& in, const LoadOptions& options = {});
Taxonomy load_taxonomy_file(const std::filesystem::path& path,
                            const LoadOptions& options = {});

}  // namespace taxsim
