#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "taxsim/taxonomy.hpp"

namespace taxsim {

/// One directed co-occurrence: `predicate` selects for `argument`.
struct CoocPair {
  std::string predicate;
  std::string argument;
  double count = 1.0;
};

/// Parses `predicate<TAB>argument<TAB>count` lines; count defaults to 1.
std::vector<CoocPair> parse_pairs(std::istream& in);
std::vector<CoocPair> load_pairs_file(const std::filesystem::path& path);

/// Directed predicate -> argument-class counts and the derived
/// distributions p(c|w) and p(c) over a single class inventory: every
/// concept that received nonzero credit from any argument.
///
/// An argument with k senses credits count/k to each concept subsuming one
/// of its senses (a concept above several senses collects each share).
class CoocModel {
 public:
  const Taxonomy& taxonomy() const { return *taxonomy_; }

  bool has_predicate(std::string_view w) const;
  double word_total(std::string_view w) const;
  double pair_count(std::string_view predicate, std::string_view argument) const;
  double class_freq(std::string_view w, ConceptIndex c) const;
  /// Normalized prior p(c) over the class inventory (0 outside it).
  double prior(ConceptIndex c) const { return prior_[c]; }
  /// p(c|w). Throws Error(Vocabulary) for unseen predicates.
  double conditional(std::string_view w, ConceptIndex c) const;
  /// D(p(C|w) || p(C)) in nats.
  double divergence(std::string_view w) const;
  std::span<const ConceptIndex> inventory() const { return inventory_; }
  /// Count of pairs whose argument had no senses.
  double skipped() const { return skipped_; }

 private:
  friend CoocModel ingest_pairs(const Taxonomy&, std::span<const CoocPair>);

  struct Predicate {
    double total = 0.0;       // raw counts of accepted pairs
    double credited = 0.0;    // sum of class_freq over the inventory
    double divergence = 0.0;
    std::unordered_map<ConceptIndex, double> class_freq;
    std::map<std::string, double, std::less<>> arguments;
  };

  explicit CoocModel(const Taxonomy& t) : taxonomy_(&t), prior_(t.size(), 0.0) {}
  const Predicate& predicate(std::string_view w) const;

  const Taxonomy* taxonomy_;
  std::map<std::string, Predicate, std::less<>> predicates_;
  std::vector<double> prior_;
  std::vector<ConceptIndex> inventory_;
  double skipped_ = 0.0;
};

CoocModel ingest_pairs(const Taxonomy& t, std::span<const CoocPair> pairs);

/// Selectional association A(w, c) = p(c|w) log(p(c|w)/p(c)) / D.
/// Returns 0 when D = 0. Throws Error(Vocabulary) for unseen predicates
/// and Error(Degenerate) when p(c) = 0 but p(c|w) > 0.
double sel_assoc_class(const CoocModel& cm, std::string_view w, ConceptIndex c);
double sel_assoc_class(const CoocModel& cm, std::string_view w, std::string_view cid);

struct WordAssociation {
  double value = 0.0;
  std::optional<ConceptIndex> cls;  // class realizing the maximum
};

/// A(w1, w2): max of A(w1, c) over every class subsuming a sense of w2.
/// 0 with no class when w2 has no senses.
WordAssociation sel_assoc_word(const CoocModel& cm, std::string_view w1, std::string_view w2);

}  // namespace taxsim
