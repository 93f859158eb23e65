#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "taxsim/probmodel.hpp"

namespace taxsim {

/// An ordered group of distinct nouns.
struct NounGroup {
  std::vector<std::string> words;
};

/// Builds a group, dropping repeated words. Each dropped duplicate is
/// reported in `warnings` when given.
NounGroup make_group(std::vector<std::string> words, std::vector<std::string>* warnings = nullptr);

struct PairSupport {
  std::size_t i, j;                       // word positions, i < j
  double v;                               // wsim(wi, wj)
  std::vector<ConceptIndex> subsumers;    // most informative subsumer(s)
};

/// Per-word output of the noun-group algorithm.
struct WordSenses {
  std::string word;
  std::vector<ConceptIndex> senses;
  std::vector<double> support;  // parallel to senses
  std::vector<double> phi;      // parallel to senses
  double normalization = 0.0;
  /// False when the word had no senses and took no part in pairing.
  bool scored = true;
};

struct GroupResult {
  std::vector<WordSenses> words;  // same order as the group
  std::vector<PairSupport> pairs;
};

/// Pairwise support/normalization algorithm: each pair's similarity v is
/// credited to every sense lying under the pair's most informative
/// subsumer and to both words' normalizations; phi = support/normalization,
/// or uniform when normalization is 0. Ties between subsumers credit a
/// sense once if any tied subsumer is its ancestor.
GroupResult disambiguate_group(const ProbabilityModel& m, const NounGroup& group);

/// Maps phi in [0,1] onto confidence levels 1..5 with equal-width bins
/// (1 + floor(5 phi), and phi = 1 lands in 5). Throws Error(Domain)
/// outside [0,1].
int scale_confidence(double phi);

struct FilterSettings {
  double threshold = 0.1;
  int min_level = 1;

  static FilterSettings presentation() { return {0.1, 1}; }
  static FilterSettings evaluation() { return {0.0, 3}; }
};

struct SenseDecision {
  std::string word;
  std::string sense;  // concept id
  double phi;
  int level;
  bool included;
};

/// Decisions for one item (usually one noun group).
struct ItemPartition {
  std::string item_id;
  std::vector<SenseDecision> senses;
};

/// Included iff phi >= threshold and scale_confidence(phi) >= min_level.
ItemPartition filter_senses(const Taxonomy& t, const GroupResult& result,
                            const FilterSettings& settings, std::string item_id = {});

/// Reference labels: per item a known flag and, per (word, sense id),
/// whether the sense is correct.
class SenseAnnotation {
 public:
  void set_known(const std::string& item, bool known);
  void label(const std::string& item, const std::string& word, const std::string& sense,
             bool correct);

  /// Items without a known/unknown record count as known.
  bool is_known(std::string_view item) const;
  std::optional<bool> is_correct(std::string_view item, std::string_view word,
                                 std::string_view sense) const;
  std::vector<std::string> items() const;
  /// Number of senses labeled correct for an item.
  std::size_t correct_count(std::string_view item) const;

 private:
  struct Item {
    std::optional<bool> known;
    std::map<std::pair<std::string, std::string>, bool> labels;
  };
  std::map<std::string, Item, std::less<>> items_;
};

/// Reads `item<TAB>word<TAB>sense<TAB>correct|incorrect` and
/// `item<TAB>known|unknown` records.
SenseAnnotation load_annotations(std::istream& in);

struct PrecisionRecall {
  std::optional<double> precision;  // absent when the denominator is 0
  std::optional<double> recall;
  std::size_t hits = 0;             // correctly included / correctly excluded
  std::size_t predicted = 0;        // included / excluded
  std::size_t relevant = 0;         // correct / incorrect
};

/// Selection paradigm: included senses against senses labeled correct.
/// Unknown items are skipped; an unlabeled sense in a known item throws
/// Error(Vocabulary).
PrecisionRecall score_selection(const std::vector<ItemPartition>& items,
                                const SenseAnnotation& ann);
/// Filtering paradigm: excluded senses against senses labeled incorrect.
PrecisionRecall score_filtering(const std::vector<ItemPartition>& items,
                                const SenseAnnotation& ann);

struct BaselineItem {
  std::string item_id;
  std::vector<std::pair<std::string, std::string>> senses;  // (word, sense id)
};

struct BaselineResult {
  double inclusion_probability = 0.0;
  /// Mean over runs of the included-sense count.
  double mean_included = 0.0;
  /// Metric averages over the runs where each metric was defined.
  std::optional<double> selection_precision, selection_recall;
  std::optional<double> filtering_precision, filtering_recall;
};

/// Includes each sense independently with probability
/// q = min(1, target_avg / mean senses per item), `runs` times with a
/// generator seeded by `seed`, and averages the metrics. Unknown items are
/// left out of both the sense mean and the scoring.
BaselineResult random_baseline(const std::vector<BaselineItem>& items,
                               const SenseAnnotation& ann, double target_avg, int runs,
                               std::uint64_t seed);

}  // namespace taxsim
