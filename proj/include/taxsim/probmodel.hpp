#pragma once

#include <filesystem>
#include <iosfwd>
#include <limits>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "taxsim/taxonomy.hpp"

namespace taxsim {

/// Optional surface -> lemma rewriting applied to tokens before lookup.
using LemmaMap = std::map<std::string, std::string, std::less<>>;

/// Parses `surface<TAB>lemma` lines.
LemmaMap load_lemma_map(std::istream& in);
LemmaMap load_lemma_map_file(const std::filesystem::path& path);

/// Propagated concept frequencies over one taxonomy. A token credits every
/// concept subsuming any of its senses exactly once, so counts never
/// decrease going up the DAG.
class FrequencyTable {
 public:
  explicit FrequencyTable(const Taxonomy& taxonomy)
      : taxonomy_(&taxonomy), freq_(taxonomy.size(), 0.0) {}

  const Taxonomy& taxonomy() const { return *taxonomy_; }

  /// Credits `weight` occurrences of `word`. Returns false (and tallies
  /// the word as skipped) when it has no senses.
  bool add(std::string_view word, double weight = 1.0);

  double freq(ConceptIndex c) const { return freq_[c]; }
  double freq(std::string_view cid) const { return freq_[taxonomy_->index_of(cid)]; }
  std::span<const double> frequencies() const { return freq_; }
  double total() const { return total_; }
  /// Weight of tokens that had no senses and were left out of total().
  double skipped() const { return skipped_; }

  /// Fieldwise sum; both tables must come from the same taxonomy.
  FrequencyTable& operator+=(const FrequencyTable& other);

 private:
  const Taxonomy* taxonomy_;
  std::vector<double> freq_;
  std::vector<ConceptIndex> scratch_;
  double total_ = 0.0;
  double skipped_ = 0.0;
};

/// Counts whitespace-separated tokens from raw text.
FrequencyTable count_corpus(const Taxonomy& taxonomy, std::istream& text,
                            const LemmaMap* lemmas = nullptr);
FrequencyTable count_corpus(const Taxonomy& taxonomy, std::span<const std::string> tokens,
                            const LemmaMap* lemmas = nullptr);
/// Counts `word<TAB>count` lines.
FrequencyTable count_word_counts(const Taxonomy& taxonomy, std::istream& counts,
                                 const LemmaMap* lemmas = nullptr);

/// Concept probabilities and information content, -log_base p(c).
/// Concepts with p = 0 carry an information content of +infinity.
class ProbabilityModel {
 public:
  static constexpr double kInfiniteIc = std::numeric_limits<double>::infinity();

  /// p and ic must have one entry per concept and agree with each other.
  ProbabilityModel(const Taxonomy& taxonomy, std::vector<double> p, std::vector<double> ic,
                   double log_base);

  const Taxonomy& taxonomy() const { return *taxonomy_; }
  double log_base() const { return log_base_; }

  double p(ConceptIndex c) const { return p_[c]; }
  double ic(ConceptIndex c) const { return ic_[c]; }
  double p(std::string_view cid) const { return p_[taxonomy_->index_of(cid)]; }
  double ic(std::string_view cid) const { return ic_[taxonomy_->index_of(cid)]; }

  /// Same probabilities with information content measured in another base.
  ProbabilityModel rebased(double log_base) const;

 private:
  const Taxonomy* taxonomy_;
  std::vector<double> p_;
  std::vector<double> ic_;
  double log_base_;
};

/// Relative-frequency estimate p(c) = freq(c) / N. Throws
/// Error(Degenerate) when the table is empty.
ProbabilityModel to_probability(const FrequencyTable& table, double log_base = 2.0);

/// Reads `concept<TAB>p=<real>` / `concept<TAB>ic=<real>` records (also
/// accepting a bare probability, or ':' instead of '='). ic values are in
/// `log_base`. Unlisted concepts get p = 0, except a virtual root which gets
/// p = 1. Rejects any edge where the child is more probable than its parent.
ProbabilityModel load_probabilities(const Taxonomy& taxonomy, std::istream& in,
                                    double log_base = 2.0);
ProbabilityModel load_probabilities_file(const Taxonomy& taxonomy,
                                         const std::filesystem::path& path,
                                         double log_base = 2.0);

/// Writes the model in the `ic=` form understood by load_probabilities.
void write_probabilities(const ProbabilityModel& model, std::ostream& out);

}  // namespace taxsim
