#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "taxsim/probmodel.hpp"
#include "taxsim/taxonomy.hpp"

namespace taxsim {

/// Value of a similarity computation plus what realized it.
struct SimilarityResult {
  double value = 0.0;
  /// Subsumers achieving the optimum, in id order. Empty exactly when the
  /// inputs share no ancestor (or, for words, have no senses).
  std::vector<ConceptIndex> subsumers;
  /// Winning (sense of w1, sense of w2) for word-level results.
  std::optional<std::pair<ConceptIndex, ConceptIndex>> sense_pair;
};

/// Concept-level measures usable inside wsim().
enum class ConceptMeasure { Resnik, Prob, Lin, WuPalmer };

enum class EdgeVariant {
  AssertZero,  // pairs in disjoint sub-taxonomies have similarity 0
  VirtualTop,  // disjoint pairs connect through an implicit top node
};

/// Information-content similarity: max ic over common subsumers.
/// Throws Error(Degenerate) when every common subsumer has infinite ic.
SimilarityResult sim_resnik(const ProbabilityModel& m, ConceptIndex c1, ConceptIndex c2);
SimilarityResult sim_resnik(const ProbabilityModel& m, std::string_view c1, std::string_view c2);

/// max (1 - p(c)) over common subsumers. Same argmax set as sim_resnik.
SimilarityResult sim_prob(const ProbabilityModel& m, ConceptIndex c1, ConceptIndex c2);

/// 2 ic(mis) / (ic(c1) + ic(c2)), maximized per common ancestor. Lin of
/// the top with itself is 1. Throws Error(Degenerate) for concepts with
/// infinite ic and Error(NoPath) when nothing subsumes both.
double sim_lin(const ProbabilityModel& m, ConceptIndex c1, ConceptIndex c2);
double sim_lin(const ProbabilityModel& m, std::string_view c1, std::string_view c2);

struct WuPalmerResult {
  double value;
  ConceptIndex subsumer;
};

/// 2 d(c3) / (d(c1) + d(c2)) with node depths (root = 1), c3 the deepest
/// common subsumer and d(ci) measured along the path through c3.
/// Throws Error(NoPath) when nothing subsumes both.
WuPalmerResult sim_wupalmer_detail(const Taxonomy& t, ConceptIndex c1, ConceptIndex c2);
double sim_wupalmer(const Taxonomy& t, ConceptIndex c1, ConceptIndex c2);
double sim_wupalmer(const Taxonomy& t, std::string_view c1, std::string_view c2);

/// Word similarity: the concept measure maximized over all sense pairs.
/// Sense pairs the measure cannot score (disjoint, zero-frequency) are
/// skipped; with nothing scorable the value is 0 with no subsumers. Ties
/// keep the first pair in (sense1, sense2) id order.
SimilarityResult wsim(const ProbabilityModel& m, std::string_view w1, std::string_view w2,
                      ConceptMeasure measure = ConceptMeasure::Resnik);

/// Like wsim() with the Resnik measure, but `subsumers` is the union of the
/// most informative subsumers over every optimal sense pair, so the result
/// does not depend on argument order.
SimilarityResult wsim_all_subsumers(const ProbabilityModel& m, std::string_view w1,
                                    std::string_view w2);

struct PathResult {
  unsigned length;
  std::pair<ConceptIndex, ConceptIndex> sense_pair;
};

/// Minimum path length over sense pairs. With VirtualTop, disjoint pairs
/// are joined through an implicit top one edge above every root.
std::optional<PathResult> min_sense_path(const Taxonomy& t, std::string_view w1,
                                         std::string_view w2, EdgeVariant variant);

/// Depth bound used by the edge measures: max_depth, plus one when an
/// implicit top has to be added for VirtualTop.
unsigned edge_max_depth(const Taxonomy& t, EdgeVariant variant);

/// (2 * MAX) - min len, or 0 when no sense pair connects (AssertZero).
double wsim_edge(const Taxonomy& t, std::string_view w1, std::string_view w2,
                 EdgeVariant variant = EdgeVariant::AssertZero);

/// -log(max(len, 1) / (2 * MAX)) in `log_base`. Throws Error(NoPath) when
/// no sense pair connects.
double wsim_lc(const Taxonomy& t, std::string_view w1, std::string_view w2,
               double log_base = 2.0, EdgeVariant variant = EdgeVariant::AssertZero);

/// Raw nonnegative per-concept weights; normalize() turns them into an
/// alpha summing to 1 over a given concept set.
class WeightFunction {
 public:
  WeightFunction() = default;
  explicit WeightFunction(std::map<std::string, double, std::less<>> raw);

  void set(std::string cid, double weight);
  double raw(std::string_view cid) const;

  struct Normalized {
    std::vector<double> alpha;  // parallel to the concept span
    bool uniform_fallback;      // all raw weights were zero
  };
  Normalized normalize(const Taxonomy& t, std::span<const ConceptIndex> concepts) const;

 private:
  std::map<std::string, double, std::less<>> raw_;
};

/// Concepts subsuming some sense of w1 and some sense of w2, excluding those
/// with infinite ic.
std::vector<ConceptIndex> shared_concepts(const ProbabilityModel& m, std::string_view w1,
                                          std::string_view w2);

struct WeightedSimilarity {
  double value = 0.0;
  bool uniform_fallback = false;
};

/// sum_i alpha(c_i) ic(c_i) over shared_concepts(w1, w2).
WeightedSimilarity wsim_weighted(const ProbabilityModel& m, std::string_view w1,
                                 std::string_view w2, const WeightFunction& alpha);

}  // namespace taxsim
