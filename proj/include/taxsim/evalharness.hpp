#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "taxsim/probmodel.hpp"

namespace taxsim {

/// One benchmark word pair with the published per-measure ratings.
struct EvalPair {
  std::string word1, word2;
  double mc_mean;    // Miller-Charles mean rating, 0..4
  double repl_mean;  // replication mean rating
  double wsim, wsim_edge, wsim_p;
};

/// The 28 rated pairs with their published similarity values.
std::span<const EvalPair> published_pairs();

/// Reads `word1,word2,mc_mean,repl_mean,wsim,wsim_edge,wsim_p` rows. A
/// header row starting with "word1" is skipped.
std::vector<EvalPair> load_eval_csv(std::istream& in);

/// Sample Pearson correlation. Throws Error(Domain) for mismatched or
/// too-short inputs and for zero variance.
double pearson(std::span<const double> xs, std::span<const double> ys);

/// Word-level measures available to live evaluation.
enum class WordMeasure {
  Resnik,      // information content
  Edge,        // 2*MAX - len, 0 when disconnected
  EdgeVirtualTop,
  Prob,        // 1 - p(mis)
  LeacockChodorow,
  Lin,
  WuPalmer,
  PathLength,  // raw min len (a distance); disconnected pairs excluded
};

std::string_view to_string(WordMeasure m);
/// Accepts resnik|edge|edge-vtop|prob|lc|lin|wup|len.
WordMeasure parse_word_measure(std::string_view name);

/// True for measures that need concept probabilities.
bool needs_probabilities(WordMeasure measure);

/// Evaluates one measure on a word pair. Pairs the measure cannot connect
/// score 0, except PathLength which throws Error(NoPath). `m` may be null
/// for purely structural measures.
double word_similarity(const Taxonomy& t, const ProbabilityModel* m, std::string_view w1,
                       std::string_view w2, WordMeasure measure, double log_base = 2.0);

struct CorrelationEntry {
  std::string method;
  double r;
};

struct CorrelationReport {
  std::vector<CorrelationEntry> entries;
  std::size_t item_count = 0;
  std::vector<std::string> excluded;  // "word1,word2" of pairs left out
};

/// Correlations of the published columns with the Miller-Charles means:
/// replication, information content, probability, edge counting.
CorrelationReport eval_published();
CorrelationReport eval_published(std::span<const EvalPair> pairs);

struct GoldPair {
  std::string word1, word2;
  double rating;
};

/// Reads the first three columns (`word1,word2,rating`) of the CSV format.
std::vector<GoldPair> load_gold_csv(std::istream& in);

/// Scores every pair whose words both have senses and correlates with the
/// gold ratings. Throws Error(Domain) with fewer than two scorable pairs.
CorrelationReport eval_live(const Taxonomy& t, const ProbabilityModel* m,
                            std::span<const GoldPair> pairs, WordMeasure measure,
                            double log_base = 2.0);

}  // namespace taxsim
