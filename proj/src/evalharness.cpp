#include "taxsim/evalharness.hpp"

#include <array>
#include <cmath>
#include <istream>

#include "taxsim/error.hpp"
#include "taxsim/similarity.hpp"
#include "text_util.hpp"

namespace taxsim {

namespace {

// Per-item similarity table for the 28 scorable Miller-Charles pairs.
const std::array<EvalPair, 28> kPublished{{
    {"car", "automobile", 3.92, 3.9, 8.0411, 30, 0.9962},
    {"gem", "jewel", 3.84, 3.5, 14.9286, 30, 1.0000},
    {"journey", "voyage", 3.84, 3.5, 6.7537, 29, 0.9907},
    {"boy", "lad", 3.76, 3.5, 8.4240, 29, 0.9971},
    {"coast", "shore", 3.70, 3.5, 10.8076, 29, 0.9994},
    {"asylum", "madhouse", 3.61, 3.6, 15.6656, 29, 1.0000},
    {"magician", "wizard", 3.50, 3.5, 13.6656, 30, 0.9999},
    {"midday", "noon", 3.42, 3.6, 12.3925, 30, 0.9998},
    {"furnace", "stove", 3.11, 2.6, 1.7135, 23, 0.6951},
    {"food", "fruit", 3.08, 2.1, 5.0076, 27, 0.9689},
    {"bird", "cock", 3.05, 2.2, 9.3139, 29, 0.9984},
    {"bird", "crane", 2.97, 2.1, 9.3139, 27, 0.9984},
    {"tool", "implement", 2.95, 3.4, 6.0787, 29, 0.9852},
    {"brother", "monk", 2.82, 2.4, 2.9683, 24, 0.8722},
    {"crane", "implement", 1.68, 0.3, 2.9683, 24, 0.8722},
    {"lad", "brother", 1.66, 1.2, 2.9355, 26, 0.8693},
    {"journey", "car", 1.16, 0.7, 0.0000, 0, 0.0000},
    {"monk", "oracle", 1.10, 0.8, 2.9683, 24, 0.8722},
    {"food", "rooster", 0.89, 1.1, 1.0105, 18, 0.5036},
    {"coast", "hill", 0.87, 0.7, 6.2344, 26, 0.9867},
    {"forest", "graveyard", 0.84, 0.6, 0.0000, 0, 0.0000},
    {"monk", "slave", 0.55, 0.7, 2.9683, 27, 0.8722},
    {"coast", "forest", 0.42, 0.6, 0.0000, 0, 0.0000},
    {"lad", "wizard", 0.42, 0.7, 2.9683, 26, 0.8722},
    {"chord", "smile", 0.13, 0.1, 2.3544, 20, 0.8044},
    {"glass", "magician", 0.11, 0.1, 1.0105, 22, 0.5036},
    {"noon", "string", 0.08, 0.0, 0.0000, 0, 0.0000},
    {"rooster", "voyage", 0.08, 0.0, 0.0000, 0, 0.0000},
}};

double parse_field(std::string_view s, std::size_t line_no) {
  const auto v = detail::parse_double(s);
  if (!v) throw Error(ErrorKind::Load, detail::at_line(line_no) + "bad number '" + std::string(s) + "'");
  return *v;
}

}  // namespace

std::span<const EvalPair> published_pairs() { return kPublished; }

std::vector<EvalPair> load_eval_csv(std::istream& in) {
  std::vector<EvalPair> pairs;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (detail::is_skippable(line) || line.starts_with("word1")) continue;
    const auto f = detail::split(line, ',');
    if (f.size() != 7) throw Error(ErrorKind::Load, detail::at_line(line_no) + "expected 7 columns");
    pairs.push_back(EvalPair{std::string(f[0]), std::string(f[1]), parse_field(f[2], line_no),
                             parse_field(f[3], line_no), parse_field(f[4], line_no),
                             parse_field(f[5], line_no), parse_field(f[6], line_no)});
  }
  return pairs;
}

std::vector<GoldPair> load_gold_csv(std::istream& in) {
  std::vector<GoldPair> pairs;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (detail::is_skippable(line) || line.starts_with("word1")) continue;
    const auto f = detail::split(line, ',');
    if (f.size() < 3 || f[0].empty() || f[1].empty())
      throw Error(ErrorKind::Load, detail::at_line(line_no) + "expected word1,word2,rating");
    pairs.push_back(GoldPair{std::string(f[0]), std::string(f[1]), parse_field(f[2], line_no)});
  }
  return pairs;
}

double pearson(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) throw Error(ErrorKind::Domain, "pearson: length mismatch");
  if (xs.size() < 2) throw Error(ErrorKind::Domain, "pearson: need at least two points");
  const double n = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double dx = xs[i] - mx;
    const double dy = ys[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0)
    throw Error(ErrorKind::Domain, "pearson: zero variance, correlation undefined");
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

std::string_view to_string(WordMeasure m) {
  switch (m) {
    case WordMeasure::Resnik: return "resnik";
    case WordMeasure::Edge: return "edge";
    case WordMeasure::EdgeVirtualTop: return "edge-vtop";
    case WordMeasure::Prob: return "prob";
    case WordMeasure::LeacockChodorow: return "lc";
    case WordMeasure::Lin: return "lin";
    case WordMeasure::WuPalmer: return "wup";
    case WordMeasure::PathLength: return "len";
  }
  return "?";
}

WordMeasure parse_word_measure(std::string_view name) {
  for (auto m : {WordMeasure::Resnik, WordMeasure::Edge, WordMeasure::EdgeVirtualTop,
                 WordMeasure::Prob, WordMeasure::LeacockChodorow, WordMeasure::Lin,
                 WordMeasure::WuPalmer, WordMeasure::PathLength}) {
    if (to_string(m) == name) return m;
  }
  throw Error(ErrorKind::Domain, "unknown measure '" + std::string(name) + "'");
}

bool needs_probabilities(WordMeasure measure) {
  return measure == WordMeasure::Resnik || measure == WordMeasure::Prob ||
         measure == WordMeasure::Lin;
}

double word_similarity(const Taxonomy& t, const ProbabilityModel* m, std::string_view w1,
                       std::string_view w2, WordMeasure measure, double log_base) {
  if (needs_probabilities(measure) && !m)
    throw Error(ErrorKind::Domain,
                "measure '" + std::string(to_string(measure)) + "' needs concept probabilities");
  switch (measure) {
    case WordMeasure::Resnik: return wsim(*m, w1, w2, ConceptMeasure::Resnik).value;
    case WordMeasure::Prob: return wsim(*m, w1, w2, ConceptMeasure::Prob).value;
    case WordMeasure::Lin: return wsim(*m, w1, w2, ConceptMeasure::Lin).value;
    case WordMeasure::Edge: return wsim_edge(t, w1, w2, EdgeVariant::AssertZero);
    case WordMeasure::EdgeVirtualTop: return wsim_edge(t, w1, w2, EdgeVariant::VirtualTop);
    case WordMeasure::LeacockChodorow:
      if (!min_sense_path(t, w1, w2, EdgeVariant::AssertZero)) return 0.0;
      return wsim_lc(t, w1, w2, log_base, EdgeVariant::AssertZero);
    case WordMeasure::WuPalmer: {
      double best = 0.0;
      for (auto a : t.sense_indices(w1)) {
        for (auto b : t.sense_indices(w2)) {
          if (!t.path_length(a, b)) continue;
          best = std::max(best, sim_wupalmer(t, a, b));
        }
      }
      return best;
    }
    case WordMeasure::PathLength: {
      const auto path = min_sense_path(t, w1, w2, EdgeVariant::AssertZero);
      if (!path)
        throw Error(ErrorKind::NoPath, "no path between '" + std::string(w1) + "' and '" +
                                           std::string(w2) + "'");
      return path->length;
    }
  }
  throw Error(ErrorKind::Domain, "unknown measure");
}

CorrelationReport eval_published() { return eval_published(published_pairs()); }

CorrelationReport eval_published(std::span<const EvalPair> pairs) {
  std::vector<double> mc, repl, ic, edge, prob;
  for (const auto& p : pairs) {
    mc.push_back(p.mc_mean);
    repl.push_back(p.repl_mean);
    ic.push_back(p.wsim);
    edge.push_back(p.wsim_edge);
    prob.push_back(p.wsim_p);
  }
  CorrelationReport report;
  report.item_count = pairs.size();
  report.entries = {
      {"Human judgments (replication)", pearson(repl, mc)},
      {"Information content", pearson(ic, mc)},
      {"Probability", pearson(prob, mc)},
      {"Edge-counting", pearson(edge, mc)},
  };
  return report;
}

CorrelationReport eval_live(const Taxonomy& t, const ProbabilityModel* m,
                            std::span<const GoldPair> pairs, WordMeasure measure,
                            double log_base) {
  CorrelationReport report;
  std::vector<double> scores, gold;
  for (const auto& p : pairs) {
    const bool known = t.knows_word(p.word1) && t.knows_word(p.word2);
    if (known && measure == WordMeasure::PathLength &&
        !min_sense_path(t, p.word1, p.word2, EdgeVariant::AssertZero)) {
      report.excluded.push_back(p.word1 + "," + p.word2);
      continue;
    }
    if (!known) {
      report.excluded.push_back(p.word1 + "," + p.word2);
      continue;
    }
    scores.push_back(word_similarity(t, m, p.word1, p.word2, measure, log_base));
    gold.push_back(p.rating);
  }
  if (scores.size() < 2)
    throw Error(ErrorKind::Domain, "need at least two scorable pairs, got " +
                                       std::to_string(scores.size()));
  report.item_count = scores.size();
  report.entries.push_back({std::string(to_string(measure)), pearson(scores, gold)});
  return report;
}

}  // namespace taxsim
