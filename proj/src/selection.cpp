#include "taxsim/selection.hpp"

#include <algorithm>
#include <cmath>
#include <istream>

#include "taxsim/error.hpp"
#include "text_util.hpp"

namespace taxsim {

namespace {

// Divergences below this are rounding noise from a conditional equal to the prior.
constexpr double kZeroDivergence = 1e-12;

}  // namespace

std::vector<CoocPair> parse_pairs(std::istream& in) {
  std::vector<CoocPair> pairs;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (detail::is_skippable(line)) continue;
    const auto fields = detail::split(line, '\t');
    if (fields.size() < 2 || fields.size() > 3 || fields[0].empty() || fields[1].empty())
      throw Error(ErrorKind::Load, detail::at_line(line_no) + "expected predicate<TAB>argument[<TAB>count]");
    CoocPair pair{std::string(fields[0]), std::string(fields[1]), 1.0};
    if (fields.size() == 3) {
      const auto count = detail::parse_double(fields[2]);
      if (!count || *count < 0.0 || std::isinf(*count))
        throw Error(ErrorKind::Load, detail::at_line(line_no) + "bad count '" + std::string(fields[2]) + "'");
      pair.count = *count;
    }
    pairs.push_back(std::move(pair));
  }
  return pairs;
}

std::vector<CoocPair> load_pairs_file(const std::filesystem::path& path) {
  auto in = detail::open_input(path);
  return parse_pairs(in);
}

CoocModel ingest_pairs(const Taxonomy& t, std::span<const CoocPair> pairs) {
  CoocModel cm(t);
  std::vector<double> credit(t.size(), 0.0);
  for (const auto& pair : pairs) {
    const auto senses = t.sense_indices(pair.argument);
    if (senses.empty()) {
      cm.skipped_ += pair.count;
      continue;
    }
    auto& pred = cm.predicates_[pair.predicate];
    pred.total += pair.count;
    pred.arguments[pair.argument] += pair.count;
    const double share = pair.count / static_cast<double>(senses.size());
    for (auto s : senses) {
      for (const auto& a : t.ancestors(s)) {
        pred.class_freq[a.node] += share;
        pred.credited += share;
        credit[a.node] += share;
      }
    }
  }

  double total_credit = 0.0;
  for (ConceptIndex c = 0; c < t.size(); ++c) {
    if (credit[c] > 0.0) {
      cm.inventory_.push_back(c);
      total_credit += credit[c];
    }
  }
  for (auto c : cm.inventory_) cm.prior_[c] = credit[c] / total_credit;

  for (auto& [word, pred] : cm.predicates_) {
    double d = 0.0;
    if (pred.credited > 0.0) {
      for (const auto& [c, f] : pred.class_freq) {
        if (f <= 0.0) continue;
        const double q = f / pred.credited;
        d += q * std::log(q / cm.prior_[c]);
      }
    }
    pred.divergence = d;
  }
  return cm;
}

const CoocModel::Predicate& CoocModel::predicate(std::string_view w) const {
  auto it = predicates_.find(w);
  if (it == predicates_.end() || !(it->second.credited > 0.0))
    throw Error(ErrorKind::Vocabulary, "unseen predicate word '" + std::string(w) + "'");
  return it->second;
}

bool CoocModel::has_predicate(std::string_view w) const {
  auto it = predicates_.find(w);
  return it != predicates_.end() && it->second.credited > 0.0;
}

double CoocModel::word_total(std::string_view w) const {
  auto it = predicates_.find(w);
  return it == predicates_.end() ? 0.0 : it->second.total;
}

double CoocModel::pair_count(std::string_view predicate, std::string_view argument) const {
  auto it = predicates_.find(predicate);
  if (it == predicates_.end()) return 0.0;
  auto arg = it->second.arguments.find(argument);
  return arg == it->second.arguments.end() ? 0.0 : arg->second;
}

double CoocModel::class_freq(std::string_view w, ConceptIndex c) const {
  auto it = predicates_.find(w);
  if (it == predicates_.end()) return 0.0;
  auto f = it->second.class_freq.find(c);
  return f == it->second.class_freq.end() ? 0.0 : f->second;
}

double CoocModel::conditional(std::string_view w, ConceptIndex c) const {
  const auto& pred = predicate(w);
  auto f = pred.class_freq.find(c);
  return f == pred.class_freq.end() ? 0.0 : f->second / pred.credited;
}

double CoocModel::divergence(std::string_view w) const { return predicate(w).divergence; }

double sel_assoc_class(const CoocModel& cm, std::string_view w, ConceptIndex c) {
  const double d = cm.divergence(w);
  const double q = cm.conditional(w, c);
  if (q == 0.0) return 0.0;
  const double p = cm.prior(c);
  if (p == 0.0)
    throw Error(ErrorKind::Degenerate,
                "class " + cm.taxonomy().id(c).str() + " has zero prior but is predicted by '" +
                    std::string(w) + "'");
  if (d <= kZeroDivergence) return 0.0;
  return q * std::log(q / p) / d;
}

double sel_assoc_class(const CoocModel& cm, std::string_view w, std::string_view cid) {
  return sel_assoc_class(cm, w, cm.taxonomy().index_of(cid));
}

WordAssociation sel_assoc_word(const CoocModel& cm, std::string_view w1, std::string_view w2) {
  const auto& t = cm.taxonomy();
  // Surface unseen-predicate errors even when w2 has no classes.
  cm.divergence(w1);
  std::vector<ConceptIndex> classes;
  for (auto s : t.sense_indices(w2))
    for (const auto& a : t.ancestors(s)) classes.push_back(a.node);
  std::sort(classes.begin(), classes.end());
  classes.erase(std::unique(classes.begin(), classes.end()), classes.end());

  WordAssociation best;
  for (auto c : classes) {
    const double v = sel_assoc_class(cm, w1, c);
    if (!best.cls || v > best.value) best = WordAssociation{v, c};
  }
  return best;
}

}  // namespace taxsim
