#include "taxsim/sensegroup.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <random>
#include <set>

#include "taxsim/error.hpp"
#include "taxsim/similarity.hpp"
#include "text_util.hpp"

namespace taxsim {

NounGroup make_group(std::vector<std::string> words, std::vector<std::string>* warnings) {
  NounGroup group;
  std::set<std::string, std::less<>> seen;
  for (auto& w : words) {
    if (!seen.insert(w).second) {
      if (warnings) warnings->push_back("duplicate word '" + w + "' dropped from group");
      continue;
    }
    group.words.push_back(std::move(w));
  }
  return group;
}

GroupResult disambiguate_group(const ProbabilityModel& m, const NounGroup& group) {
  const auto& t = m.taxonomy();
  GroupResult result;
  for (const auto& w : group.words) {
    WordSenses ws;
    ws.word = w;
    ws.senses = t.sense_indices(w);
    ws.scored = !ws.senses.empty();
    ws.support.assign(ws.senses.size(), 0.0);
    result.words.push_back(std::move(ws));
  }

  auto credit = [&](WordSenses& ws, const PairSupport& pair) {
    for (std::size_t k = 0; k < ws.senses.size(); ++k) {
      const bool under = std::any_of(pair.subsumers.begin(), pair.subsumers.end(),
                                     [&](ConceptIndex c) { return t.subsumes(c, ws.senses[k]); });
      if (under) ws.support[k] += pair.v;
    }
    ws.normalization += pair.v;
  };

  for (std::size_t i = 0; i < result.words.size(); ++i) {
    if (!result.words[i].scored) continue;
    for (std::size_t j = i + 1; j < result.words.size(); ++j) {
      if (!result.words[j].scored) continue;
      auto sim = wsim_all_subsumers(m, result.words[i].word, result.words[j].word);
      PairSupport pair{i, j, sim.value, std::move(sim.subsumers)};
      credit(result.words[i], pair);
      credit(result.words[j], pair);
      result.pairs.push_back(std::move(pair));
    }
  }

  for (auto& ws : result.words) {
    ws.phi.resize(ws.senses.size());
    for (std::size_t k = 0; k < ws.senses.size(); ++k) {
      ws.phi[k] = ws.normalization > 0.0 ? ws.support[k] / ws.normalization
                                         : 1.0 / static_cast<double>(ws.senses.size());
    }
  }
  return result;
}

int scale_confidence(double phi) {
  if (!(phi >= 0.0 && phi <= 1.0))
    throw Error(ErrorKind::Domain, "confidence " + std::to_string(phi) + " outside [0,1]");
  return std::min(5, 1 + static_cast<int>(std::floor(phi * 5.0)));
}

ItemPartition filter_senses(const Taxonomy& t, const GroupResult& result,
                            const FilterSettings& settings, std::string item_id) {
  ItemPartition out{std::move(item_id), {}};
  for (const auto& ws : result.words) {
    for (std::size_t k = 0; k < ws.senses.size(); ++k) {
      const double phi = ws.phi[k];
      const int level = scale_confidence(phi);
      const bool included = phi >= settings.threshold && level >= settings.min_level;
      out.senses.push_back(SenseDecision{ws.word, t.id(ws.senses[k]).str(), phi, level, included});
    }
  }
  return out;
}

void SenseAnnotation::set_known(const std::string& item, bool known) {
  items_[item].known = known;
}

void SenseAnnotation::label(const std::string& item, const std::string& word,
                            const std::string& sense, bool correct) {
  items_[item].labels[{word, sense}] = correct;
}

bool SenseAnnotation::is_known(std::string_view item) const {
  auto it = items_.find(item);
  return it == items_.end() || it->second.known.value_or(true);
}

std::optional<bool> SenseAnnotation::is_correct(std::string_view item, std::string_view word,
                                                std::string_view sense) const {
  auto it = items_.find(item);
  if (it == items_.end()) return std::nullopt;
  auto label = it->second.labels.find({std::string(word), std::string(sense)});
  if (label == it->second.labels.end()) return std::nullopt;
  return label->second;
}

std::vector<std::string> SenseAnnotation::items() const {
  std::vector<std::string> out;
  for (const auto& [id, item] : items_) out.push_back(id);
  return out;
}

std::size_t SenseAnnotation::correct_count(std::string_view item) const {
  auto it = items_.find(item);
  if (it == items_.end()) return 0;
  return std::count_if(it->second.labels.begin(), it->second.labels.end(),
                       [](const auto& kv) { return kv.second; });
}

SenseAnnotation load_annotations(std::istream& in) {
  SenseAnnotation ann;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (detail::is_skippable(line)) continue;
    const auto f = detail::split(line, '\t');
    const bool ok_known = f.size() == 2 && (f[1] == "known" || f[1] == "unknown");
    const bool ok_label = f.size() == 4 && (f[3] == "correct" || f[3] == "incorrect");
    if ((!ok_known && !ok_label) || f[0].empty())
      throw Error(ErrorKind::Load, detail::at_line(line_no) +
                                       "expected item<TAB>known|unknown or "
                                       "item<TAB>word<TAB>sense<TAB>correct|incorrect");
    if (ok_known)
      ann.set_known(std::string(f[0]), f[1] == "known");
    else
      ann.label(std::string(f[0]), std::string(f[1]), std::string(f[2]), f[3] == "correct");
  }
  return ann;
}

namespace {

std::optional<double> ratio(std::size_t num, std::size_t den) {
  if (den == 0) return std::nullopt;
  return static_cast<double>(num) / static_cast<double>(den);
}

// Selection scores included senses against correct labels; filtering
// scores excluded senses against incorrect labels.
PrecisionRecall score(const std::vector<ItemPartition>& items, const SenseAnnotation& ann,
                      bool filtering) {
  PrecisionRecall pr;
  for (const auto& item : items) {
    if (!ann.is_known(item.item_id)) continue;
    for (const auto& s : item.senses) {
      const auto correct = ann.is_correct(item.item_id, s.word, s.sense);
      if (!correct)
        throw Error(ErrorKind::Vocabulary, "item " + item.item_id + ": sense " + s.sense +
                                               " of '" + s.word + "' is not annotated");
      const bool predicted = filtering ? !s.included : s.included;
      const bool relevant = filtering ? !*correct : *correct;
      pr.predicted += predicted;
      pr.relevant += relevant;
      pr.hits += predicted && relevant;
    }
  }
  pr.precision = ratio(pr.hits, pr.predicted);
  pr.recall = ratio(pr.hits, pr.relevant);
  return pr;
}

struct RunningMean {
  double sum = 0.0;
  int n = 0;
  void add(const std::optional<double>& v) {
    if (v) {
      sum += *v;
      ++n;
    }
  }
  std::optional<double> mean() const {
    if (n == 0) return std::nullopt;
    return sum / n;
  }
};

}  // namespace

PrecisionRecall score_selection(const std::vector<ItemPartition>& items,
                                const SenseAnnotation& ann) {
  return score(items, ann, false);
}

PrecisionRecall score_filtering(const std::vector<ItemPartition>& items,
                                const SenseAnnotation& ann) {
  return score(items, ann, true);
}

BaselineResult random_baseline(const std::vector<BaselineItem>& items, const SenseAnnotation& ann,
                               double target_avg, int runs, std::uint64_t seed) {
  if (!(target_avg > 0.0)) throw Error(ErrorKind::Domain, "target average must be positive");
  if (runs < 1) throw Error(ErrorKind::Domain, "need at least one run");

  std::vector<const BaselineItem*> known;
  std::size_t total_senses = 0;
  for (const auto& item : items) {
    if (!ann.is_known(item.item_id)) continue;
    known.push_back(&item);
    total_senses += item.senses.size();
  }

  BaselineResult out;
  if (total_senses == 0) return out;
  const double mean_senses = static_cast<double>(total_senses) / known.size();
  out.inclusion_probability = std::min(1.0, target_avg / mean_senses);

  std::mt19937_64 rng(seed);
  std::bernoulli_distribution include(out.inclusion_probability);
  RunningMean sel_p, sel_r, fil_p, fil_r;
  double included_total = 0.0;
  for (int run = 0; run < runs; ++run) {
    std::vector<ItemPartition> partitions;
    for (const auto* item : known) {
      ItemPartition part{item->item_id, {}};
      for (const auto& [word, sense] : item->senses) {
        const bool in = include(rng);
        included_total += in;
        part.senses.push_back(SenseDecision{word, sense, in ? 1.0 : 0.0, in ? 5 : 1, in});
      }
      partitions.push_back(std::move(part));
    }
    const auto sel = score_selection(partitions, ann);
    const auto fil = score_filtering(partitions, ann);
    sel_p.add(sel.precision);
    sel_r.add(sel.recall);
    fil_p.add(fil.precision);
    fil_r.add(fil.recall);
  }
  out.mean_included = included_total / runs;
  out.selection_precision = sel_p.mean();
  out.selection_recall = sel_r.mean();
  out.filtering_precision = fil_p.mean();
  out.filtering_recall = fil_r.mean();
  return out;
}

}  // namespace taxsim
