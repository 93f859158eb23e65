#include "taxsim/similarity.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "taxsim/error.hpp"

namespace taxsim {

namespace {

std::string pair_name(const Taxonomy& t, ConceptIndex c1, ConceptIndex c2) {
  return t.id(c1).str() + ", " + t.id(c2).str();
}

// Maximizes objective(c) over common subsumers with finite ic.
SimilarityResult max_over_subsumers(const ProbabilityModel& m, ConceptIndex c1, ConceptIndex c2,
                                    const std::function<double(ConceptIndex)>& objective) {
  const auto& t = m.taxonomy();
  SimilarityResult result;
  const auto common = t.common_ancestors(c1, c2);
  if (common.empty()) return result;
  bool any = false;
  for (auto c : common) {
    if (std::isinf(m.ic(c))) continue;
    const double v = objective(c);
    if (!any || v > result.value) {
      result.value = v;
      result.subsumers.assign(1, c);
      any = true;
    } else if (v == result.value) {
      result.subsumers.push_back(c);
    }
  }
  if (!any)
    throw Error(ErrorKind::Degenerate,
                "all common subsumers of " + pair_name(t, c1, c2) + " have zero probability");
  return result;
}

SimilarityResult lin_detail(const ProbabilityModel& m, ConceptIndex c1, ConceptIndex c2) {
  const auto& t = m.taxonomy();
  const double ic1 = m.ic(c1);
  const double ic2 = m.ic(c2);
  if (std::isinf(ic1) || std::isinf(ic2))
    throw Error(ErrorKind::Degenerate, "zero-probability concept in " + pair_name(t, c1, c2));
  auto mis = max_over_subsumers(m, c1, c2, [&](ConceptIndex c) { return m.ic(c); });
  if (mis.subsumers.empty())
    throw Error(ErrorKind::NoPath, "no common subsumer for " + pair_name(t, c1, c2));
  const double denom = ic1 + ic2;
  // Only reachable when both concepts carry no information, i.e. are the top.
  mis.value = denom == 0.0 ? 1.0 : 2.0 * mis.value / denom;
  return mis;
}

SimilarityResult concept_similarity(const ProbabilityModel& m, ConceptIndex c1, ConceptIndex c2,
                                    ConceptMeasure measure) {
  switch (measure) {
    case ConceptMeasure::Resnik:
      return sim_resnik(m, c1, c2);
    case ConceptMeasure::Prob:
      return sim_prob(m, c1, c2);
    case ConceptMeasure::Lin:
      return lin_detail(m, c1, c2);
    case ConceptMeasure::WuPalmer: {
      const auto wp = sim_wupalmer_detail(m.taxonomy(), c1, c2);
      return SimilarityResult{wp.value, {wp.subsumer}, std::nullopt};
    }
  }
  throw Error(ErrorKind::Domain, "unknown concept measure");
}

// Runs f over every scorable sense pair of (w1, w2) in id order.
template <typename F>
void for_each_scored_pair(const ProbabilityModel& m, std::string_view w1, std::string_view w2,
                          ConceptMeasure measure, F&& f) {
  const auto& t = m.taxonomy();
  const auto s1 = t.sense_indices(w1);
  const auto s2 = t.sense_indices(w2);
  for (auto a : s1) {
    for (auto b : s2) {
      SimilarityResult r;
      try {
        r = concept_similarity(m, a, b, measure);
      } catch (const Error& e) {
        if (e.kind() == ErrorKind::NoPath || e.kind() == ErrorKind::Degenerate) continue;
        throw;
      }
      if (r.subsumers.empty()) continue;
      f(a, b, r);
    }
  }
}

}  // namespace

SimilarityResult sim_resnik(const ProbabilityModel& m, ConceptIndex c1, ConceptIndex c2) {
  return max_over_subsumers(m, c1, c2, [&](ConceptIndex c) { return m.ic(c); });
}

SimilarityResult sim_resnik(const ProbabilityModel& m, std::string_view c1, std::string_view c2) {
  const auto& t = m.taxonomy();
  return sim_resnik(m, t.index_of(c1), t.index_of(c2));
}

SimilarityResult sim_prob(const ProbabilityModel& m, ConceptIndex c1, ConceptIndex c2) {
  return max_over_subsumers(m, c1, c2, [&](ConceptIndex c) { return 1.0 - m.p(c); });
}

double sim_lin(const ProbabilityModel& m, ConceptIndex c1, ConceptIndex c2) {
  return lin_detail(m, c1, c2).value;
}

double sim_lin(const ProbabilityModel& m, std::string_view c1, std::string_view c2) {
  const auto& t = m.taxonomy();
  return sim_lin(m, t.index_of(c1), t.index_of(c2));
}

WuPalmerResult sim_wupalmer_detail(const Taxonomy& t, ConceptIndex c1, ConceptIndex c2) {
  std::optional<WuPalmerResult> best;
  const auto a1 = t.ancestors(c1);
  const auto a2 = t.ancestors(c2);
  // Both lists are sorted by concept; walk them like a merge.
  auto i = a1.begin();
  auto j = a2.begin();
  while (i != a1.end() && j != a2.end()) {
    if (i->node < j->node) {
      ++i;
    } else if (j->node < i->node) {
      ++j;
    } else {
      const double d3 = t.depth(i->node) + 1.0;
      const double value = 2.0 * d3 / (2.0 * d3 + i->distance + j->distance);
      if (!best || value > best->value) best = WuPalmerResult{value, i->node};
      ++i;
      ++j;
    }
  }
  if (!best) throw Error(ErrorKind::NoPath, "no common subsumer for " + pair_name(t, c1, c2));
  return *best;
}

double sim_wupalmer(const Taxonomy& t, ConceptIndex c1, ConceptIndex c2) {
  return sim_wupalmer_detail(t, c1, c2).value;
}

double sim_wupalmer(const Taxonomy& t, std::string_view c1, std::string_view c2) {
  return sim_wupalmer(t, t.index_of(c1), t.index_of(c2));
}

SimilarityResult wsim(const ProbabilityModel& m, std::string_view w1, std::string_view w2,
                      ConceptMeasure measure) {
  SimilarityResult best;
  for_each_scored_pair(m, w1, w2, measure,
                       [&](ConceptIndex a, ConceptIndex b, SimilarityResult& r) {
                         if (!best.sense_pair || r.value > best.value) {
                           best = std::move(r);
                           best.sense_pair = {a, b};
                         }
                       });
  return best;
}

SimilarityResult wsim_all_subsumers(const ProbabilityModel& m, std::string_view w1,
                                    std::string_view w2) {
  SimilarityResult best;
  for_each_scored_pair(m, w1, w2, ConceptMeasure::Resnik,
                       [&](ConceptIndex a, ConceptIndex b, SimilarityResult& r) {
                         if (!best.sense_pair || r.value > best.value) {
                           best = std::move(r);
                           best.sense_pair = {a, b};
                         } else if (r.value == best.value) {
                           best.subsumers.insert(best.subsumers.end(), r.subsumers.begin(),
                                                 r.subsumers.end());
                         }
                       });
  std::sort(best.subsumers.begin(), best.subsumers.end());
  best.subsumers.erase(std::unique(best.subsumers.begin(), best.subsumers.end()),
                       best.subsumers.end());
  return best;
}

namespace {

bool adds_implicit_top(const Taxonomy& t, EdgeVariant variant) {
  return variant == EdgeVariant::VirtualTop && !t.virtual_root() && t.roots().size() > 1;
}

}  // namespace

unsigned edge_max_depth(const Taxonomy& t, EdgeVariant variant) {
  return t.max_depth() + (adds_implicit_top(t, variant) ? 1 : 0);
}

std::optional<PathResult> min_sense_path(const Taxonomy& t, std::string_view w1,
                                         std::string_view w2, EdgeVariant variant) {
  const bool implicit_top = adds_implicit_top(t, variant);
  std::optional<PathResult> best;
  for (auto a : t.sense_indices(w1)) {
    for (auto b : t.sense_indices(w2)) {
      auto len = t.path_length(a, b);
      if (implicit_top) {
        const unsigned via_top = t.depth(a) + t.depth(b) + 2;
        len = len ? std::min(*len, via_top) : via_top;
      }
      if (len && (!best || *len < best->length)) best = PathResult{*len, {a, b}};
    }
  }
  return best;
}

double wsim_edge(const Taxonomy& t, std::string_view w1, std::string_view w2,
                 EdgeVariant variant) {
  const auto path = min_sense_path(t, w1, w2, variant);
  if (!path) return 0.0;
  const double span = 2.0 * edge_max_depth(t, variant);
  // Multiple inheritance can make a shortest path longer than 2 * MAX.
  return std::max(0.0, span - path->length);
}

double wsim_lc(const Taxonomy& t, std::string_view w1, std::string_view w2, double log_base,
               EdgeVariant variant) {
  const auto path = min_sense_path(t, w1, w2, variant);
  if (!path)
    throw Error(ErrorKind::NoPath,
                "no connected senses for '" + std::string(w1) + "' and '" + std::string(w2) + "'");
  const double span = 2.0 * edge_max_depth(t, variant);
  if (span == 0.0) throw Error(ErrorKind::Domain, "taxonomy has depth 0");
  const double len = std::clamp(static_cast<double>(path->length), 1.0, span);
  return -std::log(len / span) / std::log(log_base);
}

WeightFunction::WeightFunction(std::map<std::string, double, std::less<>> raw) {
  for (auto& [cid, weight] : raw) set(cid, weight);
}

void WeightFunction::set(std::string cid, double weight) {
  if (!(weight >= 0.0) || std::isinf(weight))
    throw Error(ErrorKind::Domain, "weight for " + cid + " must be finite and nonnegative");
  raw_.insert_or_assign(std::move(cid), weight);
}

double WeightFunction::raw(std::string_view cid) const {
  auto it = raw_.find(cid);
  return it == raw_.end() ? 0.0 : it->second;
}

WeightFunction::Normalized WeightFunction::normalize(const Taxonomy& t,
                                                     std::span<const ConceptIndex> concepts) const {
  Normalized out{std::vector<double>(concepts.size(), 0.0), false};
  double total = 0.0;
  for (std::size_t i = 0; i < concepts.size(); ++i) {
    out.alpha[i] = raw(t.id(concepts[i]).str());
    total += out.alpha[i];
  }
  if (concepts.empty()) return out;
  if (total == 0.0) {
    std::fill(out.alpha.begin(), out.alpha.end(), 1.0 / concepts.size());
    out.uniform_fallback = true;
  } else {
    for (auto& a : out.alpha) a /= total;
  }
  return out;
}

std::vector<ConceptIndex> shared_concepts(const ProbabilityModel& m, std::string_view w1,
                                          std::string_view w2) {
  const auto& t = m.taxonomy();
  auto closure = [&](std::string_view w) {
    std::vector<ConceptIndex> out;
    for (auto s : t.sense_indices(w))
      for (const auto& a : t.ancestors(s)) out.push_back(a.node);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  };
  const auto a = closure(w1);
  const auto b = closure(w2);
  std::vector<ConceptIndex> both;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(both));
  std::erase_if(both, [&](ConceptIndex c) { return std::isinf(m.ic(c)); });
  return both;
}

WeightedSimilarity wsim_weighted(const ProbabilityModel& m, std::string_view w1,
                                 std::string_view w2, const WeightFunction& alpha) {
  const auto concepts = shared_concepts(m, w1, w2);
  if (concepts.empty()) return {};
  const auto norm = alpha.normalize(m.taxonomy(), concepts);
  WeightedSimilarity out{0.0, norm.uniform_fallback};
  for (std::size_t i = 0; i < concepts.size(); ++i) out.value += norm.alpha[i] * m.ic(concepts[i]);
  return out;
}

}  // namespace taxsim
