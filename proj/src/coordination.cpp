#include "taxsim/coordination.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>

#include "taxsim/error.hpp"
#include "taxsim/similarity.hpp"
#include "text_util.hpp"

namespace taxsim {

std::string_view to_string(Choice c) {
  switch (c) {
    case Choice::Conjoin12: return "12";
    case Choice::Conjoin13: return "13";
    case Choice::Undecided: return "undecided";
  }
  return "?";
}

std::string_view to_string(Strategy s) {
  switch (s) {
    case Strategy::Number: return "number";
    case Strategy::Modification: return "modification";
    case Strategy::Similarity: return "similarity";
    case Strategy::WeightedSimilarity: return "weighted-sim";
  }
  return "?";
}

namespace {

Choice compare_scores(double s12, double s13) {
  if (s12 > s13) return Choice::Conjoin12;
  if (s13 > s12) return Choice::Conjoin13;
  return Choice::Undecided;
}

constexpr double kUnseen = std::numeric_limits<double>::quiet_NaN();

// A(w1, w2), or NaN when the model cannot say anything about w1.
double association_or_nan(const CoocModel& cm, std::string_view w1, std::string_view w2) {
  if (!cm.has_predicate(w1)) return kUnseen;
  try {
    return sel_assoc_word(cm, w1, w2).value;
  } catch (const Error&) {
    return kUnseen;
  }
}

// Raw weight max(0, A(w, c)) over the context words that the model knows.
WeightFunction context_weights(const CoocModel& cm, std::span<const ConceptIndex> concepts,
                               std::initializer_list<const std::string*> context) {
  const auto& t = cm.taxonomy();
  WeightFunction alpha;
  for (auto c : concepts) {
    double w = 0.0;
    for (const auto* word : context) {
      if (!word || !cm.has_predicate(*word)) continue;
      try {
        w = std::max(w, sel_assoc_class(cm, *word, c));
      } catch (const Error&) {
      }
    }
    alpha.set(t.id(c).str(), w);
  }
  return alpha;
}

}  // namespace

SubDecision number_rule(const CoordinationPhrase& p) {
  SubDecision d{Strategy::Number, Choice::Undecided, true, {}};
  const auto [a, b, c] = p.numbers;
  if (a == NumberTag::Unknown || b == NumberTag::Unknown || c == NumberTag::Unknown) return d;
  if (a == b && a != c) d.choice = Choice::Conjoin12;
  else if (a == c && a != b) d.choice = Choice::Conjoin13;
  return d;
}

SubDecision similarity_rule(const ProbabilityModel& m, const CoordinationPhrase& p) {
  const double s12 = wsim(m, p.n1, p.n2).value;
  const double s13 = wsim(m, p.n1, p.n3).value;
  return SubDecision{Strategy::Similarity, compare_scores(s12, s13), true, {s12, s13}};
}

SubDecision modification_rule(const CoocModel& cm, const CoordinationPhrase& p,
                              const Thresholds& th) {
  const double a13 = association_or_nan(cm, p.n1, p.n3);
  const double a31 = association_or_nan(cm, p.n3, p.n1);
  // NaN compares false, so an unseen direction supplies no evidence.
  const bool strong = a13 > th.tau || a31 > th.tau;
  const bool weak = a13 < th.sigma || a31 < th.sigma;
  Choice choice = Choice::Undecided;
  if (strong && !weak) choice = Choice::Conjoin12;
  else if (weak && !strong) choice = Choice::Conjoin13;
  return SubDecision{Strategy::Modification, choice, true, {a13, a31}};
}

SubDecision weighted_similarity_rule(const ProbabilityModel& m, const CoocModel& cm,
                                     const CoordinationPhrase& p) {
  const std::string* n0 = p.n0 ? &*p.n0 : nullptr;
  const auto shared12 = shared_concepts(m, p.n1, p.n2);
  const auto shared13 = shared_concepts(m, p.n1, p.n3);
  const auto alpha12 = context_weights(cm, shared12, {n0, &p.n3});
  const auto alpha13 = context_weights(cm, shared13, {n0, &p.n2});
  const double s12 = wsim_weighted(m, p.n1, p.n2, alpha12).value;
  const double s13 = wsim_weighted(m, p.n1, p.n3, alpha13).value;
  return SubDecision{Strategy::WeightedSimilarity, compare_scores(s12, s13), true, {s12, s13}};
}

SubDecision evaluate_strategy(Strategy s, const CoordinationPhrase& p,
                              const CoordinationModels& models) {
  const SubDecision missing{s, Choice::Undecided, true, {}};
  switch (s) {
    case Strategy::Number:
      return number_rule(p);
    case Strategy::Similarity:
      return models.similarity ? similarity_rule(*models.similarity, p) : missing;
    case Strategy::Modification:
      return models.cooc ? modification_rule(*models.cooc, p, models.thresholds) : missing;
    case Strategy::WeightedSimilarity:
      return models.similarity && models.cooc
                 ? weighted_similarity_rule(*models.similarity, *models.cooc, p)
                 : missing;
  }
  return missing;
}

std::vector<Strategy> default_backoff_order(const CoordinationPhrase& p) {
  if (p.n0) return {Strategy::Number, Strategy::WeightedSimilarity};
  return {Strategy::Number, Strategy::Modification, Strategy::Similarity};
}

Decision resolve_backoff(const CoordinationPhrase& p, const CoordinationModels& models,
                         std::span<const Strategy> order) {
  Decision d;
  for (auto s : order) {
    if (d.fired) {
      d.evidence.push_back(SubDecision{s, Choice::Undecided, false, {}});
      continue;
    }
    auto sub = evaluate_strategy(s, p, models);
    if (sub.choice != Choice::Undecided) {
      d.choice = sub.choice;
      d.fired = s;
    }
    d.evidence.push_back(std::move(sub));
  }
  return d;
}

Decision resolve_backoff(const CoordinationPhrase& p, const CoordinationModels& models) {
  const auto order = default_backoff_order(p);
  return resolve_backoff(p, models, order);
}

Decision resolve_vote(const CoordinationPhrase& p, const CoordinationModels& models,
                      std::span<const Strategy> strategies) {
  Decision d;
  int votes12 = 0;
  int votes13 = 0;
  for (auto s : strategies) {
    auto sub = evaluate_strategy(s, p, models);
    if (sub.choice == Choice::Conjoin12) ++votes12;
    if (sub.choice == Choice::Conjoin13) ++votes13;
    d.evidence.push_back(std::move(sub));
  }
  d.choice = compare_scores(votes12, votes13);
  return d;
}

Decision resolve_vote(const CoordinationPhrase& p, const CoordinationModels& models) {
  static constexpr std::array kVoters{Strategy::Number, Strategy::Modification,
                                      Strategy::Similarity};
  return resolve_vote(p, models, kVoters);
}

Decision apply_default(Decision d, Choice default_choice) {
  if (default_choice == Choice::Undecided)
    throw Error(ErrorKind::Domain, "default choice must be 12 or 13");
  if (d.choice == Choice::Undecided) {
    d.choice = default_choice;
    d.defaulted = true;
    d.fired.reset();
  }
  return d;
}

NumberTag guess_number(std::string_view surface, const NumberLexicon* lexicon) {
  if (lexicon) {
    auto it = lexicon->find(surface);
    if (it != lexicon->end()) return it->second;
  }
  return surface.ends_with('s') ? NumberTag::Plural : NumberTag::Singular;
}

namespace {

std::optional<NumberTag> parse_tag(std::string_view s) {
  if (s == "sg") return NumberTag::Singular;
  if (s == "pl") return NumberTag::Plural;
  if (s == "?") return NumberTag::Unknown;
  return std::nullopt;
}

}  // namespace

CoordinationPhrase parse_phrase(std::string_view line, const NumberLexicon* lexicon) {
  const auto fields = detail::split(line, '\t');
  if (fields.size() < 4 || fields.size() > 5)
    throw Error(ErrorKind::Load, "expected n0<TAB>n1<TAB>n2<TAB>n3[<TAB>numbers]");
  if (fields[1].empty() || fields[2].empty() || fields[3].empty())
    throw Error(ErrorKind::Load, "n1, n2 and n3 must be non-empty");
  CoordinationPhrase p;
  if (!fields[0].empty()) p.n0 = std::string(fields[0]);
  p.n1 = fields[1];
  p.n2 = fields[2];
  p.n3 = fields[3];
  if (fields.size() == 4) {
    p.numbers = {guess_number(p.n1, lexicon), guess_number(p.n2, lexicon),
                 guess_number(p.n3, lexicon)};
  } else if (fields[4] != "-") {
    const auto tags = detail::split(fields[4], ',');
    if (tags.size() != 3) throw Error(ErrorKind::Load, "numbers must list three tags");
    for (std::size_t i = 0; i < 3; ++i) {
      const auto tag = parse_tag(tags[i]);
      if (!tag) throw Error(ErrorKind::Load, "bad number tag '" + std::string(tags[i]) + "'");
      p.numbers[i] = *tag;
    }
  }
  return p;
}

NumberLexicon load_number_lexicon(std::istream& in) {
  NumberLexicon lexicon;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (detail::is_skippable(line)) continue;
    const auto fields = detail::split(line, '\t');
    const auto tag = fields.size() == 2 ? parse_tag(fields[1]) : std::nullopt;
    if (!tag || *tag == NumberTag::Unknown || fields[0].empty())
      throw Error(ErrorKind::Load, detail::at_line(line_no) + "expected word<TAB>sg|pl");
    lexicon.insert_or_assign(std::string(fields[0]), *tag);
  }
  return lexicon;
}

CoordinationPhrase lemmatized(CoordinationPhrase p, const LemmaMap& lemmas) {
  auto map = [&](std::string& w) {
    auto it = lemmas.find(w);
    if (it != lemmas.end()) w = it->second;
  };
  if (p.n0) map(*p.n0);
  map(p.n1);
  map(p.n2);
  map(p.n3);
  return p;
}

}  // namespace taxsim
