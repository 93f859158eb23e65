#pragma once

#include <array>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "taxsim/probmodel.hpp"
#include "taxsim/selection.hpp"

namespace taxsim {

enum class NumberTag { Singular, Plural, Unknown };

/// `n1 and n2 n3`, or `n0 n1 and n2 n3` when n0 is present.
struct CoordinationPhrase {
  std::optional<std::string> n0;
  std::string n1, n2, n3;
  std::array<NumberTag, 3> numbers{NumberTag::Unknown, NumberTag::Unknown, NumberTag::Unknown};
};

enum class Choice { Conjoin12, Conjoin13, Undecided };

enum class Strategy { Number, Modification, Similarity, WeightedSimilarity };

std::string_view to_string(Choice c);     // "12", "13", "undecided"
std::string_view to_string(Strategy s);   // "number", "modification", ...

struct SubDecision {
  Strategy strategy;
  Choice choice = Choice::Undecided;
  bool evaluated = false;
  /// Raw evidence: similarity rules store (score12, score13); the
  /// modification rule stores (A(n1,n3), A(n3,n1)), NaN where unseen.
  std::vector<double> scores;
};

struct Decision {
  Choice choice = Choice::Undecided;
  /// Strategy whose sub-decision became the final choice.
  std::optional<Strategy> fired;
  bool defaulted = false;
  std::vector<SubDecision> evidence;
};

struct Thresholds {
  double tau = 2.0;
  double sigma = 0.0;
};

/// Models consulted by the rules. Rules whose model is missing stay undecided.
struct CoordinationModels {
  const ProbabilityModel* similarity = nullptr;
  const CoocModel* cooc = nullptr;
  Thresholds thresholds;
};

SubDecision number_rule(const CoordinationPhrase& p);
SubDecision similarity_rule(const ProbabilityModel& m, const CoordinationPhrase& p);
SubDecision modification_rule(const CoocModel& cm, const CoordinationPhrase& p,
                              const Thresholds& th = {});
SubDecision weighted_similarity_rule(const ProbabilityModel& m, const CoocModel& cm,
                                     const CoordinationPhrase& p);

SubDecision evaluate_strategy(Strategy s, const CoordinationPhrase& p,
                              const CoordinationModels& models);

/// number, modification, similarity for `n1 and n2 n3`; number, weighted
/// similarity when n0 is present.
std::vector<Strategy> default_backoff_order(const CoordinationPhrase& p);

/// First strategy that is not undecided wins. Later strategies are recorded
/// as unevaluated.
Decision resolve_backoff(const CoordinationPhrase& p, const CoordinationModels& models,
                         std::span<const Strategy> order);
Decision resolve_backoff(const CoordinationPhrase& p, const CoordinationModels& models);

/// Majority among the decided votes of the given strategies (number,
/// modification and similarity by default); ties are undecided.
Decision resolve_vote(const CoordinationPhrase& p, const CoordinationModels& models,
                      std::span<const Strategy> strategies);
Decision resolve_vote(const CoordinationPhrase& p, const CoordinationModels& models);

/// Replaces an undecided choice with `default_choice`.
Decision apply_default(Decision d, Choice default_choice);

using NumberLexicon = std::map<std::string, NumberTag, std::less<>>;

/// Number of a surface form: lexicon entry if present, else plural iff it
/// ends in "s".
NumberTag guess_number(std::string_view surface,
                       const NumberLexicon* lexicon = nullptr);

/// Parses `n0<TAB>n1<TAB>n2<TAB>n3[<TAB>numbers]`; n0 may be empty. numbers
/// is like `sg,sg,pl` (`?` for one unknown tag) or `-` for all unknown; when
/// the field is absent the tags come from guess_number. Throws Error(Load)
/// for malformed lines.
CoordinationPhrase parse_phrase(std::string_view line,
                                const NumberLexicon* lexicon = nullptr);

/// Parses `word<TAB>sg|pl` lines.
NumberLexicon load_number_lexicon(std::istream& in);

/// Rewrites every noun through the lemma map. Number tags are kept, so
/// call this after the tags have been read off the surface forms.
CoordinationPhrase lemmatized(CoordinationPhrase p, const LemmaMap& lemmas);

}  // namespace taxsim
