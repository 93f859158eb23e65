#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "taxsim/coordination.hpp"
#include "taxsim/error.hpp"
#include "taxsim/evalharness.hpp"
#include "taxsim/selection.hpp"
#include "taxsim/sensegroup.hpp"
#include "taxsim/similarity.hpp"

namespace taxsim::cli {

using nlohmann::json;

namespace {

std::string at_line(std::size_t n) { return "line " + std::to_string(n) + ": "; }

bool skippable(const std::string& line) {
  return line.find_first_not_of(" \t\r") == std::string::npos || line.front() == '#';
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

// Runs `body` on stdin for "-" and on the named file otherwise.
template <typename F>
int with_input(const std::string& path, std::istream& stdin_stream, F&& body) {
  if (path.empty() || path == "-") return body(stdin_stream);
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Load, "cannot open '" + path + "'");
  return body(in);
}

std::string join_ids(const Taxonomy& t, std::span<const ConceptIndex> cs) {
  if (cs.empty()) return "-";
  std::string out;
  for (auto c : cs) {
    if (!out.empty()) out += ',';
    out += t.id(c).str();
  }
  return out;
}

// ---- sim -----------------------------------------------------------------

struct SimRow {
  double value = 0.0;
  std::vector<ConceptIndex> mis;
  std::optional<std::pair<ConceptIndex, ConceptIndex>> senses;
};

// Common ancestors of a and b on a shortest connecting path.
std::vector<ConceptIndex> path_subsumers(const Taxonomy& t, ConceptIndex a, ConceptIndex b) {
  std::vector<ConceptIndex> best;
  unsigned best_len = 0;
  auto i = t.ancestors(a).begin(), ie = t.ancestors(a).end();
  auto j = t.ancestors(b).begin(), je = t.ancestors(b).end();
  while (i != ie && j != je) {
    if (i->node < j->node) {
      ++i;
    } else if (j->node < i->node) {
      ++j;
    } else {
      const unsigned len = i->distance + j->distance;
      if (best.empty() || len < best_len) {
        best = {i->node};
        best_len = len;
      } else if (len == best_len) {
        best.push_back(i->node);
      }
      ++i;
      ++j;
    }
  }
  return best;
}

SimRow compute_sim(const Taxonomy& t, const ProbabilityModel* m, const std::string& w1,
                   const std::string& w2, WordMeasure measure, double log_base) {
  for (const auto* w : {&w1, &w2}) {
    if (!t.knows_word(*w)) throw Error(ErrorKind::Vocabulary, "unknown word '" + *w + "'");
  }
  SimRow row;
  switch (measure) {
    case WordMeasure::Resnik:
    case WordMeasure::Prob:
    case WordMeasure::Lin: {
      if (!m) throw Error(ErrorKind::Load, "no probability source given (--probabilities or --corpus)");
      const auto cm = measure == WordMeasure::Resnik ? ConceptMeasure::Resnik
                      : measure == WordMeasure::Prob ? ConceptMeasure::Prob
                                                     : ConceptMeasure::Lin;
      auto r = wsim(*m, w1, w2, cm);
      row.value = r.value;
      row.mis = std::move(r.subsumers);
      row.senses = r.sense_pair;
      return row;
    }
    case WordMeasure::WuPalmer: {
      for (auto a : t.sense_indices(w1)) {
        for (auto b : t.sense_indices(w2)) {
          if (!t.path_length(a, b)) continue;
          const auto r = sim_wupalmer_detail(t, a, b);
          if (!row.senses || r.value > row.value) {
            row.value = r.value;
            row.mis = {r.subsumer};
            row.senses = std::pair{a, b};
          }
        }
      }
      return row;
    }
    default: {
      const auto variant = measure == WordMeasure::EdgeVirtualTop ? EdgeVariant::VirtualTop
                                                                  : EdgeVariant::AssertZero;
      row.value = word_similarity(t, m, w1, w2, measure, log_base);
      if (const auto path = min_sense_path(t, w1, w2, variant)) {
        row.senses = path->sense_pair;
        row.mis = path_subsumers(t, path->sense_pair.first, path->sense_pair.second);
      }
      return row;
    }
  }
}

void print_sim(const Taxonomy& t, const SimRow& row, OutputFormat fmt, std::ostream& out) {
  if (fmt == OutputFormat::Jsonl) {
    json j;
    j["value"] = row.value;
    j["mis"] = json::array();
    for (auto c : row.mis) j["mis"].push_back(t.id(c).str());
    j["sense1"] = row.senses ? json(t.id(row.senses->first).str()) : json(nullptr);
    j["sense2"] = row.senses ? json(t.id(row.senses->second).str()) : json(nullptr);
    out << j.dump() << '\n';
    return;
  }
  out << fixed4(row.value) << '\t' << join_ids(t, row.mis) << '\t'
      << (row.senses ? t.id(row.senses->first).str() : "-") << '\t'
      << (row.senses ? t.id(row.senses->second).str() : "-") << '\n';
}

// ---- group ---------------------------------------------------------------

std::string opt4(const std::optional<double>& v) { return v ? fixed4(*v) : "undefined"; }

json opt_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

json pr_json(const PrecisionRecall& pr) {
  return {{"precision", opt_json(pr.precision)}, {"recall", opt_json(pr.recall)},
          {"hits", pr.hits}, {"predicted", pr.predicted}, {"relevant", pr.relevant}};
}

// ---- coord ---------------------------------------------------------------

Choice parse_choice(const std::string& s) {
  if (s == "12") return Choice::Conjoin12;
  if (s == "13") return Choice::Conjoin13;
  throw Error(ErrorKind::Domain, "--default must be 12 or 13");
}

std::string score_text(double v) { return std::isnan(v) ? "unseen" : fixed4(v); }

std::string strategy_label(const Decision& d, bool vote) {
  if (d.defaulted) return "default";
  if (d.fired) return std::string(to_string(*d.fired));
  if (vote && d.choice != Choice::Undecided) return "vote";
  return "none";
}

}  // namespace

int run_sim(const Config& cfg, const SimArgs& args, std::istream& in, std::ostream& out,
            std::ostream& err) {
  const auto measure = parse_word_measure(args.measure);
  const auto loaded = load(cfg, needs_probabilities(measure));
  const auto& t = *loaded.taxonomy;
  const ProbabilityModel* m = loaded.model ? &*loaded.model : nullptr;
  const auto fmt = cfg.output_format();

  if (!args.words.empty()) {
    if (args.words.size() != 2) throw Error(ErrorKind::Domain, "sim takes exactly two words");
    print_sim(t, compute_sim(t, m, args.words[0], args.words[1], measure, cfg.log_base), fmt, out);
    return 0;
  }

  int rc = 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (skippable(line)) continue;
    std::istringstream fields(line);
    std::string w1, w2, extra;
    if (!(fields >> w1 >> w2) || (fields >> extra)) {
      err << at_line(line_no) << "expected two words\n";
      rc = std::max(rc, 2);
      continue;
    }
    try {
      print_sim(t, compute_sim(t, m, w1, w2, measure, cfg.log_base), fmt, out);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::Vocabulary) throw;
      err << at_line(line_no) << e.what() << '\n';
      rc = 3;
    }
  }
  return rc;
}

int run_eval(const Config& cfg, const EvalArgs& args, std::ostream& out) {
  CorrelationReport report;
  if (!args.pairs.empty()) {
    const auto measure = parse_word_measure(args.measure);
    const auto loaded = load(cfg, needs_probabilities(measure));
    std::ifstream in(args.pairs);
    if (!in) throw Error(ErrorKind::Load, "cannot open '" + args.pairs + "'");
    const auto gold = load_gold_csv(in);
    const ProbabilityModel* m = loaded.model ? &*loaded.model : nullptr;
    report = eval_live(*loaded.taxonomy, m, gold, measure, cfg.log_base);
  } else if (!args.fixture.empty()) {
    std::ifstream in(args.fixture);
    if (!in) throw Error(ErrorKind::Load, "cannot open '" + args.fixture + "'");
    const auto rows = load_eval_csv(in);
    report = eval_published(rows);
  } else {
    report = eval_published();
  }

  if (cfg.output_format() == OutputFormat::Jsonl) {
    for (const auto& e : report.entries) out << json{{"method", e.method}, {"r", e.r}}.dump() << '\n';
    out << json{{"items", report.item_count}, {"excluded", report.excluded}}.dump() << '\n';
    return 0;
  }
  out << "Similarity method\tCorrelation\n";
  for (const auto& e : report.entries) out << e.method << '\t' << fixed4(e.r) << '\n';
  out << "# items\t" << report.item_count << '\n';
  for (const auto& x : report.excluded) out << "# excluded\t" << x << '\n';
  return 0;
}

int run_group(const Config& cfg, const GroupArgs& args, std::istream& stdin_stream,
              std::ostream& out, std::ostream& err) {
  const auto loaded = load(cfg, true);
  const auto& m = *loaded.model;
  const auto& t = *loaded.taxonomy;
  const auto fmt = cfg.output_format();

  const bool evaluation =
      args.mode == "evaluation" || (args.mode.empty() && !args.annotations.empty());
  if (!args.mode.empty() && args.mode != "evaluation" && args.mode != "presentation")
    throw Error(ErrorKind::Domain, "--mode must be presentation or evaluation");
  auto settings = evaluation ? FilterSettings::evaluation() : FilterSettings::presentation();
  if (args.phi_threshold >= 0.0) settings.threshold = args.phi_threshold;
  if (args.min_level > 0) settings.min_level = args.min_level;

  std::vector<ItemPartition> partitions;
  with_input(args.input, stdin_stream, [&](std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (!line.empty() && line.front() == '#') continue;
      std::vector<std::string> words;
      std::istringstream fields(line);
      for (std::string w; std::getline(fields, w, ',');) {
        if (auto word = trim(w); !word.empty()) words.push_back(std::move(word));
      }
      if (words.empty()) {
        err << at_line(line_no) << "empty group skipped\n";
        continue;
      }
      std::vector<std::string> warnings;
      auto group = make_group(std::move(words), &warnings);
      for (const auto& w : group.words) {
        if (!t.knows_word(w)) warnings.push_back("'" + w + "' has no senses; left out of pairing");
      }
      for (const auto& w : warnings) err << at_line(line_no) << w << '\n';
      if (group.words.size() < 2) {
        err << at_line(line_no) << "group needs at least two distinct words; skipped\n";
        continue;
      }
      const auto result = disambiguate_group(m, group);
      auto part = filter_senses(t, result, settings, std::to_string(line_no));
      for (const auto& s : part.senses) {
        if (fmt == OutputFormat::Jsonl) {
          out << json{{"item", part.item_id}, {"word", s.word},   {"sense", s.sense},
                      {"phi", s.phi},         {"level", s.level}, {"included", s.included}}
                     .dump()
              << '\n';
        } else {
          out << part.item_id << '\t' << s.word << '\t' << s.sense << '\t' << fixed4(s.phi)
              << '\t' << s.level << '\t' << (s.included ? "yes" : "no") << '\n';
        }
      }
      partitions.push_back(std::move(part));
    }
    return 0;
  });

  if (args.annotations.empty()) return 0;
  std::ifstream ann_in(args.annotations);
  if (!ann_in) throw Error(ErrorKind::Load, "cannot open '" + args.annotations + "'");
  const auto ann = load_annotations(ann_in);
  const auto sel = score_selection(partitions, ann);
  const auto fil = score_filtering(partitions, ann);

  std::vector<BaselineItem> items;
  for (const auto& p : partitions) {
    BaselineItem item{p.item_id, {}};
    for (const auto& s : p.senses) item.senses.emplace_back(s.word, s.sense);
    items.push_back(std::move(item));
  }
  const auto base = random_baseline(items, ann, args.target_avg, args.runs, args.seed);

  if (fmt == OutputFormat::Jsonl) {
    json b{{"inclusion_probability", base.inclusion_probability},
           {"mean_included", base.mean_included},
           {"selection", {{"precision", opt_json(base.selection_precision)},
                          {"recall", opt_json(base.selection_recall)}}},
           {"filtering", {{"precision", opt_json(base.filtering_precision)},
                          {"recall", opt_json(base.filtering_recall)}}}};
    out << json{{"metrics", {{"selection", pr_json(sel)}, {"filtering", pr_json(fil)},
                             {"baseline", b}}}}
               .dump()
        << '\n';
    return 0;
  }
  out << "# selection\tprecision=" << opt4(sel.precision) << "\trecall=" << opt4(sel.recall)
      << '\n';
  out << "# filtering\tprecision=" << opt4(fil.precision) << "\trecall=" << opt4(fil.recall)
      << '\n';
  out << "# baseline\tq=" << fixed4(base.inclusion_probability)
      << "\tincluded=" << fixed4(base.mean_included)
      << "\tselection precision=" << opt4(base.selection_precision)
      << "\tselection recall=" << opt4(base.selection_recall)
      << "\tfiltering precision=" << opt4(base.filtering_precision)
      << "\tfiltering recall=" << opt4(base.filtering_recall) << '\n';
  return 0;
}

int run_coord(const Config& cfg, const CoordArgs& args, std::istream& stdin_stream,
              std::ostream& out, std::ostream& err) {
  if (args.combiner != "backoff" && args.combiner != "vote")
    throw Error(ErrorKind::Domain, "--combiner must be backoff or vote");
  if (args.tau < args.sigma) throw Error(ErrorKind::Domain, "--tau must be at least --sigma");
  const std::optional<Choice> fallback =
      args.default_choice.empty() ? std::nullopt : std::optional(parse_choice(args.default_choice));
  const bool vote = args.combiner == "vote";

  const auto loaded = load(cfg, false);
  std::optional<CoocModel> cooc;
  if (!args.pairs.empty()) {
    const auto pairs = load_pairs_file(args.pairs);
    cooc = ingest_pairs(*loaded.taxonomy, pairs);
  }
  std::optional<NumberLexicon> lexicon;
  if (!args.numbers.empty()) {
    std::ifstream in(args.numbers);
    if (!in) throw Error(ErrorKind::Load, "cannot open '" + args.numbers + "'");
    lexicon = load_number_lexicon(in);
  }

  CoordinationModels models;
  models.similarity = loaded.model ? &*loaded.model : nullptr;
  models.cooc = cooc ? &*cooc : nullptr;
  models.thresholds = Thresholds{args.tau, args.sigma};
  const auto fmt = cfg.output_format();

  return with_input(args.input, stdin_stream, [&](std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty() || line.front() == '#') continue;
      CoordinationPhrase phrase;
      try {
        phrase = parse_phrase(line, lexicon ? &*lexicon : nullptr);
      } catch (const Error& e) {
        err << at_line(line_no) << e.what() << '\n';
        continue;
      }
      if (loaded.lemmas) phrase = lemmatized(std::move(phrase), *loaded.lemmas);
      auto d = vote ? resolve_vote(phrase, models) : resolve_backoff(phrase, models);
      if (fallback) d = apply_default(std::move(d), *fallback);

      if (fmt == OutputFormat::Jsonl) {
        json evidence = json::array();
        for (const auto& sub : d.evidence) {
          json scores = json::array();
          for (double s : sub.scores) scores.push_back(std::isnan(s) ? json(nullptr) : json(s));
          evidence.push_back({{"strategy", to_string(sub.strategy)},
                              {"choice", to_string(sub.choice)},
                              {"evaluated", sub.evaluated},
                              {"scores", scores}});
        }
        out << json{{"choice", to_string(d.choice)},
                    {"strategy", strategy_label(d, vote)},
                    {"evidence", evidence}}
                   .dump()
            << '\n';
        continue;
      }
      out << to_string(d.choice) << '\t' << strategy_label(d, vote);
      for (const auto& sub : d.evidence) {
        if (!sub.evaluated) continue;
        out << '\t' << to_string(sub.strategy) << '=' << to_string(sub.choice);
        for (std::size_t i = 0; i < sub.scores.size(); ++i)
          out << (i == 0 ? ':' : ',') << score_text(sub.scores[i]);
      }
      out << '\n';
    }
    return 0;
  });
}

}  // namespace taxsim::cli
