#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"
#include "taxsim/error.hpp"

using namespace taxsim;
using namespace taxsim::cli;

namespace {

constexpr int kOk = 0;
constexpr int kInternal = 1;
constexpr int kLoadError = 2;
constexpr int kVocabularyError = 3;

void add_common(CLI::App& app, Config& cfg) {
  app.add_option("--taxonomy,-t", cfg.taxonomy, "Taxonomy file")->envname("TAXSIM_TAXONOMY");
  auto* probs = app.add_option("--probabilities,-p", cfg.probabilities,
                               "Concept probability file (p= or ic= records)")
                    ->envname("TAXSIM_PROBABILITIES");
  auto* corpus = app.add_option("--corpus", cfg.corpus, "Corpus to estimate probabilities from")
                     ->envname("TAXSIM_CORPUS");
  probs->excludes(corpus);
  app.add_option("--corpus-format", cfg.corpus_format, "Corpus layout")
      ->check(CLI::IsMember({"text", "counts"}))
      ->envname("TAXSIM_CORPUS_FORMAT");
  app.add_option("--lemmas", cfg.lemmas, "surface<TAB>lemma map")->envname("TAXSIM_LEMMAS");
  app.add_option("--log-base", cfg.log_base, "Logarithm base for information content")
      ->check(CLI::PositiveNumber)
      ->envname("TAXSIM_LOG_BASE");
  app.add_flag("--virtual-root", cfg.virtual_root, "Insert a synthetic root above all roots")
      ->envname("TAXSIM_VIRTUAL_ROOT");
  app.add_option("--fallback", cfg.fallback, "Concept used for words without senses")
      ->envname("TAXSIM_FALLBACK");
  app.add_option("--format", cfg.format, "Output format")
      ->check(CLI::IsMember({"tsv", "jsonl"}))
      ->envname("TAXSIM_FORMAT");
}

int exit_code(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::Load: return kLoadError;
    case ErrorKind::Vocabulary: return kVocabularyError;
    default: return kInternal;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Taxonomy-based semantic similarity tools"};
  app.set_config("--config", "", "TOML/INI file with option defaults");
  app.require_subcommand(1);
  app.fallthrough();

  Config cfg;
  add_common(app, cfg);

  SimArgs sim;
  auto* sim_cmd = app.add_subcommand("sim", "Rate the similarity of word pairs");
  sim_cmd->add_option("words", sim.words, "Two words; omit to read pairs from stdin")
      ->expected(0, 2);
  sim_cmd->add_option("--measure,-m", sim.measure, "resnik|edge|edge-vtop|prob|lc|lin|wup|len")
      ->envname("TAXSIM_MEASURE");

  EvalArgs eval;
  auto* eval_cmd = app.add_subcommand("eval-mc", "Correlate similarity with human ratings");
  eval_cmd->add_option("--fixture", eval.fixture, "Published-values CSV to use instead");
  eval_cmd->add_option("--pairs", eval.pairs, "Gold word1,word2,rating CSV (live evaluation)");
  eval_cmd->add_option("--measure,-m", eval.measure, "Measure for live evaluation");

  GroupArgs group;
  auto* group_cmd = app.add_subcommand("group", "Disambiguate comma-separated noun groups");
  group_cmd->add_option("input", group.input, "Group file, or - for stdin");
  group_cmd->add_option("--mode", group.mode, "presentation (0.1, 1) or evaluation (0, 3)")
      ->check(CLI::IsMember({"presentation", "evaluation"}));
  group_cmd->add_option("--phi-threshold", group.phi_threshold, "Minimum phi to include a sense")
      ->check(CLI::Range(0.0, 1.0))
      ->envname("TAXSIM_PHI_THRESHOLD");
  group_cmd->add_option("--min-level", group.min_level, "Minimum confidence level 1..5")
      ->check(CLI::Range(1, 5))
      ->envname("TAXSIM_MIN_LEVEL");
  group_cmd->add_option("--annotations", group.annotations, "Reference sense labels");
  group_cmd->add_option("--target-avg", group.target_avg,
                        "Random baseline: target senses per item")
      ->check(CLI::PositiveNumber);
  group_cmd->add_option("--runs", group.runs, "Random baseline runs")->check(CLI::PositiveNumber);
  group_cmd->add_option("--seed", group.seed, "Random baseline seed");

  CoordArgs coord;
  auto* coord_cmd = app.add_subcommand("coord", "Resolve coordination ambiguities");
  coord_cmd->add_option("input", coord.input, "Phrase file, or - for stdin");
  coord_cmd->add_option("--combiner", coord.combiner, "backoff or vote")
      ->check(CLI::IsMember({"backoff", "vote"}));
  coord_cmd->add_option("--default", coord.default_choice, "Choice for undecided phrases")
      ->check(CLI::IsMember({"12", "13"}));
  coord_cmd->add_option("--pairs", coord.pairs, "predicate<TAB>argument<TAB>count file")
      ->envname("TAXSIM_PAIRS");
  coord_cmd->add_option("--numbers", coord.numbers, "word<TAB>sg|pl lexicon");
  coord_cmd->add_option("--tau", coord.tau, "Strong association threshold")
      ->envname("TAXSIM_TAU");
  coord_cmd->add_option("--sigma", coord.sigma, "Weak association threshold")
      ->envname("TAXSIM_SIGMA");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kLoadError;
  }

  try {
    if (sim_cmd->parsed()) return run_sim(cfg, sim, std::cin, std::cout, std::cerr);
    if (eval_cmd->parsed()) return run_eval(cfg, eval, std::cout);
    if (group_cmd->parsed()) return run_group(cfg, group, std::cin, std::cout, std::cerr);
    if (coord_cmd->parsed()) return run_coord(cfg, coord, std::cin, std::cout, std::cerr);
  } catch (const Error& e) {
    std::cerr << "taxsim: " << e.what() << '\n';
    return exit_code(e);
  } catch (const std::exception& e) {
    std::cerr << "taxsim: internal error: " << e.what() << '\n';
    return kInternal;
  }
  return kInternal;
}
