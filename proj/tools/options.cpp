#include "options.hpp"

#include <fstream>
#include <iomanip>
#include <memory>
#include <sstream>

#include "taxsim/error.hpp"

namespace taxsim::cli {

OutputFormat Config::output_format() const {
  return format == "jsonl" ? OutputFormat::Jsonl : OutputFormat::Tsv;
}

LoadOptions Config::load_options() const {
  LoadOptions opts;
  opts.virtual_root = virtual_root;
  if (!fallback.empty()) opts.fallback_concept = fallback;
  return opts;
}

namespace {

std::ifstream open(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Load, "cannot open '" + path + "'");
  return in;
}

}  // namespace

Loaded load(const Config& cfg, bool need_probabilities) {
  if (cfg.taxonomy.empty()) throw Error(ErrorKind::Load, "no taxonomy given (--taxonomy)");
  Loaded out;
  out.taxonomy = std::make_unique<Taxonomy>(load_taxonomy_file(cfg.taxonomy, cfg.load_options()));
  const auto& t = *out.taxonomy;
  if (!cfg.lemmas.empty()) out.lemmas = load_lemma_map_file(cfg.lemmas);
  const LemmaMap* lemmas = out.lemmas ? &*out.lemmas : nullptr;

  if (!cfg.probabilities.empty()) {
    out.model = load_probabilities_file(t, cfg.probabilities, cfg.log_base);
  } else if (!cfg.corpus.empty()) {
    auto in = open(cfg.corpus);
    const auto table = cfg.corpus_format == "counts" ? count_word_counts(t, in, lemmas)
                                                     : count_corpus(t, in, lemmas);
    out.model = to_probability(table, cfg.log_base);
  } else if (need_probabilities) {
    throw Error(ErrorKind::Load, "no probability source given (--probabilities or --corpus)");
  }
  return out;
}

std::string fixed4(double v) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(4) << v;
  return os.str();
}

}  // namespace taxsim::cli
