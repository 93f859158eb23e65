#pragma once

#include <memory>
#include <optional>
#include <string>

#include "taxsim/probmodel.hpp"
#include "taxsim/taxonomy.hpp"

namespace taxsim::cli {

enum class OutputFormat { Tsv, Jsonl };

// Options shared by all subcommands; each subcommand adds its own on top.
struct Config {
  std::string taxonomy;
  std::string probabilities;
  std::string corpus;
  std::string corpus_format = "text";
  std::string lemmas;
  double log_base = 2.0;
  bool virtual_root = false;
  std::string fallback;
  std::string format = "tsv";

  OutputFormat output_format() const;
  LoadOptions load_options() const;
  bool has_probability_source() const { return !probabilities.empty() || !corpus.empty(); }
};

// Everything loaded from a Config. The taxonomy is heap-allocated so the
// models' back-pointers survive moves of the bundle.
struct Loaded {
  std::unique_ptr<Taxonomy> taxonomy;
  std::optional<LemmaMap> lemmas;
  std::optional<ProbabilityModel> model;
};

// Loads the taxonomy (required) and, when one is configured, the
// probability model. Throws taxsim::Error.
Loaded load(const Config& cfg, bool need_probabilities);

// Fixed 4-decimal rendering used in every text report.
std::string fixed4(double v);

}  // namespace taxsim::cli
