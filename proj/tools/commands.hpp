#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "options.hpp"

namespace taxsim::cli {

struct SimArgs {
  std::vector<std::string> words;  // empty: read pairs from stdin
  std::string measure = "resnik";
};

struct EvalArgs {
  std::string fixture;  // CSV replacing the embedded table
  std::string pairs;    // gold pairs; switches to live evaluation
  std::string measure = "resnik";
};

struct GroupArgs {
  std::string input = "-";
  std::string mode;  // presentation | evaluation; empty picks by --annotations
  double phi_threshold = -1.0;
  int min_level = 0;
  std::string annotations;
  double target_avg = 1.3;
  int runs = 10;
  std::uint64_t seed = 1;
};

struct CoordArgs {
  std::string input = "-";
  std::string combiner = "backoff";
  std::string default_choice;
  std::string pairs;
  std::string numbers;
  double tau = 2.0;
  double sigma = 0.0;
};

// Each returns the process exit code; errors escape as taxsim::Error.
int run_sim(const Config& cfg, const SimArgs& args, std::istream& in, std::ostream& out,
            std::ostream& err);
int run_eval(const Config& cfg, const EvalArgs& args, std::ostream& out);
int run_group(const Config& cfg, const GroupArgs& args, std::istream& in, std::ostream& out,
              std::ostream& err);
int run_coord(const Config& cfg, const CoordArgs& args, std::istream& in, std::ostream& out,
              std::ostream& err);

}  // namespace taxsim::cli
