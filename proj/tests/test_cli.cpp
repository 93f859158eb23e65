#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>

namespace {

struct Run {
  std::string out, err;
  int status = -1;
};

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Runs the CLI from the data directory with stderr captured separately.
Run run_cli(const std::string& args, const std::string& input = "") {
  const auto dir = std::filesystem::temp_directory_path() /
                   ("taxsim_cli_" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  const auto in_path = dir / "stdin", err_path = dir / "stderr";
  std::ofstream(in_path) << input;
  const std::string cmd = std::string("cd '") + TAXSIM_DATA_DIR + "' && '" + TAXSIM_CLI + "' " +
                          args + " < '" + in_path.string() + "' 2> '" + err_path.string() + "'";
  Run r;
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf;
  for (std::size_t n; (n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0;) r.out.append(buf.data(), n);
  const int st = ::pclose(pipe);
  r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  r.err = slurp(err_path);
  return r;
}

struct GoldenCase {
  const char* name;
  const char* args;
  int exit_code;
  const char* input = "";
};

const GoldenCase kCases[] = {
    {"sim_doctor_nurse", "-t medical.tax -p medical.prob sim doctor nurse", 0},
    {"sim_unknown_word", "-t medical.tax -p medical.prob sim doctor zebra", 3},
    {"sim_batch_lin", "-t medical.tax -p medical.prob sim -m lin", 0,
     "doctor\tnurse\nnurse\tactor\n"},
    {"sim_edge_coin", "-t coin.tax --corpus coin.txt sim nickel credit_card -m edge", 0},
    {"sim_edge_vtop_coin", "-t coin.tax --corpus coin.txt sim nickel credit_card -m edge-vtop", 0},
    {"sim_jsonl", "-t medical.tax -p medical.prob --format jsonl sim doctor nurse", 0},
    {"sim_missing_probabilities", "-t medical.tax sim doctor nurse", 2},
    {"eval_mc", "-t medical.tax eval-mc", 0},
    {"eval_mc_fixture", "-t medical.tax eval-mc --fixture mc_ratings.csv", 0},
    {"eval_mc_one_pair", "-t medical.tax -p medical.prob eval-mc --pairs /dev/stdin", 1,
     "doctor,nurse,3\n"},
    {"group_presentation", "-t medical.tax -p medical.prob group medical.groups --mode presentation", 0},
    {"group_annotations",
     "-t medical.tax -p medical.prob group medical.groups --annotations medical.ann "
     "--target-avg 1.3 --runs 10 --seed 1",
     0},
    {"group_jsonl", "-t medical.tax -p medical.prob --format jsonl group medical.groups", 0},
    {"coord_backoff",
     "-t coord.tax -p coord.prob --lemmas coord.lemmas coord coord_phrases.tsv --pairs coord.pairs", 0},
    {"coord_default",
     "-t coord.tax -p coord.prob --lemmas coord.lemmas coord coord_phrases.tsv --pairs coord.pairs "
     "--default 12",
     0},
    {"coord_vote",
     "-t coord.tax -p coord.prob --lemmas coord.lemmas coord coord_phrases.tsv --pairs coord.pairs "
     "--combiner vote",
     0},
    {"coord_jsonl",
     "-t coord.tax -p coord.prob --lemmas coord.lemmas --format jsonl coord - --pairs coord.pairs", 0,
     "\tmail\tsecurities\tfraud\t-\n"},
    {"bad_option", "-t medical.tax sim doctor nurse --no-such-flag", 2},
};

void PrintTo(const GoldenCase& c, std::ostream* os) { *os << c.name; }

class Golden : public ::testing::TestWithParam<GoldenCase> {};

}  // namespace

TEST_P(Golden, MatchesFile) {
  const auto& c = GetParam();
  const auto r = run_cli(c.args, c.input);
  EXPECT_EQ(r.status, c.exit_code) << r.err;
  const std::string actual = r.out + "--- stderr\n" + r.err;
  const auto path = std::filesystem::path(TAXSIM_GOLDEN_DIR) / (std::string(c.name) + ".txt");
  if (std::getenv("TAXSIM_UPDATE_GOLDEN")) std::ofstream(path) << actual;
  ASSERT_TRUE(std::filesystem::exists(path)) << path;
  EXPECT_EQ(actual, slurp(path));
}

INSTANTIATE_TEST_SUITE_P(Cli, Golden, ::testing::ValuesIn(kCases),
                         [](const auto& info) { return std::string(info.param.name); });

TEST(Cli, HelpExitsZero) {
  const auto r = run_cli("--help");
  EXPECT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("eval-mc"), std::string::npos);
}

TEST(Cli, EnvironmentSuppliesOptions) {
  const auto r = run_cli("sim doctor nurse",
                         "");  // no taxonomy on the command line
  EXPECT_EQ(r.status, 2);
  setenv("TAXSIM_TAXONOMY", "medical.tax", 1);
  setenv("TAXSIM_PROBABILITIES", "medical.prob", 1);
  const auto e = run_cli("sim doctor nurse");
  unsetenv("TAXSIM_TAXONOMY");
  unsetenv("TAXSIM_PROBABILITIES");
  EXPECT_EQ(e.status, 0) << e.err;
  EXPECT_EQ(e.out, "8.8440\tHEALTH_PROFESSIONAL\tDOCTOR1\tNURSE1\n");
}

TEST(Cli, ConfigFileSuppliesOptions) {
  const auto cfg = std::filesystem::temp_directory_path() / "taxsim_test.ini";
  std::ofstream(cfg) << "taxonomy=medical.tax\nprobabilities=medical.prob\n";
  const auto r = run_cli("--config '" + cfg.string() + "' sim doctor nurse");
  EXPECT_EQ(r.status, 0) << r.err;
  EXPECT_EQ(r.out, "8.8440\tHEALTH_PROFESSIONAL\tDOCTOR1\tNURSE1\n");
}
