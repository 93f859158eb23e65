#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "oracles/graph_oracle.hpp"
#include "support.hpp"
#include "taxsim/coordination.hpp"
#include "taxsim/evalharness.hpp"
#include "taxsim/selection.hpp"
#include "taxsim/sensegroup.hpp"
#include "taxsim/similarity.hpp"

using namespace taxsim;
using namespace testing_support;

namespace {

std::string node_name(int i) {
  return (i < 10 ? "N0" : "N") + std::to_string(i);
}

struct Generated {
  oracle::Dag dag;
  std::vector<std::vector<std::string>> words;  // per node
};

Taxonomy build(const Generated& g, bool virtual_root = false) {
  std::vector<ConceptRecord> records;
  for (int i = 0; i < g.dag.size(); ++i) {
    ConceptRecord r{node_name(i), {}, g.words.empty() ? std::vector<std::string>{} : g.words[i], 0};
    for (int p : g.dag.parents[i]) r.parents.push_back(node_name(p));
    records.push_back(std::move(r));
  }
  LoadOptions opts;
  opts.virtual_root = virtual_root;
  return Taxonomy::from_records(std::move(records), opts);
}

// Random DAG whose parents always have lower numbers; every node carries
// its own word and some carry one of a few shared (polysemous) words.
Generated random_dag(std::mt19937_64& rng, int n, bool tree = false) {
  Generated g;
  g.dag.parents.resize(n);
  g.words.resize(n);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int j = 1; j < n; ++j) {
    if (u(rng) < 0.1) continue;  // another root
    const int k = tree ? 1 : 1 + static_cast<int>(u(rng) * 3);
    std::set<int> ps;
    for (int a = 0; a < k; ++a) ps.insert(static_cast<int>(u(rng) * j));
    g.dag.parents[j].assign(ps.begin(), ps.end());
  }
  for (int i = 0; i < n; ++i) {
    g.words[i].push_back("w" + std::to_string(i));
    if (u(rng) < 0.3) g.words[i].push_back("p" + std::to_string(static_cast<int>(u(rng) * 5)));
  }
  return g;
}

std::vector<std::string> all_words(const Generated& g) {
  std::set<std::string> s;
  for (const auto& ws : g.words) s.insert(ws.begin(), ws.end());
  return {s.begin(), s.end()};
}

// Corpus with each word repeated 1..5 times.
std::vector<std::string> random_tokens(std::mt19937_64& rng, const Generated& g,
                                       std::map<std::string, int>* counts = nullptr) {
  std::vector<std::string> tokens;
  for (const auto& w : all_words(g)) {
    const int k = 1 + static_cast<int>(rng() % 5);
    if (counts) (*counts)[w] = k;
    for (int i = 0; i < k; ++i) tokens.push_back(w);
  }
  return tokens;
}

void check_structure(const Generated& g, const Taxonomy& t) {
  const int n = g.dag.size();
  for (int a = 0; a < n; ++a) {
    const ConceptIndex ca = t.index_of(node_name(a));
    const auto up = oracle::up_distances(g.dag, a);
    const auto anc = t.ancestors(ca);
    ASSERT_EQ(anc.size(), up.size()) << node_name(a);
    for (const auto& x : anc) {
      const int node = std::stoi(t.id(x.node).str().substr(1));
      ASSERT_TRUE(up.count(node));
      EXPECT_EQ(x.distance, up.at(node));
    }
    EXPECT_EQ(t.depth(ca), oracle::depth(g.dag, a)) << node_name(a);
    for (int b = 0; b < n; ++b) {
      const ConceptIndex cb = t.index_of(node_name(b));
      const auto len = t.path_length(ca, cb);
      const auto want = oracle::path_length(g.dag, a, b);
      ASSERT_EQ(len.has_value(), want.has_value()) << node_name(a) << " " << node_name(b);
      if (want) EXPECT_EQ(*len, *want);
      EXPECT_EQ(t.common_ancestors(ca, cb).size(), oracle::common_ancestors(g.dag, a, b).size());
    }
  }
}

}  // namespace

TEST(GraphProperties, ExhaustiveSmallDags) {
  // Every DAG on up to six nodes whose edges run from lower to higher
  // numbers, which covers every DAG up to relabeling.
  std::size_t count = 0;
  for (int n = 1; n <= 6; ++n) {
    std::vector<std::pair<int, int>> edges;
    for (int j = 1; j < n; ++j)
      for (int i = 0; i < j; ++i) edges.emplace_back(i, j);
    for (std::uint32_t mask = 0; mask < (1u << edges.size()); ++mask) {
      Generated g;
      g.dag.parents.resize(n);
      for (std::size_t e = 0; e < edges.size(); ++e)
        if (mask & (1u << e)) g.dag.parents[edges[e].second].push_back(edges[e].first);
      const auto t = build(g);
      check_structure(g, t);
      if (HasFatalFailure()) return;
      ++count;
    }
  }
  EXPECT_EQ(count, 1u + 2 + 8 + 64 + 1024 + 32768);
}

TEST(GraphProperties, SevenAndEightNodeDags) {
  // 2^21 and 2^28 edge sets are too many to enumerate inside the time
  // budget; sample them uniformly instead.
  std::mt19937_64 rng(99);
  for (int n = 7; n <= 8; ++n) {
    for (int trial = 0; trial < 20000; ++trial) {
      Generated g;
      g.dag.parents.resize(n);
      for (int j = 1; j < n; ++j)
        for (int i = 0; i < j; ++i)
          if (rng() & 1) g.dag.parents[j].push_back(i);
      check_structure(g, build(g));
      if (HasFatalFailure()) return;
    }
  }
}

TEST(GraphProperties, RandomDags) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 49);
    const auto g = random_dag(rng, n);
    const auto t = build(g);
    check_structure(g, t);
    if (HasFatalFailure()) return;
  }
}

TEST(ProbabilityProperties, CountsMatchOracleAndIncreaseUpward) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    const auto g = random_dag(rng, 2 + static_cast<int>(rng() % 49));
    const auto t = build(g, true);
    std::map<std::string, int> counts;
    const auto tokens = random_tokens(rng, g, &counts);
    const auto m = to_probability(count_corpus(t, tokens));

    std::vector<double> freq(g.dag.size(), 0.0);
    double total = 0.0;
    for (const auto& [w, k] : counts) {
      std::set<int> credited;
      for (int i = 0; i < g.dag.size(); ++i)
        if (std::count(g.words[i].begin(), g.words[i].end(), w))
          for (const auto& [a, d] : oracle::up_distances(g.dag, i)) credited.insert(a);
      for (int a : credited) freq[a] += k;
      total += k;
    }
    for (int i = 0; i < g.dag.size(); ++i)
      EXPECT_NEAR(m.p(node_name(i)), freq[i] / total, 1e-12);

    EXPECT_EQ(m.ic(*t.virtual_root()), 0.0);
    for (ConceptIndex c = 0; c < t.size(); ++c)
      for (auto p : t.parents(c)) EXPECT_GE(m.p(p), m.p(c));
  }
}

TEST(SimilarityProperties, ResnikMatchesOracle) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const auto g = random_dag(rng, 2 + static_cast<int>(rng() % 30));
    const auto t = build(g);
    const auto tokens = random_tokens(rng, g);
    const auto m = to_probability(count_corpus(t, tokens));
    std::vector<double> ic;
    for (int i = 0; i < g.dag.size(); ++i) ic.push_back(m.ic(node_name(i)));
    for (int a = 0; a < g.dag.size(); ++a)
      for (int b = 0; b < g.dag.size(); ++b) {
        const auto want = oracle::resnik(g.dag, ic, a, b);
        const auto got = sim_resnik(m, t.index_of(node_name(a)), t.index_of(node_name(b)));
        EXPECT_EQ(got.value, want.value_or(0.0));
        EXPECT_EQ(got.subsumers.empty(), !want.has_value());
      }
  }
}

TEST(SimilarityProperties, SymmetryAndSelfSimilarity) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 40; ++trial) {
    const auto g = random_dag(rng, 2 + static_cast<int>(rng() % 25));
    const auto t = build(g, true);
    const auto tokens = random_tokens(rng, g);
    const auto m = to_probability(count_corpus(t, tokens));
    const auto words = all_words(g);
    for (const auto& w1 : words) {
      for (const auto& w2 : words) {
        for (auto cm : {ConceptMeasure::Resnik, ConceptMeasure::Prob, ConceptMeasure::Lin,
                        ConceptMeasure::WuPalmer})
          EXPECT_NEAR(wsim(m, w1, w2, cm).value, wsim(m, w2, w1, cm).value, 1e-12);
        for (auto v : {EdgeVariant::AssertZero, EdgeVariant::VirtualTop}) {
          EXPECT_EQ(wsim_edge(t, w1, w2, v), wsim_edge(t, w2, w1, v));
          EXPECT_EQ(wsim_lc(t, w1, w2, 2.0, v), wsim_lc(t, w2, w1, 2.0, v));
        }
        EXPECT_EQ(wsim_all_subsumers(m, w1, w2).subsumers,
                  wsim_all_subsumers(m, w2, w1).subsumers);
      }
    }
    for (ConceptIndex c = 0; c < t.size(); ++c) {
      EXPECT_NEAR(sim_lin(m, c, c), 1.0, 1e-12) << t.id(c);
      EXPECT_NEAR(sim_wupalmer(t, c, c), 1.0, 1e-12) << t.id(c);
      for (ConceptIndex d = 0; d < t.size(); ++d) {
        EXPECT_NEAR(sim_lin(m, c, d), sim_lin(m, d, c), 1e-12);
        EXPECT_NEAR(sim_wupalmer(t, c, d), sim_wupalmer(t, d, c), 1e-12);
        const double lin = sim_lin(m, c, d);
        EXPECT_GE(lin, 0.0);
        EXPECT_LE(lin, 1.0 + 1e-12);
      }
    }
  }
}

TEST(SimilarityProperties, TreeBounds) {
  // In a tree both subsumers of (a,b) and (b,c) lie on b's root path, so
  // the higher one subsumes a and c.
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 40; ++trial) {
    auto g = random_dag(rng, 2 + static_cast<int>(rng() % 20), true);
    for (int j = 1; j < g.dag.size(); ++j)
      if (g.dag.parents[j].empty()) g.dag.parents[j] = {0};
    const auto t = build(g);
    const auto tokens = random_tokens(rng, g);
    const auto m = to_probability(count_corpus(t, tokens));
    const int n = g.dag.size();
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c) {
          const auto ia = t.index_of(node_name(a)), ib = t.index_of(node_name(b)),
                     ic = t.index_of(node_name(c));
          EXPECT_LE(*t.path_length(ia, ic), *t.path_length(ia, ib) + *t.path_length(ib, ic));
          EXPECT_GE(sim_resnik(m, ia, ic).value,
                    std::min(sim_resnik(m, ia, ib).value, sim_resnik(m, ib, ic).value));
        }
  }
}

TEST(EvalProperties, LengthEdgeAndLogBaseInvariance) {
  std::mt19937_64 rng(19);
  std::uniform_real_distribution<double> rating(0.0, 4.0);
  for (int trial = 0; trial < 50; ++trial) {
    const auto g = random_dag(rng, 4 + static_cast<int>(rng() % 30));
    const auto t = build(g, true);
    const auto tokens = random_tokens(rng, g);
    const auto m = to_probability(count_corpus(t, tokens));
    const auto words = all_words(g);
    std::vector<GoldPair> gold;
    for (int k = 0; k < 12; ++k)
      gold.push_back({words[rng() % words.size()], words[rng() % words.size()], rating(rng)});

    auto r = [&](const ProbabilityModel* model, WordMeasure wm) -> std::optional<double> {
      try {
        return eval_live(t, model, gold, wm, model ? model->log_base() : 2.0).entries[0].r;
      } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::Domain);  // constant scores
        return std::nullopt;
      }
    };
    const auto edge = r(nullptr, WordMeasure::Edge);
    const auto len = r(nullptr, WordMeasure::PathLength);
    ASSERT_EQ(edge.has_value(), len.has_value());
    if (edge) EXPECT_NEAR(*edge, -*len, 1e-9);

    const auto m10 = m.rebased(10.0);
    for (auto wm : {WordMeasure::Resnik, WordMeasure::Lin, WordMeasure::Prob}) {
      const auto a = r(&m, wm), b = r(&m10, wm);
      ASSERT_EQ(a.has_value(), b.has_value());
      if (a) EXPECT_NEAR(*a, *b, 1e-9) << to_string(wm);
    }
  }
}

TEST(SenseGroupProperties, PhiBoundsMonosemyAndOrder) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 60; ++trial) {
    const auto g = random_dag(rng, 3 + static_cast<int>(rng() % 30));
    const auto t = build(g, true);
    const auto tokens = random_tokens(rng, g);
    const auto m = to_probability(count_corpus(t, tokens));
    auto words = all_words(g);
    std::shuffle(words.begin(), words.end(), rng);
    words.resize(std::min<std::size_t>(words.size(), 2 + rng() % 4));

    const auto r = disambiguate_group(m, make_group(words));
    std::map<std::pair<std::string, ConceptIndex>, double> phi;
    for (const auto& ws : r.words) {
      for (std::size_t k = 0; k < ws.senses.size(); ++k) {
        EXPECT_GE(ws.phi[k], 0.0);
        EXPECT_LE(ws.phi[k], 1.0 + 1e-12);
        phi[{ws.word, ws.senses[k]}] = ws.phi[k];
      }
      if (ws.senses.size() == 1) EXPECT_NEAR(ws.phi[0], 1.0, 1e-12) << ws.word;
    }

    std::reverse(words.begin(), words.end());
    const auto r2 = disambiguate_group(m, make_group(words));
    for (const auto& ws : r2.words)
      for (std::size_t k = 0; k < ws.senses.size(); ++k)
        EXPECT_NEAR(ws.phi[k], (phi[{ws.word, ws.senses[k]}]), 1e-12);
  }
}

TEST(SelectionProperties, AssociationsSumToOne) {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 60; ++trial) {
    const auto g = random_dag(rng, 3 + static_cast<int>(rng() % 30));
    const auto t = build(g);
    const auto words = all_words(g);
    std::vector<CoocPair> pairs;
    for (int k = 0; k < 40; ++k)
      pairs.push_back({"v" + std::to_string(rng() % 4), words[rng() % words.size()],
                       1.0 + static_cast<double>(rng() % 5)});
    const auto cm = ingest_pairs(t, pairs);
    for (int v = 0; v < 4; ++v) {
      const std::string pred = "v" + std::to_string(v);
      if (cm.word_total(pred) == 0.0 || cm.divergence(pred) <= 1e-12) continue;
      double sum = 0.0;
      for (auto c : cm.inventory()) sum += sel_assoc_class(cm, pred, c);
      EXPECT_NEAR(sum, 1.0, 1e-9) << pred;
    }
  }
}

TEST(CoordinationProperties, BackoffDominanceAndVoteOrder) {
  const auto t = load_taxonomy_file(data_path("coord.tax"));
  const auto probs = load_probabilities_file(t, data_path("coord.prob"));
  const auto pairs = load_pairs_file(data_path("coord.pairs"));
  const auto cooc = ingest_pairs(t, pairs);
  auto words = t.vocabulary();
  words.push_back("unknownword");
  const CoordinationModels models{&probs, &cooc, {}};

  std::mt19937_64 rng(31);
  const NumberTag tags[] = {NumberTag::Singular, NumberTag::Plural, NumberTag::Unknown};
  for (int k = 0; k < 2000; ++k) {
    CoordinationPhrase p;
    if (rng() % 3 == 0) p.n0 = words[rng() % words.size()];
    p.n1 = words[rng() % words.size()];
    p.n2 = words[rng() % words.size()];
    p.n3 = words[rng() % words.size()];
    for (auto& n : p.numbers) n = tags[rng() % 3];

    const auto d = resolve_backoff(p, models);
    bool fired_seen = false;
    for (const auto& sub : d.evidence) {
      if (fired_seen) {
        EXPECT_FALSE(sub.evaluated);
        continue;
      }
      EXPECT_TRUE(sub.evaluated);
      if (d.fired && sub.strategy == *d.fired) {
        fired_seen = true;
        EXPECT_EQ(sub.choice, d.choice);
        EXPECT_EQ(evaluate_strategy(sub.strategy, p, models).choice, d.choice);
      } else {
        EXPECT_EQ(sub.choice, Choice::Undecided);
      }
    }
    EXPECT_EQ(fired_seen, d.fired.has_value());
    if (!d.fired) EXPECT_EQ(d.choice, Choice::Undecided);

    std::vector<Strategy> order{Strategy::Modification, Strategy::Number, Strategy::Similarity};
    const auto first = resolve_vote(p, models, order).choice;
    while (std::next_permutation(order.begin(), order.end()))
      EXPECT_EQ(resolve_vote(p, models, order).choice, first);
  }
}
