#include <gtest/gtest.h>

#include "oracles.hpp"
#include "smatch/chain.hpp"
#include "smatch/drift.hpp"
#include "support.hpp"

using namespace smatch;
using namespace smatch::testing;

namespace {

std::vector<NodeId> letters(const QueueWord& w) { return {w.letters().begin(), w.letters().end()}; }

}  // namespace

TEST(Drift, TwoNodeExamples) {
  const Multigraph k = k2();
  const Rational p = q("0.3");
  const ProbMeasure mu({p, 1 - p});
  const QueueWord one = parse_word(k, "1");
  EXPECT_EQ(exact_drift(k, mu, fcfm(), one, LyapunovFn::linear()).drift, 2 * p - 1);
  EXPECT_EQ(exact_drift(k, mu, fcfm(), one, LyapunovFn::quadratic()).drift, 4 * p - 1);
  // From ε every arrival queues.
  EXPECT_EQ(exact_drift(k, mu, fcfm(), QueueWord{}, LyapunovFn::quadratic()).drift, 1);
}

TEST(Drift, FunctionsVanishOnlyAtTheEmptyWord) {
  const Multigraph g = path_loop();
  const std::vector<LyapunovFn> fs = {LyapunovFn::quadratic(), LyapunovFn::linear(),
                                      LyapunovFn::weighted_linear(g, path_loop_mu(), q("0.1"))};
  EXPECT_EQ(fs[2].v1_weight(), q("0.1"));
  for (const LyapunovFn& f : fs) {
    for (const QueueWord& w : enumerate_states(g, 4)) {
      if (w.empty()) {
        EXPECT_EQ(f(w), 0);
      } else {
        EXPECT_GT(f(w), 0);
      }
    }
  }
  EXPECT_THROW(LyapunovFn::weighted_linear(triangle(), ProbMeasure::uniform(3), 1), InputError);
  EXPECT_THROW(LyapunovFn::weighted_linear(g, path_loop_mu(), 0), InputError);
}

TEST(Drift, MatchesOracleAndDecomposes) {
  const Multigraph g = two_triangles_loop();
  const ProbMeasure mu = two_triangles_mu();
  const std::vector<std::vector<NodeId>> orders = {{1}, {2, 0, 3, 1}, {3, 1}, {1, 2}};
  const std::vector<std::pair<PolicySpec, oracle::ClassLaw>> cases = {
      {fcfm(), oracle::fcfm_law(g)},
      {priority(g, orders), oracle::priority_law(g, orders)},
      {match_the_longest(g), oracle::queue_length_law(g, 1)},
      {match_the_shortest(g), oracle::queue_length_law(g, -1)}};
  for (const auto& [policy, law] : cases) {
    for (const QueueWord& w : enumerate_states(g, 5)) {
      const DriftReport l = exact_drift(g, mu, policy, w, LyapunovFn::linear());
      const DriftReport qd = exact_drift(g, mu, policy, w, LyapunovFn::quadratic());
      EXPECT_EQ(l.drift, oracle::drift(g, mu, letters(w), law, oracle::linear)) << policy.label();
      EXPECT_EQ(qd.drift, oracle::drift(g, mu, letters(w), law, [&g](const auto& u) { return oracle::quadratic(g, u); }));
      Rational sum = 0;
      for (const Rational& c : qd.per_class) sum += c;
      EXPECT_EQ(sum, qd.drift);
      if (w.empty()) EXPECT_GE(qd.drift, 0);
    }
  }
}

TEST(Drift, SpecialSetExamples) {
  const Multigraph g = path_loop();
  const SpecialSets s = special_sets(g, parse_word(g, "3"));
  EXPECT_EQ(s.once, NodeSet::single(2));
  EXPECT_TRUE(s.idle.empty());
  EXPECT_EQ(s.present, NodeSet::single(2));

  const SpecialSets e = special_sets(g, QueueWord{});
  EXPECT_TRUE(e.once.empty());
  EXPECT_EQ(e.idle, g.self_looped());
  EXPECT_TRUE(e.present.empty());
  // A queued neighbor makes the looped class busy.
  EXPECT_TRUE(special_sets(g, parse_word(g, "2")).idle.empty());

  const Multigraph t = triangle();
  const SpecialSets none = special_sets(t, parse_word(t, "1"));
  EXPECT_TRUE(none.once.empty() && none.idle.empty() && none.present.empty());

  // On admissible states a looped class appears at most once.
  for (const Multigraph& h : {path_loop(), partite_loop(), square_loops()}) {
    for (const QueueWord& w : enumerate_states(h, 4)) {
      const SpecialSets x = special_sets(h, w);
      EXPECT_EQ(x.once, x.present);
    }
  }
}

TEST(Drift, IdentitiesHoldExactly) {
  const std::vector<std::pair<Multigraph, ProbMeasure>> models = {
      {path_loop(), path_loop_mu()}, {two_triangles_loop(), two_triangles_mu()}, {partite_loop(), partite_mu()}};
  for (const auto& [g, mu] : models) {
    std::map<NodeId, Rational> split;
    for (NodeId i : g.self_looped()) split[i] = q("0.3");
    for (const PolicySpec& p : {fcfm(), match_the_longest(g), match_the_shortest(g), max_weight(g, 0, 1)}) {
      const DriftModels m = make_drift_models(g, mu, p, split);
      auto states = enumerate_states(g, 4);
      const auto longer = queued_states(g, mu, 50, 5, 3);
      states.insert(states.end(), longer.begin(), longer.end());
      for (const QueueWord& w : states) {
        const IdentityCheck c = check_identities(m, w);
        EXPECT_EQ(c.quadratic_residual, 0) << p.label() << " " << format_word(g, w);
        EXPECT_EQ(c.linear_left_residual, 0);
        EXPECT_EQ(c.linear_right_residual, 0);
        EXPECT_LE(c.dl, c.dl_hat);
        EXPECT_LE(c.dl_hat, c.dl_reduced);
        EXPECT_LE(c.dq, c.dq_hat);
        if (!special_sets(g, w).once.empty()) EXPECT_LT(c.dq, c.dq_hat);
      }
    }
  }
}

TEST(Drift, LoopFreeGraphsHaveNoGap) {
  const Multigraph t = triangle();
  for (const QueueWord& w : enumerate_states(t, 4)) {
    const IdentityCheck c = check_identities(make_drift_models(t, ProbMeasure::uniform(3), fcfm()), w);
    EXPECT_EQ(c.dq, c.dq_hat);
    EXPECT_EQ(c.dl, c.dl_hat);
    EXPECT_EQ(c.dl_hat, c.dl_reduced);
  }
  EXPECT_EQ(verify_quadratic_identity(path_loop(), path_loop_mu(), fcfm(), {}, parse_word(path_loop(), "1 3")), 0);
  EXPECT_EQ(verify_linear_chain(path_loop(), path_loop_mu(), fcfm(), {}, parse_word(path_loop(), "1 3")),
            (std::pair<Rational, Rational>{0, 0}));
}

TEST(Drift, PartiteBoundOnFixtures) {
  const std::vector<std::tuple<Multigraph, ProbMeasure, PolicySpec>> models = {
      {path_loop(), path_loop_mu(), path_loop_favorable(path_loop())},
      {partite_loop(), partite_mu(), partite_favorable(partite_loop())}};
  for (const auto& [g, mu, policy] : models) {
    std::size_t applicable = 0;
    for (const QueueWord& w : enumerate_states(g, 6)) {
      const PartiteBoundCheck c = verify_ppartite_bound(g, mu, policy, w);
      if (!c.applicable) continue;
      ++applicable;
      EXPECT_TRUE(c.holds) << format_word(g, w) << " drift " << to_double(c.drift);
      EXPECT_EQ(c.bound, -*ncond_check(g, mu).margin / 2);
    }
    EXPECT_GT(applicable, 0U);
  }
}

TEST(Drift, PartiteBoundRejectsBadInputs) {
  const QueueWord w;
  EXPECT_THROW(verify_ppartite_bound(two_triangles_loop(), two_triangles_mu(), fcfm(), w), InputError);
  EXPECT_THROW(verify_ppartite_bound(k2(), ProbMeasure::uniform(2), fcfm(), w), InputError);
  EXPECT_THROW(verify_ppartite_bound(path_loop(), measure({"0.4", "0.2", "0.4"}), fcfm(), w), NcondViolation);
}

TEST(Drift, LinearDriftOnCompleteMultipartiteReduction) {
  // The loop-free part of the 3-partite fixture is complete multipartite, so every
  // nonempty admissible state sits inside one part and any policy drains it.
  const Multigraph g = partite_loop();
  const ProbMeasure mu = partite_mu();
  ASSERT_TRUE(ncond_check(maximal_subgraph(g), mu).satisfied);
  for (const PolicySpec& p : {fcfm(), lcfm(), match_the_shortest(g), partite_favorable(g)}) {
    const NegativeDriftScan scan = scan_negative_drift(g, mu, p, LyapunovFn::linear(), 6);
    ASSERT_TRUE(scan.threshold);
    EXPECT_EQ(*scan.threshold, 1U);
    EXPECT_GT(scan.eta, 0);
  }
}

TEST(Drift, LongestQueueQuadraticScan) {
  const Multigraph g = two_triangles_loop();
  const NegativeDriftScan scan =
      scan_negative_drift(g, two_triangles_mu(), match_the_longest(g), LyapunovFn::quadratic(), 7);
  ASSERT_EQ(scan.max_drift_by_length.size(), 7U);
  ASSERT_TRUE(scan.threshold);
  EXPECT_GT(scan.eta, 0);
  for (std::size_t k = *scan.threshold - 1; k < 7; ++k) EXPECT_LE(scan.max_drift_by_length[k], -scan.eta);
  // Short states still grow: a single item of class 1 is matched only by class 2.
  EXPECT_GT(scan.max_drift_by_length[0], 0);
}
