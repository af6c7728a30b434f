#include "bgncg/bgncg.hpp"
#include "oracle.hpp"

#include <gtest/gtest.h>

using namespace bgncg;

namespace {

Instance unit_triangle(Scalar alpha) { return oracle::host_from({{0, 1, 1}, {1, 0, 1}, {1, 1, 0}}, alpha); }
Instance single_pair() { return oracle::host_from({{0, 1}, {1, 0}}, Scalar(1)); }

// Found by seeded search over n = 4 instances (L1 grid points, alpha = 2).
Instance bne_not_bse_instance() {
  return oracle::host_from({{0, 1, 2, 4}, {1, 0, 1, 3}, {2, 1, 0, 2}, {4, 3, 2, 0}}, Scalar(2));
}

}  // namespace

TEST(ApplyMove, RemovesAndAdds) {
  const Network g(2, {{0, 1}});
  Move rm{Concept::PS, {0}, {Edge(0, 1)}, {}};
  EXPECT_TRUE(apply_move(g, rm).empty());
  EXPECT_EQ(g.size(), 1u);
  Move add{Concept::PS, {0, 1}, {}, {Edge(0, 1)}};
  EXPECT_EQ(apply_move(Network(2), add), g);
}

TEST(ApplyMove, RejectsMalformedMoves) {
  const Network g(3, {{0, 1}});
  auto kind_of = [&](const Move& m) {
    try {
      apply_move(g, m);
    } catch (const MoveError& e) {
      return e.kind();
    }
    ADD_FAILURE();
    return MoveError::Kind::BadNode;
  };
  EXPECT_EQ(kind_of(Move{Concept::BSE, {0, 1}, {}, {Edge(1, 2)}}), MoveError::Kind::AdditionOutsideCoalition);
  EXPECT_EQ(kind_of(Move{Concept::BSE, {0}, {Edge(0, 2)}, {}}), MoveError::Kind::RemovalNotPresent);
  EXPECT_EQ(kind_of(Move{Concept::BSE, {0, 1}, {}, {Edge(0, 1)}}), MoveError::Kind::AdditionAlreadyPresent);
  EXPECT_EQ(kind_of(Move{Concept::BSE, {2}, {Edge(0, 1)}, {}}), MoveError::Kind::RemovalOutsideCoalition);
}

TEST(PairwiseStability, EmptyPairIsUnstable) {
  const Verdict v = is_pairwise_stable(single_pair(), Network(2));
  ASSERT_TRUE(v.unstable());
  EXPECT_EQ(v.witness->add, EdgeList{Edge(0, 1)});
  EXPECT_EQ(v.deltas.at(0), -Scalar::infinity());
}

TEST(PairwiseStability, TriangleWithExpensiveEdges) {
  const Verdict v = is_pairwise_stable(unit_triangle(Scalar(3)), Network::complete(3));
  ASSERT_TRUE(v.unstable());
  EXPECT_EQ(v.witness->coalition, std::vector<Node>{0});
  EXPECT_EQ(v.witness->remove, EdgeList{Edge(0, 1)});
  EXPECT_EQ(v.deltas.at(0), Scalar(-2));
  EXPECT_TRUE(v.canonical);
}

TEST(PairwiseStability, MetricStarConstruction) {
  const Fixture f = gen_metric_star(4, Scalar(4), Concept::PS);
  EXPECT_TRUE(is_pairwise_stable(f.instance, f.stable_net).stable());
}

TEST(PairwiseStability, IndifferenceIsNotImprovement) {
  // alpha = 1 on the unit triangle: removing saves 1 and costs 1.
  EXPECT_TRUE(is_pairwise_stable(unit_triangle(Scalar(1)), Network::complete(3)).stable());
  EXPECT_TRUE(is_pairwise_stable(unit_triangle(Scalar(1)), Network(3, {{0, 1}, {1, 2}})).stable());
}

TEST(NeighborhoodEquilibrium, MetricStarConstruction) {
  const Fixture f = gen_metric_star(5, Scalar(16), Concept::BNE);
  EXPECT_TRUE(is_bne(f.instance, f.stable_net).stable());
}

TEST(NeighborhoodEquilibrium, SwapThroughCheaperPartner) {
  // a = 0, b = 1, c = 2; a swaps its long edge to c for an edge to b.
  const Instance inst = oracle::host_from({{0, 1, 10}, {1, 0, 1}, {10, 1, 0}}, Scalar(1));
  const Network g(3, {{0, 2}, {1, 2}});
  const Verdict v = is_bne(inst, g);
  ASSERT_TRUE(v.unstable());
  const Move& m = *v.witness;
  EXPECT_TRUE(has_concept_shape(m));
  EXPECT_TRUE(replay_move(inst, g, m).improving);
  // the swap itself is improving for both endpoints
  const Move swap{Concept::BNE, {0, 1}, {Edge(0, 2)}, {Edge(0, 1)}};
  const ReplayResult r = replay_move(inst, g, swap);
  EXPECT_TRUE(r.improving);
  EXPECT_LT(r.deltas.at(0), Scalar(0));
  EXPECT_LT(r.deltas.at(1), Scalar(0));
}

TEST(StrongEquilibrium, GeneralConstruction) {
  const Fixture f = gen_general_bse(4, Scalar(2));
  const Verdict v = is_bse(f.instance, f.stable_net);
  EXPECT_TRUE(v.stable()) << (v.witness ? to_string(*v.witness) : v.frontier);
}

TEST(StrongEquilibrium, EmptyPair) {
  const Verdict v = is_bse(single_pair(), Network(2));
  ASSERT_TRUE(v.unstable());
  EXPECT_EQ(v.witness->coalition, (std::vector<Node>{0, 1}));
}

TEST(StrongEquilibrium, NeighborhoodStableButCoalitionUnstable) {
  const Instance inst = bne_not_bse_instance();
  const Network g(4, {{0, 1}, {0, 2}, {1, 3}});
  EXPECT_TRUE(is_bne(inst, g).stable());
  EXPECT_FALSE(oracle::bne_unstable(inst, g));
  const Verdict v = is_bse(inst, g);
  ASSERT_TRUE(v.unstable());
  EXPECT_GE(v.witness->coalition.size(), 3u);
  EXPECT_TRUE(oracle::bse_unstable(inst, g));
  EXPECT_TRUE(replay_move(inst, g, *v.witness).improving);
}

TEST(StrongEquilibrium, CoalitionCapMakesVerdictInconclusive) {
  const Instance inst = bne_not_bse_instance();
  const Network g(4, {{0, 1}, {0, 2}, {1, 3}});
  CheckOptions o;
  o.budget.max_coalition = 2;
  const Verdict v = is_bse(inst, g, o);
  EXPECT_TRUE(v.inconclusive());
  EXPECT_FALSE(v.frontier.empty());
}

TEST(StrongEquilibrium, EvaluationCapMakesVerdictInconclusive) {
  const Fixture f = gen_general_bse(5, Scalar(2));
  CheckOptions o;
  o.budget.max_evaluations = 3;
  EXPECT_TRUE(is_bse(f.instance, f.stable_net, o).inconclusive());
}

TEST(StrongEquilibrium, BudgetNeverTurnsUnstableIntoStable) {
  CheckOptions o;
  o.budget.max_changes = 1;
  const Verdict v = is_bse(unit_triangle(Scalar(3)), Network::complete(3), o);
  EXPECT_TRUE(v.unstable());
}

TEST(Checkers, AgreeWithLiteralDefinitions) {
  detail::Rng rng(2024);
  int unstable[3] = {0, 0, 0};
  for (int t = 0; t < 300; ++t) {
    RandomModel m;
    m.kind = static_cast<RandomModel::Kind>(rng.below(3));
    m.lo = Scalar(0);
    m.hi = Scalar(4);
    m.box = 4;
    const Scalar alpha = detail::property_alphas()[rng.below(4)];
    const Instance inst = random_instance(2 + static_cast<int>(rng.below(3)), m, alpha, rng.next());
    const Network g = detail::random_network(inst.n(), rng);
    const Verdict ps = is_pairwise_stable(inst, g);
    const Verdict bne = is_bne(inst, g);
    const Verdict bse = is_bse(inst, g);
    ASSERT_EQ(ps.unstable(), oracle::ps_unstable(inst, g)) << io::to_json(inst).dump() << to_string(g);
    ASSERT_EQ(bne.unstable(), oracle::bne_unstable(inst, g)) << io::to_json(inst).dump() << to_string(g);
    ASSERT_EQ(bse.unstable(), oracle::bse_unstable(inst, g)) << io::to_json(inst).dump() << to_string(g);
    int i = 0;
    for (const Verdict* v : {&ps, &bne, &bse}) {
      ASSERT_FALSE(v->inconclusive());
      if (v->unstable()) {
        ++unstable[i];
        EXPECT_TRUE(has_concept_shape(*v->witness));
        EXPECT_TRUE(replay_move(inst, g, *v->witness).improving);
      }
      ++i;
    }
  }
  EXPECT_GT(unstable[0], 0);
  EXPECT_GT(unstable[2], unstable[0] / 2);
}

TEST(Checkers, FirstFoundAgreesWithCanonicalVerdict) {
  detail::Rng rng(5);
  for (int t = 0; t < 100; ++t) {
    const Instance inst = detail::property_instance(rng, 2, 5);
    const Network g = detail::random_network(inst.n(), rng);
    CheckOptions fast;
    fast.witness = WitnessMode::FirstFound;
    for (Concept c : {Concept::PS, Concept::BNE, Concept::BSE}) {
      const Verdict a = check_stability(inst, g, c);
      const Verdict b = check_stability(inst, g, c, fast);
      ASSERT_EQ(a.status, b.status);
      if (b.unstable()) {
        EXPECT_FALSE(b.canonical);
        EXPECT_FALSE(canonical_less(*b.witness, *a.witness));
      }
    }
  }
}

TEST(Checkers, InexactModeMatchesExactOnRandomInstances) {
  detail::Rng rng(77);
  CheckOptions inexact;
  inexact.arith.mode = Arithmetic::Inexact;
  for (int t = 0; t < 100; ++t) {
    const Instance inst = detail::property_instance(rng, 2, 5);
    const Network g = detail::random_network(inst.n(), rng);
    for (Concept c : {Concept::PS, Concept::BNE}) {
      const Verdict a = check_stability(inst, g, c);
      const Verdict b = check_stability(inst, g, c, inexact);
      ASSERT_EQ(a.status, b.status);
    }
  }
}

TEST(Checkers, ZeroDeltaAdditionIsNotImproving) {
  const Fixture f = gen_general_bse(4, Scalar(2));
  const Move m{Concept::BSE, {1, 3}, {}, {Edge(1, 3)}};
  const ReplayResult r = replay_move(f.instance, f.stable_net, m);
  EXPECT_EQ(r.deltas.at(1), Scalar(0));
  EXPECT_LT(r.deltas.at(3), Scalar(0));
  EXPECT_FALSE(r.improving);
  CheckOptions inexact;
  inexact.arith.mode = Arithmetic::Inexact;
  EXPECT_TRUE(is_pairwise_stable(f.instance, f.stable_net, inexact).stable());
}

TEST(Checkers, Containment) {
  detail::Rng rng(31);
  for (int t = 0; t < 150; ++t) {
    const Instance inst = detail::property_instance(rng, 2, 5);
    const Network g = detail::random_connected_network(inst.n(), rng);
    const bool ps = is_pairwise_stable(inst, g).stable();
    const bool bne = is_bne(inst, g).stable();
    const bool bse = is_bse(inst, g).stable();
    EXPECT_TRUE(!bse || bne);
    EXPECT_TRUE(!bne || ps);
  }
}

TEST(BestSingleRemoval, TriangleWithExpensiveEdges) {
  const auto r = best_single_removal(unit_triangle(Scalar(3)), Network::complete(3), 1);
  ASSERT_TRUE(r.has_value());
  EXPECT_EQ(r->delta, Scalar(-2));
  EXPECT_EQ(r->edge, Edge(0, 1));
}

TEST(BestSingleRemoval, BridgesNeverImprove) {
  const Instance inst = random_instance(6, {}, Scalar(1, 2), 4);
  const Network tree(6, {{0, 1}, {1, 2}, {1, 3}, {3, 4}, {3, 5}});
  for (Node u = 0; u < 6; ++u) {
    const auto r = best_single_removal(inst, tree, u);
    ASSERT_TRUE(r.has_value());
    EXPECT_EQ(r->delta, Scalar::infinity());
  }
  EXPECT_FALSE(best_single_removal(inst, Network(6), 0).has_value());
}

TEST(BestSingleRemoval, MultipleRemovalsImplySingle) {
  const PropertyResult r = check_lemma_single_removal(17, 1000);
  EXPECT_EQ(r.failures, 0) << r.counterexample;
}

TEST(Guided, ThresholdsUnmetAtSmallScale) {
  const Fixture f = gen_metric_star(6, Scalar(4), Concept::PS);
  EXPECT_TRUE(guided_bse_candidates(f.instance, f.stable_net).empty());
}

TEST(Guided, RejectsNonMetricAndSmallAlpha) {
  const Fixture g = gen_general_bse(4, Scalar(2));
  EXPECT_THROW(guided_bse_candidates(g.instance, g.stable_net), GuidedError);
  const Fixture s = gen_metric_star(5, Scalar(1), Concept::PS);
  EXPECT_THROW(guided_bse_candidates(s.instance, s.stable_net), GuidedError);
}

TEST(Guided, StretchedNetworkYieldsReplayValidMoves) {
  RandomModel m;
  m.kind = RandomModel::Kind::EuclideanPlane;
  m.box = 20;
  const Instance inst = random_instance(40, m, Scalar(25), 1);
  detail::Rng rng(1);
  std::vector<Node> order(40);
  for (int i = 0; i < 40; ++i) order[i] = i;
  rng.shuffle(order);
  Network path(40);
  for (int i = 1; i < 40; ++i) path.add(Edge(order[i - 1], order[i]));
  GuidedParams p;
  p.tree = Scalar(2);
  p.near = Scalar(10);
  p.far = Scalar(1);
  const auto moves = guided_bse_candidates(inst, path, p);
  ASSERT_FALSE(moves.empty());
  for (const Move& mv : moves) {
    EXPECT_EQ(mv.kind, Concept::BSE);
    EXPECT_TRUE(replay_move(inst, path, mv).improving);
  }
}

TEST(Guided, PartitionSizes) {
  detail::Rng rng(8);
  for (int t = 0; t < 100; ++t) {
    const Instance inst = detail::property_instance(rng, 2, 12, true);
    const GuidedPartition p = guided_partition(inst, detail::random_connected_network(inst.n(), rng));
    EXPECT_GE(2 * p.N.size(), static_cast<std::size_t>(inst.n()));
    EXPECT_LE(Scalar(4) * Scalar(static_cast<std::int64_t>(p.R_far.size() * p.R_far.size())), inst.alpha);
    EXPECT_EQ(p.N.size() + p.M.size() + p.R_far.size(), static_cast<std::size_t>(inst.n()));
  }
}

TEST(Concepts, ParseIsCaseInsensitive) {
  EXPECT_EQ(parse_concept("bse"), Concept::BSE);
  EXPECT_EQ(parse_concept("Ps"), Concept::PS);
  EXPECT_THROW(parse_concept("nash"), InputError);
}
