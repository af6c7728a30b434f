#include "bgncg/bgncg.hpp"
#include "oracle.hpp"

#include <gtest/gtest.h>

using namespace bgncg;

namespace {

std::vector<std::vector<Scalar>> ones(int n) {
  std::vector<std::vector<Scalar>> w(n, std::vector<Scalar>(n, Scalar(1)));
  for (int i = 0; i < n; ++i) w[i][i] = Scalar(0);
  return w;
}

HostError::Kind host_error_kind(const std::vector<std::vector<Scalar>>& w) {
  try {
    validate_host(w);
  } catch (const HostError& e) {
    return e.kind();
  }
  ADD_FAILURE() << "expected HostError";
  return HostError::Kind::TooSmall;
}

}  // namespace

TEST(ValidateHost, AcceptsUnitTriangle) {
  const HostGraph h = validate_host(ones(3));
  EXPECT_EQ(h.n(), 3);
  EXPECT_EQ(h.metric(), MetricStatus::Unchecked);
}

TEST(ValidateHost, RejectsMalformedMatrices) {
  auto w = ones(3);
  w[0][1] = Scalar(1);
  w[1][0] = Scalar(2);
  EXPECT_EQ(host_error_kind(w), HostError::Kind::Asymmetric);
  try {
    validate_host(w);
  } catch (const HostError& e) {
    EXPECT_EQ(e.u(), 0);
    EXPECT_EQ(e.v(), 1);
  }
  w = ones(3);
  w[0][2] = Scalar(-1);
  EXPECT_EQ(host_error_kind(w), HostError::Kind::NegativeWeight);
  w = ones(3);
  w[1][1] = Scalar(1);
  EXPECT_EQ(host_error_kind(w), HostError::Kind::NonzeroDiagonal);
  EXPECT_EQ(host_error_kind(ones(1)), HostError::Kind::TooSmall);
}

TEST(Metric, UnitCompleteGraphIsMetric) {
  HostGraph h = validate_host(ones(4));
  EXPECT_TRUE(is_metric(h).is_metric);
  EXPECT_EQ(h.metric(), MetricStatus::VerifiedMetric);
}

TEST(Metric, ReportsFirstViolatingTriple) {
  auto w = ones(3);
  w[0][2] = w[2][0] = Scalar(3);
  HostGraph h = validate_host(w);
  const MetricReport r = is_metric(h);
  ASSERT_FALSE(r.is_metric);
  EXPECT_EQ(r.violation->u, 0);
  EXPECT_EQ(r.violation->z, 1);
  EXPECT_EQ(r.violation->v, 2);
  EXPECT_EQ(r.violation->slack, Scalar(1));
  EXPECT_EQ(h.metric(), MetricStatus::VerifiedNonMetric);
}

TEST(Metric, GeneralConstructionHostIsNotMetric) {
  const Fixture f = gen_general_bse(4, Scalar(2));
  const MetricReport r = check_metric(f.instance.host);
  ASSERT_FALSE(r.is_metric);
  // w(u_1, v) = 3 > w(u_1, u_2) + w(u_2, v) = 0 + 1
  EXPECT_EQ(r.violation->u, 0);
  EXPECT_EQ(r.violation->z, 1);
  EXPECT_EQ(r.violation->v, 3);
  EXPECT_EQ(r.violation->slack, Scalar(2));
}

TEST(MetricClosure, PathDistances) {
  WeightedGraph seed{3, {}};
  seed.add(0, 1, Scalar(1));
  seed.add(1, 2, Scalar(1));
  const HostGraph h = metric_closure(seed);
  EXPECT_EQ(h.weight(0, 2), Scalar(2));
  EXPECT_TRUE(check_metric(h).is_metric);
}

TEST(MetricClosure, StarSeed) {
  // centre c = 1, leaf u = 0 at 1, leaves 2 and 3 at 1/2
  WeightedGraph seed{4, {}};
  seed.add(0, 1, Scalar(1));
  seed.add(1, 2, Scalar(1, 2));
  seed.add(1, 3, Scalar(1, 2));
  const HostGraph h = metric_closure(seed);
  EXPECT_EQ(h.weight(0, 2), Scalar(3, 2));
  EXPECT_EQ(h.weight(0, 3), Scalar(3, 2));
  EXPECT_EQ(h.weight(2, 3), Scalar(1));
}

TEST(MetricClosure, SingleEdgeIsIdentity) {
  WeightedGraph seed{2, {}};
  seed.add(0, 1, Scalar(7, 3));
  EXPECT_EQ(metric_closure(seed).weight(0, 1), Scalar(7, 3));
}

TEST(MetricClosure, DisconnectedSeedThrows) {
  WeightedGraph seed{3, {}};
  seed.add(0, 1, Scalar(1));
  EXPECT_THROW(metric_closure(seed), DisconnectedError);
}

TEST(ShortestDistances, PathSumsWeights) {
  auto w = ones(3);
  w[0][1] = w[1][0] = Scalar(2);
  w[1][2] = w[2][1] = Scalar(3);
  const HostGraph h = validate_host(w);
  const DistanceMatrix d = shortest_distances(Network(3, {{0, 1}, {1, 2}}), h);
  EXPECT_EQ(d.at(0, 2), Scalar(5));
  EXPECT_TRUE(d.connected());
}

TEST(ShortestDistances, EdgelessIsInfinite) {
  const DistanceMatrix d = shortest_distances(Network(2), validate_host(ones(2)));
  EXPECT_EQ(d.at(0, 1), Scalar::infinity());
  EXPECT_FALSE(d.connected());
}

TEST(ShortestDistances, ZeroWeightTree) {
  std::vector<std::vector<Scalar>> w(4, std::vector<Scalar>(4, Scalar(0)));
  const DistanceMatrix d = shortest_distances(Network(4, {{0, 1}, {1, 2}, {1, 3}}), validate_host(w));
  for (int u = 0; u < 4; ++u)
    for (int v = 0; v < 4; ++v) EXPECT_EQ(d.at(u, v), Scalar(0));
}

TEST(ShortestDistances, AgreesWithFloydOnRandomGraphs) {
  detail::Rng rng(7);
  for (int t = 0; t < 200; ++t) {
    RandomModel m;
    m.lo = Scalar(0);
    m.resolution = 3;
    const Instance inst = random_instance(2 + static_cast<int>(rng.below(6)), m, Scalar(1), rng.next());
    const Network g = detail::random_network(inst.n(), rng);
    const DistanceMatrix d = shortest_distances(g, inst.host);
    const auto ref = oracle::floyd(g, inst.host);
    for (int u = 0; u < inst.n(); ++u)
      for (int v = 0; v < inst.n(); ++v) ASSERT_EQ(d.at(u, v), ref[u][v]);
  }
}

TEST(CostReport, SingleEdge) {
  std::vector<std::vector<Scalar>> w{{Scalar(0), Scalar(5)}, {Scalar(5), Scalar(0)}};
  const Instance inst = make_instance(validate_host(w), Scalar(3));
  const CostBreakdown c = cost_report(inst, Network(2, {{0, 1}}));
  EXPECT_EQ(c.total[0], Scalar(20));
  EXPECT_EQ(c.total[1], Scalar(20));
  EXPECT_EQ(c.social, Scalar(40));
}

TEST(CostReport, StarMatchesClosedForm) {
  const Instance inst = make_instance(validate_host(ones(3)), Scalar(2));
  const Network star(3, {{0, 1}, {0, 2}});
  const CostBreakdown c = cost_report(inst, star);
  EXPECT_EQ(c.total[0], Scalar(6));
  EXPECT_EQ(c.total[1], Scalar(5));
  EXPECT_EQ(c.total[2], Scalar(5));
  EXPECT_EQ(c.social, Scalar(16));
  EXPECT_EQ(c.social, star_social_cost(3, Scalar(2), Scalar(2)));
}

TEST(CostReport, DisconnectedIsInfinite) {
  const Instance inst = make_instance(validate_host(ones(3)), Scalar(2));
  EXPECT_EQ(cost_report(inst, Network(3, {{0, 1}})).social, Scalar::infinity());
}

TEST(CostReport, SocialIdentity) {
  const Fixture f = gen_metric_star(6, Scalar(4), Concept::PS);
  const CostBreakdown c = cost_report(f.instance, f.stable_net);
  EXPECT_EQ(c.social, Scalar(2) * f.instance.alpha * f.stable_net.total_weight(f.instance.host) + c.total_distance_cost());
  EXPECT_EQ(c.social, c.total_edge_cost() + c.total_distance_cost());
}

TEST(StarSocialCost, Values) {
  EXPECT_EQ(star_social_cost(3, Scalar(2), Scalar(2)), Scalar(16));
  EXPECT_EQ(star_social_cost(4, Scalar(2), Scalar(3)), Scalar(30));
  EXPECT_EQ(star_social_cost(5, Scalar(7), Scalar(0)), Scalar(0));
  EXPECT_THROW(star_social_cost(1, Scalar(1), Scalar(1)), InputError);
}

TEST(SpannerStretch, CompleteNetworkIsOne) {
  const Instance inst = random_instance(5, {}, Scalar(1), 3);
  EXPECT_EQ(spanner_stretch(Network::complete(5), inst.host), Scalar(1));
}

TEST(SpannerStretch, StableStarOfMetricConstruction) {
  const Fixture f = gen_metric_star(4, Scalar(4), Concept::PS);
  const Scalar s = spanner_stretch(f.stable_net, f.instance.host);
  // worst pair is (1, leaf): host b, network 2a + b, so stretch 1 + 2a/b = alpha + 1
  EXPECT_EQ(s, Scalar(5));
  EXPECT_LE(s, f.instance.alpha + Scalar(1));
}

TEST(SpannerStretch, DisconnectedIsInfinite) {
  EXPECT_EQ(spanner_stretch(Network(3, {{0, 1}}), validate_host(ones(3))), Scalar::infinity());
}

TEST(SpannerStretch, ZeroHostDistanceNeedsZeroNetworkDistance) {
  // w(0,1) = 0 but the network routes 0-1 through node 2
  std::vector<std::vector<Scalar>> w{{Scalar(0), Scalar(0), Scalar(1)}, {Scalar(0), Scalar(0), Scalar(1)}, {Scalar(1), Scalar(1), Scalar(0)}};
  const HostGraph h = validate_host(w);
  EXPECT_EQ(spanner_stretch(Network(3, {{0, 2}, {1, 2}}), h), Scalar::infinity());
  EXPECT_EQ(spanner_stretch(Network(3, {{0, 1}, {1, 2}}), h), Scalar(1));
}

TEST(ShortestPathTree, StarIsItsOwnTree) {
  const Instance inst = random_instance(5, {}, Scalar(1), 11);
  const Network star(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}});
  EXPECT_EQ(shortest_path_tree(star, inst.host, 0), star);
}

TEST(ShortestPathTree, UnitTriangle) {
  const HostGraph h = validate_host(ones(3));
  EXPECT_EQ(shortest_path_tree(Network::complete(3), h, 0), Network(3, {{0, 1}, {0, 2}}));
}

TEST(ShortestPathTree, DisconnectedThrows) {
  EXPECT_THROW(shortest_path_tree(Network(3, {{0, 1}}), validate_host(ones(3)), 0), DisconnectedError);
}

TEST(ShortestPathTree, BoundOnSampledGraphs) {
  const PropertyResult r = check_bfs_tree(99, 200);
  EXPECT_EQ(r.failures, 0) << r.counterexample;
}

TEST(NetworkType, CanonicalEdgeOrder) {
  Network g(4);
  g.add(Edge(3, 2));
  g.add(Edge(0, 1));
  g.add(Edge(1, 3));
  EXPECT_EQ(to_string(g), "[{0,1},{1,3},{2,3}]");
  EXPECT_FALSE(g.add(Edge(1, 0)));
  EXPECT_THROW(g.add(Edge(1, 1)), InputError);
  EXPECT_THROW(g.add(Edge(0, 4)), InputError);
  EXPECT_EQ(network_from_mask(4, 0b100001), Network(4, {{0, 1}, {2, 3}}));
}

TEST(InstanceType, AlphaMustBePositive) {
  EXPECT_THROW(make_instance(validate_host(ones(2)), Scalar(0)), InputError);
  EXPECT_THROW(make_instance(validate_host(ones(2)), Scalar::infinity()), InputError);
}
