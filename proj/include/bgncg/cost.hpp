#pragma once

#include "bgncg/distances.hpp"
#include "bgncg/model.hpp"

#include <vector>

namespace bgncg {

struct CostBreakdown {
  std::vector<Scalar> edge_cost;      // alpha * w(u, S_u)
  std::vector<Scalar> distance_cost;  // d_G(u, V)
  std::vector<Scalar> total;
  Scalar social;

  Scalar total_edge_cost() const {
    Scalar s(0);
    for (const auto& x : edge_cost) s += x;
    return s;
  }
  Scalar total_distance_cost() const {
    Scalar s(0);
    for (const auto& x : distance_cost) s += x;
    return s;
  }
};

/// Per-agent and social cost of `g`; both endpoints pay alpha * w for every edge.
inline CostBreakdown cost_report(const Instance& inst, const Network& g) {
  const int n = inst.n();
  if (g.n() != n) throw InputError("network and instance disagree on n");
  const DistanceMatrix d = shortest_distances(g, inst.host);
  CostBreakdown c;
  c.edge_cost.resize(static_cast<std::size_t>(n));
  c.distance_cost.resize(static_cast<std::size_t>(n));
  c.total.resize(static_cast<std::size_t>(n));
  c.social = Scalar(0);
  for (Node u = 0; u < n; ++u) {
    Scalar w(0);
    for (Node v : g.neighbors(u)) w += inst.host.weight(u, v);
    c.edge_cost[static_cast<std::size_t>(u)] = inst.alpha * w;
    c.distance_cost[static_cast<std::size_t>(u)] = d.row_sum(u);
    c.total[static_cast<std::size_t>(u)] = c.edge_cost[static_cast<std::size_t>(u)] + c.distance_cost[static_cast<std::size_t>(u)];
    c.social += c.total[static_cast<std::size_t>(u)];
  }
  return c;
}

inline Scalar social_cost(const Instance& inst, const Network& g) { return cost_report(inst, g).social; }

/// (2n - 2 + 2 alpha) * w(E) for a star on n nodes.
inline Scalar star_social_cost(int n, const Scalar& alpha, const Scalar& total_weight) {
  if (n < 2) throw InputError("star needs n >= 2");
  return (Scalar(2 * n - 2) + Scalar(2) * alpha) * total_weight;
}

}  // namespace bgncg
