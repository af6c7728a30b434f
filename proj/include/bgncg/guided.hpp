#pragma once

// Proof-guided coalition moves for metric instances: a bounded-degree tree
// over the nodes close to v*, and a matching from mid-range nodes into the
// neighbourhood of a hub. Thresholds involving sqrt(alpha) are compared by
// squaring, so every decision stays exact.

#include "bgncg/cost.hpp"
#include "bgncg/distances.hpp"
#include "bgncg/metric.hpp"
#include "bgncg/move.hpp"

#include <algorithm>
#include <vector>

namespace bgncg {

class GuidedError : public InputError {
 public:
  enum class Kind { NotMetric, AlphaTooSmall };
  GuidedError(Kind k, const std::string& what) : InputError(what), kind_(k) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

/// Threshold constants. Defaults are the asymptotic ones; at small n they
/// rarely fire, so experiments usually lower them.
struct GuidedParams {
  Scalar tree = Scalar(13);     // tree move when every d(u,N) > tree * sqrt(a) * D
  Scalar near = Scalar(52);     // N' = {u in N : d(u,z) <= near * sqrt(a) / n * D}
  Scalar far = Scalar(88);      // M' = {v in M : d(v,z) >= far * sqrt(a) * w(v,v*)}
  Scalar branching = Scalar(3); // tree arity floor(branching * n / sqrt(a)) - 1
  Scalar global = Scalar(190);  // optional guard: some d(u,V) >= global * sqrt(a) * D
  bool use_global_guard = false;
};

struct GuidedPartition {
  Node v_star = 0;
  Scalar d_vstar;  // sum_u w(v*, u)
  std::vector<Node> N, M, R_far;
  Node z_hub = 0;
  std::vector<Node> N_prime, M_prime;
  int tree_arity = 0;  // 0 when the arity formula gives no usable tree
  bool tree_condition = false;
};

namespace detail {

// x > c * sqrt(alpha) * y for x, y >= 0 (x may be infinite).
inline bool exceeds_root(const Scalar& x, const Scalar& c, const Scalar& alpha, const Scalar& y) {
  if (x.is_infinite()) return true;
  return x * x > c * c * alpha * y * y;
}

inline Scalar sum_to(const DistanceMatrix& d, Node u, const std::vector<Node>& set) {
  Scalar s(0);
  for (Node x : set) s += d.at(u, x);
  return s;
}

}  // namespace detail

inline GuidedPartition guided_partition(const Instance& inst, const Network& g, const GuidedParams& p = {}) {
  const int n = inst.n();
  const Scalar& alpha = inst.alpha;
  GuidedPartition part;
  part.v_star = 0;
  part.d_vstar = inst.host.weight_sum_from(0);
  for (Node u = 1; u < n; ++u) {
    Scalar s = inst.host.weight_sum_from(u);
    if (s < part.d_vstar) {
      part.d_vstar = std::move(s);
      part.v_star = u;
    }
  }
  const Scalar& D = part.d_vstar;
  for (Node u = 0; u < n; ++u) {
    const Scalar& w = inst.host.weight(u, part.v_star);
    if (w * Scalar(n) <= Scalar(2) * D) {
      part.N.push_back(u);
    } else if (alpha * w * w > Scalar(4) * D * D) {
      part.R_far.push_back(u);
    } else {
      part.M.push_back(u);
    }
  }

  const DistanceMatrix d = shortest_distances(g, inst.host);
  part.tree_condition = !part.N.empty();
  Scalar best;
  for (Node u : part.N) {
    Scalar s = detail::sum_to(d, u, part.N);
    if (!detail::exceeds_root(s, p.tree, alpha, D)) part.tree_condition = false;
    if (u == part.N.front() || s < best) {
      best = s;
      part.z_hub = u;
    }
  }

  // floor(b n / sqrt(a)) is the largest m with m^2 a <= b^2 n^2.
  const Scalar rhs = p.branching * p.branching * Scalar(n) * Scalar(n);
  int m = 0;
  while (Scalar(m + 1) * Scalar(m + 1) * alpha <= rhs) ++m;
  part.tree_arity = std::max(0, m - 1);

  const Node z = part.z_hub;
  for (Node u : part.N) {
    const Scalar& du = d.at(u, z);
    if (du.is_finite() && !detail::exceeds_root(du * Scalar(n), p.near, alpha, D)) part.N_prime.push_back(u);
  }
  for (Node v : part.M) {
    const Scalar& dv = d.at(v, z);
    const Scalar& w = inst.host.weight(v, part.v_star);
    if (dv.is_infinite() || dv * dv >= p.far * p.far * alpha * w * w) part.M_prime.push_back(v);
  }
  return part;
}

/// Candidate improving coalition moves; every returned move passes exact replay.
inline std::vector<Move> guided_bse_candidates(const Instance& inst, const Network& g, const GuidedParams& p = {}) {
  if (!(inst.alpha > Scalar(1))) throw GuidedError(GuidedError::Kind::AlphaTooSmall, "guided moves need alpha > 1");
  if (inst.host.metric() == MetricStatus::VerifiedNonMetric || !check_metric(inst.host).is_metric) {
    throw GuidedError(GuidedError::Kind::NotMetric, "guided moves need a metric host");
  }
  const int n = inst.n();
  const GuidedPartition part = guided_partition(inst, g, p);
  std::vector<Move> out;

  if (p.use_global_guard) {
    const CostBreakdown c = cost_report(inst, g);
    bool all_far = true;
    for (Node u = 0; u < n; ++u)
      if (!(c.distance_cost[static_cast<std::size_t>(u)].is_infinite() ||
            c.distance_cost[static_cast<std::size_t>(u)] * c.distance_cost[static_cast<std::size_t>(u)] >=
                p.global * p.global * inst.alpha * part.d_vstar * part.d_vstar)) {
        all_far = false;
      }
    if (!all_far) return out;
  }

  auto keep = [&](Move m) {
    if (m.add.empty()) return;
    m.normalize();
    if (replay_move(inst, g, m).improving) out.push_back(std::move(m));
  };

  if (part.tree_condition && part.tree_arity >= 1 && part.N.size() >= 2) {
    const std::size_t k = static_cast<std::size_t>(part.tree_arity);
    Move m;
    m.kind = Concept::BSE;
    m.coalition = part.N;
    for (std::size_t i = 1; i < part.N.size(); ++i) {
      const Edge e(part.N[(i - 1) / k], part.N[i]);
      if (!g.has(e)) m.add.push_back(e);
    }
    keep(std::move(m));
  }

  if (!part.M_prime.empty() && !part.N_prime.empty()) {
    Move m;
    m.kind = Concept::BSE;
    std::vector<int> load(part.N_prime.size(), 0);
    for (Node v : part.M_prime) {
      std::size_t pick = part.N_prime.size();
      for (std::size_t j = 0; j < part.N_prime.size(); ++j) {
        if (load[j] >= 2 || g.has(v, part.N_prime[j])) continue;
        if (pick == part.N_prime.size() || load[j] < load[pick]) pick = j;
      }
      if (pick == part.N_prime.size()) continue;
      ++load[pick];
      m.add.emplace_back(v, part.N_prime[pick]);
      m.coalition.push_back(v);
      m.coalition.push_back(part.N_prime[pick]);
    }
    keep(std::move(m));
  }
  return out;
}

}  // namespace bgncg
