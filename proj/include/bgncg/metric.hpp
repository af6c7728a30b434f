#pragma once

#include "bgncg/model.hpp"

#include <optional>
#include <tuple>
#include <vector>

namespace bgncg {

struct MetricViolation {
  Node u = 0;
  Node z = 0;
  Node v = 0;
  Scalar slack;  // w(u,v) - w(u,z) - w(z,v) > 0
};

struct MetricReport {
  bool is_metric = true;
  std::optional<MetricViolation> violation;
};

/// All-triples triangle-inequality check. The reported violation is the
/// lexicographically smallest (u, z, v).
inline MetricReport check_metric(const HostGraph& host) {
  const int n = host.n();
  for (Node u = 0; u < n; ++u) {
    for (Node z = 0; z < n; ++z) {
      if (z == u) continue;
      for (Node v = 0; v < n; ++v) {
        if (v == u || v == z) continue;
        const Scalar slack = host.weight(u, v) - host.weight(u, z) - host.weight(z, v);
        if (slack.sign() > 0) return MetricReport{false, MetricViolation{u, z, v, slack}};
      }
    }
  }
  return MetricReport{true, std::nullopt};
}

/// check_metric, recording the outcome on the host.
inline MetricReport is_metric(HostGraph& host) {
  MetricReport r = check_metric(host);
  host.set_metric_status(r.is_metric ? MetricStatus::VerifiedMetric : MetricStatus::VerifiedNonMetric);
  return r;
}

/// Sparse weighted graph used to seed a metric closure.
struct WeightedGraph {
  int n = 0;
  std::vector<std::tuple<Node, Node, Scalar>> edges;

  void add(Node u, Node v, Scalar w) { edges.emplace_back(u, v, std::move(w)); }
};

/// Host whose weights are the shortest-path distances of `seed`.
/// Throws DisconnectedError when some pair is unreachable.
inline HostGraph metric_closure(const WeightedGraph& seed) {
  const int n = seed.n;
  if (n < 2) throw HostError(HostError::Kind::TooSmall, n, n, "closure needs at least 2 nodes");
  std::vector<std::vector<Scalar>> d(static_cast<std::size_t>(n), std::vector<Scalar>(static_cast<std::size_t>(n), Scalar::infinity()));
  for (Node u = 0; u < n; ++u) d[static_cast<std::size_t>(u)][static_cast<std::size_t>(u)] = Scalar(0);
  for (const auto& [u, v, w] : seed.edges) {
    if (u == v || u < 0 || v < 0 || u >= n || v >= n) throw InputError("invalid seed edge");
    if (!w.is_finite() || w.sign() < 0) throw HostError(HostError::Kind::NegativeWeight, u, v, "seed weight must be finite and >= 0");
    auto& a = d[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)];
    if (w < a) {
      a = w;
      d[static_cast<std::size_t>(v)][static_cast<std::size_t>(u)] = w;
    }
  }
  for (Node k = 0; k < n; ++k) {
    for (Node i = 0; i < n; ++i) {
      const Scalar& dik = d[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)];
      if (!dik.is_finite()) continue;
      for (Node j = 0; j < n; ++j) {
        const Scalar& dkj = d[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)];
        if (!dkj.is_finite()) continue;
        Scalar via = dik + dkj;
        if (via < d[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]) d[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = std::move(via);
      }
    }
  }
  for (const auto& row : d)
    for (const auto& x : row)
      if (!x.is_finite()) throw DisconnectedError();
  HostGraph h = validate_host(d);
  h.set_metric_status(MetricStatus::VerifiedMetric);
  return h;
}

}  // namespace bgncg
