#pragma once

#include "bgncg/model.hpp"

#include <vector>

namespace bgncg {

/// All-pairs shortest-path distances of a network; unreachable pairs are +inf.
class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  explicit DistanceMatrix(int n) : n_(n), d_(static_cast<std::size_t>(n * n), Scalar::infinity()) {}

  int n() const { return n_; }
  const Scalar& at(Node u, Node v) const { return d_[static_cast<std::size_t>(u * n_ + v)]; }
  Scalar& at(Node u, Node v) { return d_[static_cast<std::size_t>(u * n_ + v)]; }
  bool connected() const { return connected_; }
  void set_connected(bool c) { connected_ = c; }

  /// d(u, V): distance cost of agent u.
  Scalar row_sum(Node u) const {
    Scalar s(0);
    for (Node v = 0; v < n_; ++v) s += at(u, v);
    return s;
  }
  Scalar total() const {
    Scalar s(0);
    for (Node u = 0; u < n_; ++u) s += row_sum(u);
    return s;
  }

 private:
  int n_ = 0;
  std::vector<Scalar> d_;
  bool connected_ = false;
};

namespace detail {

struct SingleSource {
  std::vector<Scalar> dist;
  std::vector<Node> settle_order;
};

// Dense Dijkstra; ties in distance settle the smaller index first.
inline SingleSource dijkstra(const Network& g, const HostGraph& host, Node src) {
  const int n = g.n();
  SingleSource out;
  out.dist.assign(static_cast<std::size_t>(n), Scalar::infinity());
  std::vector<char> done(static_cast<std::size_t>(n), 0);
  out.dist[static_cast<std::size_t>(src)] = Scalar(0);
  for (int it = 0; it < n; ++it) {
    Node best = -1;
    for (Node v = 0; v < n; ++v) {
      if (done[static_cast<std::size_t>(v)] || !out.dist[static_cast<std::size_t>(v)].is_finite()) continue;
      if (best < 0 || out.dist[static_cast<std::size_t>(v)] < out.dist[static_cast<std::size_t>(best)]) best = v;
    }
    if (best < 0) break;
    done[static_cast<std::size_t>(best)] = 1;
    out.settle_order.push_back(best);
    for (Node v = 0; v < n; ++v) {
      if (done[static_cast<std::size_t>(v)] || !g.has(best, v)) continue;
      Scalar cand = out.dist[static_cast<std::size_t>(best)] + host.weight(best, v);
      if (cand < out.dist[static_cast<std::size_t>(v)]) out.dist[static_cast<std::size_t>(v)] = std::move(cand);
    }
  }
  return out;
}

}  // namespace detail

/// Exact shortest-path distances of `g` under the host weights.
inline DistanceMatrix shortest_distances(const Network& g, const HostGraph& host) {
  if (g.n() != host.n()) throw InputError("network and host disagree on n");
  const int n = g.n();
  DistanceMatrix m(n);
  bool connected = true;
  for (Node s = 0; s < n; ++s) {
    auto ss = detail::dijkstra(g, host, s);
    for (Node v = 0; v < n; ++v) {
      if (!ss.dist[static_cast<std::size_t>(v)].is_finite()) connected = false;
      m.at(s, v) = std::move(ss.dist[static_cast<std::size_t>(v)]);
    }
  }
  m.set_connected(connected);
  return m;
}

/// Shortest-path distances of the host itself (d_H); equals the weights
/// when the host is metric.
inline DistanceMatrix host_distances(const HostGraph& host) {
  return shortest_distances(Network::complete(host.n()), host);
}

/// Shortest-path tree rooted at `root`. Each node's parent is the
/// smallest-index node settled before it on some shortest path.
inline Network shortest_path_tree(const Network& g, const HostGraph& host, Node root) {
  const int n = g.n();
  auto ss = detail::dijkstra(g, host, root);
  if (static_cast<int>(ss.settle_order.size()) != n) throw DisconnectedError();
  std::vector<int> rank(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) rank[static_cast<std::size_t>(ss.settle_order[static_cast<std::size_t>(i)])] = i;
  Network tree(n);
  for (Node u = 0; u < n; ++u) {
    if (u == root) continue;
    for (Node p = 0; p < n; ++p) {
      if (!g.has(p, u) || rank[static_cast<std::size_t>(p)] >= rank[static_cast<std::size_t>(u)]) continue;
      if (ss.dist[static_cast<std::size_t>(p)] + host.weight(p, u) == ss.dist[static_cast<std::size_t>(u)]) {
        tree.add(Edge(p, u));
        break;
      }
    }
  }
  return tree;
}

/// max over pairs of d_G(u,v) / d_H(u,v). Pairs with d_H = 0 are skipped
/// when d_G = 0 too and make the stretch infinite otherwise.
inline Scalar spanner_stretch(const Network& g, const HostGraph& host) {
  const DistanceMatrix dg = shortest_distances(g, host);
  if (!dg.connected()) return Scalar::infinity();
  const DistanceMatrix dh = host_distances(host);
  Scalar worst(1);
  for (Node u = 0; u < g.n(); ++u) {
    for (Node v = u + 1; v < g.n(); ++v) {
      const Scalar& h = dh.at(u, v);
      const Scalar& d = dg.at(u, v);
      if (h.is_zero()) {
        if (d.is_zero()) continue;
        return Scalar::infinity();
      }
      worst = max(worst, d / h);
    }
  }
  return worst;
}

}  // namespace bgncg
