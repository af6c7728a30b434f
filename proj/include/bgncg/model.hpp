#pragma once

#include "bgncg/scalar.hpp"

#include <algorithm>
#include <compare>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace bgncg {

using Node = int;

/// Base for every error raised on invalid input (CLI exit code 3).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class HostError : public InputError {
 public:
  enum class Kind { Asymmetric, NegativeWeight, NonzeroDiagonal, TooSmall, NotSquare, InfiniteWeight };

  HostError(Kind kind, int u, int v, const std::string& what) : InputError(what), kind_(kind), u_(u), v_(v) {}

  Kind kind() const { return kind_; }
  int u() const { return u_; }
  int v() const { return v_; }

 private:
  Kind kind_;
  int u_;
  int v_;
};

/// Raised when an operation requires a connected graph.
class DisconnectedError : public InputError {
 public:
  DisconnectedError() : InputError("graph is disconnected") {}
};

enum class MetricStatus { Unchecked, VerifiedMetric, VerifiedNonMetric };

/// Complete undirected weighted host graph on nodes 0..n-1.
class HostGraph {
 public:
  HostGraph() = default;

  int n() const { return n_; }
  const Scalar& weight(Node u, Node v) const { return weights_[static_cast<std::size_t>(u * n_ + v)]; }
  MetricStatus metric() const { return metric_; }
  void set_metric_status(MetricStatus s) { metric_ = s; }

  /// Sum of all pair weights reachable from `u`.
  Scalar weight_sum_from(Node u) const {
    Scalar s(0);
    for (Node v = 0; v < n_; ++v) s += weight(u, v);
    return s;
  }

  friend HostGraph validate_host(const std::vector<std::vector<Scalar>>& weights);

 private:
  int n_ = 0;
  std::vector<Scalar> weights_;
  MetricStatus metric_ = MetricStatus::Unchecked;
};

/// Checks shape, symmetry, zero diagonal and non-negativity.
inline HostGraph validate_host(const std::vector<std::vector<Scalar>>& weights) {
  const int n = static_cast<int>(weights.size());
  if (n < 2) throw HostError(HostError::Kind::TooSmall, n, n, "host graph needs at least 2 nodes, got " + std::to_string(n));
  for (int u = 0; u < n; ++u) {
    if (static_cast<int>(weights[static_cast<std::size_t>(u)].size()) != n) {
      throw HostError(HostError::Kind::NotSquare, u, u, "weight matrix row " + std::to_string(u) + " has wrong length");
    }
  }
  for (int u = 0; u < n; ++u) {
    const auto& row = weights[static_cast<std::size_t>(u)];
    if (!row[static_cast<std::size_t>(u)].is_zero()) {
      throw HostError(HostError::Kind::NonzeroDiagonal, u, u, "nonzero diagonal weight at node " + std::to_string(u));
    }
    for (int v = 0; v < n; ++v) {
      const Scalar& w = row[static_cast<std::size_t>(v)];
      if (!w.is_finite()) {
        throw HostError(HostError::Kind::InfiniteWeight, u, v,
                        "infinite weight at (" + std::to_string(u) + "," + std::to_string(v) + ")");
      }
      if (w.sign() < 0) {
        throw HostError(HostError::Kind::NegativeWeight, std::min(u, v), std::max(u, v),
                        "negative weight at (" + std::to_string(u) + "," + std::to_string(v) + ")");
      }
    }
  }
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (weights[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] !=
          weights[static_cast<std::size_t>(v)][static_cast<std::size_t>(u)]) {
        throw HostError(HostError::Kind::Asymmetric, u, v,
                        "asymmetric weights at (" + std::to_string(u) + "," + std::to_string(v) + ")");
      }
    }
  }
  HostGraph h;
  h.n_ = n;
  h.weights_.reserve(static_cast<std::size_t>(n * n));
  for (const auto& row : weights) h.weights_.insert(h.weights_.end(), row.begin(), row.end());
  return h;
}

/// A host graph together with the edge price factor alpha > 0.
struct Instance {
  HostGraph host;
  Scalar alpha;

  int n() const { return host.n(); }
};

inline Instance make_instance(HostGraph host, Scalar alpha) {
  if (!alpha.is_finite() || alpha.sign() <= 0) throw InputError("alpha must be finite and > 0, got " + alpha.to_string());
  return Instance{std::move(host), std::move(alpha)};
}

/// Unordered node pair, stored with u < v.
struct Edge {
  Node u = 0;
  Node v = 0;

  Edge() = default;
  Edge(Node a, Node b) : u(std::min(a, b)), v(std::max(a, b)) {}

  bool touches(Node x) const { return u == x || v == x; }
  Node other(Node x) const { return x == u ? v : u; }

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

using EdgeList = std::vector<Edge>;

inline std::string to_string(const Edge& e) { return "{" + std::to_string(e.u) + "," + std::to_string(e.v) + "}"; }

/// Index of the pair {u,v} in the row-major enumeration of pairs u < v.
inline int pair_index(int n, Node u, Node v) {
  if (u > v) std::swap(u, v);
  return u * (2 * n - u - 1) / 2 + (v - u - 1);
}

inline int pair_count(int n) { return n * (n - 1) / 2; }

inline EdgeList all_pairs(int n) {
  EdgeList out;
  out.reserve(static_cast<std::size_t>(pair_count(n)));
  for (Node u = 0; u < n; ++u)
    for (Node v = u + 1; v < n; ++v) out.emplace_back(u, v);
  return out;
}

/// Undirected simple graph on the host's node set; the edge list is kept
/// sorted and duplicate-free, which makes it the canonical fingerprint.
class Network {
 public:
  Network() = default;
  explicit Network(int n) : n_(n), adj_(static_cast<std::size_t>(n * n), 0) {}
  Network(int n, const EdgeList& edges) : Network(n) {
    for (const Edge& e : edges) add(e);
  }

  int n() const { return n_; }
  const EdgeList& edges() const { return edges_; }
  std::size_t size() const { return edges_.size(); }
  bool empty() const { return edges_.empty(); }

  bool has(Node u, Node v) const { return u != v && adj_[static_cast<std::size_t>(u * n_ + v)] != 0; }
  bool has(const Edge& e) const { return has(e.u, e.v); }

  /// Adds {u,v}; returns false when already present.
  bool add(const Edge& e) {
    check(e);
    if (has(e)) return false;
    edges_.insert(std::lower_bound(edges_.begin(), edges_.end(), e), e);
    set(e, 1);
    return true;
  }
  bool remove(const Edge& e) {
    check(e);
    if (!has(e)) return false;
    edges_.erase(std::lower_bound(edges_.begin(), edges_.end(), e));
    set(e, 0);
    return true;
  }

  std::vector<Node> neighbors(Node u) const {
    std::vector<Node> out;
    for (Node v = 0; v < n_; ++v)
      if (has(u, v)) out.push_back(v);
    return out;
  }
  int degree(Node u) const {
    int d = 0;
    for (Node v = 0; v < n_; ++v) d += has(u, v) ? 1 : 0;
    return d;
  }

  /// Dense 0/1 adjacency matrix, row-major.
  std::span<const std::uint8_t> adjacency() const { return adj_; }

  bool is_connected() const {
    if (n_ <= 1) return true;
    std::vector<char> seen(static_cast<std::size_t>(n_), 0);
    std::vector<Node> stack{0};
    seen[0] = 1;
    int count = 1;
    while (!stack.empty()) {
      const Node x = stack.back();
      stack.pop_back();
      for (Node y = 0; y < n_; ++y) {
        if (has(x, y) && !seen[static_cast<std::size_t>(y)]) {
          seen[static_cast<std::size_t>(y)] = 1;
          ++count;
          stack.push_back(y);
        }
      }
    }
    return count == n_;
  }

  Scalar total_weight(const HostGraph& host) const {
    Scalar s(0);
    for (const Edge& e : edges_) s += host.weight(e.u, e.v);
    return s;
  }

  static Network complete(int n) { return Network(n, all_pairs(n)); }

  friend bool operator==(const Network& a, const Network& b) { return a.n_ == b.n_ && a.edges_ == b.edges_; }
  friend bool operator<(const Network& a, const Network& b) {
    if (a.n_ != b.n_) return a.n_ < b.n_;
    return a.edges_ < b.edges_;
  }

 private:
  void check(const Edge& e) const {
    if (e.u == e.v || e.u < 0 || e.v >= n_) {
      throw InputError("invalid edge " + to_string(e) + " for n=" + std::to_string(n_));
    }
  }
  void set(const Edge& e, std::uint8_t value) {
    adj_[static_cast<std::size_t>(e.u * n_ + e.v)] = value;
    adj_[static_cast<std::size_t>(e.v * n_ + e.u)] = value;
  }

  int n_ = 0;
  EdgeList edges_;
  std::vector<std::uint8_t> adj_;
};

/// Network whose edges are the pairs selected by `mask` in pair_index order.
inline Network network_from_mask(int n, std::uint64_t mask) {
  Network g(n);
  int idx = 0;
  for (Node u = 0; u < n; ++u)
    for (Node v = u + 1; v < n; ++v, ++idx)
      if ((mask >> idx) & 1U) g.add(Edge(u, v));
  return g;
}

inline std::string to_string(const Network& g) {
  std::string s = "[";
  for (std::size_t i = 0; i < g.edges().size(); ++i) {
    if (i) s += ",";
    s += to_string(g.edges()[i]);
  }
  return s + "]";
}

}  // namespace bgncg
