#pragma once

// Fast cost evaluation for the enumeration loops. Exact mode rescales every
// weight and edge price to a common integer unit, so comparisons are exact
// integer comparisons; inexact mode uses doubles with an absolute tolerance.

#include "bgncg/model.hpp"

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <type_traits>
#include <vector>

namespace bgncg {

enum class Arithmetic { Exact, Inexact };

struct ArithmeticOptions {
  Arithmetic mode = Arithmetic::Exact;
  double epsilon = 1e-9;  // strict-improvement tolerance in inexact mode
};

namespace detail {

using Adjacency = std::vector<std::uint8_t>;

inline Adjacency adjacency_of(const Network& g) {
  auto a = g.adjacency();
  return Adjacency(a.begin(), a.end());
}

inline void set_edge(Adjacency& adj, int n, Node u, Node v, std::uint8_t value) {
  adj[static_cast<std::size_t>(u * n + v)] = value;
  adj[static_cast<std::size_t>(v * n + u)] = value;
}

template <class T>
class Evaluator {
  static_assert(std::is_same_v<T, std::int64_t> || std::is_same_v<T, double>);

 public:
  static constexpr bool kExact = std::is_same_v<T, std::int64_t>;

  Evaluator(const Instance& inst, double epsilon = 0.0) : n_(inst.n()), epsilon_(epsilon) {
    const std::size_t cells = static_cast<std::size_t>(n_ * n_);
    w_.resize(cells);
    price_.resize(cells);
    if constexpr (kExact) {
      BigInt lcm = 1;
      for (Node u = 0; u < n_; ++u)
        for (Node v = u + 1; v < n_; ++v) {
          const BigInt den = inst.host.weight(u, v).denominator();
          lcm = lcm / boost::multiprecision::gcd(lcm, den) * den;
        }
      const BigInt a = inst.alpha.numerator();
      const BigInt b = inst.alpha.denominator();
      scale_ = lcm * b;
      const BigInt limit = BigInt(1) << 61;
      const BigInt n3 = BigInt(n_) * n_ * n_ + 1;
      for (Node u = 0; u < n_; ++u)
        for (Node v = 0; v < n_; ++v) {
          const Scalar& w = inst.host.weight(u, v);
          const BigInt wt = w.numerator() * (scale_ / w.denominator());
          const BigInt pt = wt * a / b;  // alpha * w * scale, integral by construction
          if (wt * n3 >= limit || pt * n3 >= limit) {
            throw std::overflow_error("instance magnitudes exceed the exact fixed-point range");
          }
          w_[static_cast<std::size_t>(u * n_ + v)] = static_cast<std::int64_t>(wt);
          price_[static_cast<std::size_t>(u * n_ + v)] = static_cast<std::int64_t>(pt);
        }
    } else {
      const double alpha = inst.alpha.to_double();
      for (Node u = 0; u < n_; ++u)
        for (Node v = 0; v < n_; ++v) {
          const double w = inst.host.weight(u, v).to_double();
          w_[static_cast<std::size_t>(u * n_ + v)] = w;
          price_[static_cast<std::size_t>(u * n_ + v)] = alpha * w;
        }
    }
  }

  int n() const { return n_; }

  static constexpr T inf() {
    if constexpr (kExact) {
      return std::numeric_limits<std::int64_t>::max();
    } else {
      return std::numeric_limits<double>::infinity();
    }
  }
  static bool is_inf(T x) { return x == inf(); }
  static T add(T a, T b) {
    if constexpr (kExact) {
      if (a == inf() || b == inf()) return inf();
    }
    return a + b;
  }

  /// Strict improvement `after < before` (tolerance-aware in inexact mode).
  bool improves(T before, T after) const {
    if constexpr (kExact) {
      return after < before;
    } else {
      if (std::isinf(before)) return !std::isinf(after);
      return after < before - epsilon_;
    }
  }

  T weight(Node u, Node v) const { return w_[static_cast<std::size_t>(u * n_ + v)]; }
  T price(Node u, Node v) const { return price_[static_cast<std::size_t>(u * n_ + v)]; }

  /// Distances from `src`; `dist` must hold n entries.
  void distances(const Adjacency& adj, Node src, T* dist) const {
    char done[64];
    std::vector<char> done_big;
    char* done_ptr = done;
    if (n_ > 64) {
      done_big.resize(static_cast<std::size_t>(n_));
      done_ptr = done_big.data();
    }
    for (int i = 0; i < n_; ++i) {
      dist[i] = inf();
      done_ptr[i] = 0;
    }
    dist[src] = 0;
    for (int it = 0; it < n_; ++it) {
      int best = -1;
      T bd = inf();
      for (int v = 0; v < n_; ++v) {
        if (!done_ptr[v] && dist[v] < bd) {
          bd = dist[v];
          best = v;
        }
      }
      if (best < 0) break;
      done_ptr[best] = 1;
      const std::uint8_t* row = adj.data() + static_cast<std::size_t>(best * n_);
      const T* wrow = w_.data() + static_cast<std::size_t>(best * n_);
      for (int v = 0; v < n_; ++v) {
        if (row[v] && !done_ptr[v]) {
          const T cand = bd + wrow[v];
          if (cand < dist[v]) dist[v] = cand;
        }
      }
    }
  }

  T distance_cost(const Adjacency& adj, Node src) const {
    T buf[64];
    std::vector<T> big;
    T* dist = buf;
    if (n_ > 64) {
      big.resize(static_cast<std::size_t>(n_));
      dist = big.data();
    }
    distances(adj, src, dist);
    T s = 0;
    for (int v = 0; v < n_; ++v) {
      if (is_inf(dist[v])) return inf();
      s += dist[v];
    }
    return s;
  }

  T edge_cost(const Adjacency& adj, Node u) const {
    T s = 0;
    const std::uint8_t* row = adj.data() + static_cast<std::size_t>(u * n_);
    for (int v = 0; v < n_; ++v)
      if (row[v]) s += price(u, v);
    return s;
  }

  T agent_cost(const Adjacency& adj, Node u) const { return add(edge_cost(adj, u), distance_cost(adj, u)); }

  T social_cost(const Adjacency& adj) const {
    T s = 0;
    for (Node u = 0; u < n_; ++u) s = add(s, agent_cost(adj, u));
    return s;
  }

  /// Lower bound on u's distance cost in any subgraph: sum of host shortest-path distances.
  std::vector<T> distance_lower_bounds() const {
    std::vector<T> d(w_.begin(), w_.end());
    for (int k = 0; k < n_; ++k)
      for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) {
          const T via = d[static_cast<std::size_t>(i * n_ + k)] + d[static_cast<std::size_t>(k * n_ + j)];
          if (via < d[static_cast<std::size_t>(i * n_ + j)]) d[static_cast<std::size_t>(i * n_ + j)] = via;
        }
    std::vector<T> lb(static_cast<std::size_t>(n_), 0);
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) lb[static_cast<std::size_t>(i)] += d[static_cast<std::size_t>(i * n_ + j)];
    return lb;
  }

  Scalar to_scalar(T x) const {
    if (is_inf(x)) return Scalar::infinity();
    if constexpr (kExact) {
      return Scalar(Rational(BigInt(x), scale_));
    } else {
      return Scalar(Rational(x));
    }
  }

 private:
  int n_;
  double epsilon_;
  BigInt scale_ = 1;
  std::vector<T> w_;
  std::vector<T> price_;
};

using ExactEvaluator = Evaluator<std::int64_t>;
using InexactEvaluator = Evaluator<double>;

/// Calls `fn(evaluator)` with the evaluator matching the arithmetic mode.
template <class Fn>
decltype(auto) with_evaluator(const Instance& inst, const ArithmeticOptions& arith, Fn&& fn) {
  if (arith.mode == Arithmetic::Exact) {
    const ExactEvaluator ev(inst);
    return fn(ev);
  }
  const InexactEvaluator ev(inst, arith.epsilon);
  return fn(ev);
}

}  // namespace detail
}  // namespace bgncg
