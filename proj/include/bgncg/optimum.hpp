#pragma once

#include "bgncg/cost.hpp"
#include "bgncg/detail/evaluator.hpp"
#include "bgncg/detail/random.hpp"
#include "bgncg/distances.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

namespace bgncg {

struct OptResult {
  Network network;
  Scalar cost;
  bool proven = false;  // exhaustive minimum, as opposed to a heuristic upper bound
};

class TooLargeError : public InputError {
 public:
  TooLargeError(int n, int limit)
      : InputError("n = " + std::to_string(n) + " exceeds the exhaustive limit of " + std::to_string(limit)), n_(n), limit_(limit) {}
  int n() const { return n_; }
  int limit() const { return limit_; }

 private:
  int n_;
  int limit_;
};

class NotProvenOptimalError : public InputError {
 public:
  NotProvenOptimalError() : InputError("network is not a proven optimum") {}
};

namespace detail {

// Connectivity of the graph given by a pair mask, as node bitsets.
inline bool mask_connected(int n, const std::vector<std::uint32_t>& pair_bits, std::uint64_t mask) {
  std::vector<std::uint32_t> nbr(static_cast<std::size_t>(n), 0);
  for (std::size_t i = 0; i < pair_bits.size(); ++i)
    if ((mask >> i) & 1U) {
      const std::uint32_t b = pair_bits[i];
      const int u = std::countr_zero(b);
      const int v = 31 - std::countl_zero(b);
      nbr[static_cast<std::size_t>(u)] |= 1U << v;
      nbr[static_cast<std::size_t>(v)] |= 1U << u;
    }
  const std::uint32_t all = n == 32 ? ~0U : ((1U << n) - 1);
  std::uint32_t seen = 1, frontier = 1;
  while (frontier) {
    std::uint32_t next = 0;
    for (std::uint32_t f = frontier; f; f &= f - 1) next |= nbr[static_cast<std::size_t>(std::countr_zero(f))];
    frontier = next & ~seen;
    seen |= next;
  }
  return seen == all;
}

}  // namespace detail

/// Exhaustive social optimum. Ties go to the lexicographically smallest edge list.
inline OptResult brute_force_opt(const Instance& inst, int node_limit = 7) {
  const int n = inst.n();
  if (n > node_limit || n > 11) throw TooLargeError(n, std::min(node_limit, 11));
  const EdgeList pairs = all_pairs(n);
  std::vector<std::uint32_t> pair_bits;
  for (const Edge& e : pairs) pair_bits.push_back((1U << e.u) | (1U << e.v));
  const detail::ExactEvaluator ev(inst);
  const std::vector<std::int64_t> lb = ev.distance_lower_bounds();
  std::int64_t lb_total = 0;
  for (auto x : lb) lb_total += x;

  std::optional<std::uint64_t> best_mask;
  std::int64_t best = 0;
  Network best_net;
  const std::uint64_t total = std::uint64_t{1} << pairs.size();
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    if (static_cast<int>(std::popcount(mask)) < n - 1) continue;
    std::int64_t edge = 0;
    for (std::size_t i = 0; i < pairs.size(); ++i)
      if ((mask >> i) & 1U) edge += 2 * ev.price(pairs[i].u, pairs[i].v);
    if (best_mask && edge + lb_total > best) continue;
    if (!detail::mask_connected(n, pair_bits, mask)) continue;
    const Network g = network_from_mask(n, mask);
    const std::int64_t c = ev.social_cost(detail::adjacency_of(g));
    if (!best_mask || c < best || (c == best && g < best_net)) {
      best_mask = mask;
      best = c;
      best_net = g;
    }
  }
  OptResult r;
  r.network = best_net;
  r.cost = social_cost(inst, best_net);
  r.proven = true;
  return r;
}

namespace detail {

inline Network minimum_spanning_tree(const Instance& inst) {
  const int n = inst.n();
  Network t(n);
  std::vector<char> in(static_cast<std::size_t>(n), 0);
  in[0] = 1;
  for (int it = 1; it < n; ++it) {
    std::optional<Edge> pick;
    for (Node u = 0; u < n; ++u) {
      if (!in[static_cast<std::size_t>(u)]) continue;
      for (Node v = 0; v < n; ++v) {
        if (in[static_cast<std::size_t>(v)]) continue;
        const Edge e(u, v);
        if (!pick || inst.host.weight(u, v) < inst.host.weight(pick->u, pick->v) ||
            (inst.host.weight(u, v) == inst.host.weight(pick->u, pick->v) && e < *pick)) {
          pick = e;
        }
      }
    }
    t.add(*pick);
    in[static_cast<std::size_t>(in[static_cast<std::size_t>(pick->u)] ? pick->v : pick->u)] = 1;
  }
  return t;
}

inline Network star_at(int n, Node c) {
  Network s(n);
  for (Node v = 0; v < n; ++v)
    if (v != c) s.add(Edge(c, v));
  return s;
}

// First-improvement local search over single additions, single removals and,
// for small n, 1-swaps. Candidate order is shuffled by `rng`.
template <class T>
Network local_search(const Evaluator<T>& ev, Network g, Rng& rng, bool swaps) {
  const int n = g.n();
  const EdgeList pairs = all_pairs(n);
  Adjacency adj = adjacency_of(g);
  T cur = ev.social_cost(adj);
  for (bool improved = true; improved;) {
    improved = false;
    std::vector<std::size_t> order(pairs.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    rng.shuffle(order);
    for (std::size_t i : order) {
      const Edge& e = pairs[i];
      const std::uint8_t was = adj[static_cast<std::size_t>(e.u * n + e.v)];
      set_edge(adj, n, e.u, e.v, was ? 0 : 1);
      const T c = ev.social_cost(adj);
      if (ev.improves(cur, c)) {
        cur = c;
        improved = true;
        break;
      }
      set_edge(adj, n, e.u, e.v, was);
    }
    if (improved || !swaps) continue;
    for (std::size_t i : order) {
      const Edge& out = pairs[i];
      if (!adj[static_cast<std::size_t>(out.u * n + out.v)]) continue;
      set_edge(adj, n, out.u, out.v, 0);
      for (std::size_t j : order) {
        const Edge& in = pairs[j];
        if (j == i || adj[static_cast<std::size_t>(in.u * n + in.v)]) continue;
        set_edge(adj, n, in.u, in.v, 1);
        const T c = ev.social_cost(adj);
        if (ev.improves(cur, c)) {
          cur = c;
          improved = true;
          break;
        }
        set_edge(adj, n, in.u, in.v, 0);
      }
      if (improved) break;
      set_edge(adj, n, out.u, out.v, 1);
    }
  }
  Network out(n);
  for (const Edge& e : pairs)
    if (adj[static_cast<std::size_t>(e.u * n + e.v)]) out.add(e);
  return out;
}

}  // namespace detail

struct HeuristicOptions {
  std::uint64_t seed = 0;
  int restarts = 3;
  int swap_node_limit = 15;  // 1-swaps are quadratic in the pair count
};

/// Upper bound on the optimum: MST, best star, and local search from each.
inline OptResult heuristic_opt(const Instance& inst, const HeuristicOptions& opts = {}) {
  const int n = inst.n();
  std::vector<Network> starts;
  starts.push_back(detail::minimum_spanning_tree(inst));
  {
    Network best_star;
    Scalar best;
    for (Node c = 0; c < n; ++c) {
      Network s = detail::star_at(n, c);
      Scalar sc = social_cost(inst, s);
      if (c == 0 || sc < best) {
        best = std::move(sc);
        best_star = std::move(s);
      }
    }
    starts.push_back(std::move(best_star));
  }
  const std::size_t seeds = starts.size();
  auto search = [&](const auto& ev) {
    detail::Rng rng(opts.seed);
    const bool swaps = n <= opts.swap_node_limit;
    for (std::size_t i = 0; i < seeds; ++i)
      for (int r = 0; r < std::max(1, opts.restarts); ++r) starts.push_back(detail::local_search(ev, starts[i], rng, swaps));
    return 0;
  };
  try {
    detail::with_evaluator(inst, {}, search);
  } catch (const std::overflow_error&) {
    detail::with_evaluator(inst, {Arithmetic::Inexact, 1e-9}, search);
  }
  OptResult r;
  for (const Network& g : starts) {
    Scalar c = social_cost(inst, g);
    if (r.network.n() == 0 || c < r.cost || (c == r.cost && g < r.network)) {
      r.cost = std::move(c);
      r.network = g;
    }
  }
  r.proven = false;
  return r;
}

/// Optimum for small n, heuristic bound otherwise.
inline OptResult best_opt(const Instance& inst, int node_limit = 7) {
  if (inst.n() <= node_limit) return brute_force_opt(inst, node_limit);
  return heuristic_opt(inst);
}

struct SpannerCheck {
  Scalar stretch;
  Scalar bound;  // alpha + 1
  bool within_bound = false;
};

/// Stretch of a proven optimum against the (alpha + 1) spanner bound.
inline SpannerCheck opt_spanner_check(const Instance& inst, const OptResult& opt) {
  if (!opt.proven) throw NotProvenOptimalError();
  SpannerCheck c;
  c.stretch = spanner_stretch(opt.network, inst.host);
  c.bound = inst.alpha + Scalar(1);
  c.within_bound = c.stretch <= c.bound;
  return c;
}

}  // namespace bgncg
