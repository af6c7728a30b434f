#pragma once

#include "bgncg/cost.hpp"
#include "bgncg/detail/evaluator.hpp"
#include "bgncg/move.hpp"

#include <bit>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace bgncg {

/// Caps on the searched move space. Zero means unlimited.
struct Budget {
  int max_coalition = 0;              // |coalition|
  int max_changes = 0;                // |R| + |A|
  std::uint64_t max_evaluations = 0;  // evaluated candidate moves
};

enum class WitnessMode {
  Canonical,  // smallest witness in canonical order; scans the whole space
  FirstFound  // first witness in enumeration order; deterministic but not canonical
};

struct CheckOptions {
  Budget budget;
  WitnessMode witness = WitnessMode::Canonical;
  ArithmeticOptions arith;
};

struct Verdict {
  enum class Status { Stable, Unstable, Inconclusive };

  Status status = Status::Stable;
  std::optional<Move> witness;
  std::map<Node, Scalar> deltas;  // exact replay of the witness
  std::string frontier;           // why the search stopped short (Inconclusive)
  std::uint64_t evaluated = 0;
  bool canonical = false;

  bool stable() const { return status == Status::Stable; }
  bool unstable() const { return status == Status::Unstable; }
  bool inconclusive() const { return status == Status::Inconclusive; }
};

inline std::string to_string(Verdict::Status s) {
  switch (s) {
    case Verdict::Status::Stable: return "stable";
    case Verdict::Status::Unstable: return "unstable";
    case Verdict::Status::Inconclusive: return "inconclusive";
  }
  return "?";
}

/// An improving move found by enumeration, with the total cost decrease of
/// its coalition (+inf when some member goes from infinite to finite cost).
struct ImprovingMove {
  Move move;
  Scalar gain;
};

struct EnumerationSummary {
  std::uint64_t evaluated = 0;
  bool truncated = false;  // budget caps excluded part of the move space
  bool exhausted = false;  // evaluation cap hit before the end
  bool stopped = false;    // visitor asked to stop
};

using MoveVisitor = std::function<bool(ImprovingMove&&)>;

namespace detail {

template <class T>
struct Gain {
  int infinite = 0;
  T finite = 0;
};

template <class T>
class MoveEnumerator {
 public:
  MoveEnumerator(const Evaluator<T>& ev, const Network& g, const Budget& budget, const MoveVisitor& visit)
      : ev_(ev), g_(g), n_(g.n()), budget_(budget), visit_(visit), adj0_(adjacency_of(g)) {
    before_.resize(static_cast<std::size_t>(n_));
    for (Node x = 0; x < n_; ++x) before_[static_cast<std::size_t>(x)] = ev_.agent_cost(adj0_, x);
  }

  EnumerationSummary summary() const { return summary_; }

  void pairwise() {
    // Removals, coalition {u}, in canonical order.
    for (Node u = 0; u < n_ && go(); ++u) {
      for (Node v : g_.neighbors(u)) {
        if (!go()) return;
        if (!within_caps(1, 1)) continue;
        if (!count()) return;
        Adjacency adj = adj0_;
        set_edge(adj, n_, u, v, 0);
        const T after = ev_.agent_cost(adj, u);
        if (!ev_.improves(before_[static_cast<std::size_t>(u)], after)) continue;
        Move m{Concept::PS, {u}, {Edge(u, v)}, {}};
        emit(std::move(m), {{u, after}});
      }
    }
    // Additions, coalition {u, v}.
    for (Node u = 0; u < n_ && go(); ++u) {
      for (Node v = u + 1; v < n_; ++v) {
        if (!go()) return;
        if (g_.has(u, v)) continue;
        if (!within_caps(2, 1)) continue;
        if (!count()) return;
        Adjacency adj = adj0_;
        set_edge(adj, n_, u, v, 1);
        const T au = ev_.agent_cost(adj, u);
        if (!ev_.improves(before_[static_cast<std::size_t>(u)], au)) continue;
        const T av = ev_.agent_cost(adj, v);
        if (!ev_.improves(before_[static_cast<std::size_t>(v)], av)) continue;
        Move m{Concept::PS, {u, v}, {}, {Edge(u, v)}};
        emit(std::move(m), {{u, au}, {v, av}});
      }
    }
  }

  void neighborhood() {
    for (Node u = 0; u < n_ && go(); ++u) {
      const std::vector<Node> nbrs = g_.neighbors(u);
      std::vector<Node> others;
      for (Node v = 0; v < n_; ++v)
        if (v != u && !g_.has(u, v)) others.push_back(v);
      const std::uint64_t rcount = std::uint64_t{1} << nbrs.size();
      const std::uint64_t acount = std::uint64_t{1} << others.size();
      for (std::uint64_t rm = 0; rm < rcount && go(); ++rm) {
        Adjacency adj_r = adj0_;
        for (std::size_t i = 0; i < nbrs.size(); ++i)
          if ((rm >> i) & 1U) set_edge(adj_r, n_, u, nbrs[i], 0);
        for (std::uint64_t am = 0; am < acount; ++am) {
          if (!go()) return;
          if (rm == 0 && am == 0) continue;
          const int changes = std::popcount(rm) + std::popcount(am);
          if (!within_caps(1 + std::popcount(am), changes)) continue;
          if (!count()) return;
          Adjacency adj = adj_r;
          for (std::size_t i = 0; i < others.size(); ++i)
            if ((am >> i) & 1U) set_edge(adj, n_, u, others[i], 1);
          std::vector<std::pair<Node, T>> afters;
          const T au = ev_.agent_cost(adj, u);
          if (!ev_.improves(before_[static_cast<std::size_t>(u)], au)) continue;
          afters.emplace_back(u, au);
          bool ok = true;
          for (std::size_t i = 0; i < others.size() && ok; ++i) {
            if (!((am >> i) & 1U)) continue;
            const T av = ev_.agent_cost(adj, others[i]);
            if (!ev_.improves(before_[static_cast<std::size_t>(others[i])], av)) ok = false;
            afters.emplace_back(others[i], av);
          }
          if (!ok) continue;
          Move m;
          m.kind = Concept::BNE;
          m.coalition.push_back(u);
          for (std::size_t i = 0; i < nbrs.size(); ++i)
            if ((rm >> i) & 1U) m.remove.emplace_back(u, nbrs[i]);
          for (std::size_t i = 0; i < others.size(); ++i)
            if ((am >> i) & 1U) {
              m.add.emplace_back(u, others[i]);
              m.coalition.push_back(others[i]);
            }
          m.normalize();
          emit(std::move(m), afters);
        }
      }
    }
  }

  // Any coalition. A move (R, A) admits a coalition iff every endpoint of A
  // strictly improves and every edge of R has a strictly improving endpoint;
  // the reported coalition is the smallest such set. Two reductions keep the
  // space small without losing any improving move: zero-weight edges are never
  // removed (doing so saves nothing and only lengthens paths), and an added
  // edge no shorter than the current distance between its endpoints in G - R
  // is never added (it shortens no path and only costs its endpoints).
  void strong() {
    std::vector<Edge> removable;
    for (const Edge& e : g_.edges())
      if (ev_.weight(e.u, e.v) > 0) removable.push_back(e);
    std::vector<Edge> absent;
    for (Node u = 0; u < n_; ++u)
      for (Node v = u + 1; v < n_; ++v)
        if (!g_.has(u, v)) absent.push_back(Edge(u, v));
    const std::vector<T> lb = ev_.distance_lower_bounds();
    std::vector<T> edge_before(static_cast<std::size_t>(n_));
    for (Node x = 0; x < n_; ++x) edge_before[static_cast<std::size_t>(x)] = ev_.edge_cost(adj0_, x);

    if (removable.size() >= 63) throw std::length_error("too many edges for exhaustive coalition search");
    const std::uint64_t rcount = std::uint64_t{1} << removable.size();
    std::vector<T> dist_r(static_cast<std::size_t>(n_ * n_));
    for (std::uint64_t rm = 0; rm < rcount && go(); ++rm) {
      Adjacency adj_r = adj0_;
      for (std::size_t i = 0; i < removable.size(); ++i)
        if ((rm >> i) & 1U) set_edge(adj_r, n_, removable[i].u, removable[i].v, 0);
      for (Node s = 0; s < n_; ++s) ev_.distances(adj_r, s, dist_r.data() + static_cast<std::size_t>(s * n_));
      std::vector<Edge> addable;
      for (const Edge& e : absent)
        if (ev_.weight(e.u, e.v) < dist_r[static_cast<std::size_t>(e.u * n_ + e.v)]) addable.push_back(e);
      if (addable.size() >= 63) throw std::length_error("too many candidate additions for exhaustive coalition search");
      const std::uint64_t acount = std::uint64_t{1} << addable.size();
      for (std::uint64_t am = 0; am < acount; ++am) {
        if (!go()) return;
        if (rm == 0 && am == 0) continue;
        const int changes = std::popcount(rm) + std::popcount(am);
        if (budget_.max_changes > 0 && changes > budget_.max_changes) {
          summary_.truncated = true;
          continue;
        }
        if (!count()) return;
        evaluate_strong(adj_r, removable, rm, addable, am, lb, edge_before);
      }
    }
  }

 private:
  bool go() const { return !summary_.stopped && !summary_.exhausted; }

  bool within_caps(int coalition, int changes) {
    if ((budget_.max_coalition > 0 && coalition > budget_.max_coalition) ||
        (budget_.max_changes > 0 && changes > budget_.max_changes)) {
      summary_.truncated = true;
      return false;
    }
    return true;
  }

  bool count() {
    if (budget_.max_evaluations > 0 && summary_.evaluated >= budget_.max_evaluations) {
      summary_.exhausted = true;
      return false;
    }
    ++summary_.evaluated;
    return true;
  }

  void emit(Move&& m, const std::vector<std::pair<Node, T>>& afters) {
    Gain<T> gain;
    for (const auto& [x, after] : afters) {
      const T b = before_[static_cast<std::size_t>(x)];
      if (Evaluator<T>::is_inf(b)) {
        ++gain.infinite;
      } else {
        gain.finite += b - after;
      }
    }
    Scalar g = gain.infinite > 0 ? Scalar::infinity() : ev_.to_scalar(gain.finite);
    if (!visit_(ImprovingMove{std::move(m), std::move(g)})) summary_.stopped = true;
  }

  void evaluate_strong(const Adjacency& adj_r, const std::vector<Edge>& removable, std::uint64_t rm,
                       const std::vector<Edge>& addable, std::uint64_t am, const std::vector<T>& lb,
                       const std::vector<T>& edge_before) {
    Adjacency adj = adj_r;
    std::uint64_t mandatory = 0;
    T edge_delta[64] = {};
    for (std::size_t i = 0; i < addable.size(); ++i) {
      if (!((am >> i) & 1U)) continue;
      const Edge& e = addable[i];
      set_edge(adj, n_, e.u, e.v, 1);
      mandatory |= (std::uint64_t{1} << e.u) | (std::uint64_t{1} << e.v);
      edge_delta[e.u] += ev_.price(e.u, e.v);
      edge_delta[e.v] += ev_.price(e.u, e.v);
    }
    for (std::size_t i = 0; i < removable.size(); ++i) {
      if (!((rm >> i) & 1U)) continue;
      const Edge& e = removable[i];
      edge_delta[e.u] -= ev_.price(e.u, e.v);
      edge_delta[e.v] -= ev_.price(e.u, e.v);
    }
    // status: 0 unknown, 1 improves, 2 does not
    std::uint8_t status[64] = {};
    T after[64] = {};
    auto improves = [&](Node x) {
      if (status[x] == 0) {
        const T b = before_[static_cast<std::size_t>(x)];
        const T edge_after = edge_before[static_cast<std::size_t>(x)] + edge_delta[x];
        if (!ev_.improves(b, Evaluator<T>::add(edge_after, lb[static_cast<std::size_t>(x)]))) {
          status[x] = 2;
        } else {
          after[x] = Evaluator<T>::add(edge_after, ev_.distance_cost(adj, x));
          status[x] = ev_.improves(b, after[x]) ? 1 : 2;
        }
      }
      return status[x] == 1;
    };
    for (Node x = 0; x < n_; ++x)
      if (((mandatory >> x) & 1U) && !improves(x)) return;
    std::vector<Edge> uncovered;
    std::uint64_t candidates = 0;
    for (std::size_t i = 0; i < removable.size(); ++i) {
      if (!((rm >> i) & 1U)) continue;
      const Edge& e = removable[i];
      if (((mandatory >> e.u) & 1U) || ((mandatory >> e.v) & 1U)) continue;
      const bool iu = improves(e.u);
      const bool iv = improves(e.v);
      if (!iu && !iv) return;
      if (iu) candidates |= std::uint64_t{1} << e.u;
      if (iv) candidates |= std::uint64_t{1} << e.v;
      uncovered.push_back(e);
    }
    const std::uint64_t hitting = smallest_hitting_set(mandatory, candidates, uncovered);
    const std::uint64_t coalition = mandatory | hitting;
    if (budget_.max_coalition > 0 && std::popcount(coalition) > budget_.max_coalition) {
      summary_.truncated = true;
      return;
    }
    Move m;
    m.kind = Concept::BSE;
    std::vector<std::pair<Node, T>> afters;
    for (Node x = 0; x < n_; ++x)
      if ((coalition >> x) & 1U) {
        m.coalition.push_back(x);
        afters.emplace_back(x, after[x]);
      }
    for (std::size_t i = 0; i < removable.size(); ++i)
      if ((rm >> i) & 1U) m.remove.push_back(removable[i]);
    for (std::size_t i = 0; i < addable.size(); ++i)
      if ((am >> i) & 1U) m.add.push_back(addable[i]);
    m.normalize();
    emit(std::move(m), afters);
  }

  // Smallest subset H of `candidates` hitting every uncovered edge; among
  // equal sizes the one making (mandatory | H) lexicographically smallest.
  std::uint64_t smallest_hitting_set(std::uint64_t mandatory, std::uint64_t candidates, const std::vector<Edge>& uncovered) const {
    if (uncovered.empty()) return 0;
    std::vector<Node> cand;
    for (Node x = 0; x < n_; ++x)
      if ((candidates >> x) & 1U) cand.push_back(x);
    std::uint64_t best = 0;
    int best_size = 65;
    std::vector<Node> best_list;
    const std::uint64_t total = std::uint64_t{1} << cand.size();
    for (std::uint64_t s = 1; s < total; ++s) {
      const int size = std::popcount(s);
      if (size > best_size) continue;
      std::uint64_t h = 0;
      for (std::size_t i = 0; i < cand.size(); ++i)
        if ((s >> i) & 1U) h |= std::uint64_t{1} << cand[i];
      bool hits = true;
      for (const Edge& e : uncovered)
        if (!((h >> e.u) & 1U) && !((h >> e.v) & 1U)) {
          hits = false;
          break;
        }
      if (!hits) continue;
      std::vector<Node> list;
      for (Node x = 0; x < n_; ++x)
        if (((mandatory | h) >> x) & 1U) list.push_back(x);
      if (size < best_size || list < best_list) {
        best = h;
        best_size = size;
        best_list = std::move(list);
      }
    }
    return best;
  }

  const Evaluator<T>& ev_;
  const Network& g_;
  int n_;
  Budget budget_;
  const MoveVisitor& visit_;
  Adjacency adj0_;
  std::vector<T> before_;
  EnumerationSummary summary_;
};

}  // namespace detail

/// Streams every improving move of the concept's move space to `visit`
/// (return false to stop). PS and BNE moves arrive in a fixed order; BSE
/// moves are reported with their smallest admissible coalition.
inline EnumerationSummary for_each_improving_move(const Instance& inst, const Network& g, Concept kind,
                                                  const CheckOptions& opts, const MoveVisitor& visit) {
  if (g.n() != inst.n()) throw InputError("network and instance disagree on n");
  if (kind == Concept::BSE && g.n() > 64) throw InputError("coalition search supports at most 64 nodes");
  return detail::with_evaluator(inst, opts.arith, [&](const auto& ev) {
    using T = std::decay_t<decltype(ev.inf())>;
    detail::MoveEnumerator<T> en(ev, g, opts.budget, visit);
    switch (kind) {
      case Concept::PS: en.pairwise(); break;
      case Concept::BNE: en.neighborhood(); break;
      case Concept::BSE: en.strong(); break;
    }
    return en.summary();
  });
}

/// Decides stability of `g` under `concept`. Stable is only returned after
/// the whole move space was searched; a reported witness is always checked
/// by exact replay.
inline Verdict check_stability(const Instance& inst, const Network& g, Concept kind, const CheckOptions& opts = {}) {
  std::optional<Move> best;
  const bool first_found = opts.witness == WitnessMode::FirstFound;
  const EnumerationSummary sum = for_each_improving_move(inst, g, kind, opts, [&](ImprovingMove&& im) {
    if (!best || canonical_less(im.move, *best)) best = std::move(im.move);
    return !first_found;
  });
  Verdict v;
  v.evaluated = sum.evaluated;
  if (best) {
    ReplayResult r = replay_move(inst, g, *best);
    if (!r.improving) {
      v.status = Verdict::Status::Inconclusive;
      v.frontier = "candidate move failed exact replay (inexact arithmetic): " + to_string(*best);
      return v;
    }
    v.status = Verdict::Status::Unstable;
    v.witness = std::move(best);
    v.deltas = std::move(r.deltas);
    v.canonical = !first_found && !sum.exhausted && !sum.truncated;
    return v;
  }
  if (sum.exhausted) {
    v.status = Verdict::Status::Inconclusive;
    v.frontier = "evaluation budget of " + std::to_string(opts.budget.max_evaluations) + " moves exhausted";
    return v;
  }
  if (sum.truncated) {
    v.status = Verdict::Status::Inconclusive;
    v.frontier = "coalition/change caps excluded part of the move space";
    return v;
  }
  v.status = Verdict::Status::Stable;
  return v;
}

inline Verdict is_pairwise_stable(const Instance& inst, const Network& g, const CheckOptions& opts = {}) {
  return check_stability(inst, g, Concept::PS, opts);
}
inline Verdict is_bne(const Instance& inst, const Network& g, const CheckOptions& opts = {}) {
  return check_stability(inst, g, Concept::BNE, opts);
}
inline Verdict is_bse(const Instance& inst, const Network& g, const CheckOptions& opts = {}) {
  return check_stability(inst, g, Concept::BSE, opts);
}

struct SingleRemoval {
  Edge edge;
  Scalar delta;  // cost change of the agent; negative means improving
};

/// The incident edge whose removal leaves `u` with the lowest cost (smallest
/// edge on ties), computed exactly. Empty when `u` is isolated.
inline std::optional<SingleRemoval> best_single_removal(const Instance& inst, const Network& g, Node u) {
  const Scalar before = cost_report(inst, g).total[static_cast<std::size_t>(u)];
  std::optional<SingleRemoval> best;
  for (Node v : g.neighbors(u)) {
    Network h = g;
    h.remove(Edge(u, v));
    Scalar d = cost_delta(before, cost_report(inst, h).total[static_cast<std::size_t>(u)]);
    if (!best || d < best->delta) best = SingleRemoval{Edge(u, v), std::move(d)};
  }
  return best;
}

}  // namespace bgncg
