#pragma once

#include "bgncg/cost.hpp"
#include "bgncg/guided.hpp"
#include "bgncg/stability.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace bgncg {

enum class Policy {
  FirstFound,    // canonically smallest improving move
  BestResponse,  // largest total coalition gain, canonical tie-break
  GuidedFirst    // guided coalition moves before enumeration (BSE only)
};

inline std::string to_string(Policy p) {
  switch (p) {
    case Policy::FirstFound: return "first";
    case Policy::BestResponse: return "best";
    case Policy::GuidedFirst: return "guided";
  }
  return "?";
}

inline Policy parse_policy(std::string_view s) {
  if (s == "first" || s == "first-found") return Policy::FirstFound;
  if (s == "best" || s == "best-response") return Policy::BestResponse;
  if (s == "guided" || s == "guided-first") return Policy::GuidedFirst;
  throw InputError("unknown policy '" + std::string(s) + "' (expected first, best or guided)");
}

/// Raised when a checker budget stops the search before it can decide.
class InconclusiveError : public std::runtime_error {
 public:
  explicit InconclusiveError(const std::string& frontier) : std::runtime_error(frontier) {}
};

struct DynamicsOptions {
  CheckOptions check;
  GuidedParams guided;
};

/// An improving move per `policy`, or nothing when `g` is stable.
inline std::optional<Move> find_improving_move(const Instance& inst, const Network& g, Concept kind, Policy policy,
                                               const DynamicsOptions& opts = {}) {
  if (policy == Policy::GuidedFirst) {
    if (kind != Concept::BSE) throw InputError("guided policy is only defined for BSE");
    try {
      auto moves = guided_bse_candidates(inst, g, opts.guided);
      if (!moves.empty()) return moves.front();
    } catch (const GuidedError&) {
      // not applicable to this instance; fall through to enumeration
    }
  }
  if (policy == Policy::BestResponse) {
    std::optional<ImprovingMove> best;
    const EnumerationSummary sum = for_each_improving_move(inst, g, kind, opts.check, [&](ImprovingMove&& im) {
      if (!best || im.gain > best->gain || (im.gain == best->gain && canonical_less(im.move, best->move))) best = std::move(im);
      return true;
    });
    if (best) {
      if (!replay_move(inst, g, best->move).improving) throw InconclusiveError("move failed exact replay: " + to_string(best->move));
      return best->move;
    }
    if (sum.exhausted || sum.truncated) throw InconclusiveError("budget stopped the search");
    return std::nullopt;
  }
  CheckOptions co = opts.check;
  co.witness = WitnessMode::Canonical;
  Verdict v = check_stability(inst, g, kind, co);
  if (v.inconclusive()) throw InconclusiveError(v.frontier);
  return v.witness;
}

struct TraceStep {
  Move move;
  Scalar social;  // social cost after the move
};

struct Trace {
  enum class Outcome { Equilibrium, CycleDetected, BudgetExhausted, Inconclusive };

  Network initial;
  Scalar initial_social;
  std::vector<TraceStep> steps;
  Outcome outcome = Outcome::Equilibrium;
  int cycle_start = -1;   // index of the first visit of the repeated network
  int cycle_period = 0;
  std::string note;       // inconclusive frontier
  Network final_net;
};

inline std::string to_string(Trace::Outcome o) {
  switch (o) {
    case Trace::Outcome::Equilibrium: return "equilibrium";
    case Trace::Outcome::CycleDetected: return "cycle";
    case Trace::Outcome::BudgetExhausted: return "budget_exhausted";
    case Trace::Outcome::Inconclusive: return "inconclusive";
  }
  return "?";
}

/// Improving-response dynamics. Network i of the trace is the state after
/// i moves (0 = initial); a revisit of an earlier state ends the run.
inline Trace run_dynamics(const Instance& inst, const Network& g0, Concept kind, Policy policy, int max_steps,
                          const DynamicsOptions& opts = {}) {
  if (max_steps < 0) throw InputError("max_steps must be >= 0");
  Trace t;
  t.initial = g0;
  t.initial_social = social_cost(inst, g0);
  std::map<EdgeList, int> seen;
  seen.emplace(g0.edges(), 0);
  Network g = g0;
  for (int step = 0;; ++step) {
    std::optional<Move> m;
    try {
      m = find_improving_move(inst, g, kind, policy, opts);
    } catch (const InconclusiveError& e) {
      t.outcome = Trace::Outcome::Inconclusive;
      t.note = e.what();
      break;
    }
    if (!m) {
      t.outcome = Trace::Outcome::Equilibrium;
      break;
    }
    if (step >= max_steps) {
      t.outcome = Trace::Outcome::BudgetExhausted;
      break;
    }
    g = apply_move(g, *m);
    t.steps.push_back({*m, social_cost(inst, g)});
    const int index = static_cast<int>(t.steps.size());
    auto [it, fresh] = seen.emplace(g.edges(), index);
    if (!fresh) {
      t.outcome = Trace::Outcome::CycleDetected;
      t.cycle_start = it->second;
      t.cycle_period = index - it->second;
      break;
    }
  }
  t.final_net = g;
  return t;
}

}  // namespace bgncg
