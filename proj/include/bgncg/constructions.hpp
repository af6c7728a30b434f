#pragma once

// Lower-bound constructions as executable fixtures. Node layouts:
//   general:      u_1..u_{n-1} = 0..n-2 (pairwise weight 0), v = n-1
//   metric star:  u = 0 (centre of the stable star), c = 1, v_i = 2..n-1
//   metric path:  v_1..v_x = 0..x-1, cluster = x..n-1 (weight 0 to v_1)

#include "bgncg/cost.hpp"
#include "bgncg/metric.hpp"
#include "bgncg/optimum.hpp"
#include "bgncg/stability.hpp"

#include <string>
#include <vector>

namespace bgncg {

enum class Family { GeneralBse, MetricStar, MetricPath };

inline std::string to_string(Family f) {
  switch (f) {
    case Family::GeneralBse: return "general_bse";
    case Family::MetricStar: return "metric_star";
    case Family::MetricPath: return "metric_path";
  }
  return "?";
}

inline Family parse_family(std::string_view s) {
  if (s == "general_bse" || s == "general") return Family::GeneralBse;
  if (s == "metric_star" || s == "star") return Family::MetricStar;
  if (s == "metric_path" || s == "path") return Family::MetricPath;
  throw InputError("unknown fixture family '" + std::string(s) + "'");
}

struct Fixture {
  Family family = Family::GeneralBse;
  Instance instance;
  Network stable_net;     // claimed equilibrium
  Network reference_net;  // cheap comparison network
  Concept claimed = Concept::BSE;
  Scalar expected_ratio;  // cost(stable_net) / cost(reference_net)
  bool asymptotic_only = false;
  bool metric = false;
};

class FixtureError : public InputError {
 public:
  enum class Kind { Precondition, BneAlphaNotSquare };
  FixtureError(Kind k, const std::string& what) : InputError(what), kind_(k) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

namespace detail {

inline void require(bool ok, const std::string& what) {
  if (!ok) throw FixtureError(FixtureError::Kind::Precondition, what);
}

inline std::vector<std::vector<Scalar>> zero_matrix(int n) {
  return std::vector<std::vector<Scalar>>(static_cast<std::size_t>(n), std::vector<Scalar>(static_cast<std::size_t>(n), Scalar(0)));
}

}  // namespace detail

/// Zero-weight clique u_1..u_{n-1} plus v, far from u_1 (alpha + 1) and at 1
/// from the rest. The stable network reaches v through u_1.
inline Fixture gen_general_bse(int n, const Scalar& alpha) {
  detail::require(n > 2, "general construction needs n > 2");
  const Node v = n - 1;
  auto w = detail::zero_matrix(n);
  for (Node u = 0; u < v; ++u) {
    const Scalar x = u == 0 ? alpha + Scalar(1) : Scalar(1);
    w[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] = x;
    w[static_cast<std::size_t>(v)][static_cast<std::size_t>(u)] = x;
  }
  Fixture f;
  f.family = Family::GeneralBse;
  f.instance = make_instance(validate_host(w), alpha);
  f.stable_net = Network(n);
  for (Node u = 1; u < v; ++u) f.stable_net.add(Edge(0, u));
  f.reference_net = f.stable_net;
  f.stable_net.add(Edge(0, v));
  f.reference_net.add(Edge(1, v));
  f.claimed = Concept::BSE;
  f.expected_ratio = alpha + Scalar(1);
  f.asymptotic_only = false;
  f.metric = false;
  return f;
}

/// Star S* with centre c, one leaf u at distance a and n-2 leaves at b; the
/// stable network is the star centred at u over the closure of S*.
inline Fixture gen_metric_star(int n, const Scalar& alpha, Concept variant) {
  detail::require(n >= 4, "metric star needs n >= 4");
  Scalar a, b, ratio;
  const Scalar m(n - 2);
  switch (variant) {
    case Concept::PS:
      a = Scalar(1);
      b = Scalar(2) / alpha;
      ratio = Scalar(1) + m / (m * Scalar(2) / alpha + Scalar(1));
      break;
    case Concept::BNE: {
      const auto root = exact_sqrt(alpha);
      if (!root) throw FixtureError(FixtureError::Kind::BneAlphaNotSquare, "BNE star needs alpha to be a rational square");
      a = Scalar(1);
      b = Scalar(2) / *root;
      ratio = Scalar(1) + m / (m * Scalar(2) / *root + Scalar(1));
      break;
    }
    case Concept::BSE:
      a = Scalar(1) / Scalar(n);
      b = Scalar(2) / alpha;
      ratio = Scalar(1) + m / (Scalar(2 * n) * m / alpha + Scalar(1));
      break;
  }
  WeightedGraph seed{n, {}};
  seed.add(0, 1, a);
  for (Node v = 2; v < n; ++v) seed.add(1, v, b);
  Fixture f;
  f.family = Family::MetricStar;
  f.instance = make_instance(metric_closure(seed), alpha);
  f.stable_net = Network(n);
  for (Node v = 1; v < n; ++v) f.stable_net.add(Edge(0, v));
  f.reference_net = Network(n);
  for (Node v = 0; v < n; ++v)
    if (v != 1) f.reference_net.add(Edge(1, v));
  f.claimed = variant;
  f.expected_ratio = ratio;
  f.asymptotic_only = false;
  f.metric = true;
  return f;
}

/// x = floor(sqrt(alpha) / 2) path nodes (weight 1 between neighbours, 2
/// otherwise) and a zero-weight cluster hanging off v_1.
inline Fixture gen_metric_path(int n, const Scalar& alpha) {
  const auto root = exact_sqrt(alpha);
  detail::require(root.has_value() && root->denominator() == 1, "path construction needs alpha to be a perfect square");
  detail::require(alpha >= Scalar(16), "path construction needs alpha >= 16");
  detail::require(alpha <= Scalar(n) * Scalar(n), "path construction needs alpha <= n^2");
  const int x = static_cast<int>(root->numerator() / 2);
  detail::require(n > x, "path construction needs n > floor(sqrt(alpha)/2)");
  WeightedGraph seed{n, {}};
  for (Node i = 0; i < x; ++i)
    for (Node j = i + 1; j < x; ++j) seed.add(i, j, Scalar(j - i == 1 ? 1 : 2));
  for (Node c = x; c < n; ++c) seed.add(0, c, Scalar(0));
  Fixture f;
  f.family = Family::MetricPath;
  f.instance = make_instance(metric_closure(seed), alpha);
  f.stable_net = Network(n);
  f.reference_net = Network(n);
  for (Node c = x; c < n; ++c) {
    f.stable_net.add(Edge(0, c));
    f.reference_net.add(Edge(0, c));
  }
  for (Node i = 0; i + 1 < x; ++i) f.stable_net.add(Edge(i, i + 1));
  for (Node i = 1; i < x; ++i) f.reference_net.add(Edge(0, i));
  f.claimed = Concept::BSE;
  f.expected_ratio = social_cost(f.instance, f.stable_net) / social_cost(f.instance, f.reference_net);
  f.asymptotic_only = true;
  f.metric = true;
  return f;
}

struct FixtureCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct FixtureReport {
  std::vector<FixtureCheck> checks;
  Verdict verdict;
  Scalar stable_cost;
  Scalar reference_cost;
  Scalar ratio;  // stable / reference
  std::optional<OptResult> opt;
  std::optional<Scalar> ratio_vs_opt;

  bool passed() const {
    for (const auto& c : checks)
      if (!c.passed) return false;
    return true;
  }
  const FixtureCheck* find(std::string_view name) const {
    for (const auto& c : checks)
      if (c.name == name) return &c;
    return nullptr;
  }
};

struct VerifyOptions {
  CheckOptions check;
  int opt_node_limit = 6;  // brute-force OPT up to this n; 0 disables
};

inline FixtureReport verify_fixture(const Fixture& f, const VerifyOptions& opts = {}) {
  FixtureReport r;
  auto add = [&](std::string name, bool ok, std::string detail) {
    r.checks.push_back({std::move(name), ok, std::move(detail)});
  };
  add("stable_connected", f.stable_net.is_connected(), to_string(f.stable_net));
  add("reference_connected", f.reference_net.is_connected(), to_string(f.reference_net));
  if (f.metric) {
    const MetricReport m = check_metric(f.instance.host);
    std::string d = "metric";
    if (m.violation) {
      d = "violation (" + std::to_string(m.violation->u) + "," + std::to_string(m.violation->z) + "," + std::to_string(m.violation->v) +
          ") slack " + m.violation->slack.to_string();
    }
    add("host_metric", m.is_metric, d);
  }

  r.verdict = check_stability(f.instance, f.stable_net, f.claimed, opts.check);
  {
    std::string d = to_string(f.claimed) + " " + to_string(r.verdict.status);
    if (r.verdict.witness) d += ": " + to_string(*r.verdict.witness);
    if (r.verdict.inconclusive()) d += ": " + r.verdict.frontier;
    add("stability", r.verdict.stable(), d);
  }

  r.stable_cost = social_cost(f.instance, f.stable_net);
  r.reference_cost = social_cost(f.instance, f.reference_net);
  r.ratio = r.stable_cost / r.reference_cost;
  if (f.asymptotic_only) {
    add("ratio", true, "asymptotic only; measured " + r.ratio.to_string());
  } else {
    add("ratio", r.ratio == f.expected_ratio, "measured " + r.ratio.to_string() + ", expected " + f.expected_ratio.to_string());
  }

  if (opts.opt_node_limit > 0 && f.instance.n() <= opts.opt_node_limit) {
    r.opt = brute_force_opt(f.instance, opts.opt_node_limit);
    r.ratio_vs_opt = r.stable_cost / r.opt->cost;
    add("opt_bound", *r.ratio_vs_opt >= r.ratio,
        "vs OPT " + r.ratio_vs_opt->to_string() + " >= vs reference " + r.ratio.to_string());
  }
  return r;
}

}  // namespace bgncg
