#pragma once

#include "bgncg/constructions.hpp"
#include "bgncg/detail/random.hpp"
#include "bgncg/dynamics.hpp"
#include "bgncg/guided.hpp"
#include "bgncg/io.hpp"
#include "bgncg/metric.hpp"
#include "bgncg/optimum.hpp"
#include "bgncg/stability.hpp"

#include <functional>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace bgncg {

// ---------------------------------------------------------------- instances

struct RandomModel {
  enum class Kind { Uniform, EuclideanPlane, TreeMetric };
  Kind kind = Kind::Uniform;
  Scalar lo = Scalar(1);  // weight range for uniform and tree edges
  Scalar hi = Scalar(10);
  int resolution = 1;     // weights are k / resolution
  int box = 10;           // euclidean grid is [0, box]^2
};

inline std::string to_string(RandomModel::Kind k) {
  switch (k) {
    case RandomModel::Kind::Uniform: return "uniform";
    case RandomModel::Kind::EuclideanPlane: return "euclidean";
    case RandomModel::Kind::TreeMetric: return "tree_metric";
  }
  return "?";
}

inline RandomModel::Kind parse_model(std::string_view s) {
  if (s == "uniform") return RandomModel::Kind::Uniform;
  if (s == "euclidean" || s == "euclidean_plane") return RandomModel::Kind::EuclideanPlane;
  if (s == "tree_metric" || s == "tree") return RandomModel::Kind::TreeMetric;
  throw InputError("unknown random model '" + std::string(s) + "'");
}

namespace detail {

inline Scalar draw_weight(Rng& rng, const RandomModel& m) {
  if (m.resolution < 1) throw InputError("resolution must be >= 1");
  const Scalar res(m.resolution);
  const Scalar x = m.lo * res;
  BigInt lo_k = x.numerator() / x.denominator();
  if (lo_k * x.denominator() < x.numerator()) ++lo_k;  // ceil(lo * res)
  const Scalar y = m.hi * res;
  const BigInt hi_k = y.numerator() / y.denominator();
  if (lo_k < 0 || hi_k < lo_k) throw InputError("empty or negative weight range");
  const auto k = rng.between(static_cast<std::int64_t>(lo_k), static_cast<std::int64_t>(hi_k));
  return Scalar(k, m.resolution);
}

}  // namespace detail

/// Deterministic in (n, model, alpha, seed).
inline Instance random_instance(int n, const RandomModel& model, const Scalar& alpha, std::uint64_t seed) {
  if (n < 2) throw InputError("random instance needs n >= 2");
  detail::Rng rng(seed);
  switch (model.kind) {
    case RandomModel::Kind::Uniform: {
      std::vector<std::vector<Scalar>> w(static_cast<std::size_t>(n), std::vector<Scalar>(static_cast<std::size_t>(n), Scalar(0)));
      for (Node u = 0; u < n; ++u)
        for (Node v = u + 1; v < n; ++v) {
          const Scalar x = detail::draw_weight(rng, model);
          w[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] = x;
          w[static_cast<std::size_t>(v)][static_cast<std::size_t>(u)] = x;
        }
      return make_instance(validate_host(w), alpha);
    }
    case RandomModel::Kind::EuclideanPlane: {
      std::vector<std::pair<std::int64_t, std::int64_t>> pts;
      for (Node u = 0; u < n; ++u) pts.emplace_back(rng.between(0, model.box), rng.between(0, model.box));
      std::vector<std::vector<Scalar>> w(static_cast<std::size_t>(n), std::vector<Scalar>(static_cast<std::size_t>(n), Scalar(0)));
      for (Node u = 0; u < n; ++u)
        for (Node v = 0; v < n; ++v) {
          const auto& a = pts[static_cast<std::size_t>(u)];
          const auto& b = pts[static_cast<std::size_t>(v)];
          w[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] = Scalar(std::llabs(a.first - b.first) + std::llabs(a.second - b.second));
        }
      Instance inst = make_instance(validate_host(w), alpha);
      inst.host.set_metric_status(MetricStatus::VerifiedMetric);
      return inst;
    }
    case RandomModel::Kind::TreeMetric: {
      WeightedGraph seed_graph{n, {}};
      for (Node v = 1; v < n; ++v) {
        const Node parent = static_cast<Node>(rng.below(static_cast<std::uint64_t>(v)));
        seed_graph.add(parent, v, detail::draw_weight(rng, model));
      }
      return make_instance(metric_closure(seed_graph), alpha);
    }
  }
  throw InputError("unknown random model");
}

namespace detail {

/// Random spanning tree plus each remaining pair with probability num/den.
inline Network random_connected_network(int n, Rng& rng, std::uint64_t num = 1, std::uint64_t den = 3) {
  Network g(n);
  std::vector<Node> order(static_cast<std::size_t>(n));
  for (Node i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
  rng.shuffle(order);
  for (std::size_t i = 1; i < order.size(); ++i) g.add(Edge(order[i], order[rng.below(i)]));
  for (const Edge& e : all_pairs(n))
    if (!g.has(e) && rng.below(den) < num) g.add(e);
  return g;
}

inline Network random_network(int n, Rng& rng) {
  Network g(n);
  const std::uint64_t den = 2 + rng.below(4);
  for (const Edge& e : all_pairs(n))
    if (rng.below(den) == 0 || rng.coin()) g.add(e);
  return g;
}

}  // namespace detail

// ----------------------------------------------------------- stable sets

struct EnumerateOptions {
  CheckOptions check;
  bool exploit_containment = true;  // filter by PS, then BNE, before costlier checks
  int ps_limit = 7;
  int bne_limit = 7;
  int bse_limit = 6;
};

struct StableSet {
  Concept kind = Concept::PS;
  std::vector<Network> networks;  // in mask order
  std::vector<Scalar> costs;
  std::optional<std::size_t> worst;  // index of the costliest (first on ties)
  std::uint64_t checked = 0;         // connected networks examined
  std::uint64_t inconclusive = 0;
  bool complete() const { return inconclusive == 0; }
};

inline int node_limit(const EnumerateOptions& o, Concept kind) {
  switch (kind) {
    case Concept::PS: return o.ps_limit;
    case Concept::BNE: return o.bne_limit;
    case Concept::BSE: return o.bse_limit;
  }
  return 0;
}

/// Every connected subgraph of the host that is stable under `kind`.
inline StableSet enumerate_stable(const Instance& inst, Concept kind, const EnumerateOptions& opts = {}) {
  const int n = inst.n();
  const int limit = node_limit(opts, kind);
  if (n > limit || n > 11) throw TooLargeError(n, std::min(limit, 11));
  const EdgeList pairs = all_pairs(n);
  std::vector<std::uint32_t> pair_bits;
  for (const Edge& e : pairs) pair_bits.push_back((1U << e.u) | (1U << e.v));
  StableSet out;
  out.kind = kind;
  std::vector<Concept> chain;
  if (opts.exploit_containment) {
    for (Concept c : {Concept::PS, Concept::BNE, Concept::BSE}) {
      chain.push_back(c);
      if (c == kind) break;
    }
  } else {
    chain.push_back(kind);
  }
  CheckOptions co = opts.check;
  co.witness = WitnessMode::FirstFound;  // only the verdict matters here
  const std::uint64_t total = std::uint64_t{1} << pairs.size();
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    if (static_cast<int>(std::popcount(mask)) < n - 1 || !detail::mask_connected(n, pair_bits, mask)) continue;
    ++out.checked;
    const Network g = network_from_mask(n, mask);
    bool stable = true;
    for (Concept c : chain) {
      const Verdict v = check_stability(inst, g, c, co);
      if (v.inconclusive()) ++out.inconclusive;
      if (!v.stable()) {
        stable = false;
        break;
      }
    }
    if (!stable) continue;
    Scalar c = social_cost(inst, g);
    if (!out.worst || c > out.costs[*out.worst]) out.worst = out.networks.size();
    out.networks.push_back(g);
    out.costs.push_back(std::move(c));
  }
  return out;
}

// ----------------------------------------------------------------- PoA

struct PoaOptions {
  EnumerateOptions enumerate;
  int opt_node_limit = 7;
  int samples = 8;  // dynamics starts when enumeration is out of reach
  int max_steps = 200;
  std::uint64_t seed = 0;
  Policy policy = Policy::FirstFound;
};

/// Worst stable network found against the optimum. Without complete
/// enumeration the ratio describes the worst network FOUND, not the PoA.
struct PoaPoint {
  Concept kind = Concept::PS;
  std::optional<Scalar> worst;
  std::optional<Network> worst_net;
  OptResult opt;
  std::optional<Scalar> ratio;
  bool complete = false;  // every connected subgraph was decided
  std::size_t stable_count = 0;

  bool no_stable_found() const { return !worst.has_value(); }
};

inline PoaPoint poa_point(const Instance& inst, Concept kind, const PoaOptions& opts = {}) {
  PoaPoint p;
  p.kind = kind;
  const int n = inst.n();
  if (n <= node_limit(opts.enumerate, kind)) {
    const StableSet s = enumerate_stable(inst, kind, opts.enumerate);
    p.complete = s.complete();
    p.stable_count = s.networks.size();
    if (s.worst) {
      p.worst = s.costs[*s.worst];
      p.worst_net = s.networks[*s.worst];
    }
  } else {
    detail::Rng rng(opts.seed);
    std::vector<Network> starts{Network::complete(n), detail::minimum_spanning_tree(inst)};
    for (int i = 0; i < opts.samples; ++i) starts.push_back(detail::random_connected_network(n, rng));
    DynamicsOptions dopts;
    dopts.check = opts.enumerate.check;
    std::vector<Network> found;
    for (const Network& g0 : starts) {
      const Trace t = run_dynamics(inst, g0, kind, opts.policy, opts.max_steps, dopts);
      if (t.outcome != Trace::Outcome::Equilibrium || !t.final_net.is_connected()) continue;
      if (std::find(found.begin(), found.end(), t.final_net) != found.end()) continue;
      found.push_back(t.final_net);
      Scalar c = social_cost(inst, t.final_net);
      if (!p.worst || c > *p.worst) {
        p.worst = std::move(c);
        p.worst_net = t.final_net;
      }
    }
    p.stable_count = found.size();
    p.complete = false;
  }
  p.opt = n <= opts.opt_node_limit ? brute_force_opt(inst, opts.opt_node_limit) : heuristic_opt(inst, {opts.seed});
  if (p.worst) p.ratio = *p.worst / p.opt.cost;
  return p;
}

// --------------------------------------------------------------- sweeps

struct SweepConfig {
  std::string family = "uniform";  // random model name or fixture family name
  RandomModel model;
  Concept variant = Concept::PS;   // metric_star parameter set
  std::vector<int> n_values{4};
  std::vector<Scalar> alphas{Scalar(1)};
  Concept kind = Concept::PS;
  int instances = 1;               // per (n, alpha) cell for random families
  std::uint64_t seed = 1;
  PoaOptions poa;
  bool abort_on_violation = true;
};

/// Sweep config file. Only "family", "n" and "alpha" are required.
inline SweepConfig sweep_config_from_json(const io::Json& j) {
  if (!j.is_object()) throw InputError("sweep config must be a JSON object");
  SweepConfig c;
  try {
    c.family = j.at("family").get<std::string>();
    if (c.family != "general_bse" && c.family != "metric_star" && c.family != "metric_path") parse_model(c.family);
    c.n_values = j.at("n").get<std::vector<int>>();
    c.alphas.clear();
    for (const auto& a : j.at("alpha")) c.alphas.push_back(io::scalar_from_json(a));
    c.kind = parse_concept(j.value("concept", std::string("ps")));
    c.variant = parse_concept(j.value("variant", std::string("ps")));
    c.instances = j.value("instances", 1);
    c.seed = j.value("seed", std::uint64_t{1});
    c.abort_on_violation = j.value("abort_on_violation", true);
    if (j.contains("model")) {
      const io::Json& m = j["model"];
      if (m.contains("lo")) c.model.lo = io::scalar_from_json(m["lo"]);
      if (m.contains("hi")) c.model.hi = io::scalar_from_json(m["hi"]);
      c.model.resolution = m.value("resolution", c.model.resolution);
      c.model.box = m.value("box", c.model.box);
    }
    c.poa.samples = j.value("samples", c.poa.samples);
    c.poa.max_steps = j.value("max_steps", c.poa.max_steps);
    c.poa.opt_node_limit = j.value("opt_node_limit", c.poa.opt_node_limit);
    c.poa.policy = parse_policy(j.value("policy", std::string("first")));
    if (j.contains("budget")) {
      const io::Json& b = j["budget"];
      c.poa.enumerate.check.budget.max_coalition = b.value("max_coalition", 0);
      c.poa.enumerate.check.budget.max_changes = b.value("max_changes", 0);
      c.poa.enumerate.check.budget.max_evaluations = b.value("max_evaluations", std::uint64_t{0});
    }
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("sweep config: ") + e.what());
  }
  return c;
}

inline io::Json to_json(const PoaPoint& p) {
  io::Json j;
  j["concept"] = to_string(p.kind);
  j["stable_count"] = p.stable_count;
  j["complete"] = p.complete;
  if (p.worst) {
    j["worst"] = io::to_json(*p.worst);
    j["worst_network"] = io::to_json(*p.worst_net);
  } else {
    j["worst"] = nullptr;
    j["note"] = "no_stable_found";
  }
  j["opt"] = io::to_json(p.opt);
  // only a complete enumeration against a proven optimum is a PoA
  j[p.complete && p.opt.proven ? "poa" : "worst_found_ratio"] = p.ratio ? io::Json(io::to_json(*p.ratio)) : io::Json(nullptr);
  return j;
}

struct BoundCheck {
  std::string name;
  bool holds = true;
  bool advisory = false;  // asymptotic constant, recorded but never fatal
  std::string detail;
};

struct SweepRow {
  std::string family;
  int n = 0;
  Scalar alpha;
  std::uint64_t seed = 0;
  bool metric = false;
  Instance instance;
  PoaPoint point;
  std::vector<BoundCheck> bounds;
};

struct SweepReport {
  std::vector<SweepRow> rows;
  int violations = 0;  // proven bounds only

  std::string text() const {
    std::ostringstream os;
    os << "family n alpha seed concept stable complete worst opt proven ratio bounds\n";
    for (const SweepRow& r : rows) {
      os << r.family << ' ' << r.n << ' ' << r.alpha << ' ' << r.seed << ' ' << to_string(r.point.kind) << ' '
         << r.point.stable_count << ' ' << (r.point.complete ? "yes" : "no") << ' '
         << (r.point.worst ? r.point.worst->to_string() : "-") << ' ' << r.point.opt.cost << ' '
         << (r.point.opt.proven ? "yes" : "no") << ' ' << (r.point.ratio ? r.point.ratio->to_string() : "no_stable_found");
      std::string b;
      for (const auto& c : r.bounds) {
        if (!b.empty()) b += ',';
        b += c.name + (c.holds ? ":ok" : (c.advisory ? ":above" : ":VIOLATED"));
      }
      os << ' ' << (b.empty() ? "-" : b) << '\n';
    }
    os << "violations " << violations << '\n';
    return os.str();
  }

  std::string json_lines() const {
    std::string out;
    for (const SweepRow& r : rows) {
      io::Json j;
      j["family"] = r.family;
      j["n"] = r.n;
      j["alpha"] = io::to_json(r.alpha);
      j["seed"] = r.seed;
      j["concept"] = to_string(r.point.kind);
      j["metric"] = r.metric;
      j["stable_count"] = r.point.stable_count;
      j["complete"] = r.point.complete;
      j["worst"] = r.point.worst ? io::Json(io::to_json(*r.point.worst)) : io::Json(nullptr);
      j["opt"] = io::to_json(r.point.opt.cost);
      j["opt_proven"] = r.point.opt.proven;
      j["ratio"] = r.point.ratio ? io::Json(io::to_json(*r.point.ratio)) : io::Json(nullptr);
      io::Json b = io::Json::object();
      for (const auto& c : r.bounds) b[c.name] = c.holds;
      j["bounds"] = b;
      out += j.dump() + "\n";
    }
    return out;
  }
};

/// A proven upper bound failed; `bundle` holds everything needed to reproduce it.
class BoundViolation : public std::runtime_error {
 public:
  BoundViolation(const std::string& what, std::string bundle) : std::runtime_error(what), bundle_(std::move(bundle)) {}
  const std::string& bundle() const { return bundle_; }

 private:
  std::string bundle_;
};

/// Universal upper bounds for one PoA point. The PS bounds also cover BNE and
/// BSE, whose stable sets are contained in the PS set.
inline std::vector<BoundCheck> evaluate_bounds(const Instance& inst, const PoaPoint& p, bool metric) {
  std::vector<BoundCheck> out;
  if (!p.ratio) return out;
  const Scalar& r = *p.ratio;
  const Scalar& a = inst.alpha;
  const int n = inst.n();
  const Scalar general = Scalar(2) * (a + Scalar(1));
  out.push_back({"ratio<=2(alpha+1)", r <= general, false, r.to_string() + " vs " + general.to_string()});
  if (metric) {
    out.push_back({"ratio<=alpha+1", r <= a + Scalar(1), false, r.to_string() + " vs " + (a + Scalar(1)).to_string()});
    out.push_back({"ratio<=2(n-1)", r <= Scalar(2 * (n - 1)), false, r.to_string() + " vs " + std::to_string(2 * (n - 1))});
    if (p.kind == Concept::BSE && p.worst_net) {
      const Scalar dw = cost_report(inst, *p.worst_net).total_distance_cost();
      const Scalar dopt = cost_report(inst, p.opt.network).total_distance_cost();
      if (dopt.is_finite() && !dopt.is_zero()) {
        const Scalar q = dw / dopt;
        out.push_back({"dist_ratio<=380sqrt(alpha)", q * q <= Scalar(380 * 380) * a, true, q.to_string()});
      }
    }
  }
  return out;
}

inline std::optional<Fixture> sweep_fixture(const SweepConfig& cfg, int n, const Scalar& alpha) {
  const std::string& f = cfg.family;
  if (f == "general_bse") return gen_general_bse(n, alpha);
  if (f == "metric_star") return gen_metric_star(n, alpha, cfg.variant);
  if (f == "metric_path") return gen_metric_path(n, alpha);
  return std::nullopt;
}

inline SweepReport poa_sweep(const SweepConfig& cfg) {
  if (cfg.n_values.empty() || cfg.alphas.empty()) throw InputError("sweep needs at least one n and one alpha");
  if (cfg.instances < 1) throw InputError("sweep needs instances >= 1");
  for (const Scalar& a : cfg.alphas)
    if (!a.is_finite() || a.sign() <= 0) throw InputError("sweep alphas must be finite and > 0");
  const bool fixture_family = cfg.family == "general_bse" || cfg.family == "metric_star" || cfg.family == "metric_path";
  RandomModel model = cfg.model;
  if (!fixture_family) model.kind = parse_model(cfg.family);
  detail::Rng master(cfg.seed);
  SweepReport rep;
  for (int n : cfg.n_values)
    for (const Scalar& alpha : cfg.alphas)
      for (int i = 0; i < (fixture_family ? 1 : cfg.instances); ++i) {
        SweepRow row;
        row.family = cfg.family;
        row.n = n;
        row.alpha = alpha;
        row.seed = fixture_family ? 0 : master.next();
        row.instance = fixture_family ? sweep_fixture(cfg, n, alpha)->instance : random_instance(n, model, alpha, row.seed);
        row.metric = check_metric(row.instance.host).is_metric;
        PoaOptions po = cfg.poa;
        po.seed = row.seed;
        row.point = poa_point(row.instance, cfg.kind, po);
        row.bounds = evaluate_bounds(row.instance, row.point, row.metric);
        for (const auto& b : row.bounds) {
          if (b.holds || b.advisory) continue;
          ++rep.violations;
          if (cfg.abort_on_violation) {
            io::Json bundle;
            bundle["bound"] = b.name;
            bundle["detail"] = b.detail;
            bundle["concept"] = to_string(cfg.kind);
            bundle["instance"] = io::to_json(row.instance);
            if (row.point.worst_net) bundle["worst"] = io::to_json(*row.point.worst_net);
            bundle["opt"] = io::to_json(row.point.opt);
            throw BoundViolation("bound " + b.name + " violated: " + b.detail, bundle.dump(2));
          }
        }
        rep.rows.push_back(std::move(row));
      }
  return rep;
}

// ---------------------------------------------------------- properties

struct PropertyResult {
  std::string name;
  int trials = 0;
  int failures = 0;
  std::string counterexample;  // first failure, shrunk
};

struct PropertyReport {
  std::vector<PropertyResult> results;

  bool passed() const {
    for (const auto& r : results)
      if (r.failures) return false;
    return true;
  }
  std::string text() const {
    std::ostringstream os;
    for (const auto& r : results) {
      os << r.name << ' ' << r.trials << " trials " << r.failures << " failures\n";
      if (!r.counterexample.empty()) os << "  counterexample: " << r.counterexample << '\n';
    }
    os << (passed() ? "all properties hold" : "PROPERTY FAILURES") << '\n';
    return os.str();
  }
};

namespace detail {

inline const std::vector<Scalar>& property_alphas() {
  static const std::vector<Scalar> a{Scalar(1, 2), Scalar(1), Scalar(2), Scalar(5), Scalar(3, 7), Scalar(10)};
  return a;
}

inline Instance property_instance(Rng& rng, int min_n, int max_n, bool metric_only = false) {
  const int n = static_cast<int>(rng.between(min_n, max_n));
  const Scalar alpha = property_alphas()[rng.below(property_alphas().size())];
  RandomModel m;
  m.resolution = static_cast<int>(rng.between(1, 3));
  m.lo = rng.coin() ? Scalar(0) : Scalar(1);
  m.hi = Scalar(rng.between(1, 9));
  const std::uint64_t pick = metric_only ? 1 + rng.below(2) : rng.below(3);
  m.kind = pick == 0 ? RandomModel::Kind::Uniform : pick == 1 ? RandomModel::Kind::TreeMetric : RandomModel::Kind::EuclideanPlane;
  m.box = static_cast<int>(rng.between(1, 8));
  return random_instance(n, m, alpha, rng.next());
}

// Removes edges one at a time while `fails` keeps failing.
inline Network shrink_network(Network g, const std::function<bool(const Network&)>& fails) {
  for (bool progress = true; progress;) {
    progress = false;
    for (const Edge& e : EdgeList(g.edges())) {
      Network h = g;
      h.remove(e);
      if (fails(h)) {
        g = std::move(h);
        progress = true;
        break;
      }
    }
  }
  return g;
}

inline std::string describe(const Instance& inst, const Network& g, const std::string& extra = {}) {
  io::Json j;
  j["instance"] = io::to_json(inst);
  j["network"] = io::to_json(g);
  if (!extra.empty()) j["note"] = extra;
  return j.dump();
}

struct PropertyRunner {
  PropertyResult r;
  template <class Trial>
  PropertyResult run(std::string name, int trials, std::uint64_t seed, Trial&& trial) {
    r = PropertyResult{};
    r.name = std::move(name);
    r.trials = trials;
    Rng rng(seed);
    for (int t = 0; t < trials; ++t) {
      std::string cex = trial(rng);
      if (cex.empty()) continue;
      if (r.failures++ == 0) r.counterexample = std::move(cex);
    }
    return r;
  }
};

// Trial helper: checks `fails` on a network, shrinking on failure.
inline std::string check_network(const Instance& inst, const Network& g, const std::function<bool(const Network&)>& fails,
                                 const std::string& note = {}) {
  if (!fails(g)) return {};
  return describe(inst, shrink_network(g, fails), note);
}

}  // namespace detail

/// Removing any set of u's edges improves u only if some single removal does.
inline PropertyResult check_lemma_single_removal(std::uint64_t seed, int trials, int max_n = 6) {
  return detail::PropertyRunner{}.run("lemma_single_removal", trials, seed, [&](detail::Rng& rng) -> std::string {
    const Instance inst = detail::property_instance(rng, 2, max_n);
    const Network g = detail::random_network(inst.n(), rng);
    const Node u = static_cast<Node>(rng.below(static_cast<std::uint64_t>(inst.n())));
    const std::vector<Node> nb = g.neighbors(u);
    if (nb.empty()) return {};
    std::uint64_t mask = 0;
    while (mask == 0) mask = rng.below(std::uint64_t{1} << nb.size());
    auto fails = [&](const Network& h) {
      Network after = h;
      bool any = false;
      for (std::size_t i = 0; i < nb.size(); ++i)
        if (((mask >> i) & 1U) && after.has(Edge(u, nb[i]))) {
          after.remove(Edge(u, nb[i]));
          any = true;
        }
      if (!any) return false;
      const Scalar before = cost_report(inst, h).total[static_cast<std::size_t>(u)];
      const Scalar d = cost_delta(before, cost_report(inst, after).total[static_cast<std::size_t>(u)]);
      if (d.sign() >= 0) return false;
      const auto best = best_single_removal(inst, h, u);
      return !best || best->delta.sign() >= 0;
    };
    return detail::check_network(inst, g, fails, "agent " + std::to_string(u) + " removal mask " + std::to_string(mask));
  });
}

/// Shortest-path tree T from z: sum d_G <= sum d_T <= 2(n-1) d_G(z, V).
inline PropertyResult check_bfs_tree(std::uint64_t seed, int trials, int max_n = 8) {
  return detail::PropertyRunner{}.run("bfs_tree_bound", trials, seed, [&](detail::Rng& rng) -> std::string {
    const Instance inst = detail::property_instance(rng, 2, max_n);
    const int n = inst.n();
    const Network g = detail::random_connected_network(n, rng, rng.below(3), 3);
    auto fails = [&](const Network& h) {
      if (!h.is_connected()) return false;
      const DistanceMatrix dg = shortest_distances(h, inst.host);
      for (Node z = 0; z < n; ++z) {
        const Network t = shortest_path_tree(h, inst.host, z);
        const DistanceMatrix dt = shortest_distances(t, inst.host);
        if (t.size() != static_cast<std::size_t>(n - 1)) return true;
        for (Node u = 0; u < n; ++u)
          if (dt.at(z, u) != dg.at(z, u)) return true;
        if (dt.total() < dg.total() || dt.total() > Scalar(2 * (n - 1)) * dg.row_sum(z)) return true;
      }
      return false;
    };
    return detail::check_network(inst, g, fails);
  });
}

/// Runs every invariant on seeded random inputs.
inline PropertyReport property_suite(std::uint64_t seed, int trials) {
  PropertyReport rep;
  detail::Rng seeds(seed);
  auto next = [&] { return seeds.next(); };
  const int small = std::max(1, trials / 10);

  rep.results.push_back(detail::PropertyRunner{}.run("cost_identity", trials, next(), [](detail::Rng& rng) -> std::string {
    const Instance inst = detail::property_instance(rng, 2, 7);
    const Network g = detail::random_network(inst.n(), rng);
    auto fails = [&](const Network& h) {
      const CostBreakdown c = cost_report(inst, h);
      Scalar sum(0);
      for (const auto& x : c.total) sum += x;
      const Scalar formula = Scalar(2) * inst.alpha * h.total_weight(inst.host) + c.total_distance_cost();
      return c.social != sum || c.social != formula || (c.social.is_infinite() == h.is_connected());
    };
    return detail::check_network(inst, g, fails);
  }));

  rep.results.push_back(detail::PropertyRunner{}.run("star_formula", trials, next(), [](detail::Rng& rng) -> std::string {
    const Instance inst = detail::property_instance(rng, 2, 7);
    const Network s = detail::star_at(inst.n(), static_cast<Node>(rng.below(static_cast<std::uint64_t>(inst.n()))));
    if (social_cost(inst, s) == star_social_cost(inst.n(), inst.alpha, s.total_weight(inst.host))) return {};
    return detail::describe(inst, s);
  }));

  rep.results.push_back(detail::PropertyRunner{}.run("closure_is_metric", trials, next(), [](detail::Rng& rng) -> std::string {
    const int n = static_cast<int>(rng.between(2, 7));
    WeightedGraph seed_graph{n, {}};
    detail::Rng local(rng.next());
    const Network g = detail::random_connected_network(n, local);
    RandomModel m;
    m.lo = Scalar(0);
    m.resolution = 2;
    for (const Edge& e : g.edges()) seed_graph.add(e.u, e.v, detail::draw_weight(local, m));
    const HostGraph h = metric_closure(seed_graph);
    if (check_metric(h).is_metric) return {};
    return "closure of " + to_string(g) + " is not metric";
  }));

  rep.results.push_back(detail::PropertyRunner{}.run("distances_pseudometric", trials, next(), [](detail::Rng& rng) -> std::string {
    const Instance inst = detail::property_instance(rng, 2, 7);
    const Network g = detail::random_network(inst.n(), rng);
    auto fails = [&](const Network& h) {
      const DistanceMatrix d = shortest_distances(h, inst.host);
      const int n = inst.n();
      for (Node u = 0; u < n; ++u) {
        if (!d.at(u, u).is_zero()) return true;
        for (Node v = 0; v < n; ++v) {
          if (d.at(u, v) != d.at(v, u)) return true;
          for (Node z = 0; z < n; ++z)
            if (d.at(u, z).is_finite() && d.at(z, v).is_finite() && d.at(u, v) > d.at(u, z) + d.at(z, v)) return true;
        }
      }
      return false;
    };
    return detail::check_network(inst, g, fails);
  }));

  rep.results.push_back(check_bfs_tree(next(), trials));
  rep.results.push_back(check_lemma_single_removal(next(), trials));

  rep.results.push_back(detail::PropertyRunner{}.run("witness_soundness", small, next(), [](detail::Rng& rng) -> std::string {
    const Instance inst = detail::property_instance(rng, 2, 5);
    const Network g = detail::random_network(inst.n(), rng);
    for (Concept c : {Concept::PS, Concept::BNE, Concept::BSE}) {
      const Verdict v = check_stability(inst, g, c);
      if (v.unstable() && (!has_concept_shape(*v.witness) || !replay_move(inst, g, *v.witness).improving)) {
        return detail::describe(inst, g, to_string(*v.witness));
      }
    }
    return {};
  }));

  rep.results.push_back(detail::PropertyRunner{}.run("containment", small, next(), [](detail::Rng& rng) -> std::string {
    const Instance inst = detail::property_instance(rng, 2, 5);
    const Network g = detail::random_connected_network(inst.n(), rng);
    CheckOptions fast;
    fast.witness = WitnessMode::FirstFound;
    const bool ps = is_pairwise_stable(inst, g, fast).stable();
    const bool bne = is_bne(inst, g, fast).stable();
    const bool bse = is_bse(inst, g, fast).stable();
    if ((bse && !bne) || (bne && !ps)) return detail::describe(inst, g);
    return {};
  }));

  // PS networks reached by dynamics: spanner and edge-cost bounds.
  rep.results.push_back(detail::PropertyRunner{}.run("ps_spanner_and_edge_cost", small, next(), [](detail::Rng& rng) -> std::string {
    const Instance inst = detail::property_instance(rng, 2, 6);
    const Network g0 = detail::random_connected_network(inst.n(), rng);
    const Trace t = run_dynamics(inst, g0, Concept::PS, Policy::FirstFound, 100);
    if (t.outcome != Trace::Outcome::Equilibrium || !t.final_net.is_connected()) return {};
    const Network& g = t.final_net;
    const int n = inst.n();
    const Scalar stretch = spanner_stretch(g, inst.host);
    const CostBreakdown c = cost_report(inst, g);
    const Scalar lhs = inst.alpha * g.total_weight(inst.host);
    const Scalar rhs = (Scalar(2) * inst.alpha / Scalar(n - 1) + Scalar(1)) * c.total_distance_cost();
    if (stretch <= inst.alpha + Scalar(1) && lhs <= rhs) return {};
    return detail::describe(inst, g, "stretch " + stretch.to_string() + " edge " + lhs.to_string() + " bound " + rhs.to_string());
  }));

  rep.results.push_back(detail::PropertyRunner{}.run("opt_spanner", small, next(), [](detail::Rng& rng) -> std::string {
    const Instance inst = detail::property_instance(rng, 2, 5);
    const OptResult opt = brute_force_opt(inst);
    const SpannerCheck s = opt_spanner_check(inst, opt);
    return s.within_bound ? std::string{} : detail::describe(inst, opt.network, "stretch " + s.stretch.to_string());
  }));

  rep.results.push_back(detail::PropertyRunner{}.run("metric_tree_edge_ratio", small, next(), [](detail::Rng& rng) -> std::string {
    const Instance inst = detail::property_instance(rng, 2, 5, true);
    const OptResult opt = brute_force_opt(inst);
    const Network t = detail::random_connected_network(inst.n(), rng, 0, 1);
    if (t.total_weight(inst.host) <= Scalar(inst.n()) * opt.network.total_weight(inst.host)) return {};
    return detail::describe(inst, t, "opt " + to_string(opt.network));
  }));

  rep.results.push_back(detail::PropertyRunner{}.run("metric_distance_ratio", small, next(), [](detail::Rng& rng) -> std::string {
    const Instance inst = detail::property_instance(rng, 2, 5, true);
    const OptResult opt = brute_force_opt(inst);
    const Scalar dopt = cost_report(inst, opt.network).total_distance_cost();
    const Network g = detail::random_connected_network(inst.n(), rng, rng.below(3), 3);
    auto fails = [&](const Network& h) {
      if (!h.is_connected()) return false;
      return cost_report(inst, h).total_distance_cost() > Scalar(2 * (inst.n() - 1)) * dopt;
    };
    return detail::check_network(inst, g, fails);
  }));

  rep.results.push_back(detail::PropertyRunner{}.run("guided_partition", small, next(), [](detail::Rng& rng) -> std::string {
    const Instance inst = detail::property_instance(rng, 2, 10, true);
    const Network g = detail::random_connected_network(inst.n(), rng);
    const GuidedPartition p = guided_partition(inst, g);
    const bool ok = 2 * p.N.size() >= static_cast<std::size_t>(inst.n()) &&
                    Scalar(4) * Scalar(static_cast<std::int64_t>(p.R_far.size() * p.R_far.size())) <= inst.alpha;
    return ok ? std::string{} : detail::describe(inst, g, "|N| " + std::to_string(p.N.size()) + " |R| " + std::to_string(p.R_far.size()));
  }));

  return rep;
}

}  // namespace bgncg
