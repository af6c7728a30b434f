#pragma once

// JSON file formats. Rationals are "p/q" strings; plain integers are
// accepted wherever a rational is expected.

#include "bgncg/constructions.hpp"
#include "bgncg/dynamics.hpp"
#include "bgncg/metric.hpp"
#include "bgncg/optimum.hpp"
#include "bgncg/stability.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <sstream>
#include <string>

namespace bgncg::io {

using Json = nlohmann::ordered_json;

inline Json to_json(const Scalar& s) { return s.to_string(); }

inline Scalar scalar_from_json(const Json& j) {
  if (j.is_number_integer()) return Scalar(j.get<std::int64_t>());
  if (j.is_string()) {
    try {
      return Scalar::parse(j.get<std::string>());
    } catch (const std::exception& e) {
      throw InputError(std::string("bad rational: ") + e.what());
    }
  }
  throw InputError("expected a rational (\"p/q\" string or integer), got " + j.dump());
}

inline Json edges_to_json(const EdgeList& edges) {
  Json a = Json::array();
  for (const Edge& e : edges) a.push_back(Json::array({e.u, e.v}));
  return a;
}

inline EdgeList edges_from_json(const Json& j, int n) {
  if (!j.is_array()) throw InputError("edge list must be an array");
  EdgeList out;
  for (const Json& e : j) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer()) {
      throw InputError("edge must be [u, v], got " + e.dump());
    }
    const int u = e[0].get<int>();
    const int v = e[1].get<int>();
    if (u < 0 || v < 0 || u >= n || v >= n) throw InputError("edge " + e.dump() + " out of range for n = " + std::to_string(n));
    if (u >= v) throw InputError("edge " + e.dump() + " must satisfy u < v");
    out.emplace_back(u, v);
  }
  return out;
}

// ---- instance ----

inline Json to_json(const Instance& inst) {
  Json w = Json::array();
  for (Node u = 0; u < inst.n(); ++u) {
    Json row = Json::array();
    for (Node v = 0; v < inst.n(); ++v) row.push_back(to_json(inst.host.weight(u, v)));
    w.push_back(row);
  }
  Json j;
  j["version"] = 1;
  j["n"] = inst.n();
  j["alpha"] = to_json(inst.alpha);
  j["weights"] = w;
  if (inst.host.metric() != MetricStatus::Unchecked) j["metric_hint"] = inst.host.metric() == MetricStatus::VerifiedMetric;
  return j;
}

inline Instance instance_from_json(const Json& j) {
  if (!j.is_object()) throw InputError("instance must be a JSON object");
  if (j.value("version", 0) != 1) throw InputError("unsupported instance version (expected 1)");
  if (!j.contains("weights") || !j["weights"].is_array()) throw InputError("instance needs a weights matrix");
  std::vector<std::vector<Scalar>> w;
  for (const Json& row : j["weights"]) {
    if (!row.is_array()) throw InputError("weights rows must be arrays");
    std::vector<Scalar> r;
    for (const Json& x : row) r.push_back(scalar_from_json(x));
    w.push_back(std::move(r));
  }
  if (j.contains("n") && j["n"].get<int>() != static_cast<int>(w.size())) throw InputError("n disagrees with the weights matrix");
  if (!j.contains("alpha")) throw InputError("instance needs alpha");
  Instance inst = make_instance(validate_host(w), scalar_from_json(j["alpha"]));
  if (j.contains("metric_hint") && j["metric_hint"].get<bool>()) {
    const MetricReport m = is_metric(inst.host);
    if (!m.is_metric) throw InputError("metric_hint is set but the weights violate the triangle inequality");
  }
  return inst;
}

// ---- network ----

inline Json to_json(const Network& g) {
  Json j;
  j["edges"] = edges_to_json(g.edges());
  return j;
}

inline Network network_from_json(const Json& j, int n) {
  if (!j.is_object() || !j.contains("edges")) throw InputError("network must be an object with an edges array");
  return Network(n, edges_from_json(j["edges"], n));
}

// ---- witness ----

inline Json to_json(const Move& m, const std::map<Node, Scalar>& deltas = {}) {
  Json j;
  j["concept"] = to_string(m.kind);
  j["coalition"] = m.coalition;
  j["remove"] = edges_to_json(m.remove);
  j["add"] = edges_to_json(m.add);
  Json d = Json::object();
  for (const auto& [x, s] : deltas) d[std::to_string(x)] = to_json(s);
  j["deltas"] = d;
  return j;
}

inline Move move_from_json(const Json& j, int n) {
  Move m;
  m.kind = parse_concept(j.at("concept").get<std::string>());
  for (const Json& x : j.at("coalition")) {
    const int v = x.get<int>();
    if (v < 0 || v >= n) throw InputError("coalition node out of range");
    m.coalition.push_back(v);
  }
  m.remove = edges_from_json(j.value("remove", Json::array()), n);
  m.add = edges_from_json(j.value("add", Json::array()), n);
  m.normalize();
  return m;
}

inline Json to_json(const Verdict& v) {
  Json j;
  j["status"] = to_string(v.status);
  if (v.witness) {
    j["witness"] = to_json(*v.witness, v.deltas);
    j["canonical"] = v.canonical;
  }
  if (!v.frontier.empty()) j["frontier"] = v.frontier;
  j["evaluated"] = v.evaluated;
  return j;
}

// ---- optimum ----

inline Json to_json(const OptResult& r) {
  Json j = to_json(r.network);
  j["cost"] = to_json(r.cost);
  j["proven"] = r.proven;
  return j;
}

// ---- fixtures ----

inline Json to_json(const Fixture& f) {
  Json j;
  j["family"] = to_string(f.family);
  j["instance"] = to_json(f.instance);
  j["stable"] = to_json(f.stable_net);
  j["reference"] = to_json(f.reference_net);
  j["concept"] = to_string(f.claimed);
  j["expected_ratio"] = to_json(f.expected_ratio);
  j["asymptotic_only"] = f.asymptotic_only;
  j["metric"] = f.metric;
  return j;
}

inline Fixture fixture_from_json(const Json& j) {
  Fixture f;
  f.family = parse_family(j.value("family", std::string("general_bse")));
  f.instance = instance_from_json(j.at("instance"));
  f.stable_net = network_from_json(j.at("stable"), f.instance.n());
  f.reference_net = network_from_json(j.at("reference"), f.instance.n());
  f.claimed = parse_concept(j.at("concept").get<std::string>());
  f.expected_ratio = scalar_from_json(j.at("expected_ratio"));
  f.asymptotic_only = j.value("asymptotic_only", false);
  f.metric = j.value("metric", false);
  return f;
}

inline Json to_json(const FixtureReport& r) {
  Json checks = Json::array();
  for (const auto& c : r.checks) checks.push_back(Json{{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  Json j;
  j["passed"] = r.passed();
  j["checks"] = checks;
  j["verdict"] = to_json(r.verdict);
  j["stable_cost"] = to_json(r.stable_cost);
  j["reference_cost"] = to_json(r.reference_cost);
  j["ratio"] = to_json(r.ratio);
  if (r.opt) j["opt"] = to_json(*r.opt);
  if (r.ratio_vs_opt) j["ratio_vs_opt"] = to_json(*r.ratio_vs_opt);
  return j;
}

// ---- traces ----

inline Json to_json(const Trace& t) {
  Json steps = Json::array();
  for (const auto& s : t.steps) {
    Json m = to_json(s.move);
    m.erase("deltas");
    steps.push_back(Json{{"move", m}, {"social", to_json(s.social)}});
  }
  Json j;
  j["initial"] = to_json(t.initial);
  j["initial_social"] = to_json(t.initial_social);
  j["steps"] = steps;
  j["outcome"] = to_string(t.outcome);
  if (t.outcome == Trace::Outcome::CycleDetected) {
    j["cycle_start"] = t.cycle_start;
    j["cycle_period"] = t.cycle_period;
  }
  if (!t.note.empty()) j["note"] = t.note;
  j["final"] = to_json(t.final_net);
  return j;
}

// ---- files ----

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
}

inline void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write " + path);
  out << j.dump(2) << "\n";
}

inline Instance load_instance(const std::string& path) { return instance_from_json(read_json_file(path)); }
inline Network load_network(const std::string& path, int n) { return network_from_json(read_json_file(path), n); }
inline Fixture load_fixture(const std::string& path) { return fixture_from_json(read_json_file(path)); }

}  // namespace bgncg::io
