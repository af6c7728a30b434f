// bgncg: command-line front end.
//
// Exit codes: 0 ok/stable, 1 unstable (witness printed), 2 inconclusive,
// 3 input error, 4 violation of a proven bound.

#include "bgncg/bgncg.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <string>

using namespace bgncg;

namespace {

enum Exit { kOk = 0, kUnstable = 1, kInconclusive = 2, kInputError = 3, kBoundViolation = 4 };

struct BudgetFlags {
  int max_coalition = 0;
  int max_changes = 0;
  std::uint64_t max_evaluations = 0;
  bool first_found = false;
  bool inexact = false;

  void attach(CLI::App* app) {
    app->add_option("--max-coalition", max_coalition, "largest coalition to try (0 = all)");
    app->add_option("--max-changes", max_changes, "largest |remove|+|add| to try (0 = all)");
    app->add_option("--max-evaluations", max_evaluations, "stop after this many candidate moves (0 = no cap)");
    app->add_flag("--first-found", first_found, "report the first witness instead of the canonical one");
    app->add_flag("--inexact", inexact, "double arithmetic with tolerance instead of exact rationals");
  }
  CheckOptions options() const {
    CheckOptions o;
    o.budget = {max_coalition, max_changes, max_evaluations};
    o.witness = first_found ? WitnessMode::FirstFound : WitnessMode::Canonical;
    if (inexact) o.arith.mode = Arithmetic::Inexact;
    return o;
  }
};

void emit(const io::Json& j, const std::string& out) {
  if (out.empty()) {
    std::cout << j.dump(2) << '\n';
  } else {
    io::write_json_file(out, j);
  }
}

int exit_for(const Verdict& v) {
  if (v.stable()) return kOk;
  return v.unstable() ? kUnstable : kInconclusive;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bilateral network creation game: stability, optimum, constructions, dynamics"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string out;
  app.add_option("-o,--out", out, "write JSON output to a file instead of stdout");

  // check
  std::string instance_path, network_path, concept_name = "ps";
  BudgetFlags check_flags;
  auto* check = app.add_subcommand("check", "decide stability of a network");
  check->add_option("instance", instance_path, "instance JSON")->required()->check(CLI::ExistingFile);
  check->add_option("network", network_path, "network JSON")->required()->check(CLI::ExistingFile);
  check->add_option("--concept", concept_name, "ps | bne | bse");
  check_flags.attach(check);

  // opt
  bool exact = false;
  int opt_limit = 7;
  std::uint64_t seed = 0;
  auto* opt = app.add_subcommand("opt", "social optimum (exhaustive when small)");
  opt->add_option("instance", instance_path, "instance JSON")->required()->check(CLI::ExistingFile);
  opt->add_flag("--exact", exact, "insist on the exhaustive optimum");
  opt->add_option("--node-limit", opt_limit, "largest n for exhaustive search");
  opt->add_option("--seed", seed, "heuristic seed");

  // gen
  std::string family_name, alpha_text = "1", variant_name = "ps";
  int n = 4;
  auto* gen = app.add_subcommand("gen", "lower-bound construction as a fixture bundle");
  gen->add_option("family", family_name, "general_bse | metric_star | metric_path")->required();
  gen->add_option("--n", n, "number of nodes")->required();
  gen->add_option("--alpha", alpha_text, "edge price, integer or p/q")->required();
  gen->add_option("--variant", variant_name, "metric_star parameter set: ps | bne | bse");

  // verify-fixture
  std::string bundle_path;
  auto* verify = app.add_subcommand("verify-fixture", "re-check a fixture bundle");
  verify->add_option("bundle", bundle_path, "fixture JSON")->required()->check(CLI::ExistingFile);
  verify->add_option("--opt-limit", opt_limit, "brute-force OPT up to this n (0 disables)");
  BudgetFlags verify_flags;
  verify_flags.attach(verify);

  // dynamics
  std::string from_path, policy_name = "first";
  int max_steps = 200;
  BudgetFlags dyn_flags;
  auto* dyn = app.add_subcommand("dynamics", "improving-move dynamics with cycle detection");
  dyn->add_option("instance", instance_path, "instance JSON")->required()->check(CLI::ExistingFile);
  dyn->add_option("--from", from_path, "start network (default: empty)")->check(CLI::ExistingFile);
  dyn->add_option("--concept", concept_name, "ps | bne | bse");
  dyn->add_option("--policy", policy_name, "first | best | guided");
  dyn->add_option("--max-steps", max_steps, "step budget");
  dyn_flags.attach(dyn);

  // poa
  int samples = 8;
  BudgetFlags poa_flags;
  auto* poa = app.add_subcommand("poa", "worst stable network against the optimum");
  poa->add_option("instance", instance_path, "instance JSON")->required()->check(CLI::ExistingFile);
  poa->add_option("--concept", concept_name, "ps | bne | bse");
  poa->add_option("--samples", samples, "dynamics starts when enumeration is out of reach");
  poa->add_option("--max-steps", max_steps, "step budget per dynamics run");
  poa->add_option("--seed", seed, "sampling seed");
  poa_flags.attach(poa);

  // sweep
  std::string config_path, format = "text", bundle_out;
  auto* sweep = app.add_subcommand("sweep", "PoA sweep with upper-bound checks");
  sweep->add_option("config", config_path, "sweep config JSON")->required()->check(CLI::ExistingFile);
  sweep->add_option("--format", format, "text | jsonl")->check(CLI::IsMember({"text", "jsonl"}));
  sweep->add_option("--bundle", bundle_out, "where to write the diagnostic bundle on a violation");

  // props
  int trials = 200;
  auto* props = app.add_subcommand("props", "seeded property suite");
  props->add_option("--seed", seed, "master seed");
  props->add_option("--trials", trials, "trials per property");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*check) {
      const Instance inst = io::load_instance(instance_path);
      const Network g = io::load_network(network_path, inst.n());
      const Verdict v = check_stability(inst, g, parse_concept(concept_name), check_flags.options());
      emit(io::to_json(v), out);
      return exit_for(v);
    }
    if (*opt) {
      const Instance inst = io::load_instance(instance_path);
      if (exact) {
        emit(io::to_json(brute_force_opt(inst, opt_limit)), out);
      } else {
        emit(io::to_json(inst.n() <= opt_limit ? brute_force_opt(inst, opt_limit) : heuristic_opt(inst, {seed})), out);
      }
      return kOk;
    }
    if (*gen) {
      const Scalar alpha = Scalar::parse(alpha_text);
      Fixture f;
      switch (parse_family(family_name)) {
        case Family::GeneralBse: f = gen_general_bse(n, alpha); break;
        case Family::MetricStar: f = gen_metric_star(n, alpha, parse_concept(variant_name)); break;
        case Family::MetricPath: f = gen_metric_path(n, alpha); break;
      }
      emit(io::to_json(f), out);
      return kOk;
    }
    if (*verify) {
      const Fixture f = io::load_fixture(bundle_path);
      VerifyOptions vo;
      vo.check = verify_flags.options();
      vo.opt_node_limit = opt_limit;
      const FixtureReport r = verify_fixture(f, vo);
      emit(io::to_json(r), out);
      if (r.passed()) return kOk;
      return r.verdict.inconclusive() ? kInconclusive : kUnstable;
    }
    if (*dyn) {
      const Instance inst = io::load_instance(instance_path);
      const Network g0 = from_path.empty() ? Network(inst.n()) : io::load_network(from_path, inst.n());
      DynamicsOptions o;
      o.check = dyn_flags.options();
      const Trace t = run_dynamics(inst, g0, parse_concept(concept_name), parse_policy(policy_name), max_steps, o);
      emit(io::to_json(t), out);
      return t.outcome == Trace::Outcome::Inconclusive ? kInconclusive : kOk;
    }
    if (*poa) {
      const Instance inst = io::load_instance(instance_path);
      PoaOptions o;
      o.enumerate.check = poa_flags.options();
      o.samples = samples;
      o.max_steps = max_steps;
      o.seed = seed;
      const PoaPoint p = poa_point(inst, parse_concept(concept_name), o);
      emit(to_json(p), out);
      return kOk;
    }
    if (*sweep) {
      const SweepConfig cfg = sweep_config_from_json(io::read_json_file(config_path));
      try {
        const SweepReport r = poa_sweep(cfg);
        const std::string body = format == "jsonl" ? r.json_lines() : r.text();
        if (out.empty()) {
          std::cout << body;
        } else {
          std::ofstream f(out);
          if (!f) throw InputError("cannot write " + out);
          f << body;
        }
        return r.violations ? kBoundViolation : kOk;
      } catch (const BoundViolation& e) {
        std::cerr << "bound violation: " << e.what() << '\n';
        if (bundle_out.empty()) {
          std::cerr << e.bundle() << '\n';
        } else {
          std::ofstream(bundle_out) << e.bundle() << '\n';
        }
        return kBoundViolation;
      }
    }
    if (*props) {
      const PropertyReport r = property_suite(seed, trials);
      std::cout << r.text();
      return r.passed() ? kOk : kBoundViolation;
    }
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kInputError;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kInputError;
  }
  return kOk;
}
