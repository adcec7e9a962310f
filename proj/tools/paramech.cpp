// paramech: derive, simulate and check para-complex mechanical models.
//
// Exit codes: 0 success, 1 failed check or drift above tolerance,
// 2 input error, 3 singular model, 4 divergence.

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "CLI11.hpp"
#include "paramech/errors.hpp"
#include "paramech/report.hpp"
#include "paramech/suites.hpp"

using namespace paramech;

namespace {

enum Exit { kOk = 0, kFailure = 1, kInput = 2, kSingular = 3, kDivergence = 4 };

struct InputError : Error {
  using Error::Error;
};

ModelDocument load_model(const std::string& path) {
  std::string text;
  if (path == "-") {
    text.assign(std::istreambuf_iterator<char>(std::cin), {});
  } else {
    std::ifstream in(path);
    if (!in) throw InputError("cannot read model file '" + path + "'");
    text.assign(std::istreambuf_iterator<char>(in), {});
  }
  return parse_model(text);
}

int cmd_derive(const std::string& path, const std::string& format_name) {
  auto format = report_format_from_name(format_name);
  if (!format) throw InputError("unknown format '" + format_name + "' (text, latex, json)");
  ModelDocument doc = load_model(path);
  std::cout << derivation_report(doc, derive(doc), *format);
  return kOk;
}

int cmd_channels(const std::string& path) {
  ModelDocument doc = load_model(path);
  std::cout << channels_report(derive(doc));
  return kOk;
}

struct SimulateOptions {
  std::string model;
  std::string out;
  std::optional<double> dt, t1;
  double tolerance = 1e-5;
  std::string layout = "channel";
  std::string integrator;
  std::optional<double> rtol;
};

int cmd_simulate(const SimulateOptions& o) {
  ModelDocument doc = load_model(o.model);
  if (!doc.time || doc.initial.empty()) throw InputError(o.model + ": simulate needs \"initial\" and \"time\" sections");
  TimeSpan span = *doc.time;
  if (o.dt) span.dt = *o.dt;
  if (o.t1) span.t1 = *o.t1;
  if (!(span.dt > 0)) throw InputError("--dt must be positive");
  if (span.t1 < span.t0) throw InputError("--t1 must not precede t0");
  if (!(o.tolerance >= 0)) throw InputError("--tolerance must be non-negative");

  IntegratorOptions opt;
  opt.method = method_from_name(o.integrator.empty() ? doc.integrator : o.integrator);
  opt.rtol = o.rtol.value_or(doc.rtol);
  if (o.layout != "channel" && o.layout != "direct") throw InputError("unknown layout '" + o.layout + "' (channel, direct)");

  CompiledSystem sys(derive(doc), o.layout == "direct" ? Layout::Direct : Layout::Channel);
  Trajectory tr = integrate(sys, sys.initial_state(doc.initial), span.t0, span.t1, span.dt, opt);
  ConservationReport rep = conservation_report(tr, o.tolerance);

  const std::string out_path = o.out.empty() ? doc.output : o.out;
  std::ostream* summary = &std::cout;
  if (out_path == "-") {
    write_csv(std::cout, tr);
    summary = &std::cerr;
  } else {
    std::ofstream file(out_path);
    if (!file) throw InputError("cannot write '" + out_path + "'");
    write_csv(file, tr);
  }
  *summary << simulation_summary(tr, rep) << (rep.passed ? "" : " -- drift above tolerance") << "\n";
  return rep.passed ? kOk : kFailure;
}

int cmd_check(const std::string& which, std::uint64_t seed) {
  std::vector<Suite> suites;
  if (which == "all") {
    suites = {Suite::Algebra, Suite::Calculus, Suite::Mech, Suite::Audit};
  } else if (auto s = suite_from_name(which)) {
    suites = {*s};
  } else {
    throw InputError("unknown suite '" + which + "' (algebra, calculus, mech, audit, all)");
  }
  bool ok = true;
  for (Suite s : suites) {
    SuiteReport r = run_suite(s, seed);
    std::cout << r.format();
    if (!r.informational() && !r.passed()) ok = false;
  }
  std::cout << (ok ? "all checks passed" : "some checks FAILED") << "\n";
  return ok ? kOk : kFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Para-complex mechanics: derivations, channel systems and trajectories"};
  app.require_subcommand(1);

  std::string model, format = "text";
  auto* derive_cmd = app.add_subcommand("derive", "Print the two-form, energy, dynamics, equations and channels");
  derive_cmd->add_option("model", model, "Model file (JSON, '-' for stdin)")->required();
  derive_cmd->add_option("--format", format, "text, latex or json")->capture_default_str();

  SimulateOptions sim;
  auto* simulate_cmd = app.add_subcommand("simulate", "Integrate the model and write a trajectory CSV");
  simulate_cmd->add_option("model", sim.model, "Model file (JSON, '-' for stdin)")->required();
  simulate_cmd->add_option("--out", sim.out, "CSV path, '-' for stdout (default: the model's output)");
  simulate_cmd->add_option("--dt", sim.dt, "Step size (overrides time.dt)");
  simulate_cmd->add_option("--t1", sim.t1, "End time (overrides time.t1)");
  simulate_cmd->add_option("--tolerance", sim.tolerance, "Maximum energy drift per channel")->capture_default_str();
  simulate_cmd->add_option("--layout", sim.layout, "channel or direct state layout")->capture_default_str();
  simulate_cmd->add_option("--integrator", sim.integrator, "rk4 or rk45 (overrides the model)");
  simulate_cmd->add_option("--rtol", sim.rtol, "rk45 relative tolerance (overrides the model)");

  std::string suite = "all";
  std::uint64_t seed = 2024;
  auto* check_cmd = app.add_subcommand("check", "Run the built-in identity suites and the audit table");
  check_cmd->add_option("--suite", suite, "algebra, calculus, mech, audit or all")->capture_default_str();
  check_cmd->add_option("--seed", seed, "Seed of the random cases")->capture_default_str();

  auto* channels_cmd = app.add_subcommand("channels", "Print the two decoupled real systems");
  channels_cmd->add_option("model", model, "Model file (JSON, '-' for stdin)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kInput;
  }

  try {
    if (*derive_cmd) return cmd_derive(model, format);
    if (*simulate_cmd) return cmd_simulate(sim);
    if (*check_cmd) return cmd_check(suite, seed);
    if (*channels_cmd) return cmd_channels(model);
  } catch (const SingularHessianError& e) {
    std::cerr << "error: " << e.what() << " (rank " << e.rank() << " of " << e.expected_rank() << ")\n";
    return kSingular;
  } catch (const DivergenceError& e) {
    std::cerr << "error: integration diverged; last good time t = " << format_double(e.last_good_time()) << "\n";
    return kDivergence;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kInput;
  } catch (const ModelError& e) {
    std::cerr << "model error: " << e.what() << "\n";
    return kInput;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailure;
  }
  return kFailure;
}
