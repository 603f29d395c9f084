// Command-line front end: grs <subcommand> --model FILE [options]

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "grs/dsl.hpp"
#include "grs/io.hpp"
#include "grs/model_check.hpp"

namespace fs = std::filesystem;
using namespace grs;
using io::Json;

namespace {

constexpr const char* kVersion = "0.1.0";

/// Usage and model errors.
struct UsageError : Error {
  using Error::Error;
};

struct Options {
  std::string model, out = ".", semantics, manifest;
  std::vector<std::string> params;
  std::optional<std::uint64_t> seed;
  std::optional<int> runs, depth, order, threads;
  std::optional<double> t_max, grid;
  bool json = false, against_closed_form = false, truncate = false, events = false, in_place = false, audit = false;
  std::vector<std::string> names;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// FNV-1a of the model text, for manifests.
std::string digest(const std::string& text) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

struct Loaded {
  dsl::CompiledModel m;
  std::string text;
};

Loaded load(const Options& o) {
  if (o.model.empty()) throw UsageError("--model is required");
  Loaded l;
  l.text = read_file(o.model);
  try {
    l.m = dsl::load_model_text(l.text, o.model);
  } catch (const dsl::ModelError& e) {
    throw UsageError(e.what());
  }
  for (const auto& w : l.m.warnings) std::cerr << w;
  ModelSpec& spec = l.m.spec;
  for (const auto& p : o.params) {
    const auto eq = p.find('=');
    if (eq == std::string::npos) throw UsageError("--param expects NAME=VALUE, got '" + p + "'");
    const std::string name = p.substr(0, eq);
    bool used = spec.params.count(name) > 0;
    for (const auto& t : spec.transitions) used = used || t.rate == name;
    if (!used) throw UsageError("unknown parameter '" + name + "'");
    double v = 0;
    try {
      std::size_t pos = 0;
      v = std::stod(p.substr(eq + 1), &pos);
      if (pos != p.size() - eq - 1) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw UsageError("--param " + name + ": not a number");
    }
    if (!(v > 0)) throw UsageError("--param " + name + ": rates must be positive");
    spec.params[name] = v;
  }
  if (!o.semantics.empty()) {
    const Semantics t = o.semantics == "dpo" ? Semantics::Dpo : Semantics::Sqpo;
    spec.semantics = t;
    for (auto& tr : spec.transitions) tr.semantics = t;
  }
  return l;
}

fs::path out_dir(const Options& o) {
  fs::path p(o.out);
  std::error_code ec;
  fs::create_directories(p, ec);
  if (ec) throw UsageError("cannot create output directory '" + o.out + "'");
  return p;
}

void write(const fs::path& p, const std::string& content) {
  std::ofstream f(p, std::ios::binary);
  if (!f) throw UsageError("cannot write '" + p.string() + "'");
  f << content;
}

Rule named_rule(const ModelSpec& m, const std::string& name) {
  for (const auto& t : m.transitions)
    if (t.name == name) return t.rule;
  for (const auto& ob : m.observables)
    if (ob.name == name) return ob.rule;
  if (name == "empty" || name == "1") return empty_rule();
  throw UsageError("unknown rule '" + name + "'");
}

void print_vector(const RuleVector& v, const ModelSpec& m, bool json) {
  if (json) {
    std::cout << io::to_json(v, m.types).dump(2) << "\n";
    return;
  }
  if (v.is_zero()) std::cout << "0\n";
  for (const auto& [k, t] : v.terms()) std::cout << to_string(t.coeff) << " * " << io::sketch(t.rule, m.types) << "\n";
}

int cmd_algebra(const Options& o, bool commute) {
  if (o.names.size() != 2) throw UsageError("expects two rule names");
  Loaded l = load(o);
  const ModelSpec& m = l.m.spec;
  const RuleVector a = RuleVector::of(named_rule(m, o.names[0]));
  const RuleVector b = RuleVector::of(named_rule(m, o.names[1]));
  RuleVector r = commute ? commutator(a, b, m.semantics) : product(a, b, m.semantics);
  r = reduce_modulo(r, m.forbidden());
  print_vector(r, m, o.json);
  return 0;
}

int cmd_represent(const Options& o) {
  if (o.names.size() != 1) throw UsageError("expects one rule name");
  Loaded l = load(o);
  const ModelSpec& m = l.m.spec;
  const StateVector s = represent(RuleVector::of(named_rule(m, o.names[0])), StateVector::of(m.initial), m.semantics);
  if (o.json) {
    Json out = Json::array();
    for (const auto& [k, t] : s.terms())
      out.push_back(Json{{"coefficient", to_string(t.coeff)}, {"state", io::to_json(t.graph, m.types)}});
    std::cout << out.dump(2) << "\n";
  } else {
    if (s.is_zero()) std::cout << "0\n";
    for (const auto& [k, t] : s.terms()) std::cout << to_string(t.coeff) << " * " << io::sketch(t.graph, m.types) << "\n";
  }
  return 0;
}

OdeSystem derive_for(const Options& o, const Loaded& l) {
  const int depth = o.depth.value_or(l.m.derive ? l.m.derive->depth : 3);
  const int order = o.order.value_or(l.m.derive ? l.m.derive->order : 1);
  if (depth < 0 || order < 1 || order > 2) throw UsageError("depth must be >= 0 and order 1 or 2");
  if (l.m.spec.observables.empty()) std::cerr << "warning: the model declares no observables\n";
  return derive_moment_odes(l.m.spec, depth, order);
}

int cmd_derive(const Options& o) {
  Loaded l = load(o);
  const OdeSystem sys = derive_for(o, l);
  const fs::path dir = out_dir(o);
  const Json j = io::to_json(sys, l.m.spec.types);
  write(dir / "odes.json", j.dump(2) + "\n");
  write(dir / "odes.txt", sys.to_text());
  if (o.json)
    std::cout << j.dump(2) << "\n";
  else
    std::cout << sys.to_text();
  return 0;
}

std::vector<double> grid_for(const Options& o, const dsl::CompiledModel& m) {
  const double t_max = o.t_max.value_or(m.simulate ? m.simulate->t_max : 10.0);
  const double step = o.grid.value_or(m.simulate ? m.simulate->grid : 0.1);
  try {
    return uniform_grid(t_max, step);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
}

int cmd_integrate(const Options& o) {
  Loaded l = load(o);
  const ModelSpec& m = l.m.spec;
  OdeSystem sys = derive_for(o, l);
  if (sys.status == ClosureStatus::NonClosing) {
    if (!o.truncate) throw UsageError("the moment system does not close at this depth; raise --depth or pass --truncate");
    sys = truncate(sys);
    std::cerr << "warning: integrating a truncated system\n";
  }
  const auto grid = grid_for(o, l.m);
  TimeSeries ts;
  try {
    ts = integrate_odes(sys, m.params, m.initial, grid);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  std::ostringstream csv;
  io::write_csv(csv, ts);
  write(out_dir(o) / "odes_solution.csv", csv.str());
  if (!o.against_closed_form) {
    std::cout << csv.str();
    return 0;
  }
  for (const char* p : {"nu_p", "nu_m", "eps_p", "eps_m"})
    if (!m.params.count(p)) throw UsageError(std::string("--against-closed-form needs parameter ") + p);
  if (ts.names.size() < 3) throw UsageError("--against-closed-form needs three observables");
  if (!m.initial.empty()) throw UsageError("--against-closed-form needs the empty initial state");
  const Example1Rates r{m.params.at("nu_p"), m.params.at("nu_m"), m.params.at("eps_p"), m.params.at("eps_m")};
  double dev = 0;
  for (std::size_t i = 0; i < ts.times.size(); ++i) {
    const auto exact = closed_form_example1(r, ts.times[i]);
    for (int k = 0; k < 3; ++k) dev = std::max(dev, std::abs(ts.values[i][k] - exact[k]));
  }
  std::cout << "max abs deviation from closed form: " << io::format_double(dev) << "\n";
  return dev < 1e-6 ? 0 : 1;
}

int cmd_simulate(Options o) {
  if (!o.manifest.empty()) {
    // Replays a manifest; explicit flags are ignored in favour of it.
    const Json j = Json::parse(read_file(o.manifest));
    o.model = j.at("model").get<std::string>();
    o.seed = j.at("seed").get<std::uint64_t>();
    o.runs = j.at("runs").get<int>();
    o.t_max = j.at("t_max").get<double>();
    o.grid = j.at("grid_step").get<double>();
    o.params.clear();
    for (const auto& [k, v] : j.at("params").items()) o.params.push_back(k + "=" + io::format_double(v.get<double>()));
    o.semantics = j.value("semantics_override", std::string());
  }
  Loaded l = load(o);
  const ModelSpec& m = l.m.spec;
  for (const auto& t : m.transitions)
    if (!m.params.count(t.rate)) throw UsageError("unbound parameter '" + t.rate + "'");
  const std::uint64_t seed = o.seed.value_or(l.m.simulate ? l.m.simulate->seed : 42);
  const int runs = o.runs.value_or(l.m.simulate ? l.m.simulate->runs : 1000);
  if (runs < 0) throw UsageError("--runs must be non-negative");
  SimulationOptions opt;
  opt.t_max = o.t_max.value_or(l.m.simulate ? l.m.simulate->t_max : 10.0);
  const double step = o.grid.value_or(l.m.simulate ? l.m.simulate->grid : 0.1);
  opt.grid = grid_for(o, l.m);
  opt.record_events = o.events;
  opt.audit_constraints = opt.audit_generator = o.audit;
  const int threads = o.threads.value_or(static_cast<int>(std::max(1u, std::thread::hardware_concurrency())));
  std::vector<Trajectory> runs_out;
  EnsembleStats s;
  try {
    s = ssa_ensemble(m, m.initial, seed, runs, opt, threads, &runs_out);
  } catch (const Error& e) {
    std::cerr << "simulation error: " << e.what() << "\n";
    return 1;
  }
  const fs::path dir = out_dir(o);
  std::ostringstream ens, traj;
  io::write_csv(ens, s);
  write(dir / "ensemble.csv", ens.str());
  traj << "run,t";
  for (const auto& ob : m.observables) traj << "," << ob.name;
  traj << "\n";
  for (const auto& tr : runs_out)
    for (std::size_t i = 0; i < tr.counts.size(); ++i) {
      traj << tr.run << "," << io::format_double(tr.grid[i]);
      for (double v : tr.counts[i]) traj << "," << io::format_double(v);
      traj << "\n";
    }
  write(dir / "trajectories.csv", traj.str());
  if (o.events) {
    std::ostringstream ev;
    ev << "run,time,rule,match\n";
    for (const auto& tr : runs_out)
      for (const auto& e : tr.events)
        ev << tr.run << "," << io::format_double(e.time) << "," << m.transitions[e.transition].name << ","
           << e.match_digest << "\n";
    write(dir / "events.csv", ev.str());
  }
  Json params = Json::object();
  for (const auto& [k, v] : m.params) params[k] = v;
  Json manifest{{"tool", "grs"},
                {"version", kVersion},
                {"command", "simulate"},
                {"model", fs::absolute(o.model).string()},
                {"model_digest", digest(l.text)},
                {"seed", seed},
                {"runs", runs},
                {"t_max", opt.t_max},
                {"grid_step", step},
                {"params", params},
                {"semantics_override", o.semantics},
                {"rng", "splitmix64 counter stream keyed by (seed, run)"}};
  write(dir / "run.json", manifest.dump(2) + "\n");
  std::cout << ens.str();
  return 0;
}

int cmd_check(const Options& o) {
  Loaded l = load(o);
  const CheckReport rep = check_model(l.m.spec, o.seed.value_or(1));
  if (o.json) {
    Json items = Json::array();
    for (const auto& i : rep.items)
      items.push_back(Json{{"property", i.property},
                           {"instances", i.instances},
                           {"failures", i.failures},
                           {"counterexample", i.counterexample}});
    std::cout << Json{{"ok", rep.ok()}, {"states", rep.states.size()}, {"items", items}}.dump(2) << "\n";
  } else {
    std::cout << "checked on " << rep.states.size() << " states\n";
    for (const auto& i : rep.items) {
      std::cout << (i.failures ? "FAIL " : "PASS ") << i.property << " (" << i.instances << " instances";
      if (i.failures) std::cout << ", " << i.failures << " failures";
      std::cout << ")\n";
      if (i.failures) std::cout << "  counterexample: " << i.counterexample << "\n";
    }
  }
  return rep.ok() ? 0 : 1;
}

int cmd_fmt(const Options& o) {
  if (o.model.empty()) throw UsageError("--model is required");
  const std::string text = read_file(o.model);
  const dsl::ParseResult p = dsl::parse(text);
  for (const auto& d : p.diagnostics) std::cerr << d.render(o.model, text);
  if (!p.ok()) return 2;
  const std::string formatted = dsl::format(p.model);
  if (o.in_place)
    write(o.model, formatted);
  else
    std::cout << formatted;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stochastic graph rewriting with conditions: rule algebra, moment equations and simulation"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* c) {
    c->add_option("--model,-m", o.model, "Model file")->required();
    c->add_option("--out,-o", o.out, "Output directory");
    c->add_option("--param", o.params, "Override a parameter, NAME=VALUE");
    c->add_option("--semantics", o.semantics, "Override the rewriting semantics")->check(CLI::IsMember({"dpo", "sqpo"}));
    c->add_flag("--json", o.json, "Print JSON");
  };

  auto* compose = app.add_subcommand("compose", "Product delta(R2) * delta(R1)");
  common(compose);
  compose->add_option("rules", o.names, "R2 R1")->expected(2)->required();
  auto* comm = app.add_subcommand("commutator", "Commutator [delta(A), delta(B)]");
  common(comm);
  comm->add_option("rules", o.names, "A B")->expected(2)->required();
  auto* rep = app.add_subcommand("represent", "Apply a rule to the initial state");
  common(rep);
  rep->add_option("rule", o.names, "R")->expected(1)->required();

  auto* derive = app.add_subcommand("derive", "Derive moment equations (odes.json, odes.txt)");
  common(derive);
  derive->add_option("--depth", o.depth, "Derivation rounds");
  derive->add_option("--order", o.order, "Moment order (1 or 2)");

  auto* integ = app.add_subcommand("integrate", "Integrate the moment equations (odes_solution.csv)");
  common(integ);
  integ->add_option("--depth", o.depth, "Derivation rounds");
  integ->add_option("--order", o.order, "Moment order (1 or 2)");
  integ->add_option("--t-max", o.t_max, "Final time");
  integ->add_option("--grid", o.grid, "Grid step");
  integ->add_flag("--truncate", o.truncate, "Integrate a non-closing system after truncation");
  integ->add_flag("--against-closed-form", o.against_closed_form, "Compare with the closed-form birth-death solution");

  auto* sim = app.add_subcommand("simulate", "Exact stochastic simulation (ensemble.csv, trajectories.csv, run.json)");
  sim->add_option("--model,-m", o.model, "Model file");
  sim->add_option("--out,-o", o.out, "Output directory");
  sim->add_option("--param", o.params, "Override a parameter, NAME=VALUE");
  sim->add_option("--semantics", o.semantics, "Override the rewriting semantics")->check(CLI::IsMember({"dpo", "sqpo"}));
  sim->add_option("--seed", o.seed, "Ensemble seed");
  sim->add_option("--runs", o.runs, "Number of runs");
  sim->add_option("--t-max", o.t_max, "Final time");
  sim->add_option("--grid", o.grid, "Grid step");
  sim->add_option("--threads", o.threads, "Worker threads");
  sim->add_flag("--events", o.events, "Also write events.csv");
  sim->add_flag("--audit", o.audit, "Check constraints and generator conservation at every step");
  sim->add_option("--manifest", o.manifest, "Replay the settings of a run.json");

  auto* check = app.add_subcommand("check", "Run property suites on the model's rules");
  common(check);
  check->add_option("--seed", o.seed, "Seed of the state walk");

  auto* fmt = app.add_subcommand("fmt", "Print the model in canonical form");
  fmt->add_option("--model,-m", o.model, "Model file")->required();
  fmt->add_flag("--in-place,-i", o.in_place, "Rewrite the file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*compose) return cmd_algebra(o, false);
    if (*comm) return cmd_algebra(o, true);
    if (*rep) return cmd_represent(o);
    if (*derive) return cmd_derive(o);
    if (*integ) return cmd_integrate(o);
    if (*sim) return cmd_simulate(o);
    if (*check) return cmd_check(o);
    if (*fmt) return cmd_fmt(o);
  } catch (const UsageError& e) {
    std::cerr << e.what() << (std::string(e.what()).ends_with("\n") ? "" : "\n");
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
