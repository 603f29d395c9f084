#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "grs/algebra.hpp"
#include "grs/graph.hpp"

namespace grs {

/// A transition of the CTMC: rate * factor * delta(rule).
struct Transition {
  std::string name;
  std::string rate;  // parameter name
  Rational factor = 1;
  Rule rule;
  Semantics semantics = Semantics::Sqpo;
};

/// A pattern-count observable factor * delta(rule) with a diagonal rule.
struct Observable {
  std::string name;
  Rule rule;
  Rational factor = 1;
};

struct ModelSpec {
  TypeGraph types = TypeGraph::untyped();
  Semantics semantics = Semantics::Sqpo;
  std::vector<std::pair<std::string, Cond>> constraints;  // rooted at the empty graph
  std::vector<Transition> transitions;
  std::vector<Observable> observables;
  std::map<std::string, double> params;
  Graph initial;

  /// Throws Error on non-positive bound rates, observables that are not
  /// diagonal, or constraints not rooted at the empty graph.
  void validate() const;
  const Transition& transition(const std::string& name) const;
  /// Whether every constraint holds on x; on failure names the first one.
  bool satisfies_constraints(const Graph& x, std::string* violated = nullptr) const;
  /// Forbidden subgraphs of the negative constraints, used to simplify
  /// algebraic results to the constrained state space.
  std::vector<Graph> forbidden() const;
};

/// Rate-symbol polynomial of degree <= 1: parameter name -> coefficient.
/// The empty name is the constant term.
using LinearForm = std::map<std::string, Rational>;

std::string to_string(const LinearForm& f);
double evaluate(const LinearForm& f, const std::map<std::string, double>& params);

/// Off-diagonal and diagonal parts of the generator, per rate symbol.
struct Generator {
  std::vector<std::pair<std::string, RuleVector>> offdiag;  // sum over rates of rate * vector
  std::vector<std::pair<std::string, RuleVector>> diag;
};

Generator build_generator(const ModelSpec& model);

// ---------------------------------------------------------------------------
// Moment equations

enum class ClosureStatus { Closed, Truncated, NonClosing };
const char* to_string(ClosureStatus s);

/// <factor * delta(rule)>; the empty rule stands for the constant 1.
struct OdeVariable {
  std::string name;
  Rule rule;
  Rational factor = 1;
  CanonicalCode key;
  int depth = 0;
  bool declared = false;
};

struct OdeTerm {
  int variable;  // index into variables
  LinearForm coeff;
};

struct OdeEquation {
  int variable;
  std::vector<OdeTerm> terms;
  bool truncated = false;
};

/// A reported quantity: sum of coefficients times variables.
struct OdeOutput {
  std::string name;
  std::vector<std::pair<int, Rational>> combination;
};

struct OdeSystem {
  std::vector<OdeVariable> variables;
  std::vector<OdeEquation> equations;
  std::vector<OdeOutput> outputs;
  ClosureStatus status = ClosureStatus::Closed;
  std::vector<int> variables_per_round;  // cumulative count after each round
  int max_depth = 0;

  int find(const std::string& name) const;
  const OdeEquation* equation_for(int variable) const;
  /// Human readable equations, one per line.
  std::string to_text() const;
};

/// d/dt <O> = < jump_closure([O, H]) > for the declared observables, then for
/// newly discovered observables, for at most `max_depth` rounds. With
/// `order` 2, products of declared observables are added as outputs.
OdeSystem derive_moment_odes(const ModelSpec& model, int max_depth, int order = 1);

/// Drops terms referring to variables without an equation and marks the
/// affected equations.
OdeSystem truncate(const OdeSystem& sys);

struct TimeSeries {
  std::vector<std::string> names;
  std::vector<double> times;
  std::vector<std::vector<double>> values;  // per time, per name
};

/// Classical RK4 on each grid interval, halving the step until successive
/// refinements agree to `rel_tol`. Initial values are the observable counts
/// on `initial`. Reports the declared outputs.
TimeSeries integrate_odes(const OdeSystem& sys, const std::map<std::string, double>& params, const Graph& initial,
                          const std::vector<double>& grid, double rel_tol = 1e-9);

struct Example1Rates {
  double vertex_birth, vertex_death, edge_birth, edge_death;
};

/// Closed-form averages (vertices, unlinked pairs, edges) from the empty graph.
std::array<double, 3> closed_form_example1(const Example1Rates& r, double t);
/// Limits for t -> infinity.
std::array<double, 3> closed_form_example1_limit(const Example1Rates& r);

// ---------------------------------------------------------------------------
// Simulation

/// Counter-based generator (SplitMix64 over a key and counter).
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream) : key_(mix(seed ^ mix(stream + 0x632be59bd9b4e019ULL))) {}
  std::uint64_t next() { return mix(key_ + 0x9e3779b97f4a7c15ULL * ++counter_); }
  /// Uniform in (0, 1).
  double uniform() { return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53; }
  std::uint64_t below(std::uint64_t n) { return next() % n; }
  std::uint64_t counter() const { return counter_; }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

struct SimulationEvent {
  double time;
  int transition;
  std::string match_digest;
};

struct Trajectory {
  std::uint64_t seed = 0;
  std::uint64_t run = 0;
  std::vector<SimulationEvent> events;  // only when requested
  std::vector<double> grid;
  std::vector<std::vector<double>> counts;  // per grid time, per observable
};

struct SimulationOptions {
  double t_max = 10;
  std::vector<double> grid;
  bool record_events = false;
  /// Checks constraints on every visited state.
  bool audit_constraints = false;
  /// Checks that total propensity equals the sum of per-match outflows.
  bool audit_generator = false;
};

/// Exact SSA run number `run` of the ensemble with the given seed.
Trajectory ssa_simulate(const ModelSpec& model, const Graph& x0, std::uint64_t seed, std::uint64_t run,
                        const SimulationOptions& opt);

struct EnsembleStats {
  std::vector<std::string> names;
  std::vector<double> grid;
  std::vector<std::vector<double>> mean, stderr_, variance;  // per time, per observable
  int runs = 0;
};

/// Runs `runs` independent trajectories on up to `threads` workers; results
/// do not depend on the thread count. The runs are kept when `keep` is set.
EnsembleStats ssa_ensemble(const ModelSpec& model, const Graph& x0, std::uint64_t seed, int runs,
                           const SimulationOptions& opt, int threads = 1, std::vector<Trajectory>* keep = nullptr);

/// 0, step, 2 step, ... up to t_max (inclusive within rounding).
std::vector<double> uniform_grid(double t_max, double step);

/// Observable value factor * |admissible matches| on x.
double observable_value(const Observable& o, const Graph& x, Semantics t);

}  // namespace grs
