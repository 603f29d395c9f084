#include "grs/stochastic.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <thread>

namespace grs {

// ---------------------------------------------------------------------------
// Model

void ModelSpec::validate() const {
  for (const auto& [name, c] : constraints)
    if (!c->root().empty()) throw Error("constraint '" + name + "' is not rooted at the empty graph");
  for (const auto& tr : transitions) {
    auto it = params.find(tr.rate);
    if (it != params.end() && !(it->second > 0))
      throw Error("rate '" + tr.rate + "' of transition '" + tr.name + "' must be positive");
    if (tr.factor <= Rational(0)) throw Error("factor of transition '" + tr.name + "' must be positive");
  }
  for (const auto& o : observables)
    if (!is_diagonal(o.rule, semantics)) throw Error("observable '" + o.name + "' is not diagonal");
}

const Transition& ModelSpec::transition(const std::string& name) const {
  for (const auto& tr : transitions)
    if (tr.name == name) return tr;
  throw Error("unknown rule '" + name + "'");
}

bool ModelSpec::satisfies_constraints(const Graph& x, std::string* violated) const {
  for (const auto& [name, c] : constraints)
    if (!satisfies(x, c)) {
      if (violated) *violated = name;
      return false;
    }
  return true;
}

std::vector<Graph> ModelSpec::forbidden() const {
  std::vector<Graph> out;
  for (const auto& [name, c] : constraints)
    for (Graph& n : forbidden_patterns(c)) out.push_back(std::move(n));
  return out;
}

std::string to_string(const LinearForm& f) {
  if (f.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [name, q] : f) {
    Rational c = q;
    if (!first) {
      os << (c < Rational(0) ? " - " : " + ");
      if (c < Rational(0)) c = -c;
    } else if (c < Rational(0) && !name.empty()) {
      os << "-";
      c = -c;
    }
    first = false;
    if (name.empty()) {
      os << to_string(c);
    } else {
      if (c != Rational(1)) os << to_string(c) << "*";
      os << name;
    }
  }
  return os.str();
}

double evaluate(const LinearForm& f, const std::map<std::string, double>& params) {
  double sum = 0;
  for (const auto& [name, q] : f) {
    double v = 1;
    if (!name.empty()) {
      auto it = params.find(name);
      if (it == params.end()) throw Error("unbound parameter '" + name + "'");
      v = it->second;
    }
    sum += boost::rational_cast<double>(q) * v;
  }
  return sum;
}

namespace {

void accumulate(std::vector<std::pair<std::string, RuleVector>>& parts, const std::string& rate,
                const RuleVector& v) {
  for (auto& [name, acc] : parts)
    if (name == rate) {
      acc.add(v);
      return;
    }
  parts.emplace_back(rate, v);
}

}  // namespace

Generator build_generator(const ModelSpec& model) {
  Generator g;
  for (const auto& tr : model.transitions) {
    accumulate(g.offdiag, tr.rate, RuleVector::of(tr.rule, tr.factor));
    accumulate(g.diag, tr.rate, RuleVector::of(jump_closure(tr.rule, tr.semantics), tr.factor));
  }
  return g;
}

// ---------------------------------------------------------------------------
// Moment equations

const char* to_string(ClosureStatus s) {
  switch (s) {
    case ClosureStatus::Closed:
      return "closed";
    case ClosureStatus::Truncated:
      return "truncated";
    case ClosureStatus::NonClosing:
      return "non-closing";
  }
  return "";
}

int OdeSystem::find(const std::string& name) const {
  for (std::size_t i = 0; i < variables.size(); ++i)
    if (variables[i].name == name) return static_cast<int>(i);
  return -1;
}

const OdeEquation* OdeSystem::equation_for(int variable) const {
  for (const auto& e : equations)
    if (e.variable == variable) return &e;
  return nullptr;
}

std::string OdeSystem::to_text() const {
  std::ostringstream os;
  os << "# closure: " << grs::to_string(status) << "\n";
  for (const auto& e : equations) {
    const auto& v = variables[e.variable];
    if (v.rule.input.empty()) continue;
    os << "d/dt <" << v.name << "> =";
    if (e.terms.empty()) os << " 0";
    bool first = true;
    for (const auto& t : e.terms) {
      os << (first ? " " : " + ") << "(" << grs::to_string(t.coeff) << ")";
      const auto& w = variables[t.variable];
      if (!w.rule.input.empty()) os << " <" << w.name << ">";
      first = false;
    }
    if (e.truncated) os << "  # truncated";
    os << "\n";
  }
  return os.str();
}

namespace {

class MomentDeriver {
 public:
  explicit MomentDeriver(const ModelSpec& model) : model_(model), forbidden_(model.forbidden()) {}

  int variable(const Rule& r, Rational factor, int depth, Semantics t, const std::string& name = {}) {
    CanonicalCode key = rule_key(r);
    for (std::size_t i = 0; i < sys_.variables.size(); ++i)
      if (sys_.variables[i].key == key) return static_cast<int>(i);
    OdeVariable v;
    v.rule = r;
    v.factor = factor;
    v.key = key;
    v.depth = depth;
    v.declared = !name.empty();
    v.name = name;
    if (v.name.empty()) v.name = r.input.empty() ? "1" : "aux" + std::to_string(++aux_);
    (void)t;
    sys_.variables.push_back(std::move(v));
    const int idx = static_cast<int>(sys_.variables.size()) - 1;
    if (r.input.empty())
      sys_.equations.push_back(OdeEquation{idx, {}, false});  // the constant
    else
      frontier_.push_back(idx);
    return idx;
  }

  void equation(int idx, int depth) {
    const OdeVariable v = sys_.variables[idx];
    std::map<int, LinearForm> coeffs;
    const RuleVector obs = RuleVector::of(v.rule);
    for (const auto& tr : model_.transitions) {
      const RuleVector c = commutator(obs, RuleVector::of(tr.rule), tr.semantics);
      const RuleVector j = jump_closure(reduce_modulo(c, forbidden_), tr.semantics);
      for (const auto& [k, term] : j.terms()) {
        const int w = variable(term.rule, 1, depth, tr.semantics);
        const Rational q = term.coeff * v.factor * tr.factor / sys_.variables[w].factor;
        Rational& slot = coeffs[w][tr.rate];
        slot += q;
        if (slot == Rational(0)) coeffs[w].erase(tr.rate);
      }
    }
    OdeEquation eq{idx, {}, false};
    for (auto& [w, f] : coeffs)
      if (!f.empty()) eq.terms.push_back(OdeTerm{w, std::move(f)});
    sys_.equations.push_back(std::move(eq));
  }

  OdeSystem run(int max_depth, int order) {
    sys_.max_depth = max_depth;
    for (const auto& o : model_.observables) {
      const auto r = reduce_modulo(o.rule, forbidden_);
      if (!r) throw Error("observable '" + o.name + "' vanishes on constrained states");
      const int idx = variable(*r, o.factor, 0, model_.semantics, o.name);
      sys_.outputs.push_back(OdeOutput{o.name, {{idx, o.factor / sys_.variables[idx].factor}}});
    }
    if (order >= 2) {
      const std::size_t n = model_.observables.size();
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a; b < n; ++b) {
          const auto& oa = model_.observables[a];
          const auto& ob = model_.observables[b];
          RuleVector p = reduce_modulo(product(RuleVector::of(oa.rule, oa.factor), RuleVector::of(ob.rule, ob.factor),
                                 model_.semantics), forbidden_);
          OdeOutput out{oa.name + "*" + ob.name, {}};
          for (const auto& [k, term] : p.terms()) {
            const int idx = variable(term.rule, 1, 0, model_.semantics);
            out.combination.emplace_back(idx, term.coeff / sys_.variables[idx].factor);
          }
          sys_.outputs.push_back(std::move(out));
        }
    }
    sys_.variables_per_round.push_back(static_cast<int>(sys_.variables.size()));
    for (int round = 1; round <= max_depth && !frontier_.empty(); ++round) {
      std::vector<int> todo;
      todo.swap(frontier_);
      for (int idx : todo) equation(idx, round);
      sys_.variables_per_round.push_back(static_cast<int>(sys_.variables.size()));
    }
    sys_.status = frontier_.empty() ? ClosureStatus::Closed : ClosureStatus::NonClosing;
    std::stable_sort(sys_.equations.begin(), sys_.equations.end(),
                     [](const OdeEquation& a, const OdeEquation& b) { return a.variable < b.variable; });
    return std::move(sys_);
  }

 private:
  const ModelSpec& model_;
  std::vector<Graph> forbidden_;
  OdeSystem sys_;
  std::vector<int> frontier_;
  int aux_ = 0;
};

}  // namespace

OdeSystem derive_moment_odes(const ModelSpec& model, int max_depth, int order) {
  return MomentDeriver(model).run(max_depth, order);
}

OdeSystem truncate(const OdeSystem& sys) {
  OdeSystem out = sys;
  std::vector<bool> has(sys.variables.size(), false);
  for (const auto& e : sys.equations) has[e.variable] = true;
  bool any = false;
  for (auto& e : out.equations) {
    std::vector<OdeTerm> kept;
    for (auto& t : e.terms)
      if (has[t.variable])
        kept.push_back(std::move(t));
      else
        e.truncated = any = true;
    e.terms = std::move(kept);
  }
  for (auto& o : out.outputs) {
    std::vector<std::pair<int, Rational>> kept;
    for (const auto& [v, q] : o.combination)
      if (has[v]) kept.emplace_back(v, q);
    o.combination = std::move(kept);
  }
  if (any || sys.status == ClosureStatus::NonClosing) out.status = ClosureStatus::Truncated;
  return out;
}

namespace {

using Vec = std::vector<double>;
using Mat = std::vector<Vec>;

Vec mul(const Mat& a, const Vec& y) {
  Vec out(y.size(), 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < y.size(); ++j) out[i] += a[i][j] * y[j];
  return out;
}

Vec rk4(const Mat& a, Vec y, double h, long steps) {
  const std::size_t n = y.size();
  Vec tmp(n);
  for (long s = 0; s < steps; ++s) {
    Vec k1 = mul(a, y);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + 0.5 * h * k1[i];
    Vec k2 = mul(a, tmp);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + 0.5 * h * k2[i];
    Vec k3 = mul(a, tmp);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + h * k3[i];
    Vec k4 = mul(a, tmp);
    for (std::size_t i = 0; i < n; ++i) y[i] += h / 6.0 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
  }
  return y;
}

}  // namespace

TimeSeries integrate_odes(const OdeSystem& sys, const std::map<std::string, double>& params, const Graph& initial,
                          const std::vector<double>& grid, double rel_tol) {
  if (sys.status == ClosureStatus::NonClosing) throw Error("the moment system does not close; truncate it first");
  const std::size_t n = sys.variables.size();
  std::vector<int> slot(n, -1);
  int dim = 0;
  for (const auto& e : sys.equations) slot[e.variable] = dim++;
  Mat a(dim, Vec(dim, 0.0));
  for (const auto& e : sys.equations)
    for (const auto& t : e.terms) {
      if (slot[t.variable] < 0)
        throw Error("variable '" + sys.variables[t.variable].name + "' has no equation");
      a[slot[e.variable]][slot[t.variable]] += evaluate(t.coeff, params);
    }
  Vec y(dim, 0.0);
  for (const auto& e : sys.equations) {
    const auto& v = sys.variables[e.variable];
    // Observable variables are identity-shaped, so the semantics is immaterial.
    y[slot[e.variable]] =
        boost::rational_cast<double>(v.factor) * count_admissible_matches(v.rule, initial, Semantics::Dpo);
  }

  TimeSeries ts;
  for (const auto& o : sys.outputs) ts.names.push_back(o.name);
  auto record = [&](double t) {
    ts.times.push_back(t);
    std::vector<double> row;
    for (const auto& o : sys.outputs) {
      double s = 0;
      for (const auto& [v, q] : o.combination) {
        if (slot[v] < 0) throw Error("output '" + o.name + "' refers to a variable without an equation");
        s += boost::rational_cast<double>(q) * y[slot[v]];
      }
      row.push_back(s);
    }
    ts.values.push_back(std::move(row));
  };
  double t = 0;
  for (double target : grid) {
    if (target < t) throw Error("time grid must be non-decreasing and non-negative");
    if (target > t) {
      const double span = target - t;
      long steps = 1;
      Vec coarse = rk4(a, y, span, steps);
      for (;;) {
        steps *= 2;
        Vec fine = rk4(a, y, span / static_cast<double>(steps), steps);
        double diff = 0, scale = 1;
        for (int i = 0; i < dim; ++i) {
          diff = std::max(diff, std::abs(fine[i] - coarse[i]));
          scale = std::max(scale, std::abs(fine[i]));
        }
        coarse = std::move(fine);
        if (diff <= rel_tol * scale || steps >= (1L << 24)) break;
      }
      y = std::move(coarse);
      t = target;
    }
    record(target);
  }
  return ts;
}

std::array<double, 3> closed_form_example1(const Example1Rates& r, double t) {
  const double np = r.vertex_birth, nm = r.vertex_death, ep = r.edge_birth, em = r.edge_death;
  const double alpha = em + ep + 2 * nm, beta = em + ep + nm, kappa = em + nm, lambda = em + ep,
               omega = em + 2 * nm;
  if (nm == 0 || alpha == 0 || beta == 0 || lambda == 0) throw Error("degenerate parameters for the closed form");
  const double v = np / nm * (1 - std::exp(-t * nm));
  const double pre = np * np / (2 * alpha * beta * lambda * nm * nm);
  // e^{-alpha t} folded into each exponential.
  const double el = std::exp((lambda - alpha) * t), eb = std::exp((beta - alpha) * t), ea = std::exp(-alpha * t);
  const double unlinked =
      pre * (alpha * beta * em * el + 2 * ep * nm * nm * ea - 2 * alpha * kappa * lambda * eb + beta * lambda * omega);
  const double edges = ep * pre * (alpha * beta * el - 2 * alpha * lambda * eb + beta * lambda - 2 * nm * nm * ea);
  return {v, unlinked, edges};
}

std::array<double, 3> closed_form_example1_limit(const Example1Rates& r) {
  const double np = r.vertex_birth, nm = r.vertex_death, ep = r.edge_birth, em = r.edge_death;
  const double alpha = em + ep + 2 * nm;
  return {np / nm, np * np * (em + 2 * nm) / (2 * nm * nm * alpha), ep * np * np / (2 * nm * nm * alpha)};
}

// ---------------------------------------------------------------------------
// Simulation

double observable_value(const Observable& o, const Graph& x, Semantics t) {
  return boost::rational_cast<double>(o.factor) * count_admissible_matches(o.rule, x, t);
}

namespace {

std::string match_digest(const Morphism& m) {
  CanonicalCode c;
  c.data = m.vmap;
  c.data.push_back(-1);
  c.data.insert(c.data.end(), m.emap.begin(), m.emap.end());
  return c.digest();
}

}  // namespace

Trajectory ssa_simulate(const ModelSpec& model, const Graph& x0, std::uint64_t seed, std::uint64_t run,
                        const SimulationOptions& opt) {
  std::vector<double> rates;
  for (const auto& tr : model.transitions) {
    auto it = model.params.find(tr.rate);
    if (it == model.params.end()) throw Error("unbound parameter '" + tr.rate + "'");
    rates.push_back(it->second * boost::rational_cast<double>(tr.factor));
  }
  std::vector<Rule> closures;
  if (opt.audit_generator)
    for (const auto& tr : model.transitions) closures.push_back(jump_closure(tr.rule, tr.semantics));

  Trajectory traj;
  traj.seed = seed;
  traj.run = run;
  traj.grid = opt.grid;
  CounterRng rng(seed, run);
  Graph x = x0;
  double t = 0;
  std::size_t gi = 0;
  auto record_until = [&](double limit, bool inclusive) {
    while (gi < opt.grid.size() && opt.grid[gi] <= opt.t_max &&
           (inclusive ? opt.grid[gi] <= limit : opt.grid[gi] < limit)) {
      std::vector<double> row;
      for (const auto& o : model.observables) row.push_back(observable_value(o, x, model.semantics));
      traj.counts.push_back(std::move(row));
      ++gi;
    }
  };
  std::string violated;
  if (opt.audit_constraints && !model.satisfies_constraints(x, &violated))
    throw Error("initial state violates constraint '" + violated + "'");

  std::vector<std::vector<Morphism>> matches(model.transitions.size());
  std::vector<double> prop(model.transitions.size());
  for (;;) {
    double total = 0;
    for (std::size_t j = 0; j < model.transitions.size(); ++j) {
      matches[j] = admissible_matches(model.transitions[j].rule, x, model.transitions[j].semantics);
      prop[j] = rates[j] * static_cast<double>(matches[j].size());
      total += prop[j];
    }
    if (opt.audit_generator) {
      double diag = 0;
      for (std::size_t j = 0; j < closures.size(); ++j)
        diag += rates[j] * count_admissible_matches(closures[j], x, model.transitions[j].semantics);
      if (std::abs(diag - total) > 1e-9 * std::max(1.0, total))
        throw Error("generator audit: diagonal " + std::to_string(diag) + " differs from outflow " +
                    std::to_string(total));
    }
    const double tau = total > 0 ? -std::log(rng.uniform()) / total : INFINITY;
    if (t + tau > opt.t_max) break;
    record_until(t + tau, false);
    t += tau;
    double pick = rng.uniform() * total;
    std::size_t j = 0;
    for (; j + 1 < prop.size(); ++j) {
      if (pick < prop[j]) break;
      pick -= prop[j];
    }
    while (matches[j].empty()) ++j;  // guards against rounding onto an empty channel
    const Morphism& m = matches[j][rng.below(matches[j].size())];
    if (opt.record_events) traj.events.push_back(SimulationEvent{t, static_cast<int>(j), match_digest(m)});
    x = derive_step(model.transitions[j].rule, x, m, model.transitions[j].semantics).y;
    if (opt.audit_constraints && !model.satisfies_constraints(x, &violated))
      throw Error("rule '" + model.transitions[j].name + "' produced a state violating constraint '" + violated +
                  "' at t=" + std::to_string(t));
  }
  record_until(opt.t_max, true);
  return traj;
}

EnsembleStats ssa_ensemble(const ModelSpec& model, const Graph& x0, std::uint64_t seed, int runs,
                           const SimulationOptions& opt, int threads, std::vector<Trajectory>* keep) {
  std::vector<Trajectory> all(std::max(runs, 0));
  threads = std::max(1, std::min(threads, std::max(runs, 1)));
  std::vector<std::string> errors(threads);
  auto work = [&](int w) {
    try {
      for (int r = w; r < runs; r += threads) all[r] = ssa_simulate(model, x0, seed, r, opt);
    } catch (const std::exception& e) {
      errors[w] = e.what();
    }
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < threads; ++w) pool.emplace_back(work, w);
    for (auto& th : pool) th.join();
  }
  for (const auto& e : errors)
    if (!e.empty()) throw Error(e);

  EnsembleStats s;
  for (const auto& o : model.observables) s.names.push_back(o.name);
  s.runs = runs;
  for (double g : opt.grid)
    if (g <= opt.t_max) s.grid.push_back(g);
  const std::size_t nt = s.grid.size(), no = s.names.size();
  s.mean.assign(nt, std::vector<double>(no, 0.0));
  s.variance = s.mean;
  s.stderr_ = s.mean;
  // Welford in run order, so the result is independent of scheduling.
  for (int r = 0; r < runs; ++r)
    for (std::size_t i = 0; i < nt; ++i)
      for (std::size_t k = 0; k < no; ++k) {
        const double v = all[r].counts[i][k];
        const double d = v - s.mean[i][k];
        s.mean[i][k] += d / (r + 1);
        s.variance[i][k] += d * (v - s.mean[i][k]);
      }
  for (std::size_t i = 0; i < nt; ++i)
    for (std::size_t k = 0; k < no; ++k) {
      s.variance[i][k] = runs > 1 ? s.variance[i][k] / (runs - 1) : 0.0;
      s.stderr_[i][k] = runs > 0 ? std::sqrt(s.variance[i][k] / runs) : 0.0;
    }
  if (keep) *keep = std::move(all);
  return s;
}

std::vector<double> uniform_grid(double t_max, double step) {
  if (!(step > 0) || !(t_max >= 0)) throw Error("grid step must be positive and t_max non-negative");
  const long n = std::lround(std::floor(t_max / step + 1e-9));
  std::vector<double> g;
  for (long i = 0; i <= n; ++i) g.push_back(std::min(t_max, static_cast<double>(i) * step));
  if (g.back() < t_max - 1e-12) g.push_back(t_max);
  return g;
}

}  // namespace grs
