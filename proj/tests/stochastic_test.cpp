#include <gtest/gtest.h>

#include <cmath>

#include "grs/stochastic.hpp"
#include "support.hpp"

using namespace grs;
using namespace grs::testing;

namespace {

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> g;
  for (int i = 0; i <= n; ++i) g.push_back(a + (b - a) * i / n);
  return g;
}

}  // namespace

TEST(Model, ValidateRejectsBadInput) {
  ModelSpec m = example1_model();
  EXPECT_NO_THROW(m.validate());
  m.params["nu_p"] = 0;
  EXPECT_THROW(m.validate(), Error);
  m = example1_model();
  m.observables.push_back({"bad", vertex_create_rule(), 1});
  EXPECT_THROW(m.validate(), Error);
}

TEST(Generator, DiagonalIsJumpClosure) {
  const Generator g = build_generator(example1_model());
  ASSERT_EQ(g.offdiag.size(), 4u);
  ASSERT_EQ(g.diag.size(), 4u);
  for (const auto& [rate, v] : g.diag)
    for (const auto& [k, term] : v.terms()) EXPECT_TRUE(is_diagonal(term.rule, Semantics::Sqpo)) << rate;
}

TEST(LinearForms, FormatAndEvaluate) {
  LinearForm f{{"a", Rational(1)}, {"b", Rational(-1, 2)}};
  EXPECT_EQ(to_string(f), "a - 1/2*b");
  EXPECT_DOUBLE_EQ(evaluate(f, {{"a", 3}, {"b", 2}}), 2.0);
  EXPECT_THROW(evaluate(f, {{"a", 1}}), Error);
  EXPECT_EQ(to_string(LinearForm{}), "0");
}

TEST(Moments, Example1Closes) {
  const OdeSystem sys = derive_moment_odes(example1_model(), 4);
  EXPECT_EQ(sys.status, ClosureStatus::Closed);
  int non_constant = 0;
  for (const auto& v : sys.variables)
    if (!v.rule.input.empty()) {
      ++non_constant;
      EXPECT_TRUE(v.declared) << v.name;
    }
  EXPECT_EQ(non_constant, 3);

  // d/dt O_v = nu_p - nu_m O_v
  const int ov = sys.find("O_v"), one = sys.find("1");
  ASSERT_GE(ov, 0);
  ASSERT_GE(one, 0);
  const OdeEquation* e = sys.equation_for(ov);
  ASSERT_NE(e, nullptr);
  std::map<int, LinearForm> terms;
  for (const auto& t : e->terms) terms[t.variable] = t.coeff;
  EXPECT_EQ(terms[one], (LinearForm{{"nu_p", Rational(1)}}));
  EXPECT_EQ(terms[ov], (LinearForm{{"nu_m", Rational(-1)}}));

  // d/dt O_edge = eps_p O_unlinked - (eps_m + 2 nu_m) O_edge
  const int oe = sys.find("O_edge"), ou = sys.find("O_unlinked");
  terms.clear();
  for (const auto& t : sys.equation_for(oe)->terms) terms[t.variable] = t.coeff;
  EXPECT_EQ(terms.size(), 2u);
  EXPECT_EQ(terms[ou], (LinearForm{{"eps_p", Rational(1)}}));
  EXPECT_EQ(terms[oe], (LinearForm{{"eps_m", Rational(-1)}, {"nu_m", Rational(-2)}}));

  // d/dt O_unlinked = nu_p O_v - 2 nu_m O_unlinked - eps_p O_unlinked + eps_m O_edge
  terms.clear();
  for (const auto& t : sys.equation_for(ou)->terms) terms[t.variable] = t.coeff;
  EXPECT_EQ(terms[ov], (LinearForm{{"nu_p", Rational(1)}}));
  EXPECT_EQ(terms[ou], (LinearForm{{"eps_p", Rational(-1)}, {"nu_m", Rational(-2)}}));
  EXPECT_EQ(terms[oe], (LinearForm{{"eps_m", Rational(1)}}));
}

TEST(Moments, IntegrationMatchesClosedForm) {
  for (auto [np, nm, ep, em] : {std::array<double, 4>{1, 1, 1, 1}, {2.5, 0.7, 0.3, 1.9}, {0.4, 2.0, 3.0, 0.2}}) {
    ModelSpec m = example1_model(np, nm, ep, em);
    const OdeSystem sys = derive_moment_odes(m, 3);
    const auto grid = linspace(0, 10, 20);
    const TimeSeries ts = integrate_odes(sys, m.params, Graph{}, grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const auto exact = closed_form_example1({np, nm, ep, em}, grid[i]);
      for (int k = 0; k < 3; ++k) EXPECT_NEAR(ts.values[i][k], exact[k], 1e-6) << ts.names[k] << " t=" << grid[i];
    }
  }
}

TEST(Moments, ClosedFormLimit) {
  const Example1Rates r{1.3, 0.8, 0.6, 1.1};
  const auto far = closed_form_example1(r, 80);
  const auto lim = closed_form_example1_limit(r);
  for (int k = 0; k < 3; ++k) EXPECT_NEAR(far[k], lim[k], 1e-9);
  const auto zero = closed_form_example1(r, 0);
  for (int k = 0; k < 3; ++k) EXPECT_NEAR(zero[k], 0.0, 1e-12);
}

TEST(Moments, SecondOrderOutputs) {
  ModelSpec m = example1_model();
  const OdeSystem sys = derive_moment_odes(m, 4, 2);
  EXPECT_EQ(sys.outputs.size(), 3u + 6u);
  // O_v * O_v = O_v + <two distinct vertices>; starting from three vertices it is 9.
  const TimeSeries ts = integrate_odes(truncate(sys), m.params, vertices(3), {0.0});
  std::size_t vv = 0;
  for (; vv < ts.names.size(); ++vv)
    if (ts.names[vv] == "O_v*O_v") break;
  ASSERT_LT(vv, ts.names.size());
  EXPECT_NEAR(ts.values[0][vv], 9.0, 1e-12);
}

TEST(Moments, TruncationMarksEquations) {
  const OdeSystem sys = derive_moment_odes(example1_model(), 4, 2);
  const OdeSystem cut = truncate(derive_moment_odes(example1_model(), 1, 2));
  if (sys.status == ClosureStatus::Closed) EXPECT_NE(cut.status, ClosureStatus::NonClosing);
  for (const auto& e : cut.equations)
    for (const auto& t : e.terms) EXPECT_NE(cut.equation_for(t.variable), nullptr);
}

TEST(Rng, CounterStreamsAreDeterministic) {
  CounterRng a(7, 3), b(7, 3), c(7, 4);
  for (int i = 0; i < 10; ++i) {
    const auto x = a.next();
    EXPECT_EQ(x, b.next());
    EXPECT_NE(x, c.next());
  }
  CounterRng u(1, 1);
  for (int i = 0; i < 1000; ++i) {
    const double v = u.uniform();
    EXPECT_GT(v, 0.0);
    EXPECT_LT(v, 1.0);
  }
}

TEST(Simulation, AuditsHoldOnExample1) {
  ModelSpec m = example1_model(3, 1, 2, 1);
  SimulationOptions opt;
  opt.t_max = 4;
  opt.grid = linspace(0, 4, 8);
  opt.audit_constraints = opt.audit_generator = opt.record_events = true;
  for (int run = 0; run < 20; ++run) {
    const Trajectory tr = ssa_simulate(m, Graph{}, 11, run, opt);
    EXPECT_EQ(tr.counts.size(), opt.grid.size());
    for (std::size_t i = 1; i < tr.events.size(); ++i) EXPECT_LE(tr.events[i - 1].time, tr.events[i].time);
  }
}

TEST(Simulation, ConstraintAuditCatchesViolations) {
  ModelSpec m = example1_model();
  m.transitions[2].rule = Rule::make(single_edge(), vertices(2), vertices(2), identity(vertices(2)),
                                     identity(vertices(2)));  // linking without the guard
  m.params["eps_p"] = 50;
  SimulationOptions opt;
  opt.t_max = 5;
  opt.audit_constraints = true;
  EXPECT_THROW(
      {
        for (int run = 0; run < 20; ++run) ssa_simulate(m, vertices(2), 1, run, opt);
      },
      Error);
}

TEST(Simulation, EnsembleIndependentOfThreads) {
  ModelSpec m = example1_model();
  SimulationOptions opt;
  opt.t_max = 2;
  opt.grid = {0.5, 1, 2};
  const EnsembleStats a = ssa_ensemble(m, Graph{}, 5, 40, opt, 1);
  const EnsembleStats b = ssa_ensemble(m, Graph{}, 5, 40, opt, 4);
  EXPECT_EQ(a.mean, b.mean);
  EXPECT_EQ(a.variance, b.variance);
}

TEST(Simulation, EnsembleAgreesWithClosedForm) {
  ModelSpec m = example1_model(2, 1, 1, 1);
  SimulationOptions opt;
  opt.t_max = 2;
  opt.grid = {1, 2};
  const EnsembleStats s = ssa_ensemble(m, Graph{}, 2024, 2000, opt, 2);
  for (std::size_t i = 0; i < s.grid.size(); ++i) {
    const auto exact = closed_form_example1({2, 1, 1, 1}, s.grid[i]);
    for (int k = 0; k < 3; ++k)
      EXPECT_LE(std::abs(s.mean[i][k] - exact[k]), 4 * s.stderr_[i][k] + 1e-12) << s.names[k] << " t=" << s.grid[i];
  }
}
