#include "grs/model_check.hpp"

namespace grs {

bool CheckReport::ok() const {
  for (const auto& i : items)
    if (i.failures > 0) return false;
  return true;
}

namespace {

void record(CheckItem& item, const PropertyResult& r, const std::string& where) {
  ++item.instances;
  if (r.ok) return;
  if (item.failures++ == 0) item.counterexample = where + ": " + r.detail;
}

std::vector<Graph> walk_states(const ModelSpec& m, std::uint64_t seed, int steps) {
  std::vector<Graph> out{m.initial};
  std::vector<CanonicalCode> seen{canonical_form(m.initial)};
  CounterRng rng(seed, 0);
  Graph x = m.initial;
  for (int s = 0; s < steps && !m.transitions.empty(); ++s) {
    std::vector<std::pair<std::size_t, Morphism>> options;
    for (std::size_t j = 0; j < m.transitions.size(); ++j)
      for (auto& mm : admissible_matches(m.transitions[j].rule, x, m.transitions[j].semantics))
        options.emplace_back(j, std::move(mm));
    if (options.empty()) break;
    const auto& [j, mm] = options[rng.below(options.size())];
    x = derive_step(m.transitions[j].rule, x, mm, m.transitions[j].semantics).y;
    CanonicalCode c = canonical_form(x);
    if (std::find(seen.begin(), seen.end(), c) == seen.end()) {
      seen.push_back(std::move(c));
      out.push_back(x);
    }
  }
  return out;
}

}  // namespace

CheckReport check_model(const ModelSpec& m, std::uint64_t seed, int max_triples, int walk_steps) {
  CheckReport rep;
  rep.states = walk_states(m, seed, walk_steps);
  const auto& tr = m.transitions;
  const std::size_t n = tr.size();
  auto item = [](std::string name) {
    CheckItem c;
    c.property = std::move(name);
    return c;
  };
  CheckItem assoc = item("associativity"), hom = item("representation homomorphism"), conc = item("concurrency"),
            jump = item("jump closure"), gen = item("generator conservation"), pres = item("constraint preservation");

  // Associativity: all triples, or a seeded sample.
  const std::size_t total = n * n * n;
  CounterRng rng(seed, 1);
  for (std::size_t k = 0; k < std::min<std::size_t>(total, max_triples); ++k) {
    const std::size_t idx = total <= static_cast<std::size_t>(max_triples) ? k : rng.below(total);
    const auto& a = tr[idx / (n * n)];
    const auto& b = tr[(idx / n) % n];
    const auto& c = tr[idx % n];
    record(assoc, check_associativity(a.rule, b.rule, c.rule, m.semantics),
           a.name + " * " + b.name + " * " + c.name);
  }

  for (std::size_t si = 0; si < rep.states.size(); ++si) {
    const Graph& x = rep.states[si];
    const std::string sname = "state " + std::to_string(si);
    for (const auto& r2 : tr)
      for (const auto& r1 : tr) {
        record(hom, check_homomorphism(r2.rule, r1.rule, x, m.semantics), r2.name + " * " + r1.name + " on " + sname);
        record(conc, check_concurrency(r2.rule, r1.rule, x, m.semantics), r2.name + " after " + r1.name + " on " + sname);
      }
    for (const auto& r : tr) record(jump, check_jump_closure(r.rule, x, r.semantics), r.name + " on " + sname);

    // <| (H - O(H)) |x> = 0, one rate symbol at a time.
    const Generator g = build_generator(m);
    const StateVector s = StateVector::of(x);
    for (std::size_t k = 0; k < g.offdiag.size(); ++k) {
      const Rational out = dual_project(represent(g.offdiag[k].second, s, m.semantics));
      const Rational diag = dual_project(represent(g.diag[k].second, s, m.semantics));
      PropertyResult r;
      if (out != diag) r = {false, "outflow " + to_string(out) + " vs diagonal " + to_string(diag)};
      record(gen, r, g.offdiag[k].first + " on " + sname);
    }

    if (!m.constraints.empty() && m.satisfies_constraints(x))
      for (const auto& t : tr)
        for (const auto& mm : admissible_matches(t.rule, x, t.semantics)) {
          std::string violated;
          PropertyResult r;
          if (!m.satisfies_constraints(derive_step(t.rule, x, mm, t.semantics).y, &violated))
            r = {false, "result violates " + violated};
          record(pres, r, t.name + " on " + sname);
        }
  }
  rep.items = {assoc, hom, conc, jump, gen, pres};
  return rep;
}

}  // namespace grs
