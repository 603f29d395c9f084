#include "grs/algebra.hpp"

#include "grs/matching.hpp"

namespace grs {

std::string to_string(const Rational& q) {
  if (q.denominator() == 1) return std::to_string(q.numerator());
  return std::to_string(q.numerator()) + "/" + std::to_string(q.denominator());
}

// ---------------------------------------------------------------------------
// Vectors

RuleVector RuleVector::of(const Rule& r, Rational coeff) {
  RuleVector v;
  v.add(r, coeff);
  return v;
}

void RuleVector::add(const Rule& r, Rational coeff) { add(rule_key(r), r, coeff); }

void RuleVector::add(const CanonicalCode& key, const Rule& r, Rational coeff) {
  if (coeff == Rational(0)) return;
  auto it = terms_.find(key);
  if (it == terms_.end()) {
    terms_.emplace(key, Term{r, coeff});
    return;
  }
  it->second.coeff += coeff;
  if (it->second.coeff == Rational(0)) terms_.erase(it);
}

void RuleVector::add(const RuleVector& v, Rational scale) {
  for (const auto& [k, t] : v.terms_) add(k, t.rule, scale * t.coeff);
}

Rational RuleVector::coefficient(const Rule& r) const {
  auto it = terms_.find(rule_key(r));
  return it == terms_.end() ? Rational(0) : it->second.coeff;
}

bool operator==(const RuleVector& a, const RuleVector& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  for (auto i = a.terms_.begin(), j = b.terms_.begin(); i != a.terms_.end(); ++i, ++j)
    if (i->first != j->first || i->second.coeff != j->second.coeff) return false;
  return true;
}

RuleVector operator*(Rational q, RuleVector v) {
  if (q == Rational(0)) return {};
  for (auto& [k, t] : v.terms_) t.coeff *= q;
  return v;
}

StateVector StateVector::of(const Graph& g, Rational coeff) {
  StateVector s;
  s.add(g, coeff);
  return s;
}

void StateVector::add(const Graph& g, Rational coeff) {
  if (coeff == Rational(0)) return;
  Graph c = canonical_graph(g);
  CanonicalCode key = canonical_form(c);
  auto it = terms_.find(key);
  if (it == terms_.end()) {
    terms_.emplace(std::move(key), Term{std::move(c), coeff});
    return;
  }
  it->second.coeff += coeff;
  if (it->second.coeff == Rational(0)) terms_.erase(it);
}

void StateVector::add(const StateVector& v, Rational scale) {
  for (const auto& [k, t] : v.terms_) add(t.graph, scale * t.coeff);
}

Rational StateVector::coefficient(const Graph& g) const {
  auto it = terms_.find(canonical_form(g));
  return it == terms_.end() ? Rational(0) : it->second.coeff;
}

bool operator==(const StateVector& a, const StateVector& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  for (auto i = a.terms_.begin(), j = b.terms_.begin(); i != a.terms_.end(); ++i, ++j)
    if (i->first != j->first || i->second.coeff != j->second.coeff) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Composition

std::optional<Rule> compose_along(const Rule& r2, const Rule& r1, const Graph& n21, const Morphism& from_o1,
                                  const Morphism& from_i2, Semantics t) {
  // Rule 1 run backwards on N21 must be a DPO step in either semantics.
  auto k1 = pushout_complement(r1.context, r1.output, n21, r1.o, from_o1);
  if (!k1) return std::nullopt;
  Cospan in = pushout(Span{r1.input, r1.context, k1->graph, r1.i, k1->from_context});

  Complement k2;
  if (t == Semantics::Dpo) {
    auto pc = pushout_complement(r2.context, r2.input, n21, r2.i, from_i2);
    if (!pc) return std::nullopt;
    k2 = std::move(*pc);
  } else {
    k2 = final_pullback_complement(r2.context, r2.input, n21, r2.i, from_i2);
  }
  Cospan out = pushout(Span{r2.output, r2.context, k2.graph, r2.o, k2.from_context});

  Span k21 = pullback(Cospan{k1->graph, n21, k2.graph, k1->into_host, k2.into_host});
  Morphism i = compose(in.from_right, k21.to_left);
  Morphism o = compose(out.from_right, k21.to_right);

  const Graph& i21 = in.apex;
  std::vector<Cond> parts;
  if (!r1.cond->is_true()) parts.push_back(shift(i21, in.from_left, r1.cond));
  if (!r2.cond->is_true()) {
    Span back{i21, k1->graph, n21, in.from_right, k1->into_host};
    parts.push_back(trans(back, shift(n21, from_i2, r2.cond)));
  }
  Cond c = Condition::make_true(i21);
  if (parts.size() == 1) c = normalize(parts.front());
  if (parts.size() == 2) c = normalize(Condition::make_and(std::move(parts)));
  return Rule::make(out.apex, k21.apex, i21, std::move(o), std::move(i), std::move(c));
}

std::vector<CompositionMatch> enumerate_composition_matches(const Rule& r2, const Rule& r1, Semantics t) {
  std::vector<CompositionMatch> out;
  for_each_overlap(Graph{}, r1.output, Morphism{}, r2.input, Morphism{}, [&](const Overlap& ov) {
    auto r = compose_along(r2, r1, ov.w, ov.from_y, ov.from_x2, t);
    if (!r) return;
    FalsityStatus status = FalsityStatus::SatisfiableWitnessed;
    if (!r->cond->is_true()) status = is_provably_false(r->cond).status;
    if (status == FalsityStatus::FalseProven) return;
    out.push_back(CompositionMatch{ov.w, ov.from_y, ov.from_x2, std::move(*r), status});
  });
  return out;
}

RuleVector product(const RuleVector& v2, const RuleVector& v1, Semantics t) {
  RuleVector out;
  for (const auto& [k2, t2] : v2.terms())
    for (const auto& [k1, t1] : v1.terms())
      for (const auto& m : enumerate_composition_matches(t2.rule, t1.rule, t))
        out.add(m.composite, t2.coeff * t1.coeff);
  return out;
}

RuleVector commutator(const RuleVector& a, const RuleVector& b, Semantics t) {
  return product(a, b, t) - product(b, a, t);
}

StateVector represent(const RuleVector& v, const StateVector& s, Semantics t) {
  StateVector out;
  for (const auto& [kr, tr] : v.terms())
    for (const auto& [ks, ts] : s.terms())
      for (const auto& m : admissible_matches(tr.rule, ts.graph, t))
        out.add(derive_step(tr.rule, ts.graph, m, t).y, tr.coeff * ts.coeff);
  return out;
}

std::optional<Rule> reduce_modulo(const Rule& r, const std::vector<Graph>& forbidden) {
  if (forbidden.empty()) return r;
  for (const Graph& n : forbidden)
    if (exists_mono(n, r.input)) return std::nullopt;
  Cond c = reduce_modulo(r.cond, forbidden);
  if (c->is_false() || is_provably_false(c).status == FalsityStatus::FalseProven) return std::nullopt;
  return Rule::make(r.output, r.context, r.input, r.o, r.i, std::move(c));
}

RuleVector reduce_modulo(const RuleVector& v, const std::vector<Graph>& forbidden) {
  if (forbidden.empty()) return v;
  RuleVector out;
  for (const auto& [k, term] : v.terms())
    if (auto r = reduce_modulo(term.rule, forbidden)) out.add(*r, term.coeff);
  return out;
}

// ---------------------------------------------------------------------------
// Observables

Rule jump_closure(const Rule& r, Semantics t) {
  if (t == Semantics::Dpo) return Rule::make(r.input, r.context, r.input, r.i, r.i, r.cond);
  return identity_rule(r.input, r.cond);
}

RuleVector jump_closure(const RuleVector& v, Semantics t) {
  RuleVector out;
  for (const auto& [k, term] : v.terms()) out.add(jump_closure(term.rule, t), term.coeff);
  return out;
}

Rational dual_project(const StateVector& s) {
  Rational sum = 0;
  for (const auto& [k, term] : s.terms()) sum += term.coeff;
  return sum;
}

bool is_diagonal(const Rule& r, Semantics t) {
  if (r.input.num_vertices() != r.output.num_vertices() || r.input.num_edges() != r.output.num_edges())
    return false;
  if (t == Semantics::Sqpo && !is_iso(r.context, r.input, r.i)) return false;
  const PartialMap seed = PartialMap::along(r.input, r.i, r.o);
  return exists_mono(r.input, r.output, &seed);
}

}  // namespace grs
