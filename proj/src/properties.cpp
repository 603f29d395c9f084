#include "grs/properties.hpp"

#include <map>
#include <sstream>

namespace grs {

namespace {

std::string describe(const RuleVector& v) {
  std::ostringstream os;
  for (const auto& [k, t] : v.terms()) os << " " << to_string(t.coeff) << "*[" << k.digest() << "]";
  return os.str();
}

std::string describe(const StateVector& s) {
  std::ostringstream os;
  for (const auto& [k, t] : s.terms()) os << " " << to_string(t.coeff) << "*" << t.graph.debug_string();
  return os.str();
}

}  // namespace

PropertyResult check_associativity(const Rule& r3, const Rule& r2, const Rule& r1, Semantics t) {
  const RuleVector a = RuleVector::of(r3), b = RuleVector::of(r2), c = RuleVector::of(r1);
  const RuleVector left = product(product(a, b, t), c, t);
  const RuleVector right = product(a, product(b, c, t), t);
  if (left == right) return {};
  return {false, "left:" + describe(left) + " right:" + describe(right)};
}

PropertyResult check_homomorphism(const Rule& r2, const Rule& r1, const Graph& x, Semantics t) {
  const RuleVector a = RuleVector::of(r2), b = RuleVector::of(r1);
  const StateVector s = StateVector::of(x);
  const StateVector once = represent(product(a, b, t), s, t);
  const StateVector twice = represent(a, represent(b, s, t), t);
  if (once == twice) return {};
  return {false, "product:" + describe(once) + " iterated:" + describe(twice)};
}

PropertyResult check_concurrency(const Rule& r2, const Rule& r1, const Graph& x, Semantics t) {
  std::map<CanonicalCode, int> sequential, composed;
  for (const Morphism& m1 : admissible_matches(r1, x, t)) {
    const Graph x1 = derive_step(r1, x, m1, t).y;
    for (const Morphism& m2 : admissible_matches(r2, x1, t))
      ++sequential[canonical_form(derive_step(r2, x1, m2, t).y)];
  }
  for (const CompositionMatch& mu : enumerate_composition_matches(r2, r1, t))
    for (const Morphism& m : admissible_matches(mu.composite, x, t))
      ++composed[canonical_form(derive_step(mu.composite, x, m, t).y)];
  if (sequential == composed) return {};
  std::ostringstream os;
  os << "two-step derivations: ";
  int n = 0;
  for (const auto& [k, c] : sequential) n += c;
  os << n << ", composite derivations: ";
  n = 0;
  for (const auto& [k, c] : composed) n += c;
  os << n;
  return {false, os.str()};
}

PropertyResult check_jump_closure(const Rule& r, const Graph& x, Semantics t) {
  const Rule j = jump_closure(r, t);
  if (!is_diagonal(j, t)) return {false, "jump closure is not diagonal"};
  const StateVector s = StateVector::of(x);
  const Rational direct = dual_project(represent(RuleVector::of(r), s, t));
  const StateVector diag = represent(RuleVector::of(j), s, t);
  const Rational closed = dual_project(diag);
  if (direct != closed) return {false, "projections " + to_string(direct) + " vs " + to_string(closed)};
  // Diagonal action: a multiple of |x>.
  if (!diag.is_zero() && !(diag == StateVector::of(x, closed)))
    return {false, "closure acts off-diagonally:" + describe(diag)};
  return {};
}

}  // namespace grs
