#pragma once

#include <vector>

#include "grs/canonical.hpp"
#include "grs/condition.hpp"

namespace grs {

enum class Semantics { Dpo, Sqpo };

const char* to_string(Semantics t);

/// Linear rule with an application condition: (O <- K -> I; c_I).
/// Rules read right to left: I is the input (matched) side.
struct Rule {
  Graph output, context, input;
  Morphism o;  // K -> O
  Morphism i;  // K -> I
  Cond cond;   // over I

  /// Validates monos and the condition root; a null condition means true.
  static Rule make(Graph output, Graph context, Graph input, Morphism o, Morphism i, Cond cond = nullptr);

  /// The rule with input and output exchanged; the condition is reset to true.
  Rule reversed() const;
};

/// (P <- P -> P; c)
Rule identity_rule(const Graph& p, Cond c = nullptr);
/// (empty <- empty -> empty; true)
Rule empty_rule();

/// Disjoint juxtaposition of two rules; conditions are shifted onto the
/// joint input and conjoined.
Rule parallel(const Rule& a, const Rule& b);

/// Monos m : I -> X satisfying the condition and, for DPO, admitting a
/// pushout complement. Ordered lexicographically by vertex images.
std::vector<Morphism> admissible_matches(const Rule& r, const Graph& x, Semantics t);
int count_admissible_matches(const Rule& r, const Graph& x, Semantics t);

/// The double square of a derivation X => Y:
///   O --> Y <-- D --> X <-- I, with K -> D.
struct DirectDerivation {
  Graph x;
  Morphism match;  // I -> X
  Graph d;
  Morphism k_to_d, d_to_x;
  Graph y;
  Morphism d_to_y, comatch;  // O -> Y
};

/// Builds both squares. Throws Error when the match is not admissible.
DirectDerivation derive_step(const Rule& r, const Graph& x, const Morphism& m, Semantics t);
/// Result graph, canonicalized.
Graph apply(const Rule& r, const Graph& x, const Morphism& m, Semantics t);

/// Monos O -> Y for which the output square admits a pushout complement.
std::vector<Morphism> dpo_dagger_matches(const Rule& r, const Graph& y);

/// Isomorphism-invariant key of the rule class: joint canonical code of the
/// span together with the normalized condition.
CanonicalCode rule_key(const Rule& r);
bool rules_equal(const Rule& a, const Rule& b);

}  // namespace grs
