#pragma once

#include <string>

#include "grs/algebra.hpp"

namespace grs {

/// Outcome of one property instance; `detail` explains a failure.
struct PropertyResult {
  bool ok = true;
  std::string detail;
};

/// (r3 * r2) * r1 == r3 * (r2 * r1).
PropertyResult check_associativity(const Rule& r3, const Rule& r2, const Rule& r1, Semantics t);

/// rho(r2 * r1)|x> == rho(r2) rho(r1)|x>.
PropertyResult check_homomorphism(const Rule& r2, const Rule& r1, const Graph& x, Semantics t);

/// Two-step derivations x => r1 => r2 correspond one to one with one-step
/// derivations along composites: equal multisets of results.
PropertyResult check_concurrency(const Rule& r2, const Rule& r1, const Graph& x, Semantics t);

/// <| rho(r) |x> == <| rho(jump_closure(r)) |x>, and the closure is diagonal.
PropertyResult check_jump_closure(const Rule& r, const Graph& x, Semantics t);

}  // namespace grs
