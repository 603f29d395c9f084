#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "grs/rule.hpp"

namespace grs {

using Rational = boost::rational<std::int64_t>;

std::string to_string(const Rational& q);

/// Finite rational combination of rule classes. One representative rule is
/// kept per class.
class RuleVector {
 public:
  struct Term {
    Rule rule;
    Rational coeff;
  };

  RuleVector() = default;
  static RuleVector of(const Rule& r, Rational coeff = 1);

  void add(const Rule& r, Rational coeff);
  void add(const CanonicalCode& key, const Rule& r, Rational coeff);
  void add(const RuleVector& v, Rational scale = 1);

  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const std::map<CanonicalCode, Term>& terms() const { return terms_; }
  Rational coefficient(const Rule& r) const;

  friend bool operator==(const RuleVector& a, const RuleVector& b);
  friend RuleVector operator+(RuleVector a, const RuleVector& b) { return a.add(b), a; }
  friend RuleVector operator-(RuleVector a, const RuleVector& b) { return a.add(b, -1), a; }
  friend RuleVector operator*(Rational q, RuleVector v);

 private:
  std::map<CanonicalCode, Term> terms_;
};

/// Finite rational combination of graph isomorphism classes.
class StateVector {
 public:
  struct Term {
    Graph graph;  // canonical representative
    Rational coeff;
  };

  StateVector() = default;
  static StateVector of(const Graph& g, Rational coeff = 1);

  void add(const Graph& g, Rational coeff);
  void add(const StateVector& v, Rational scale = 1);

  bool is_zero() const { return terms_.empty(); }
  const std::map<CanonicalCode, Term>& terms() const { return terms_; }
  Rational coefficient(const Graph& g) const;

  friend bool operator==(const StateVector& a, const StateVector& b);

 private:
  std::map<CanonicalCode, Term> terms_;
};

/// One admissible way of composing r2 after r1: the overlap of I2 and O1
/// glued into N21, and the resulting composite rule.
struct CompositionMatch {
  Graph n21;
  Morphism from_o1;  // O1 -> N21
  Morphism from_i2;  // I2 -> N21
  Rule composite;
  FalsityStatus condition_status = FalsityStatus::Unknown;
};

/// All admissible overlaps of r2's input with r1's output, one per
/// isomorphism class of overlap span, with conditions not provably false.
std::vector<CompositionMatch> enumerate_composition_matches(const Rule& r2, const Rule& r1, Semantics t);

/// Composite of r2 after r1 along the overlap (O1 -> N21 <- I2). Returns
/// nothing when the diagram cannot be completed.
std::optional<Rule> compose_along(const Rule& r2, const Rule& r1, const Graph& n21, const Morphism& from_o1,
                                  const Morphism& from_i2, Semantics t);

/// Bilinear product: sum over composition matches of the composites.
RuleVector product(const RuleVector& v2, const RuleVector& v1, Semantics t);
RuleVector commutator(const RuleVector& a, const RuleVector& b, Semantics t);

/// Canonical representation: sum over admissible matches of the results.
StateVector represent(const RuleVector& v, const StateVector& s, Semantics t);

/// Restriction to hosts avoiding the forbidden patterns: terms whose input
/// contains one vanish, and conditions are simplified with reduce_modulo.
std::optional<Rule> reduce_modulo(const Rule& r, const std::vector<Graph>& forbidden);
RuleVector reduce_modulo(const RuleVector& v, const std::vector<Graph>& forbidden);

/// Diagonal part: (O <- K -> I; c) maps to (I <- K -> I; c) for DPO and to
/// (I <- I -> I; c) for SqPO.
Rule jump_closure(const Rule& r, Semantics t);
RuleVector jump_closure(const RuleVector& v, Semantics t);

/// Sum of coefficients.
Rational dual_project(const StateVector& s);

/// Whether the rule acts diagonally: O and I are identified over K, and for
/// SqPO additionally K -> I is iso.
bool is_diagonal(const Rule& r, Semantics t);

}  // namespace grs
