#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "grs/canonical.hpp"
#include "grs/constructions.hpp"

namespace grs {

class Condition;
using Cond = std::shared_ptr<const Condition>;

/// Nested application condition over a root graph:
/// true | exists(f : root -> Y, c_Y) | not c | c1 and ... and cn.
class Condition {
 public:
  enum class Kind { True, Exists, Not, And };

  Kind kind() const { return kind_; }
  const Graph& root() const { return root_; }
  /// Exists: the embedding root -> inner()->root().
  const Morphism& embedding() const { return embedding_; }
  /// Exists / Not: the single child.
  const Cond& inner() const { return children_.front(); }
  const std::vector<Cond>& children() const { return children_; }

  bool is_true() const { return kind_ == Kind::True; }
  bool is_false() const { return kind_ == Kind::Not && inner()->is_true(); }

  /// Number of nodes plus sizes of all context graphs.
  int weight() const;

  static Cond make_true(Graph root);
  static Cond make_false(Graph root);
  /// exists(f, inner); inner defaults to true over `target`.
  static Cond make_exists(Graph root, Graph target, Morphism f, Cond inner = nullptr);
  static Cond make_not(Cond c);
  static Cond make_and(std::vector<Cond> cs);
  static Cond make_and(Cond a, Cond b) { return make_and(std::vector<Cond>{std::move(a), std::move(b)}); }
  static Cond make_or(std::vector<Cond> cs);
  /// forall(f, c) := not exists(f, not c)
  static Cond make_forall(Graph root, Graph target, Morphism f, Cond inner);

 private:
  Condition(Kind kind, Graph root) : kind_(kind), root_(std::move(root)) {}

  Kind kind_;
  Graph root_;
  Morphism embedding_;
  std::vector<Cond> children_;
};

/// h : root(c) -> z mono.
bool satisfies(const Graph& z, const Morphism& h, const Cond& c);
/// Object satisfaction of a constraint (root must be empty).
bool satisfies(const Graph& z, const Cond& constraint);

/// Condition over y equivalent to c along f : root(c) -> y:
/// g |= shift(f, c)  <=>  g ∘ f |= c, for all monos g out of y.
Cond shift(const Graph& y, const Morphism& f, const Cond& c);

/// Backward transport through a span of monos near <- apex -> far:
/// for a derivation with match m of `near` and comatch n of `far`,
/// m |= trans(s, c)  <=>  n |= c. `c` is rooted at s.right.
Cond trans(const Span& s, const Cond& c);

/// Relabel a condition along an isomorphism iso : root(c) -> new_root.
Cond transport_iso(const Graph& new_root, const Morphism& iso, const Cond& c);

/// Flattens and sorts conjunctions, removes double negation, folds constants,
/// removes duplicate and subsumed conjuncts, and inlines exists along isos.
Cond normalize(const Cond& c);

/// Code of c relative to a numbering of its root. vertex_pos / edge_pos map
/// root elements to positions; the code is invariant under isomorphisms of
/// the nested contexts that fix the root.
std::vector<int> condition_code(const Cond& c, const std::vector<int>& vertex_pos,
                                const std::vector<int>& edge_pos);
/// Code with the root's own numbering.
std::vector<int> condition_code(const Cond& c);

/// Forbidden subgraphs N of a constraint that is a conjunction of
/// not exists(empty -> N); other conjuncts are skipped.
std::vector<Graph> forbidden_patterns(const Cond& constraint);

/// Simplification valid on hosts avoiding every forbidden pattern: an
/// exists(f : root -> Y, ...) whose Y contains one is false.
Cond reduce_modulo(const Cond& c, const std::vector<Graph>& forbidden);

enum class FalsityStatus { FalseProven, SatisfiableWitnessed, Unknown };

struct FalsityResult {
  FalsityStatus status = FalsityStatus::Unknown;
  /// For SatisfiableWitnessed: h : root -> witness.
  Graph witness;
  Morphism witness_morphism;
};

/// Sound satisfiability check: FalseProven only when no mono out of the root
/// satisfies c.
FalsityResult is_provably_false(const Cond& c);

enum class EquivalenceStatus { EquivalentUpToBound, InequivalentWitnessed };

struct EquivalenceResult {
  EquivalenceStatus status = EquivalenceStatus::EquivalentUpToBound;
  Graph witness;
  Morphism witness_morphism;
};

/// Compares satisfaction of c1 and c2 on all monos from the root into graphs
/// with at most `max_vertices` vertices and `max_edges` edges, over the given
/// vertex/edge label alphabets.
EquivalenceResult conditions_equivalent(const Cond& c1, const Cond& c2, int max_vertices, int max_edges,
                                        int vertex_labels = 1, int edge_labels = 1);

/// All graphs up to isomorphism with at most the given numbers of vertices and
/// edges whose labels are < the alphabet sizes. Loops included.
std::vector<Graph> small_graph_catalog(int max_vertices, int max_edges, int vertex_labels = 1,
                                       int edge_labels = 1);

}  // namespace grs
