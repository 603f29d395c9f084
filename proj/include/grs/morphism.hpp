#pragma once

#include <vector>

#include "grs/graph.hpp"

namespace grs {

/// Vertex and edge maps of a graph morphism. The source and target graphs are
/// carried alongside by the caller (spans, rules, conditions).
struct Morphism {
  std::vector<VertexId> vmap;
  std::vector<EdgeId> emap;

  friend bool operator==(const Morphism&, const Morphism&) = default;
  friend auto operator<=>(const Morphism&, const Morphism&) = default;
};

Morphism identity(const Graph& g);
/// The unique morphism out of the empty graph.
inline Morphism from_empty() { return {}; }

/// g ∘ f
Morphism compose(const Morphism& g, const Morphism& f);

/// Homomorphism law plus label preservation (typing commutes).
bool is_homomorphism(const Graph& src, const Graph& tgt, const Morphism& m);
bool is_mono(const Graph& src, const Graph& tgt, const Morphism& m);
bool is_epi(const Graph& src, const Graph& tgt, const Morphism& m);
bool is_iso(const Graph& src, const Graph& tgt, const Morphism& m);

/// Inverse of an isomorphism.
Morphism inverse(const Graph& src, const Graph& tgt, const Morphism& iso);

/// Inclusions of the two summands into a.disjoint_union(b).
Morphism left_injection(const Graph& a);
Morphism right_injection(const Graph& a, const Graph& b);

/// Subgraph of g induced by the kept vertices and edges (edges must have
/// kept endpoints), together with its inclusion into g.
struct Subgraph {
  Graph graph;
  Morphism inclusion;
};
Subgraph make_subgraph(const Graph& g, const std::vector<bool>& keep_vertex,
                       const std::vector<bool>& keep_edge);

/// Relabel g by a bijection; perm.vmap[v] is the new id of v, likewise edges.
Graph permute(const Graph& g, const Morphism& perm);

/// Throws Error unless m : src -> tgt is a homomorphism.
void check_homomorphism(const Graph& src, const Graph& tgt, const Morphism& m, const char* what);
void check_mono(const Graph& src, const Graph& tgt, const Morphism& m, const char* what);

}  // namespace grs
