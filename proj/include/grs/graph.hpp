#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace grs {

using VertexId = int;
using EdgeId = int;
using Label = int;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Incidence of an undirected edge. Endpoints are stored with u <= v; a loop
/// has u == v and corresponds to a one-element incidence set.
struct Edge {
  VertexId u = 0;
  VertexId v = 0;
  Label label = 0;

  bool is_loop() const { return u == v; }
  bool touches(VertexId x) const { return u == x || v == x; }
  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Finite undirected multigraph with labelled vertices and edges.
///
/// Vertex and edge identifiers are dense indices local to the graph. Labels
/// are the typing into a TypeGraph (0 for untyped graphs).
class Graph {
 public:
  Graph() = default;

  VertexId add_vertex(Label label = 0);
  EdgeId add_edge(VertexId a, VertexId b, Label label = 0);

  int num_vertices() const { return static_cast<int>(vertex_labels_.size()); }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  int size() const { return num_vertices() + num_edges(); }
  bool empty() const { return vertex_labels_.empty() && edges_.empty(); }

  Label vertex_label(VertexId v) const { return vertex_labels_.at(v); }
  const Edge& edge(EdgeId e) const { return edges_.at(e); }
  const std::vector<Label>& vertex_labels() const { return vertex_labels_; }
  const std::vector<Edge>& edges() const { return edges_; }

  /// Number of edge ends at v (a loop counts once).
  int degree(VertexId v) const;

  /// Disjoint union; the vertices/edges of `other` are appended.
  Graph disjoint_union(const Graph& other) const;

  /// Structural equality of the representation (not isomorphism).
  friend bool operator==(const Graph&, const Graph&) = default;

  std::string debug_string() const;

 private:
  std::vector<Label> vertex_labels_;
  std::vector<Edge> edges_;
};

/// A graph whose vertices are vertex types and whose edges (including loops)
/// are the admissible edge types. A graph is typed over it when each edge
/// label names a type-graph edge whose incidence is the set of endpoint types.
class TypeGraph {
 public:
  /// One vertex type and one loop edge type: every untyped graph fits.
  static TypeGraph untyped();

  Label add_vertex_type(std::string name);
  Label add_edge_type(std::string name, Label a, Label b);

  const Graph& graph() const { return graph_; }
  const std::string& vertex_type_name(Label l) const { return vertex_names_.at(l); }
  const std::string& edge_type_name(Label l) const { return edge_names_.at(l); }
  int num_vertex_types() const { return graph_.num_vertices(); }
  int num_edge_types() const { return graph_.num_edges(); }

  /// -1 when no such type exists.
  Label find_vertex_type(const std::string& name) const;
  Label find_edge_type(const std::string& name) const;

  /// Whether the labelling of g is a homomorphism into this type graph.
  bool types(const Graph& g) const;
  /// Throws Error describing the first offending element.
  void check(const Graph& g) const;

  bool is_untyped() const { return untyped_; }

 private:
  Graph graph_;
  std::vector<std::string> vertex_names_;
  std::vector<std::string> edge_names_;
  bool untyped_ = false;
};

/// Throws Error if g violates the incidence invariants.
void check_well_formed(const Graph& g);

}  // namespace grs
