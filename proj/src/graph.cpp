#include "grs/graph.hpp"

#include <sstream>
#include <utility>

namespace grs {

VertexId Graph::add_vertex(Label label) {
  vertex_labels_.push_back(label);
  return num_vertices() - 1;
}

EdgeId Graph::add_edge(VertexId a, VertexId b, Label label) {
  if (a < 0 || b < 0 || a >= num_vertices() || b >= num_vertices())
    throw Error("add_edge: endpoint out of range");
  if (a > b) std::swap(a, b);
  edges_.push_back(Edge{a, b, label});
  return num_edges() - 1;
}

int Graph::degree(VertexId v) const {
  int d = 0;
  for (const auto& e : edges_)
    if (e.touches(v)) ++d;
  return d;
}

Graph Graph::disjoint_union(const Graph& other) const {
  Graph g = *this;
  const int offset = num_vertices();
  for (Label l : other.vertex_labels_) g.add_vertex(l);
  for (const auto& e : other.edges_) g.add_edge(e.u + offset, e.v + offset, e.label);
  return g;
}

std::string Graph::debug_string() const {
  std::ostringstream os;
  os << "V[";
  for (int v = 0; v < num_vertices(); ++v) os << (v ? " " : "") << v << ":" << vertex_labels_[v];
  os << "] E[";
  for (int e = 0; e < num_edges(); ++e)
    os << (e ? " " : "") << edges_[e].u << "-" << edges_[e].v << ":" << edges_[e].label;
  os << "]";
  return os.str();
}

void check_well_formed(const Graph& g) {
  for (const auto& e : g.edges()) {
    if (e.u < 0 || e.v < 0 || e.u >= g.num_vertices() || e.v >= g.num_vertices())
      throw Error("edge incidence outside the vertex set");
    if (e.u > e.v) throw Error("edge endpoints not normalized");
  }
}

TypeGraph TypeGraph::untyped() {
  TypeGraph t;
  t.add_vertex_type("_");
  t.add_edge_type("_", 0, 0);
  t.untyped_ = true;
  return t;
}

Label TypeGraph::add_vertex_type(std::string name) {
  if (find_vertex_type(name) >= 0) throw Error("duplicate vertex type '" + name + "'");
  vertex_names_.push_back(std::move(name));
  return graph_.add_vertex(graph_.num_vertices());
}

Label TypeGraph::add_edge_type(std::string name, Label a, Label b) {
  if (find_edge_type(name) >= 0) throw Error("duplicate edge type '" + name + "'");
  edge_names_.push_back(std::move(name));
  return graph_.add_edge(a, b, graph_.num_edges());
}

Label TypeGraph::find_vertex_type(const std::string& name) const {
  for (int i = 0; i < static_cast<int>(vertex_names_.size()); ++i)
    if (vertex_names_[i] == name) return i;
  return -1;
}

Label TypeGraph::find_edge_type(const std::string& name) const {
  for (int i = 0; i < static_cast<int>(edge_names_.size()); ++i)
    if (edge_names_[i] == name) return i;
  return -1;
}

void TypeGraph::check(const Graph& g) const {
  check_well_formed(g);
  for (int v = 0; v < g.num_vertices(); ++v) {
    const Label l = g.vertex_label(v);
    if (l < 0 || l >= graph_.num_vertices())
      throw Error("vertex " + std::to_string(v) + " has unknown type " + std::to_string(l));
  }
  for (int i = 0; i < g.num_edges(); ++i) {
    const Edge& e = g.edge(i);
    if (e.label < 0 || e.label >= graph_.num_edges())
      throw Error("edge " + std::to_string(i) + " has unknown type " + std::to_string(e.label));
    const Edge& t = graph_.edge(e.label);
    Label a = g.vertex_label(e.u), b = g.vertex_label(e.v);
    if (a > b) std::swap(a, b);
    // Typing is a homomorphism: the set of endpoint types must be the
    // incidence of the type edge, so same-type endpoints need a type loop.
    if (a != t.u || b != t.v)
      throw Error("edge " + std::to_string(i) + " of type '" + edge_names_[e.label] +
                  "' does not fit its endpoint types");
  }
}

bool TypeGraph::types(const Graph& g) const {
  try {
    check(g);
    return true;
  } catch (const Error&) {
    return false;
  }
}

}  // namespace grs
