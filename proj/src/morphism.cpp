#include "grs/morphism.hpp"

#include <utility>
#include <numeric>
#include <string>

namespace grs {

Morphism identity(const Graph& g) {
  Morphism m;
  m.vmap.resize(g.num_vertices());
  m.emap.resize(g.num_edges());
  std::iota(m.vmap.begin(), m.vmap.end(), 0);
  std::iota(m.emap.begin(), m.emap.end(), 0);
  return m;
}

Morphism compose(const Morphism& g, const Morphism& f) {
  Morphism h;
  h.vmap.reserve(f.vmap.size());
  h.emap.reserve(f.emap.size());
  for (VertexId v : f.vmap) h.vmap.push_back(g.vmap.at(v));
  for (EdgeId e : f.emap) h.emap.push_back(g.emap.at(e));
  return h;
}

bool is_homomorphism(const Graph& src, const Graph& tgt, const Morphism& m) {
  if (static_cast<int>(m.vmap.size()) != src.num_vertices() ||
      static_cast<int>(m.emap.size()) != src.num_edges())
    return false;
  for (int v = 0; v < src.num_vertices(); ++v) {
    const VertexId w = m.vmap[v];
    if (w < 0 || w >= tgt.num_vertices() || tgt.vertex_label(w) != src.vertex_label(v)) return false;
  }
  for (int e = 0; e < src.num_edges(); ++e) {
    const EdgeId f = m.emap[e];
    if (f < 0 || f >= tgt.num_edges()) return false;
    const Edge& se = src.edge(e);
    const Edge& te = tgt.edge(f);
    if (se.label != te.label) return false;
    VertexId a = m.vmap[se.u], b = m.vmap[se.v];
    if (a > b) std::swap(a, b);
    if (a != te.u || b != te.v) return false;
  }
  return true;
}

namespace {

bool injective(const std::vector<int>& map, int codomain) {
  std::vector<bool> hit(codomain, false);
  for (int x : map) {
    if (hit[x]) return false;
    hit[x] = true;
  }
  return true;
}

bool surjective(const std::vector<int>& map, int codomain) {
  std::vector<bool> hit(codomain, false);
  for (int x : map) hit[x] = true;
  for (bool b : hit)
    if (!b) return false;
  return true;
}

}  // namespace

bool is_mono(const Graph& src, const Graph& tgt, const Morphism& m) {
  return is_homomorphism(src, tgt, m) && injective(m.vmap, tgt.num_vertices()) &&
         injective(m.emap, tgt.num_edges());
}

bool is_epi(const Graph& src, const Graph& tgt, const Morphism& m) {
  return is_homomorphism(src, tgt, m) && surjective(m.vmap, tgt.num_vertices()) &&
         surjective(m.emap, tgt.num_edges());
}

bool is_iso(const Graph& src, const Graph& tgt, const Morphism& m) {
  return is_mono(src, tgt, m) && src.num_vertices() == tgt.num_vertices() &&
         src.num_edges() == tgt.num_edges();
}

Morphism inverse(const Graph& src, const Graph& tgt, const Morphism& iso) {
  if (!is_iso(src, tgt, iso)) throw Error("inverse: morphism is not an isomorphism");
  Morphism inv;
  inv.vmap.resize(tgt.num_vertices());
  inv.emap.resize(tgt.num_edges());
  for (int v = 0; v < src.num_vertices(); ++v) inv.vmap[iso.vmap[v]] = v;
  for (int e = 0; e < src.num_edges(); ++e) inv.emap[iso.emap[e]] = e;
  return inv;
}

Morphism left_injection(const Graph& a) { return identity(a); }

Morphism right_injection(const Graph& a, const Graph& b) {
  Morphism m = identity(b);
  for (auto& v : m.vmap) v += a.num_vertices();
  for (auto& e : m.emap) e += a.num_edges();
  return m;
}

Subgraph make_subgraph(const Graph& g, const std::vector<bool>& keep_vertex,
                       const std::vector<bool>& keep_edge) {
  Subgraph s;
  std::vector<VertexId> new_id(g.num_vertices(), -1);
  for (int v = 0; v < g.num_vertices(); ++v) {
    if (!keep_vertex[v]) continue;
    new_id[v] = s.graph.add_vertex(g.vertex_label(v));
    s.inclusion.vmap.push_back(v);
  }
  for (int e = 0; e < g.num_edges(); ++e) {
    if (!keep_edge[e]) continue;
    const Edge& ed = g.edge(e);
    if (new_id[ed.u] < 0 || new_id[ed.v] < 0) throw Error("make_subgraph: kept edge has a removed endpoint");
    s.graph.add_edge(new_id[ed.u], new_id[ed.v], ed.label);
    s.inclusion.emap.push_back(e);
  }
  return s;
}

Graph permute(const Graph& g, const Morphism& perm) {
  std::vector<VertexId> old_of(g.num_vertices());
  std::vector<EdgeId> old_edge(g.num_edges());
  for (int v = 0; v < g.num_vertices(); ++v) old_of[perm.vmap[v]] = v;
  for (int e = 0; e < g.num_edges(); ++e) old_edge[perm.emap[e]] = e;
  Graph out;
  for (VertexId v : old_of) out.add_vertex(g.vertex_label(v));
  for (EdgeId e : old_edge) {
    const Edge& ed = g.edge(e);
    out.add_edge(perm.vmap[ed.u], perm.vmap[ed.v], ed.label);
  }
  return out;
}

void check_homomorphism(const Graph& src, const Graph& tgt, const Morphism& m, const char* what) {
  if (!is_homomorphism(src, tgt, m)) throw Error(std::string(what) + ": not a graph homomorphism");
}

void check_mono(const Graph& src, const Graph& tgt, const Morphism& m, const char* what) {
  if (!is_mono(src, tgt, m)) throw Error(std::string(what) + ": not a monomorphism");
}

}  // namespace grs
