#include "grs/constructions.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace grs {

namespace {

struct UnionFind {
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::vector<int> parent;
};

std::vector<bool> image_mask(const std::vector<int>& map, int n) {
  std::vector<bool> mask(n, false);
  for (int x : map) mask[x] = true;
  return mask;
}

}  // namespace

Cospan pushout(const Span& s) {
  check_homomorphism(s.apex, s.left, s.to_left, "pushout");
  check_homomorphism(s.apex, s.right, s.to_right, "pushout");
  if (!is_mono(s.apex, s.left, s.to_left) && !is_mono(s.apex, s.right, s.to_right))
    throw Error("pushout: neither leg is mono");

  const int nl = s.left.num_vertices(), nr = s.right.num_vertices();
  const int ml = s.left.num_edges(), mr = s.right.num_edges();
  UnionFind vuf(nl + nr), euf(ml + mr);
  for (int v = 0; v < s.apex.num_vertices(); ++v) vuf.unite(s.to_left.vmap[v], nl + s.to_right.vmap[v]);
  for (int e = 0; e < s.apex.num_edges(); ++e) euf.unite(s.to_left.emap[e], ml + s.to_right.emap[e]);

  Cospan c;
  c.left = s.left;
  c.right = s.right;
  // Classes are numbered by first occurrence, left foot first.
  std::vector<int> vclass(nl + nr, -1);
  for (int i = 0; i < nl + nr; ++i) {
    const int r = vuf.find(i);
    if (vclass[r] < 0) {
      const Label l = i < nl ? s.left.vertex_label(i) : s.right.vertex_label(i - nl);
      vclass[r] = c.apex.add_vertex(l);
    }
    vclass[i] = vclass[r];
  }
  std::vector<int> eclass(ml + mr, -1);
  for (int i = 0; i < ml + mr; ++i) {
    const int r = euf.find(i);
    if (eclass[r] < 0) {
      const Edge& ed = i < ml ? s.left.edge(i) : s.right.edge(i - ml);
      const int off = i < ml ? 0 : nl;
      eclass[r] = c.apex.add_edge(vclass[ed.u + off], vclass[ed.v + off], ed.label);
    }
    eclass[i] = eclass[r];
  }
  c.from_left.vmap.assign(vclass.begin(), vclass.begin() + nl);
  c.from_right.vmap.assign(vclass.begin() + nl, vclass.end());
  c.from_left.emap.assign(eclass.begin(), eclass.begin() + ml);
  c.from_right.emap.assign(eclass.begin() + ml, eclass.end());
  return c;
}

Span pullback(const Cospan& c) {
  check_homomorphism(c.left, c.apex, c.from_left, "pullback");
  check_homomorphism(c.right, c.apex, c.from_right, "pullback");
  if (!is_mono(c.left, c.apex, c.from_left) && !is_mono(c.right, c.apex, c.from_right))
    throw Error("pullback: neither leg is mono");

  Span s;
  s.left = c.left;
  s.right = c.right;
  std::vector<std::pair<VertexId, VertexId>> vpairs;
  for (int a = 0; a < c.left.num_vertices(); ++a)
    for (int b = 0; b < c.right.num_vertices(); ++b)
      if (c.from_left.vmap[a] == c.from_right.vmap[b]) {
        vpairs.emplace_back(a, b);
        s.apex.add_vertex(c.left.vertex_label(a));
        s.to_left.vmap.push_back(a);
        s.to_right.vmap.push_back(b);
      }
  auto vertex_of = [&](VertexId a, VertexId b) {
    for (std::size_t i = 0; i < vpairs.size(); ++i)
      if (vpairs[i] == std::make_pair(a, b)) return static_cast<VertexId>(i);
    return VertexId{-1};
  };
  for (int e1 = 0; e1 < c.left.num_edges(); ++e1)
    for (int e2 = 0; e2 < c.right.num_edges(); ++e2) {
      if (c.from_left.emap[e1] != c.from_right.emap[e2]) continue;
      const Edge& x = c.left.edge(e1);
      const Edge& y = c.right.edge(e2);
      std::set<VertexId> inc;
      for (VertexId a : {x.u, x.v})
        for (VertexId b : {y.u, y.v})
          if (c.from_left.vmap[a] == c.from_right.vmap[b]) inc.insert(vertex_of(a, b));
      if (inc.empty() || inc.size() > 2) throw Error("pullback: incidence not representable");
      const VertexId p = *inc.begin(), q = *inc.rbegin();
      s.apex.add_edge(p, q, x.label);
      s.to_left.emap.push_back(e1);
      s.to_right.emap.push_back(e2);
    }
  return s;
}

std::optional<Complement> pushout_complement(const Graph& k_obj, const Graph& i_obj, const Graph& x,
                                             const Morphism& k, const Morphism& m) {
  check_mono(k_obj, i_obj, k, "pushout_complement");
  check_mono(i_obj, x, m, "pushout_complement");
  const auto k_v = image_mask(k.vmap, i_obj.num_vertices());
  const auto k_e = image_mask(k.emap, i_obj.num_edges());
  std::vector<bool> keep_v(x.num_vertices(), true), keep_e(x.num_edges(), true);
  for (int v = 0; v < i_obj.num_vertices(); ++v)
    if (!k_v[v]) keep_v[m.vmap[v]] = false;
  for (int e = 0; e < i_obj.num_edges(); ++e)
    if (!k_e[e]) keep_e[m.emap[e]] = false;
  // Dangling condition.
  for (int e = 0; e < x.num_edges(); ++e) {
    if (!keep_e[e]) continue;
    const Edge& ed = x.edge(e);
    if (!keep_v[ed.u] || !keep_v[ed.v]) return std::nullopt;
  }
  Subgraph sub = make_subgraph(x, keep_v, keep_e);
  Complement c;
  c.graph = std::move(sub.graph);
  c.into_host = std::move(sub.inclusion);
  std::vector<int> vpos(x.num_vertices(), -1), epos(x.num_edges(), -1);
  for (std::size_t i = 0; i < c.into_host.vmap.size(); ++i) vpos[c.into_host.vmap[i]] = static_cast<int>(i);
  for (std::size_t i = 0; i < c.into_host.emap.size(); ++i) epos[c.into_host.emap[i]] = static_cast<int>(i);
  for (VertexId v : k.vmap) c.from_context.vmap.push_back(vpos[m.vmap[v]]);
  for (EdgeId e : k.emap) c.from_context.emap.push_back(epos[m.emap[e]]);
  return c;
}

Complement final_pullback_complement(const Graph& a_obj, const Graph& b_obj, const Graph& d,
                                     const Morphism& a, const Morphism& b) {
  check_mono(a_obj, b_obj, a, "final_pullback_complement");
  check_mono(b_obj, d, b, "final_pullback_complement");
  const auto a_v = image_mask(a.vmap, b_obj.num_vertices());
  const auto a_e = image_mask(a.emap, b_obj.num_edges());
  std::vector<bool> keep_v(d.num_vertices(), true), keep_e(d.num_edges(), true);
  for (int v = 0; v < b_obj.num_vertices(); ++v)
    if (!a_v[v]) keep_v[b.vmap[v]] = false;
  for (int e = 0; e < b_obj.num_edges(); ++e)
    if (!a_e[e]) keep_e[b.emap[e]] = false;
  // Edges whose incidence leaves V_C are removed as a side effect.
  for (int e = 0; e < d.num_edges(); ++e) {
    const Edge& ed = d.edge(e);
    if (!keep_v[ed.u] || !keep_v[ed.v]) keep_e[e] = false;
  }
  Subgraph sub = make_subgraph(d, keep_v, keep_e);
  Complement c;
  c.graph = std::move(sub.graph);
  c.into_host = std::move(sub.inclusion);
  std::vector<int> vpos(d.num_vertices(), -1), epos(d.num_edges(), -1);
  for (std::size_t i = 0; i < c.into_host.vmap.size(); ++i) vpos[c.into_host.vmap[i]] = static_cast<int>(i);
  for (std::size_t i = 0; i < c.into_host.emap.size(); ++i) epos[c.into_host.emap[i]] = static_cast<int>(i);
  for (VertexId v : a.vmap) c.from_context.vmap.push_back(vpos[b.vmap[v]]);
  for (EdgeId e : a.emap) c.from_context.emap.push_back(epos[b.emap[e]]);
  return c;
}

Factorization epi_mono_factorize(const Graph& src, const Graph& tgt, const Morphism& f) {
  check_homomorphism(src, tgt, f, "epi_mono_factorize");
  // Step 1: set-level factorizations of the vertex and edge components.
  std::vector<VertexId> vbar;  // m_V : V̄ -> V'
  std::vector<int> vbar_of(tgt.num_vertices(), -1);
  for (VertexId t : f.vmap)
    if (vbar_of[t] < 0) {
      vbar_of[t] = static_cast<int>(vbar.size());
      vbar.push_back(t);
    }
  std::vector<EdgeId> ebar;  // m_E : Ē -> E'
  std::vector<int> ebar_of(tgt.num_edges(), -1);
  for (EdgeId t : f.emap)
    if (ebar_of[t] < 0) {
      ebar_of[t] = static_cast<int>(ebar.size());
      ebar.push_back(t);
    }
  // Step 2: pullback P of E' -> P(V') <- P(V̄): edges of tgt whose incidence
  // lies in the vertex image.
  std::vector<EdgeId> p_edges;  // p_E : P -> E'
  std::vector<int> p_of(tgt.num_edges(), -1);
  for (int e = 0; e < tgt.num_edges(); ++e) {
    const Edge& ed = tgt.edge(e);
    if (vbar_of[ed.u] >= 0 && vbar_of[ed.v] >= 0) {
      p_of[e] = static_cast<int>(p_edges.size());
      p_edges.push_back(e);
    }
  }
  // Step 3: p : E -> P and its factorization p = m_P ∘ e_P.
  std::vector<int> pbar_of(p_edges.size(), -1);
  std::vector<int> pbar;  // m_P : Ē' -> P
  for (EdgeId e : f.emap) {
    const int pe = p_of[e];
    if (pe < 0) throw Error("epi_mono_factorize: edge image outside the vertex image");
    if (pbar_of[pe] < 0) {
      pbar_of[pe] = static_cast<int>(pbar.size());
      pbar.push_back(pe);
    }
  }
  // Step 4: p_E ∘ m_P is a second factorization of φ_E, hence Ē' ≅ Ē.
  if (pbar.size() != ebar.size()) throw Error("epi_mono_factorize: inconsistent edge images");

  Factorization out;
  for (VertexId t : vbar) out.image.add_vertex(tgt.vertex_label(t));
  for (int pe : pbar) {
    const Edge& ed = tgt.edge(p_edges[pe]);
    out.image.add_edge(vbar_of[ed.u], vbar_of[ed.v], ed.label);
  }
  for (VertexId t : f.vmap) out.epi.vmap.push_back(vbar_of[t]);
  for (EdgeId t : f.emap) out.epi.emap.push_back(pbar_of[p_of[t]]);
  out.mono.vmap = vbar;
  for (int pe : pbar) out.mono.emap.push_back(p_edges[pe]);
  return out;
}

namespace {

class OverlapSearch {
 public:
  OverlapSearch(const Graph& x, const Graph& y, const Morphism& f, const Graph& x2, const Morphism& a,
                const OverlapVisitor& visit)
      : y_(y), x2_(x2), visit_(visit) {
    check_mono(x, y, f, "overlap");
    check_mono(x, x2, a, "overlap");
    vmap_.assign(x2.num_vertices(), kUnset);
    emap_.assign(x2.num_edges(), kUnset);
    used_v_ = image_mask(f.vmap, y.num_vertices());
    used_e_ = image_mask(f.emap, y.num_edges());
    for (std::size_t i = 0; i < a.vmap.size(); ++i) vmap_[a.vmap[i]] = f.vmap[i];
    for (std::size_t i = 0; i < a.emap.size(); ++i) emap_[a.emap[i]] = f.emap[i];
  }

  void run() { vertex_step(0); }

 private:
  static constexpr int kUnset = -1;
  static constexpr int kFresh = -2;

  void vertex_step(int v) {
    if (v == x2_.num_vertices()) return edge_step(0);
    if (vmap_[v] != kUnset) return vertex_step(v + 1);
    for (int t = 0; t < y_.num_vertices(); ++t) {
      if (used_v_[t] || y_.vertex_label(t) != x2_.vertex_label(v)) continue;
      used_v_[t] = true;
      vmap_[v] = t;
      vertex_step(v + 1);
      used_v_[t] = false;
    }
    vmap_[v] = kFresh;
    vertex_step(v + 1);
    vmap_[v] = kUnset;
  }

  void edge_step(int e) {
    if (e == x2_.num_edges()) return emit();
    if (emap_[e] != kUnset) return edge_step(e + 1);
    const Edge& ed = x2_.edge(e);
    const VertexId tu = vmap_[ed.u], tv = vmap_[ed.v];
    if (tu >= 0 && tv >= 0) {
      const VertexId a = std::min(tu, tv), b = std::max(tu, tv);
      for (int t = 0; t < y_.num_edges(); ++t) {
        const Edge& ye = y_.edge(t);
        if (used_e_[t] || ye.label != ed.label || ye.u != a || ye.v != b) continue;
        used_e_[t] = true;
        emap_[e] = t;
        edge_step(e + 1);
        used_e_[t] = false;
      }
    }
    emap_[e] = kFresh;
    edge_step(e + 1);
    emap_[e] = kUnset;
  }

  void emit() {
    Overlap o;
    o.w = y_;
    o.from_y = identity(y_);
    o.from_x2.vmap.resize(x2_.num_vertices());
    o.from_x2.emap.resize(x2_.num_edges());
    for (int v = 0; v < x2_.num_vertices(); ++v)
      o.from_x2.vmap[v] = vmap_[v] == kFresh ? o.w.add_vertex(x2_.vertex_label(v)) : vmap_[v];
    for (int e = 0; e < x2_.num_edges(); ++e) {
      const Edge& ed = x2_.edge(e);
      o.from_x2.emap[e] = emap_[e] == kFresh
                              ? o.w.add_edge(o.from_x2.vmap[ed.u], o.from_x2.vmap[ed.v], ed.label)
                              : emap_[e];
    }
    visit_(o);
  }

  const Graph& y_;
  const Graph& x2_;
  const OverlapVisitor& visit_;
  std::vector<int> vmap_, emap_;
  std::vector<bool> used_v_, used_e_;
};

}  // namespace

void for_each_overlap(const Graph& x, const Graph& y, const Morphism& f, const Graph& x2,
                      const Morphism& a, const OverlapVisitor& visit) {
  OverlapSearch search(x, y, f, x2, a, visit);
  search.run();
}

}  // namespace grs
