#include "grs/matching.hpp"

#include <algorithm>
#include <unordered_map>

namespace grs {

namespace {

std::uint64_t pair_key(VertexId a, VertexId b, Label l) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(a) << 42) | (static_cast<std::uint64_t>(b) << 20) |
         static_cast<std::uint64_t>(l);
}

class MonoSearch {
 public:
  MonoSearch(const Graph& p, const Graph& x, const MorphismVisitor& visit, const PartialMap* seed)
      : p_(p), x_(x), visit_(visit) {
    vmap_.assign(p.num_vertices(), -1);
    emap_.assign(p.num_edges(), -1);
    used_v_.assign(x.num_vertices(), false);
    used_e_.assign(x.num_edges(), false);
    for (int e = 0; e < x.num_edges(); ++e) {
      const Edge& ed = x.edge(e);
      x_bucket_[pair_key(ed.u, ed.v, ed.label)].push_back(e);
    }
    p_adj_.resize(p.num_vertices());
    for (int e = 0; e < p.num_edges(); ++e) {
      const Edge& ed = p.edge(e);
      ++p_count_[pair_key(ed.u, ed.v, ed.label)];
      p_adj_[ed.u].push_back(e);
      if (!ed.is_loop()) p_adj_[ed.v].push_back(e);
    }
    if (seed) {
      fixed_e_ = seed->emap;
      for (int v = 0; v < p.num_vertices(); ++v) {
        const VertexId t = seed->vmap.empty() ? -1 : seed->vmap[v];
        if (t < 0) continue;
        if (t >= x.num_vertices() || used_v_[t] || x.vertex_label(t) != p.vertex_label(v)) {
          feasible_ = false;
          return;
        }
        vmap_[v] = t;
        used_v_[t] = true;
      }
      for (int v = 0; v < p.num_vertices(); ++v)
        if (vmap_[v] >= 0 && !local_ok(v, vmap_[v])) feasible_ = false;
    }
    if (fixed_e_.empty()) fixed_e_.assign(p.num_edges(), -1);
    build_order();
  }

  bool run() {
    if (!feasible_) return true;
    return assign_vertex(0);
  }

 private:
  void build_order() {
    std::vector<bool> placed(p_.num_vertices(), false);
    for (int v = 0; v < p_.num_vertices(); ++v)
      if (vmap_[v] >= 0) placed[v] = true;
    // Greedy: prefer vertices adjacent to already placed ones, then by degree.
    for (;;) {
      int best = -1, best_conn = -1, best_deg = -1;
      for (int v = 0; v < p_.num_vertices(); ++v) {
        if (placed[v]) continue;
        int conn = 0;
        for (EdgeId e : p_adj_[v]) {
          const Edge& ed = p_.edge(e);
          const VertexId w = ed.u == v ? ed.v : ed.u;
          if (w != v && placed[w]) ++conn;
        }
        const int deg = static_cast<int>(p_adj_[v].size());
        if (conn > best_conn || (conn == best_conn && deg > best_deg)) {
          best = v;
          best_conn = conn;
          best_deg = deg;
        }
      }
      if (best < 0) break;
      placed[best] = true;
      order_.push_back(best);
    }
  }

  int x_count(VertexId a, VertexId b, Label l) const {
    auto it = x_bucket_.find(pair_key(a, b, l));
    return it == x_bucket_.end() ? 0 : static_cast<int>(it->second.size());
  }

  // Edge multiplicities between v and its already-mapped neighbours fit.
  bool local_ok(VertexId v, VertexId t) const {
    for (EdgeId e : p_adj_[v]) {
      const Edge& ed = p_.edge(e);
      const VertexId w = ed.u == v ? ed.v : ed.u;
      const VertexId tw = w == v ? t : vmap_[w];
      if (tw < 0) continue;
      const int need = p_count_.at(pair_key(ed.u, ed.v, ed.label));
      if (x_count(t, tw, ed.label) < need) return false;
    }
    return true;
  }

  bool assign_vertex(std::size_t k) {
    if (k == order_.size()) return assign_edge(0);
    const VertexId v = order_[k];
    const Label l = p_.vertex_label(v);
    for (VertexId t = 0; t < x_.num_vertices(); ++t) {
      if (used_v_[t] || x_.vertex_label(t) != l) continue;
      if (!local_ok(v, t)) continue;
      vmap_[v] = t;
      used_v_[t] = true;
      const bool go_on = assign_vertex(k + 1);
      used_v_[t] = false;
      vmap_[v] = -1;
      if (!go_on) return false;
    }
    return true;
  }

  bool assign_edge(int e) {
    if (e == p_.num_edges()) {
      Morphism m{vmap_, emap_};
      return visit_(m);
    }
    const Edge& ed = p_.edge(e);
    auto it = x_bucket_.find(pair_key(vmap_[ed.u], vmap_[ed.v], ed.label));
    if (it == x_bucket_.end()) return true;
    for (EdgeId t : it->second) {
      if (used_e_[t]) continue;
      if (fixed_e_[e] >= 0 && fixed_e_[e] != t) continue;
      emap_[e] = t;
      used_e_[t] = true;
      const bool go_on = assign_edge(e + 1);
      used_e_[t] = false;
      emap_[e] = -1;
      if (!go_on) return false;
    }
    return true;
  }

  const Graph& p_;
  const Graph& x_;
  const MorphismVisitor& visit_;
  std::vector<VertexId> vmap_;
  std::vector<EdgeId> emap_;
  std::vector<EdgeId> fixed_e_;
  std::vector<bool> used_v_;
  std::vector<bool> used_e_;
  std::vector<VertexId> order_;
  std::vector<std::vector<EdgeId>> p_adj_;
  std::unordered_map<std::uint64_t, std::vector<EdgeId>> x_bucket_;
  std::unordered_map<std::uint64_t, int> p_count_;
  bool feasible_ = true;
};

}  // namespace

PartialMap PartialMap::empty_for(const Graph& p) {
  return PartialMap{std::vector<VertexId>(p.num_vertices(), -1),
                    std::vector<EdgeId>(p.num_edges(), -1)};
}

PartialMap PartialMap::along(const Graph& p, const Morphism& via, const Morphism& h) {
  PartialMap s = empty_for(p);
  for (std::size_t i = 0; i < via.vmap.size(); ++i) s.vmap[via.vmap[i]] = h.vmap[i];
  for (std::size_t i = 0; i < via.emap.size(); ++i) s.emap[via.emap[i]] = h.emap[i];
  return s;
}

bool for_each_mono(const Graph& p, const Graph& x, const MorphismVisitor& visit, const PartialMap* seed) {
  MonoSearch search(p, x, visit, seed);
  return search.run();
}

std::vector<Morphism> enumerate_monos(const Graph& p, const Graph& x) {
  std::vector<Morphism> out;
  for_each_mono(p, x, [&](const Morphism& m) {
    out.push_back(m);
    return true;
  });
  return out;
}

std::vector<Morphism> enumerate_monos(const Graph& p, const Graph& x, const PartialMap& seed) {
  std::vector<Morphism> out;
  for_each_mono(
      p, x,
      [&](const Morphism& m) {
        out.push_back(m);
        return true;
      },
      &seed);
  return out;
}

int count_monos(const Graph& p, const Graph& x) {
  int n = 0;
  for_each_mono(p, x, [&](const Morphism&) {
    ++n;
    return true;
  });
  return n;
}

bool exists_mono(const Graph& p, const Graph& x, const PartialMap* seed) {
  bool found = false;
  for_each_mono(
      p, x,
      [&](const Morphism&) {
        found = true;
        return false;
      },
      seed);
  return found;
}

std::vector<Morphism> enumerate_typed_monos(const Graph& p, const Graph& x, const TypeGraph& t) {
  t.check(p);
  t.check(x);
  return enumerate_monos(p, x);
}

}  // namespace grs
