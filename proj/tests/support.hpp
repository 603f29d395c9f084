#pragma once

#include <cstdint>
#include <functional>
#include <initializer_list>
#include <random>
#include <utility>
#include <vector>

#include "grs/constructions.hpp"
#include "grs/graph.hpp"
#include "grs/morphism.hpp"

namespace grs::testing {

inline Graph make_graph(int n, std::initializer_list<std::pair<int, int>> edges) {
  Graph g;
  for (int i = 0; i < n; ++i) g.add_vertex();
  for (auto [a, b] : edges) g.add_edge(a, b);
  return g;
}

inline Graph vertices(int n) { return make_graph(n, {}); }
inline Graph single_edge() { return make_graph(2, {{0, 1}}); }
inline Graph triangle() { return make_graph(3, {{0, 1}, {1, 2}, {0, 2}}); }

/// Every map of vertices and edges p -> x that is a homomorphism, by brute
/// force over all |V_x|^|V_p| * |E_x|^|E_p| assignments.
inline void brute_force_homs(const Graph& p, const Graph& x, const std::function<void(const Morphism&)>& visit) {
  Morphism m;
  m.vmap.assign(p.num_vertices(), 0);
  m.emap.assign(p.num_edges(), 0);
  const int nv = p.num_vertices(), ne = p.num_edges();
  if ((nv > 0 && x.num_vertices() == 0) || (ne > 0 && x.num_edges() == 0)) return;
  for (;;) {
    if (is_homomorphism(p, x, m)) visit(m);
    int k = 0;
    for (; k < nv + ne; ++k) {
      int& slot = k < nv ? m.vmap[k] : m.emap[k - nv];
      const int limit = k < nv ? x.num_vertices() : x.num_edges();
      if (++slot < limit) break;
      slot = 0;
    }
    if (k == nv + ne) return;
  }
}

inline std::vector<Morphism> brute_force_monos(const Graph& p, const Graph& x) {
  std::vector<Morphism> out;
  brute_force_homs(p, x, [&](const Morphism& m) {
    if (is_mono(p, x, m)) out.push_back(m);
  });
  return out;
}

inline std::vector<Morphism> brute_force_isos(const Graph& a, const Graph& b) {
  std::vector<Morphism> out;
  if (a.num_vertices() != b.num_vertices() || a.num_edges() != b.num_edges()) return out;
  brute_force_homs(a, b, [&](const Morphism& m) {
    if (is_iso(a, b, m)) out.push_back(m);
  });
  return out;
}

/// Random untyped multigraph with loops.
inline Graph random_graph(std::mt19937_64& rng, int max_vertices, int max_edges, int vertex_labels = 1,
                          int edge_labels = 1) {
  std::uniform_int_distribution<int> nv(0, max_vertices);
  Graph g;
  const int n = nv(rng);
  std::uniform_int_distribution<int> vl(0, vertex_labels - 1), el(0, edge_labels - 1);
  for (int i = 0; i < n; ++i) g.add_vertex(vl(rng));
  if (n == 0) return g;
  std::uniform_int_distribution<int> ne(0, max_edges), pick(0, n - 1);
  const int m = ne(rng);
  for (int i = 0; i < m; ++i) g.add_edge(pick(rng), pick(rng), el(rng));
  return g;
}

/// Random subgraph of g with its inclusion.
inline Subgraph random_subgraph(std::mt19937_64& rng, const Graph& g) {
  std::bernoulli_distribution coin(0.5);
  std::vector<bool> kv(g.num_vertices()), ke(g.num_edges());
  for (int v = 0; v < g.num_vertices(); ++v) kv[v] = coin(rng);
  for (int e = 0; e < g.num_edges(); ++e) ke[e] = kv[g.edge(e).u] && kv[g.edge(e).v] && coin(rng);
  return make_subgraph(g, kv, ke);
}

inline Morphism random_permutation(std::mt19937_64& rng, const Graph& g) {
  Morphism p;
  p.vmap.resize(g.num_vertices());
  p.emap.resize(g.num_edges());
  for (int i = 0; i < g.num_vertices(); ++i) p.vmap[i] = i;
  for (int i = 0; i < g.num_edges(); ++i) p.emap[i] = i;
  std::shuffle(p.vmap.begin(), p.vmap.end(), rng);
  std::shuffle(p.emap.begin(), p.emap.end(), rng);
  return p;
}

}  // namespace grs::testing

#include "grs/condition.hpp"

namespace grs::testing {

/// x plus up to `extra_v` fresh vertices and `extra_e` fresh edges, with the
/// inclusion of x as a prefix.
inline std::pair<Graph, Morphism> random_extension(std::mt19937_64& rng, const Graph& x, int extra_v, int extra_e,
                                                   int vertex_labels = 1, int edge_labels = 1) {
  Graph y = x;
  std::uniform_int_distribution<int> nv(0, extra_v), ne(0, extra_e);
  std::uniform_int_distribution<int> vl(0, vertex_labels - 1), el(0, edge_labels - 1);
  const int add_v = nv(rng);
  for (int i = 0; i < add_v; ++i) y.add_vertex(vl(rng));
  if (y.num_vertices() > 0) {
    std::uniform_int_distribution<int> pick(0, y.num_vertices() - 1);
    const int add_e = ne(rng);
    for (int i = 0; i < add_e; ++i) y.add_edge(pick(rng), pick(rng), el(rng));
  }
  return {y, identity(x)};
}

/// Random nested condition over x of the given depth.
inline Cond random_condition(std::mt19937_64& rng, const Graph& x, int depth) {
  std::uniform_int_distribution<int> kind(0, depth > 0 ? 4 : 0);
  switch (kind(rng)) {
    case 0:
      return Condition::make_true(x);
    case 1:
    case 2: {
      auto [y, f] = random_extension(rng, x, 1, 2);
      return Condition::make_exists(x, y, f, random_condition(rng, y, depth - 1));
    }
    case 3:
      return Condition::make_not(random_condition(rng, x, depth - 1));
    default:
      return Condition::make_and(random_condition(rng, x, depth - 1), random_condition(rng, x, depth - 1));
  }
}

inline Cond negative_edge_condition() {
  // not exists (two vertices -> two vertices joined by an edge)
  Graph two = vertices(2);
  Graph linked = make_graph(2, {{0, 1}});
  return Condition::make_not(Condition::make_exists(two, linked, identity(two)));
}

}  // namespace grs::testing

#include "grs/algebra.hpp"
#include "grs/stochastic.hpp"

namespace grs::testing {

/// (• <- empty -> •): delete a vertex and create a fresh one.
inline Rule vertex_replace_rule() { return Rule::make(vertices(1), Graph{}, vertices(1), {}, {}); }

/// (•–• <- •• -> ••; not exists edge): link two unlinked vertices.
inline Rule link_rule() {
  Graph two = vertices(2);
  return Rule::make(single_edge(), two, two, identity(two), identity(two), negative_edge_condition());
}

/// Composite of link_rule after vertex_replace_rule on a shared vertex:
/// (•–• <- • -> ••; true) where the second input vertex is replaced.
inline Rule link_to_fresh_rule() {
  return Rule::make(single_edge(), vertices(1), vertices(2), Morphism{{0}, {}}, Morphism{{0}, {}});
}

inline Rule vertex_delete_rule() { return Rule::make(Graph{}, Graph{}, vertices(1), {}, {}); }
inline Rule vertex_create_rule() { return Rule::make(vertices(1), Graph{}, Graph{}, {}, {}); }

/// Random rule with at most `max_v` vertices on each side, optionally with a
/// random negative or nested condition.
inline Rule random_rule(std::mt19937_64& rng, int max_v, bool with_condition) {
  Graph in = random_graph(rng, max_v, 2);
  Subgraph k = random_subgraph(rng, in);
  Graph out = k.graph;
  Morphism o = identity(k.graph);
  std::uniform_int_distribution<int> extra_v(0, std::max(0, max_v - k.graph.num_vertices()));
  const int add_v = extra_v(rng);
  for (int v = 0; v < add_v; ++v) out.add_vertex();
  if (out.num_vertices() > 0) {
    std::uniform_int_distribution<int> extra_e(0, 2), pick(0, out.num_vertices() - 1);
    const int add_e = extra_e(rng);
    for (int e = 0; e < add_e; ++e) out.add_edge(pick(rng), pick(rng));
  }
  Cond c;
  std::uniform_int_distribution<int> kind(0, 3);
  if (with_condition) {
    switch (kind(rng)) {
      case 0: {
        auto [y, f] = random_extension(rng, in, 1, 1);
        c = Condition::make_not(Condition::make_exists(in, y, f));
        break;
      }
      case 1:
        c = random_condition(rng, in, 1);
        break;
      default:
        break;
    }
  }
  return Rule::make(std::move(out), k.graph, std::move(in), std::move(o), k.inclusion, std::move(c));
}


/// Vertex and edge birth/death on simple graphs, in sesqui-pushout semantics.
inline ModelSpec example1_model(double np = 1, double nm = 1, double ep = 1, double em = 1) {
  ModelSpec m;
  m.semantics = Semantics::Sqpo;
  m.constraints.emplace_back("no_multiedge",
                             Condition::make_not(Condition::make_exists(Graph{}, make_graph(2, {{0, 1}, {0, 1}}), {})));
  const Graph one = vertices(1), two = vertices(2);
  m.transitions.push_back({"vertex_birth", "nu_p", 1, vertex_create_rule(), Semantics::Sqpo});
  m.transitions.push_back({"vertex_death", "nu_m", 1, vertex_delete_rule(), Semantics::Sqpo});
  m.transitions.push_back({"edge_birth", "eps_p", Rational(1, 2), link_rule(), Semantics::Sqpo});
  m.transitions.push_back(
      {"edge_death", "eps_m", Rational(1, 2),
       Rule::make(two, two, single_edge(), identity(two), Morphism{{0, 1}, {}}), Semantics::Sqpo});
  m.observables.push_back({"O_v", identity_rule(one), 1});
  m.observables.push_back({"O_unlinked", identity_rule(two, negative_edge_condition()), Rational(1, 2)});
  m.observables.push_back({"O_edge", identity_rule(single_edge()), Rational(1, 2)});
  m.params = {{"nu_p", np}, {"nu_m", nm}, {"eps_p", ep}, {"eps_m", em}};
  return m;
}

}  // namespace grs::testing
