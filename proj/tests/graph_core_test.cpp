#include <gtest/gtest.h>

#include <map>
#include <set>

#include "grs/canonical.hpp"
#include "grs/constructions.hpp"
#include "grs/matching.hpp"
#include "support.hpp"

using namespace grs;
using namespace grs::testing;

namespace {

std::vector<Graph> all_small_graphs(int max_v, int max_e) {
  // Every labelled multigraph (loops included) over the edge slots; not
  // deduplicated up to isomorphism.
  std::vector<Graph> out;
  for (int n = 0; n <= max_v; ++n) {
    std::vector<std::pair<int, int>> slots;
    for (int a = 0; a < n; ++a)
      for (int b = a; b < n; ++b) slots.emplace_back(a, b);
    std::vector<int> pick;
    std::function<void(int)> rec = [&](int from) {
      Graph g = vertices(n);
      for (int s : pick) g.add_edge(slots[s].first, slots[s].second);
      out.push_back(g);
      if (static_cast<int>(pick.size()) == max_e) return;
      for (int s = from; s < static_cast<int>(slots.size()); ++s) {
        pick.push_back(s);
        rec(s);
        pick.pop_back();
      }
    };
    rec(0);
  }
  return out;
}

int count_mediators(const Graph& p, const Graph& z, const std::function<bool(const Morphism&)>& ok) {
  int n = 0;
  brute_force_homs(p, z, [&](const Morphism& u) {
    if (ok(u)) ++n;
  });
  return n;
}

}  // namespace

TEST(Graph, IncidenceIsNormalized) {
  Graph g;
  g.add_vertex();
  g.add_vertex();
  g.add_edge(1, 0);
  EXPECT_EQ(g.edge(0).u, 0);
  EXPECT_EQ(g.edge(0).v, 1);
  EXPECT_THROW(g.add_edge(0, 5), Error);
}

TEST(Graph, TypingIsAHomomorphism) {
  TypeGraph t;
  const Label a = t.add_vertex_type("A");
  const Label b = t.add_vertex_type("B");
  const Label bond = t.add_edge_type("bond", a, b);
  const Label phos = t.add_edge_type("phos", a, a);
  Graph g;
  g.add_vertex(a);
  g.add_vertex(b);
  g.add_vertex(a);
  g.add_edge(0, 1, bond);
  g.add_edge(2, 2, phos);
  EXPECT_TRUE(t.types(g));
  // Incidence sets: an A-A edge has image {A}, the incidence of the A loop.
  Graph twin = g;
  twin.add_edge(0, 2, phos);
  EXPECT_TRUE(t.types(twin));
  Graph wrong = g;
  wrong.add_edge(0, 2, bond);
  EXPECT_FALSE(t.types(wrong));
}

TEST(Matching, SmallExamples) {
  EXPECT_EQ(count_monos(vertices(1), vertices(2)), 2);
  EXPECT_EQ(count_monos(Graph{}, triangle()), 1);
  EXPECT_EQ(count_monos(single_edge(), triangle()), 6);
  EXPECT_EQ(count_monos(single_edge(), make_graph(2, {{0, 1}, {0, 1}})), 4);
  EXPECT_EQ(count_monos(make_graph(1, {{0, 0}}), make_graph(2, {{0, 0}, {1, 1}, {0, 0}})), 3);
}

TEST(Matching, AgreesWithBruteForce) {
  std::mt19937_64 rng(7);
  for (int iter = 0; iter < 300; ++iter) {
    Graph p = random_graph(rng, 3, 3, 2, 2);
    Graph x = random_graph(rng, 4, 5, 2, 2);
    auto fast = enumerate_monos(p, x);
    auto slow = brute_force_monos(p, x);
    std::set<Morphism> a(fast.begin(), fast.end()), b(slow.begin(), slow.end());
    ASSERT_EQ(a.size(), fast.size()) << "duplicates";
    ASSERT_EQ(a, b) << p.debug_string() << " -> " << x.debug_string();
  }
}

TEST(Matching, SeedRestrictsImages) {
  Graph p = single_edge();
  PartialMap seed = PartialMap::empty_for(p);
  seed.vmap[0] = 1;
  auto ms = enumerate_monos(p, triangle(), seed);
  EXPECT_EQ(ms.size(), 2u);
  for (const auto& m : ms) EXPECT_EQ(m.vmap[0], 1);
}

TEST(Pushout, Examples) {
  // Empty apex: coproduct.
  Cospan c = pushout(Span{single_edge(), Graph{}, vertices(1), {}, {}});
  EXPECT_EQ(c.apex.num_vertices(), 3);
  EXPECT_EQ(c.apex.num_edges(), 1);
  // Two edges glued along a vertex: path of length 2.
  Span s{single_edge(), vertices(1), single_edge(), Morphism{{1}, {}}, Morphism{{0}, {}}};
  Cospan path = pushout(s);
  EXPECT_TRUE(isomorphic(path.apex, make_graph(3, {{0, 1}, {1, 2}})));
  // Both legs iso.
  Graph t = triangle();
  Cospan same = pushout(Span{t, t, t, identity(t), identity(t)});
  EXPECT_TRUE(isomorphic(same.apex, t));
}

TEST(Pushout, UniversalPropertyByExhaustion) {
  std::mt19937_64 rng(11);
  auto targets = all_small_graphs(3, 2);
  for (int iter = 0; iter < 60; ++iter) {
    Graph a = random_graph(rng, 3, 2);
    Subgraph k = random_subgraph(rng, a);
    Graph b = random_graph(rng, 3, 2);
    auto legs = enumerate_monos(k.graph, b);
    if (legs.empty()) continue;
    Span s{a, k.graph, b, k.inclusion, legs[rng() % legs.size()]};
    Cospan c = pushout(s);
    ASSERT_TRUE(is_homomorphism(a, c.apex, c.from_left));
    ASSERT_TRUE(is_homomorphism(b, c.apex, c.from_right));
    ASSERT_EQ(compose(c.from_left, s.to_left), compose(c.from_right, s.to_right));
    ASSERT_TRUE(is_mono(b, c.apex, c.from_right));
    for (const Graph& z : targets) {
      brute_force_homs(a, z, [&](const Morphism& f) {
        brute_force_homs(b, z, [&](const Morphism& g) {
          if (compose(f, s.to_left) != compose(g, s.to_right)) return;
          const int n = count_mediators(c.apex, z, [&](const Morphism& u) {
            return compose(u, c.from_left) == f && compose(u, c.from_right) == g;
          });
          ASSERT_EQ(n, 1);
        });
      });
    }
  }
}

TEST(Pullback, Examples) {
  Graph t = triangle();
  // Disjoint images.
  Span d = pullback(Cospan{vertices(1), t, vertices(1), Morphism{{0}, {}}, Morphism{{1}, {}}});
  EXPECT_TRUE(d.apex.empty());
  // Identical monos.
  Span same = pullback(Cospan{single_edge(), t, single_edge(), Morphism{{0, 1}, {0}}, Morphism{{0, 1}, {0}}});
  EXPECT_TRUE(isomorphic(same.apex, single_edge()));
  // Edge and vertex meeting in one endpoint.
  Span one = pullback(Cospan{single_edge(), t, vertices(1), Morphism{{0, 1}, {0}}, Morphism{{1}, {}}});
  EXPECT_TRUE(isomorphic(one.apex, vertices(1)));
}

TEST(Pullback, UniversalPropertyByExhaustion) {
  std::mt19937_64 rng(13);
  auto sources = all_small_graphs(2, 2);
  for (int iter = 0; iter < 80; ++iter) {
    Graph d = random_graph(rng, 4, 4);
    Subgraph a = random_subgraph(rng, d);
    Graph b = random_graph(rng, 2, 2);
    std::vector<Morphism> homs;
    brute_force_homs(b, d, [&](const Morphism& h) { homs.push_back(h); });
    if (homs.empty()) continue;
    Cospan c{a.graph, d, b, a.inclusion, homs[rng() % homs.size()]};
    Span p = pullback(c);
    ASSERT_EQ(compose(c.from_left, p.to_left), compose(c.from_right, p.to_right));
    ASSERT_TRUE(is_mono(p.apex, b, p.to_right));
    for (const Graph& z : sources) {
      brute_force_homs(z, a.graph, [&](const Morphism& f) {
        brute_force_homs(z, b, [&](const Morphism& g) {
          if (compose(c.from_left, f) != compose(c.from_right, g)) return;
          int n = 0;
          brute_force_homs(z, p.apex, [&](const Morphism& u) {
            if (compose(p.to_left, u) == f && compose(p.to_right, u) == g) ++n;
          });
          ASSERT_EQ(n, 1);
        });
      });
    }
  }
}

TEST(PushoutComplement, Examples) {
  Graph t = triangle();
  auto same = pushout_complement(t, t, t, identity(t), identity(t));
  ASSERT_TRUE(same);
  EXPECT_TRUE(isomorphic(same->graph, t));

  Graph x = single_edge();
  EXPECT_FALSE(pushout_complement(Graph{}, vertices(1), x, {}, Morphism{{0}, {}}));

  Graph y = make_graph(3, {{1, 2}});
  auto c = pushout_complement(Graph{}, vertices(1), y, {}, Morphism{{0}, {}});
  ASSERT_TRUE(c);
  EXPECT_TRUE(isomorphic(c->graph, single_edge()));
}

TEST(PushoutComplement, AgreesWithSearchOverCandidates) {
  // A complement exists iff some C with K -> C mono and C -> X makes the
  // square a pushout; search over subgraphs C of X containing the image of K.
  std::mt19937_64 rng(17);
  for (int iter = 0; iter < 300; ++iter) {
    Graph x = random_graph(rng, 4, 4);
    Subgraph i = random_subgraph(rng, x);
    Subgraph k = random_subgraph(rng, i.graph);
    const Morphism m = i.inclusion;
    auto fast = pushout_complement(k.graph, i.graph, x, k.inclusion, m);
    // Unique candidate: everything outside m(I) plus the image of K.
    const Morphism mk = compose(m, k.inclusion);
    std::vector<bool> kv(x.num_vertices(), true), ke(x.num_edges(), true);
    for (int v = 0; v < i.graph.num_vertices(); ++v) kv[m.vmap[v]] = false;
    for (int e = 0; e < i.graph.num_edges(); ++e) ke[m.emap[e]] = false;
    for (int v : mk.vmap) kv[v] = true;
    for (int e : mk.emap) ke[e] = true;
    bool dangling = false;
    for (int e = 0; e < x.num_edges(); ++e)
      if (ke[e] && (!kv[x.edge(e).u] || !kv[x.edge(e).v])) dangling = true;
    ASSERT_EQ(static_cast<bool>(fast), !dangling);
    if (!fast) continue;
    Cospan po = pushout(Span{i.graph, k.graph, fast->graph, k.inclusion, fast->from_context});
    ASSERT_TRUE(isomorphic(po.apex, x));
    ASSERT_TRUE(is_mono(fast->graph, x, fast->into_host));
    ASSERT_EQ(compose(fast->into_host, fast->from_context), mk);
  }
}

TEST(FinalPullbackComplement, Examples) {
  Graph t = triangle();
  auto same = final_pullback_complement(t, t, t, identity(t), identity(t));
  EXPECT_TRUE(isomorphic(same.graph, t));

  auto side = final_pullback_complement(Graph{}, vertices(1), single_edge(), {}, Morphism{{0}, {}});
  EXPECT_TRUE(isomorphic(side.graph, vertices(1)));

  auto loop = final_pullback_complement(Graph{}, vertices(1), make_graph(1, {{0, 0}}), {}, Morphism{{0}, {}});
  EXPECT_TRUE(loop.graph.empty());
}

TEST(FinalPullbackComplement, UniversalPropertyByExhaustion) {
  std::mt19937_64 rng(19);
  auto probes = all_small_graphs(2, 2);
  for (int iter = 0; iter < 200; ++iter) {
    Graph d = random_graph(rng, 5, 5);
    Subgraph b = random_subgraph(rng, d);
    Subgraph a = random_subgraph(rng, b.graph);
    Complement c = final_pullback_complement(a.graph, b.graph, d, a.inclusion, b.inclusion);
    ASSERT_TRUE(is_mono(a.graph, c.graph, c.from_context));
    ASSERT_TRUE(is_mono(c.graph, d, c.into_host));
    ASSERT_EQ(compose(c.into_host, c.from_context), compose(b.inclusion, a.inclusion));
    // The square is a pullback: the pullback of (b, c) is A.
    Span pb = pullback(Cospan{b.graph, d, c.graph, b.inclusion, c.into_host});
    ASSERT_TRUE(isomorphic(pb.apex, a.graph));
    // Finality: any g : C' -> D whose pullback along b factors through A
    // factors through C.
    for (const Graph& cp : probes) {
      brute_force_homs(cp, d, [&](const Morphism& g) {
        Span q = pullback(Cospan{b.graph, d, cp, b.inclusion, g});
        std::vector<bool> in_a(b.graph.num_vertices(), false), in_ae(b.graph.num_edges(), false);
        for (int v : a.inclusion.vmap) in_a[v] = true;
        for (int e : a.inclusion.emap) in_ae[e] = true;
        bool factors = true;
        for (int v : q.to_left.vmap) factors = factors && in_a[v];
        for (int e : q.to_left.emap) factors = factors && in_ae[e];
        if (!factors) return;
        std::vector<bool> in_c(d.num_vertices(), false), in_ce(d.num_edges(), false);
        for (int v : c.into_host.vmap) in_c[v] = true;
        for (int e : c.into_host.emap) in_ce[e] = true;
        for (int v : g.vmap) ASSERT_TRUE(in_c[v]);
        for (int e : g.emap) ASSERT_TRUE(in_ce[e]);
      });
    }
  }
}

TEST(EpiMono, Examples) {
  Graph t = triangle();
  auto mono = epi_mono_factorize(single_edge(), t, Morphism{{0, 1}, {0}});
  EXPECT_TRUE(is_iso(single_edge(), mono.image, mono.epi));

  auto collapse = epi_mono_factorize(vertices(2), vertices(1), Morphism{{0, 0}, {}});
  EXPECT_TRUE(isomorphic(collapse.image, vertices(1)));

  Graph dbl = make_graph(2, {{0, 1}, {0, 1}});
  auto onto = epi_mono_factorize(dbl, single_edge(), Morphism{{0, 1}, {0, 0}});
  EXPECT_EQ(onto.image.num_edges(), 1);
  EXPECT_EQ(compose(onto.mono, onto.epi), (Morphism{{0, 1}, {0, 0}}));
}

TEST(EpiMono, UniqueUpToIso) {
  std::mt19937_64 rng(23);
  int checked = 0;
  while (checked < 250) {
    Graph src = random_graph(rng, 4, 3);
    Graph tgt = random_graph(rng, 4, 4);
    std::vector<Morphism> homs;
    brute_force_homs(src, tgt, [&](const Morphism& h) {
      if (homs.size() < 50) homs.push_back(h);
    });
    if (homs.empty()) continue;
    const Morphism f = homs[rng() % homs.size()];
    Factorization fac = epi_mono_factorize(src, tgt, f);
    ASSERT_EQ(compose(fac.mono, fac.epi), f);
    ASSERT_TRUE(is_epi(src, fac.image, fac.epi));
    ASSERT_TRUE(is_mono(fac.image, tgt, fac.mono));
    // Compare with the set-theoretic image.
    std::vector<bool> kv(tgt.num_vertices(), false), ke(tgt.num_edges(), false);
    for (int v : f.vmap) kv[v] = true;
    for (int e : f.emap) ke[e] = true;
    Subgraph img = make_subgraph(tgt, kv, ke);
    ASSERT_TRUE(isomorphic(img.graph, fac.image));
    // The reference pair (e0 : src -> img, inclusion) relates to the computed
    // one by a unique iso phi with mono o phi = inclusion and phi o e0 = epi.
    auto preimage = [](const std::vector<int>& map, int size) {
      std::vector<int> inv(size, -1);
      for (std::size_t k = 0; k < map.size(); ++k) inv[map[k]] = static_cast<int>(k);
      return inv;
    };
    auto inv_img_v = preimage(img.inclusion.vmap, tgt.num_vertices());
    auto inv_img_e = preimage(img.inclusion.emap, tgt.num_edges());
    auto inv_mono_v = preimage(fac.mono.vmap, tgt.num_vertices());
    auto inv_mono_e = preimage(fac.mono.emap, tgt.num_edges());
    Morphism e0, phi;
    for (int v : f.vmap) e0.vmap.push_back(inv_img_v[v]);
    for (int e : f.emap) e0.emap.push_back(inv_img_e[e]);
    for (int v : img.inclusion.vmap) phi.vmap.push_back(inv_mono_v[v]);
    for (int e : img.inclusion.emap) phi.emap.push_back(inv_mono_e[e]);
    ASSERT_TRUE(is_iso(img.graph, fac.image, phi));
    ASSERT_EQ(compose(phi, e0), fac.epi);
    ++checked;
  }
}

TEST(Canonical, Examples) {
  Graph t = triangle();
  std::mt19937_64 rng(29);
  EXPECT_EQ(canonical_form(t), canonical_form(permute(t, random_permutation(rng, t))));
  EXPECT_NE(canonical_form(t), canonical_form(make_graph(3, {{0, 1}, {1, 2}})));
  Graph a = make_graph(4, {{0, 1}, {1, 2}, {2, 3}, {0, 1}});
  Graph b = make_graph(4, {{0, 1}, {1, 2}, {2, 3}, {1, 2}});
  EXPECT_TRUE(brute_force_isos(a, b).empty());
  EXPECT_NE(canonical_form(a), canonical_form(b));
}

TEST(Canonical, InvariantUnderPermutation) {
  std::mt19937_64 rng(31);
  for (int iter = 0; iter < 500; ++iter) {
    Graph g = random_graph(rng, 6, 8, 2, 2);
    Morphism p = random_permutation(rng, g);
    Graph h = permute(g, p);
    ASSERT_TRUE(is_iso(g, h, p));
    ASSERT_EQ(canonical_form(g), canonical_form(h));
    Morphism iso;
    Graph c = canonical_graph(g, &iso);
    ASSERT_TRUE(is_iso(g, c, iso));
    ASSERT_EQ(c, canonical_graph(h));
  }
}

TEST(Canonical, ExactOnSmallCatalog) {
  // Partition every multigraph with <= 3 vertices and <= 3 edges into
  // isomorphism classes by brute force, then compare with the codes.
  auto graphs = all_small_graphs(3, 3);
  std::vector<int> cls(graphs.size(), -1);
  int classes = 0;
  for (std::size_t i = 0; i < graphs.size(); ++i) {
    if (cls[i] >= 0) continue;
    cls[i] = classes;
    for (std::size_t j = i + 1; j < graphs.size(); ++j)
      if (cls[j] < 0 && !brute_force_isos(graphs[i], graphs[j]).empty()) cls[j] = classes;
    ++classes;
  }
  std::map<CanonicalCode, int> code_class;
  for (std::size_t i = 0; i < graphs.size(); ++i) {
    auto [it, fresh] = code_class.emplace(canonical_form(graphs[i]), cls[i]);
    ASSERT_EQ(it->second, cls[i]) << graphs[i].debug_string();
  }
  EXPECT_EQ(static_cast<int>(code_class.size()), classes);
}
