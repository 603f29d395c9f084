#include <gtest/gtest.h>

#include "grs/condition.hpp"
#include "grs/matching.hpp"
#include "support.hpp"

using namespace grs;
using namespace grs::testing;

namespace {

const std::vector<Graph>& probe_graphs() {
  static const std::vector<Graph> graphs = small_graph_catalog(4, 3);
  return graphs;
}

// Checks phi(h) <=> psi(h) for all monos h : root -> Z over the probe catalog.
void expect_same_satisfaction(const Cond& a, const Cond& b) {
  for (const Graph& z : probe_graphs())
    for_each_mono(a->root(), z, [&](const Morphism& h) {
      EXPECT_EQ(satisfies(z, h, a), satisfies(z, h, b)) << z.debug_string();
      return true;
    });
}

}  // namespace

TEST(Satisfaction, Examples) {
  Graph t = triangle();
  EXPECT_TRUE(satisfies(t, identity(t), Condition::make_true(t)));

  Cond two_vertices = Condition::make_exists(Graph{}, vertices(2), from_empty());
  EXPECT_TRUE(satisfies(vertices(2), two_vertices));
  EXPECT_FALSE(satisfies(vertices(1), two_vertices));

  Graph parallel = make_graph(2, {{0, 1}, {0, 1}});
  Cond simple = Condition::make_not(Condition::make_exists(Graph{}, parallel, from_empty()));
  EXPECT_FALSE(satisfies(parallel, simple));
  EXPECT_TRUE(satisfies(triangle(), simple));
}

TEST(Satisfaction, NestedQuantifiersRespectTheRootMatch) {
  // Over a vertex: every neighbour has a loop.
  Graph v = vertices(1);
  Graph nb = make_graph(2, {{0, 1}});
  Graph nb_loop = make_graph(2, {{0, 1}, {1, 1}});
  Cond inner = Condition::make_exists(nb, nb_loop, identity(nb));
  Cond c = Condition::make_forall(v, nb, identity(v), inner);
  Graph z = make_graph(3, {{0, 1}, {1, 1}, {1, 2}});
  EXPECT_TRUE(satisfies(z, Morphism{{0}, {}}, c));
  EXPECT_FALSE(satisfies(z, Morphism{{1}, {}}, c));  // neighbour 2 has no loop
  EXPECT_TRUE(satisfies(z, Morphism{{2}, {}}, c));
}

TEST(Shift, Examples) {
  Graph y = vertices(2);
  Morphism f{{0}, {}};
  EXPECT_TRUE(shift(y, f, Condition::make_true(vertices(1)))->is_true());

  std::mt19937_64 rng(3);
  Cond c = random_condition(rng, vertices(1), 2);
  expect_same_satisfaction(shift(vertices(1), identity(vertices(1)), c), c);
}

TEST(Shift, NegatedEdgeAlongVertexInclusion) {
  // Over one vertex: it has no neighbour. Shifted along one vertex -> two.
  Graph x = vertices(1);
  Cond c = Condition::make_not(Condition::make_exists(x, single_edge(), Morphism{{0}, {}}));
  Graph y = vertices(2);
  Morphism f{{0}, {}};
  Cond shifted = shift(y, f, c);
  for (const Graph& z : probe_graphs())
    for_each_mono(y, z, [&](const Morphism& g) {
      EXPECT_EQ(satisfies(z, compose(g, f), c), satisfies(z, g, shifted));
      return true;
    });
}

TEST(Shift, SoundOnRandomInstances) {
  std::mt19937_64 rng(41);
  for (int iter = 0; iter < 60; ++iter) {
    Graph x = random_graph(rng, 2, 1);
    auto [y, f] = random_extension(rng, x, 1, 1);
    Cond c = random_condition(rng, x, 2);
    Cond s = shift(y, f, c);
    for (const Graph& z : probe_graphs())
      for_each_mono(y, z, [&](const Morphism& g) {
        const bool lhs = satisfies(z, compose(g, f), c);
        const bool rhs = satisfies(z, g, s);
        EXPECT_EQ(lhs, rhs) << "iteration " << iter << " in " << z.debug_string();
        return lhs == rhs;
      });
    if (::testing::Test::HasFailure()) return;
  }
}

TEST(Normalize, PreservesSatisfaction) {
  std::mt19937_64 rng(43);
  for (int iter = 0; iter < 80; ++iter) {
    Graph x = random_graph(rng, 2, 1);
    Cond c = random_condition(rng, x, 3);
    Cond n = normalize(c);
    EXPECT_EQ(condition_code(normalize(n)), condition_code(n)) << "idempotent";
    expect_same_satisfaction(c, n);
    if (::testing::Test::HasFailure()) return;
  }
}

TEST(Normalize, DeMorganAndDoubleNegation) {
  std::mt19937_64 rng(47);
  Graph x = vertices(1);
  Cond a = random_condition(rng, x, 2), b = random_condition(rng, x, 2);
  Cond lhs = Condition::make_not(Condition::make_and(a, b));
  Cond rhs = Condition::make_or({Condition::make_not(a), Condition::make_not(b)});
  EXPECT_EQ(condition_code(normalize(lhs)), condition_code(normalize(rhs)));
  EXPECT_EQ(condition_code(normalize(Condition::make_not(Condition::make_not(a)))), condition_code(normalize(a)));
}

TEST(ConditionCode, InvariantUnderContextRelabelling) {
  Graph x = vertices(1);
  Graph y1 = make_graph(3, {{0, 1}, {0, 2}, {2, 2}});
  Graph y2 = make_graph(3, {{0, 2}, {0, 1}, {1, 1}});
  Cond c1 = Condition::make_exists(x, y1, Morphism{{0}, {}});
  Cond c2 = Condition::make_exists(x, y2, Morphism{{0}, {}});
  EXPECT_EQ(condition_code(c1), condition_code(c2));
  Cond c3 = Condition::make_exists(x, y2, Morphism{{1}, {}});
  EXPECT_NE(condition_code(c1), condition_code(c3));
}

TEST(Falsity, Examples) {
  Graph x = vertices(2);
  Cond c = Condition::make_exists(x, make_graph(2, {{0, 1}}), identity(x));
  EXPECT_EQ(is_provably_false(Condition::make_and(c, Condition::make_not(c))).status, FalsityStatus::FalseProven);

  auto t = is_provably_false(Condition::make_true(x));
  EXPECT_EQ(t.status, FalsityStatus::SatisfiableWitnessed);
  EXPECT_EQ(t.witness_morphism, identity(x));

  Cond no_parallel = Condition::make_not(Condition::make_exists(Graph{}, make_graph(2, {{0, 1}, {0, 1}}), from_empty()));
  auto w = is_provably_false(no_parallel);
  ASSERT_EQ(w.status, FalsityStatus::SatisfiableWitnessed);
  EXPECT_TRUE(satisfies(w.witness, w.witness_morphism, no_parallel));
  EXPECT_TRUE(satisfies(vertices(1), no_parallel));
}

TEST(Falsity, NeverClaimsFalseWithABruteForceWitness) {
  std::mt19937_64 rng(53);
  for (int iter = 0; iter < 300; ++iter) {
    Graph x = random_graph(rng, 2, 1);
    Cond c = random_condition(rng, x, 3);
    auto r = is_provably_false(c);
    if (r.status == FalsityStatus::SatisfiableWitnessed) {
      ASSERT_TRUE(satisfies(r.witness, r.witness_morphism, c));
      continue;
    }
    if (r.status != FalsityStatus::FalseProven) continue;
    for (const Graph& z : probe_graphs())
      for_each_mono(x, z, [&](const Morphism& h) {
        EXPECT_FALSE(satisfies(z, h, c)) << "iteration " << iter;
        return true;
      });
    if (::testing::Test::HasFailure()) return;
  }
}

TEST(Equivalence, Examples) {
  std::mt19937_64 rng(59);
  Graph x = vertices(1);
  Cond c = random_condition(rng, x, 2);
  EXPECT_EQ(conditions_equivalent(c, c, 3, 2).status, EquivalenceStatus::EquivalentUpToBound);

  Graph y = make_graph(2, {{0, 1}});
  Cond inner = Condition::make_exists(y, make_graph(2, {{0, 1}, {1, 1}}), identity(y));
  Cond forall = Condition::make_forall(x, y, Morphism{{0}, {}}, inner);
  Cond expanded = Condition::make_not(Condition::make_exists(x, y, Morphism{{0}, {}}, Condition::make_not(inner)));
  EXPECT_EQ(conditions_equivalent(forall, expanded, 3, 3).status, EquivalenceStatus::EquivalentUpToBound);

  Cond two = Condition::make_exists(Graph{}, vertices(2), from_empty());
  auto r = conditions_equivalent(two, Condition::make_true(Graph{}), 3, 2);
  ASSERT_EQ(r.status, EquivalenceStatus::InequivalentWitnessed);
  EXPECT_TRUE(r.witness.empty());
}

TEST(Catalog, CountsMatchKnownValues) {
  // Multigraphs with loops up to isomorphism: 1 vertex and <= 2 edges gives
  // 3 graphs; 2 vertices and <= 1 edge gives 3 (empty, loop, link).
  auto graphs = small_graph_catalog(1, 2);
  EXPECT_EQ(graphs.size(), 4u);  // plus the empty graph
  EXPECT_EQ(small_graph_catalog(2, 1).size(), 1u + 2u + 3u);
}

TEST(ReduceModulo, ExtractsForbiddenPatterns) {
  Graph parallel = make_graph(2, {{0, 1}, {0, 1}});
  Graph loop = make_graph(1, {{0, 0}});
  Cond c = Condition::make_and(Condition::make_not(Condition::make_exists(Graph{}, parallel, from_empty())),
                               Condition::make_not(Condition::make_exists(Graph{}, loop, from_empty())));
  const auto f = forbidden_patterns(c);
  ASSERT_EQ(f.size(), 2u);
  EXPECT_EQ(forbidden_patterns(Condition::make_exists(Graph{}, loop, from_empty())).size(), 0u);
}

TEST(ReduceModulo, DropsBranchesThatNeedAForbiddenPattern) {
  // Over an edge: "there is a parallel edge" is false on simple graphs, so its
  // negation is true.
  Graph e = single_edge();
  Graph parallel = make_graph(2, {{0, 1}, {0, 1}});
  Cond has_parallel = Condition::make_exists(e, parallel, identity(e));
  const std::vector<Graph> forbidden{parallel};
  EXPECT_TRUE(reduce_modulo(has_parallel, forbidden)->is_false());
  EXPECT_TRUE(reduce_modulo(Condition::make_not(has_parallel), forbidden)->is_true());
  // A branch that does not contain the pattern is left alone.
  Graph path = make_graph(3, {{0, 1}, {1, 2}});
  Cond has_path = Condition::make_exists(e, path, Morphism{{0, 1}, {0}});
  EXPECT_EQ(condition_code(reduce_modulo(has_path, forbidden)), condition_code(normalize(has_path)));
}

TEST(ReduceModulo, AgreesWithSatisfactionOnGraphsAvoidingThePatterns) {
  std::mt19937_64 rng(17);
  const Graph parallel = make_graph(2, {{0, 1}, {0, 1}});
  const std::vector<Graph> forbidden{parallel};
  for (int trial = 0; trial < 60; ++trial) {
    Graph x = random_graph(rng, 2, 1);
    Cond c = random_condition(rng, x, 2);
    Cond r = reduce_modulo(c, forbidden);
    for (const Graph& z : probe_graphs()) {
      if (exists_mono(parallel, z)) continue;
      for_each_mono(x, z, [&](const Morphism& h) {
        EXPECT_EQ(satisfies(z, h, c), satisfies(z, h, r)) << z.debug_string();
        return true;
      });
    }
  }
}
