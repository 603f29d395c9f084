#include <gtest/gtest.h>

#include "grs/algebra.hpp"
#include "grs/properties.hpp"
#include "support.hpp"

using namespace grs;
using namespace grs::testing;

TEST(Composition, EmptyRules) {
  EXPECT_EQ(enumerate_composition_matches(empty_rule(), empty_rule(), Semantics::Dpo).size(), 1u);
  EXPECT_EQ(enumerate_composition_matches(empty_rule(), empty_rule(), Semantics::Sqpo).size(), 1u);
}

TEST(Composition, LinkAfterVertexReplacement) {
  auto ms = enumerate_composition_matches(link_rule(), vertex_replace_rule(), Semantics::Dpo);
  EXPECT_EQ(ms.size(), 3u);
  auto back = enumerate_composition_matches(vertex_replace_rule(), link_rule(), Semantics::Dpo);
  EXPECT_EQ(back.size(), 1u);
}

TEST(Composition, UnitalityAndVertexOverlap) {
  std::mt19937_64 rng(2);
  for (int iter = 0; iter < 50; ++iter) {
    Rule r = random_rule(rng, 3, true);
    // A rule with an unsatisfiable condition is the zero operator.
    if (is_provably_false(r.cond).status == FalsityStatus::FalseProven) continue;
    for (Semantics t : {Semantics::Dpo, Semantics::Sqpo}) {
      EXPECT_EQ(product(RuleVector::of(r), RuleVector::of(empty_rule()), t), RuleVector::of(r));
      EXPECT_EQ(product(RuleVector::of(empty_rule()), RuleVector::of(r), t), RuleVector::of(r));
    }
  }
  // Overlapping the replaced vertex gives the unconditioned composite.
  bool found = false;
  for (const auto& m : enumerate_composition_matches(link_rule(), vertex_replace_rule(), Semantics::Dpo))
    if (rules_equal(m.composite, link_to_fresh_rule())) found = true;
  EXPECT_TRUE(found);
}

TEST(Product, LinkAndVertexReplacement) {
  const RuleVector c = RuleVector::of(link_rule()), v = RuleVector::of(vertex_replace_rule());
  RuleVector expected;
  expected.add(parallel(link_rule(), vertex_replace_rule()), 1);
  expected.add(link_to_fresh_rule(), 2);
  EXPECT_EQ(product(c, v, Semantics::Dpo), expected);
  EXPECT_EQ(product(v, c, Semantics::Dpo), RuleVector::of(parallel(link_rule(), vertex_replace_rule())));
}

TEST(Commutator, Examples) {
  const RuleVector d = RuleVector::of(vertex_delete_rule()), w = RuleVector::of(vertex_create_rule());
  EXPECT_TRUE(commutator(d, d, Semantics::Sqpo).is_zero());
  EXPECT_EQ(commutator(d, w, Semantics::Sqpo), RuleVector::of(empty_rule()));
  // Vertex counting observable against vertex creation.
  const RuleVector count = RuleVector::of(identity_rule(vertices(1)));
  EXPECT_EQ(commutator(count, w, Semantics::Dpo), w);
  EXPECT_EQ(commutator(count, d, Semantics::Dpo), Rational(-1) * d);
}

TEST(Represent, Examples) {
  std::mt19937_64 rng(4);
  Graph x = random_graph(rng, 4, 4);
  EXPECT_EQ(represent(RuleVector::of(empty_rule()), StateVector::of(x), Semantics::Dpo), StateVector::of(x));
  Graph ve = make_graph(3, {{1, 2}});
  EXPECT_EQ(represent(RuleVector::of(vertex_replace_rule()), StateVector::of(ve), Semantics::Dpo),
            StateVector::of(ve));
  Graph t = triangle();
  EXPECT_EQ(represent(RuleVector::of(identity_rule(single_edge())), StateVector::of(t), Semantics::Dpo),
            StateVector::of(t, 6));
}

TEST(JumpClosure, Examples) {
  Rule id = identity_rule(single_edge());
  EXPECT_EQ(jump_closure(RuleVector::of(id), Semantics::Dpo), RuleVector::of(id));
  EXPECT_EQ(jump_closure(RuleVector::of(id), Semantics::Sqpo), RuleVector::of(id));
  EXPECT_TRUE(is_diagonal(jump_closure(vertex_replace_rule(), Semantics::Dpo), Semantics::Dpo));
  EXPECT_EQ(dual_project(StateVector{}), Rational(0));
  EXPECT_EQ(dual_project(StateVector::of(triangle())), Rational(1));
}

TEST(Properties, RandomSmallInstances) {
  std::mt19937_64 rng(99);
  for (Semantics t : {Semantics::Dpo, Semantics::Sqpo})
    for (int iter = 0; iter < 25; ++iter) {
      Rule r1 = random_rule(rng, 2, true), r2 = random_rule(rng, 2, true), r3 = random_rule(rng, 2, true);
      Graph x = random_graph(rng, 3, 3);
      auto a = check_associativity(r3, r2, r1, t);
      ASSERT_TRUE(a.ok) << to_string(t) << " " << iter << ": " << a.detail;
      auto h = check_homomorphism(r2, r1, x, t);
      ASSERT_TRUE(h.ok) << to_string(t) << " " << iter << ": " << h.detail;
      auto c = check_concurrency(r2, r1, x, t);
      ASSERT_TRUE(c.ok) << to_string(t) << " " << iter << ": " << c.detail;
      auto j = check_jump_closure(r1, x, t);
      ASSERT_TRUE(j.ok) << to_string(t) << " " << iter << ": " << j.detail;
    }
}
