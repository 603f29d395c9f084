#include "grs/rule.hpp"

#include "grs/matching.hpp"

namespace grs {

const char* to_string(Semantics t) { return t == Semantics::Dpo ? "dpo" : "sqpo"; }

Rule Rule::make(Graph output, Graph context, Graph input, Morphism o, Morphism i, Cond cond) {
  check_mono(context, output, o, "rule output leg");
  check_mono(context, input, i, "rule input leg");
  if (!cond) cond = Condition::make_true(input);
  if (!(cond->root() == input)) throw Error("rule condition is not rooted at the input");
  return Rule{std::move(output), std::move(context), std::move(input), std::move(o), std::move(i), std::move(cond)};
}

Rule Rule::reversed() const { return make(input, context, output, i, o); }

Rule identity_rule(const Graph& p, Cond c) { return Rule::make(p, p, p, identity(p), identity(p), std::move(c)); }

Rule empty_rule() { return Rule::make(Graph{}, Graph{}, Graph{}, {}, {}); }

namespace {

// [f, g] : A + B -> C + D for f : A -> C, g : B -> D.
Morphism sum(const Morphism& f, const Morphism& g, const Graph& c) {
  Morphism m = f;
  for (int v : g.vmap) m.vmap.push_back(v + c.num_vertices());
  for (int e : g.emap) m.emap.push_back(e + c.num_edges());
  return m;
}

// Whether deleting m(I \ K) from X leaves no dangling edge.
bool gluing_holds(const Graph& k, const Graph& in, const Graph& x, const Morphism& i, const Morphism& m) {
  std::vector<char> deleted_v(x.num_vertices(), 0), image_e(x.num_edges(), 0);
  for (int v = 0; v < in.num_vertices(); ++v) deleted_v[m.vmap[v]] = 1;
  for (int v = 0; v < k.num_vertices(); ++v) deleted_v[m.vmap[i.vmap[v]]] = 0;
  for (int e = 0; e < in.num_edges(); ++e) image_e[m.emap[e]] = 1;
  for (int e = 0; e < x.num_edges(); ++e) {
    if (image_e[e]) continue;
    const Edge& ed = x.edge(e);
    if (deleted_v[ed.u] || deleted_v[ed.v]) return false;
  }
  return true;
}

}  // namespace

Rule parallel(const Rule& a, const Rule& b) {
  Graph o = a.output.disjoint_union(b.output);
  Graph k = a.context.disjoint_union(b.context);
  Graph in = a.input.disjoint_union(b.input);
  Cond ca = shift(in, left_injection(a.input), a.cond);
  Cond cb = shift(in, right_injection(a.input, b.input), b.cond);
  Morphism om = sum(a.o, b.o, a.output);
  Morphism im = sum(a.i, b.i, a.input);
  return Rule::make(std::move(o), std::move(k), std::move(in), std::move(om), std::move(im),
                    normalize(Condition::make_and(ca, cb)));
}

std::vector<Morphism> admissible_matches(const Rule& r, const Graph& x, Semantics t) {
  std::vector<Morphism> out;
  for_each_mono(r.input, x, [&](const Morphism& m) {
    if (t == Semantics::Dpo && !gluing_holds(r.context, r.input, x, r.i, m)) return true;
    if (!r.cond->is_true() && !satisfies(x, m, r.cond)) return true;
    out.push_back(m);
    return true;
  });
  return out;
}

int count_admissible_matches(const Rule& r, const Graph& x, Semantics t) {
  int n = 0;
  for_each_mono(r.input, x, [&](const Morphism& m) {
    if (t == Semantics::Dpo && !gluing_holds(r.context, r.input, x, r.i, m)) return true;
    if (!r.cond->is_true() && !satisfies(x, m, r.cond)) return true;
    ++n;
    return true;
  });
  return n;
}

DirectDerivation derive_step(const Rule& r, const Graph& x, const Morphism& m, Semantics t) {
  check_mono(r.input, x, m, "match");
  if (!satisfies(x, m, r.cond)) throw Error("match violates the rule condition");
  DirectDerivation d;
  d.x = x;
  d.match = m;
  if (t == Semantics::Dpo) {
    auto pc = pushout_complement(r.context, r.input, x, r.i, m);
    if (!pc) throw Error("match violates the gluing condition");
    d.d = std::move(pc->graph);
    d.k_to_d = std::move(pc->from_context);
    d.d_to_x = std::move(pc->into_host);
  } else {
    Complement fpc = final_pullback_complement(r.context, r.input, x, r.i, m);
    d.d = std::move(fpc.graph);
    d.k_to_d = std::move(fpc.from_context);
    d.d_to_x = std::move(fpc.into_host);
  }
  Cospan po = pushout(Span{r.output, r.context, d.d, r.o, d.k_to_d});
  d.y = std::move(po.apex);
  d.comatch = std::move(po.from_left);
  d.d_to_y = std::move(po.from_right);
  return d;
}

Graph apply(const Rule& r, const Graph& x, const Morphism& m, Semantics t) {
  return canonical_graph(derive_step(r, x, m, t).y);
}

std::vector<Morphism> dpo_dagger_matches(const Rule& r, const Graph& y) {
  std::vector<Morphism> out;
  for_each_mono(r.output, y, [&](const Morphism& m) {
    if (gluing_holds(r.context, r.output, y, r.o, m)) out.push_back(m);
    return true;
  });
  return out;
}

CanonicalCode rule_key(const Rule& r) {
  // The span as one graph I +_K O with each element tagged K / I-only / O-only.
  Cospan s = pushout(Span{r.input, r.context, r.output, r.i, r.o});
  const Graph& g = s.apex;
  std::vector<int> vin(g.num_vertices(), 0), ein(g.num_edges(), 0);
  for (int v : s.from_left.vmap) vin[v] |= 1;
  for (int v : s.from_right.vmap) vin[v] |= 2;
  for (int e : s.from_left.emap) ein[e] |= 1;
  for (int e : s.from_right.emap) ein[e] |= 2;
  auto tag = [](int mask) { return mask == 3 ? 0 : mask == 1 ? 1 : 2; };
  std::vector<int> vcol(g.num_vertices()), ecol(g.num_edges());
  for (int v = 0; v < g.num_vertices(); ++v) vcol[v] = 3 * g.vertex_label(v) + tag(vin[v]);
  for (int e = 0; e < g.num_edges(); ++e) ecol[e] = 3 * g.edge(e).label + tag(ein[e]);

  const Cond c = normalize(r.cond);
  CanonicalResult res = canonical_search(g, vcol, ecol, !c->is_true());
  CanonicalCode key;
  key.data.push_back(static_cast<int>(res.code.data.size()));
  key.data.insert(key.data.end(), res.code.data.begin(), res.code.data.end());
  if (c->is_true()) return key;
  std::vector<int> best;
  bool have = false;
  for (const auto& lab : res.labelings) {
    std::vector<int> epos_g(g.num_edges());
    for (std::size_t k = 0; k < lab.edge_order.size(); ++k) epos_g[lab.edge_order[k]] = static_cast<int>(k);
    std::vector<int> vpos(r.input.num_vertices()), epos(r.input.num_edges());
    for (int v = 0; v < r.input.num_vertices(); ++v) vpos[v] = lab.vertex_pos[s.from_left.vmap[v]];
    for (int e = 0; e < r.input.num_edges(); ++e) epos[e] = epos_g[s.from_left.emap[e]];
    auto code = condition_code(c, vpos, epos);
    if (!have || code < best) {
      best = std::move(code);
      have = true;
    }
  }
  key.data.insert(key.data.end(), best.begin(), best.end());
  return key;
}

bool rules_equal(const Rule& a, const Rule& b) { return rule_key(a) == rule_key(b); }

}  // namespace grs
