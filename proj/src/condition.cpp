#include "grs/condition.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <tuple>

#include "grs/matching.hpp"

namespace grs {

// ---------------------------------------------------------------------------
// Construction

Cond Condition::make_true(Graph root) {
  return Cond(new Condition(Kind::True, std::move(root)));
}

Cond Condition::make_false(Graph root) { return make_not(make_true(std::move(root))); }

Cond Condition::make_exists(Graph root, Graph target, Morphism f, Cond inner) {
  check_mono(root, target, f, "exists");
  if (!inner) inner = make_true(target);
  if (!(inner->root() == target)) throw Error("exists: inner condition is not rooted at the embedding target");
  auto* c = new Condition(Kind::Exists, std::move(root));
  c->embedding_ = std::move(f);
  c->children_.push_back(std::move(inner));
  return Cond(c);
}

Cond Condition::make_not(Cond inner) {
  auto* c = new Condition(Kind::Not, inner->root());
  c->children_.push_back(std::move(inner));
  return Cond(c);
}

Cond Condition::make_and(std::vector<Cond> cs) {
  if (cs.empty()) throw Error("and: needs at least one operand");
  for (const auto& x : cs)
    if (!(x->root() == cs.front()->root())) throw Error("and: operands have different roots");
  auto* c = new Condition(Kind::And, cs.front()->root());
  c->children_ = std::move(cs);
  return Cond(c);
}

Cond Condition::make_or(std::vector<Cond> cs) {
  if (cs.empty()) throw Error("or: needs at least one operand");
  for (auto& x : cs) x = make_not(std::move(x));
  return make_not(make_and(std::move(cs)));
}

Cond Condition::make_forall(Graph root, Graph target, Morphism f, Cond inner) {
  return make_not(make_exists(std::move(root), std::move(target), std::move(f), make_not(std::move(inner))));
}

int Condition::weight() const {
  int w = 1;
  if (kind_ == Kind::Exists) w += inner()->root().size();
  for (const auto& c : children_) w += c->weight();
  return w;
}

namespace {

Cond or_of(const Graph& root, std::vector<Cond> cs) {
  if (cs.empty()) return Condition::make_false(root);
  if (cs.size() == 1) return cs.front();
  return Condition::make_or(std::move(cs));
}

Cond and_of(const Graph& root, std::vector<Cond> cs) {
  if (cs.empty()) return Condition::make_true(root);
  if (cs.size() == 1) return cs.front();
  return Condition::make_and(std::move(cs));
}

}  // namespace

// ---------------------------------------------------------------------------
// Satisfaction

bool satisfies(const Graph& z, const Morphism& h, const Cond& c) {
  switch (c->kind()) {
    case Condition::Kind::True:
      return true;
    case Condition::Kind::Not:
      return !satisfies(z, h, c->inner());
    case Condition::Kind::And:
      return std::all_of(c->children().begin(), c->children().end(),
                         [&](const Cond& x) { return satisfies(z, h, x); });
    case Condition::Kind::Exists: {
      const Graph& y = c->inner()->root();
      const PartialMap seed = PartialMap::along(y, c->embedding(), h);
      bool found = false;
      for_each_mono(
          y, z,
          [&](const Morphism& g) {
            found = satisfies(z, g, c->inner());
            return !found;
          },
          &seed);
      return found;
    }
  }
  return false;
}

bool satisfies(const Graph& z, const Cond& constraint) {
  if (!constraint->root().empty()) throw Error("constraint is not rooted at the empty graph");
  return satisfies(z, from_empty(), constraint);
}

// ---------------------------------------------------------------------------
// Shift, Trans

Cond shift(const Graph& y, const Morphism& f, const Cond& c) {
  check_mono(c->root(), y, f, "shift");
  switch (c->kind()) {
    case Condition::Kind::True:
      return Condition::make_true(y);
    case Condition::Kind::Not:
      return normalize(Condition::make_not(shift(y, f, c->inner())));
    case Condition::Kind::And: {
      std::vector<Cond> parts;
      for (const auto& x : c->children()) parts.push_back(shift(y, f, x));
      return normalize(Condition::make_and(std::move(parts)));
    }
    case Condition::Kind::Exists: {
      std::vector<Cond> alternatives;
      for_each_overlap(c->root(), y, f, c->inner()->root(), c->embedding(), [&](const Overlap& o) {
        alternatives.push_back(
            Condition::make_exists(y, o.w, o.from_y, shift(o.w, o.from_x2, c->inner())));
      });
      return normalize(or_of(y, std::move(alternatives)));
    }
  }
  return nullptr;
}

Cond trans(const Span& s, const Cond& c) {
  if (!(c->root() == s.right)) throw Error("trans: condition root does not match the span");
  check_mono(s.apex, s.left, s.to_left, "trans");
  check_mono(s.apex, s.right, s.to_right, "trans");
  switch (c->kind()) {
    case Condition::Kind::True:
      return Condition::make_true(s.left);
    case Condition::Kind::Not:
      return Condition::make_not(trans(s, c->inner()));
    case Condition::Kind::And: {
      std::vector<Cond> parts;
      for (const auto& x : c->children()) parts.push_back(trans(s, x));
      return Condition::make_and(std::move(parts));
    }
    case Condition::Kind::Exists: {
      const Graph& w = c->inner()->root();
      auto pc = pushout_complement(s.apex, s.right, w, s.to_right, c->embedding());
      if (!pc) return Condition::make_false(s.left);
      Cospan po = pushout(Span{s.left, s.apex, pc->graph, s.to_left, pc->from_context});
      Span next{po.apex, pc->graph, w, po.from_right, pc->into_host};
      return Condition::make_exists(s.left, po.apex, po.from_left, trans(next, c->inner()));
    }
  }
  return nullptr;
}

Cond transport_iso(const Graph& new_root, const Morphism& iso, const Cond& c) {
  switch (c->kind()) {
    case Condition::Kind::True:
      return Condition::make_true(new_root);
    case Condition::Kind::Not:
      return Condition::make_not(transport_iso(new_root, iso, c->inner()));
    case Condition::Kind::And: {
      std::vector<Cond> parts;
      for (const auto& x : c->children()) parts.push_back(transport_iso(new_root, iso, x));
      return Condition::make_and(std::move(parts));
    }
    case Condition::Kind::Exists: {
      Morphism back = inverse(c->root(), new_root, iso);
      return Condition::make_exists(new_root, c->inner()->root(), compose(c->embedding(), back), c->inner());
    }
  }
  return nullptr;
}

// ---------------------------------------------------------------------------
// Normalization and codes

namespace {

enum CodeTag { kTrue = 1, kNot = 2, kAnd = 3, kExists = 4 };

void append_block(std::vector<int>& out, const std::vector<int>& block) {
  out.push_back(static_cast<int>(block.size()));
  out.insert(out.end(), block.begin(), block.end());
}

bool is_simple_exists(const Cond& c) {
  return c->kind() == Condition::Kind::Exists && c->inner()->is_true();
}

bool is_negated_simple_exists(const Cond& c) {
  return c->kind() == Condition::Kind::Not && is_simple_exists(c->inner());
}

// exists(a) implies exists(b) when b's context embeds into a's over the root.
bool simple_exists_implies(const Cond& a, const Cond& b) {
  const Graph& wa = a->inner()->root();
  const Graph& wb = b->inner()->root();
  const PartialMap seed = PartialMap::along(wb, b->embedding(), a->embedding());
  return exists_mono(wb, wa, &seed);
}

}  // namespace

Cond normalize(const Cond& c) {
  switch (c->kind()) {
    case Condition::Kind::True:
      return c;
    case Condition::Kind::Not: {
      Cond n = normalize(c->inner());
      if (n->kind() == Condition::Kind::Not) return n->inner();
      return Condition::make_not(std::move(n));
    }
    case Condition::Kind::Exists: {
      Cond n = normalize(c->inner());
      if (n->is_false()) return Condition::make_false(c->root());
      if (is_iso(c->root(), n->root(), c->embedding()))
        return normalize(transport_iso(c->root(), inverse(c->root(), n->root(), c->embedding()), n));
      Graph target = n->root();
      return Condition::make_exists(c->root(), std::move(target), c->embedding(), std::move(n));
    }
    case Condition::Kind::And: {
      std::vector<Cond> flat;
      for (const auto& x : c->children()) {
        Cond n = normalize(x);
        if (n->is_true()) continue;
        if (n->is_false()) return n;
        if (n->kind() == Condition::Kind::And)
          flat.insert(flat.end(), n->children().begin(), n->children().end());
        else
          flat.push_back(std::move(n));
      }
      // Deduplicate by code; detect x and not x.
      std::vector<std::pair<std::vector<int>, Cond>> coded;
      for (auto& x : flat) {
        auto code = condition_code(x);
        bool dup = false;
        for (const auto& [k, _] : coded)
          if (k == code) dup = true;
        if (!dup) coded.emplace_back(std::move(code), std::move(x));
      }
      for (const auto& [k, x] : coded) {
        if (x->kind() != Condition::Kind::Not) continue;
        const auto inner_code = condition_code(x->inner());
        for (const auto& [k2, y] : coded)
          if (k2 == inner_code) return Condition::make_false(c->root());
      }
      // Subsumption among simple (negated) existentials.
      std::vector<bool> drop(coded.size(), false);
      for (std::size_t i = 0; i < coded.size(); ++i)
        for (std::size_t j = 0; j < coded.size(); ++j) {
          if (i == j || drop[i] || drop[j]) continue;
          const Cond& a = coded[i].second;
          const Cond& b = coded[j].second;
          // not exists(a) implies not exists(b) if exists(b) implies exists(a).
          if (is_negated_simple_exists(a) && is_negated_simple_exists(b) &&
              simple_exists_implies(b->inner(), a->inner()))
            drop[j] = true;
          // exists(a) implies exists(b): b is redundant.
          else if (is_simple_exists(a) && is_simple_exists(b) && simple_exists_implies(a, b))
            drop[j] = true;
        }
      std::vector<std::pair<std::vector<int>, Cond>> kept;
      for (std::size_t i = 0; i < coded.size(); ++i)
        if (!drop[i]) kept.push_back(std::move(coded[i]));
      std::sort(kept.begin(), kept.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
      std::vector<Cond> out;
      for (auto& [k, x] : kept) out.push_back(std::move(x));
      return and_of(c->root(), std::move(out));
    }
  }
  return c;
}

std::vector<int> condition_code(const Cond& c, const std::vector<int>& vertex_pos,
                                const std::vector<int>& edge_pos) {
  std::vector<int> out;
  switch (c->kind()) {
    case Condition::Kind::True:
      out.push_back(kTrue);
      break;
    case Condition::Kind::Not:
      out.push_back(kNot);
      append_block(out, condition_code(c->inner(), vertex_pos, edge_pos));
      break;
    case Condition::Kind::And: {
      out.push_back(kAnd);
      std::vector<std::vector<int>> parts;
      for (const auto& x : c->children()) parts.push_back(condition_code(x, vertex_pos, edge_pos));
      std::sort(parts.begin(), parts.end());
      out.push_back(static_cast<int>(parts.size()));
      for (const auto& p : parts) append_block(out, p);
      break;
    }
    case Condition::Kind::Exists: {
      const Graph& root = c->root();
      const Graph& y = c->inner()->root();
      const Morphism& f = c->embedding();
      const int nv = root.num_vertices(), ne = root.num_edges();
      std::vector<int> vcol(y.num_vertices(), -1), ecol(y.num_edges(), -1);
      for (int v = 0; v < nv; ++v) vcol[f.vmap[v]] = vertex_pos[v];
      for (int e = 0; e < ne; ++e) ecol[f.emap[e]] = edge_pos[e];
      // Fresh elements get colours above every root position.
      const int voff = vertex_pos.empty() ? 0 : *std::max_element(vertex_pos.begin(), vertex_pos.end()) + 1;
      const int eoff = edge_pos.empty() ? 0 : *std::max_element(edge_pos.begin(), edge_pos.end()) + 1;
      for (int v = 0; v < y.num_vertices(); ++v)
        if (vcol[v] < 0) vcol[v] = voff + y.vertex_label(v);
      for (int e = 0; e < y.num_edges(); ++e)
        if (ecol[e] < 0) ecol[e] = eoff + y.edge(e).label;
      const bool need_all = !c->inner()->is_true();
      CanonicalResult r = canonical_search(y, vcol, ecol, need_all);
      std::vector<int> best;
      bool have = false;
      for (const auto& lab : r.labelings) {
        std::vector<int> epos(y.num_edges());
        for (std::size_t k = 0; k < lab.edge_order.size(); ++k) epos[lab.edge_order[k]] = static_cast<int>(k);
        auto inner = condition_code(c->inner(), lab.vertex_pos, epos);
        if (!have || inner < best) {
          best = std::move(inner);
          have = true;
        }
      }
      out.push_back(kExists);
      append_block(out, r.code.data);
      append_block(out, best);
      break;
    }
  }
  return out;
}

std::vector<int> condition_code(const Cond& c) {
  const Morphism id = identity(c->root());
  return condition_code(c, id.vmap, id.emap);
}

// ---------------------------------------------------------------------------
// Satisfiability

namespace {

struct Monotonicity {
  bool up;
  bool down;
};

// up: preserved when the target grows; down: preserved when it shrinks.
Monotonicity monotonicity(const Cond& c) {
  switch (c->kind()) {
    case Condition::Kind::True:
      return {true, true};
    case Condition::Kind::Exists:
      return {monotonicity(c->inner()).up, false};
    case Condition::Kind::Not: {
      auto m = monotonicity(c->inner());
      return {m.down, m.up};
    }
    case Condition::Kind::And: {
      Monotonicity m{true, true};
      for (const auto& x : c->children()) {
        auto k = monotonicity(x);
        m.up = m.up && k.up;
        m.down = m.down && k.down;
      }
      return m;
    }
  }
  return {false, false};
}

void positive_contexts(const Cond& c, const Morphism& from_root,
                       std::vector<std::pair<Graph, Morphism>>& out) {
  if (c->kind() == Condition::Kind::And) {
    for (const auto& x : c->children()) positive_contexts(x, from_root, out);
  } else if (c->kind() == Condition::Kind::Exists) {
    Morphism h = compose(c->embedding(), from_root);
    out.emplace_back(c->inner()->root(), h);
    positive_contexts(c->inner(), h, out);
  }
}

}  // namespace

FalsityResult is_provably_false(const Cond& c) {
  FalsityResult r;
  Cond n = normalize(c);
  const Graph& root = n->root();
  if (n->is_false()) {
    r.status = FalsityStatus::FalseProven;
    return r;
  }
  const Morphism id = identity(root);
  if (satisfies(root, id, n)) {
    r.status = FalsityStatus::SatisfiableWitnessed;
    r.witness = root;
    r.witness_morphism = id;
    return r;
  }
  // A downward-closed condition holds somewhere iff it holds on the root.
  if (monotonicity(n).down) {
    r.status = FalsityStatus::FalseProven;
    return r;
  }
  std::vector<std::pair<Graph, Morphism>> candidates;
  positive_contexts(n, id, candidates);
  for (const auto& [z, h] : candidates) {
    if (satisfies(z, h, n)) {
      r.status = FalsityStatus::SatisfiableWitnessed;
      r.witness = z;
      r.witness_morphism = h;
      return r;
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// Bounded equivalence

std::vector<Graph> small_graph_catalog(int max_vertices, int max_edges, int vertex_labels, int edge_labels) {
  std::vector<Graph> out;
  std::set<CanonicalCode> seen;
  for (int n = 0; n <= max_vertices; ++n) {
    // Vertex labels as nondecreasing sequences.
    std::vector<int> vl(n, 0);
    for (;;) {
      std::vector<std::tuple<int, int, int>> slots;
      for (int a = 0; a < n; ++a)
        for (int b = a; b < n; ++b)
          for (int l = 0; l < edge_labels; ++l) slots.emplace_back(a, b, l);
      // Multisets of slots of size <= max_edges.
      std::vector<int> pick;
      std::function<void(int)> rec = [&](int from) {
        Graph g;
        for (int v = 0; v < n; ++v) g.add_vertex(vl[v]);
        for (int s : pick) g.add_edge(std::get<0>(slots[s]), std::get<1>(slots[s]), std::get<2>(slots[s]));
        if (seen.insert(canonical_form(g)).second) out.push_back(std::move(g));
        if (static_cast<int>(pick.size()) == max_edges) return;
        for (int s = from; s < static_cast<int>(slots.size()); ++s) {
          pick.push_back(s);
          rec(s);
          pick.pop_back();
        }
      };
      rec(0);
      int i = n - 1;
      while (i >= 0 && vl[i] == vertex_labels - 1) --i;
      if (i < 0) break;
      ++vl[i];
      for (int j = i + 1; j < n; ++j) vl[j] = vl[i];
    }
  }
  return out;
}

EquivalenceResult conditions_equivalent(const Cond& c1, const Cond& c2, int max_vertices, int max_edges,
                                        int vertex_labels, int edge_labels) {
  if (!(c1->root() == c2->root())) throw Error("conditions_equivalent: different roots");
  EquivalenceResult r;
  const Graph& root = c1->root();
  for (const Graph& z : small_graph_catalog(max_vertices, max_edges, vertex_labels, edge_labels)) {
    bool differ = false;
    for_each_mono(root, z, [&](const Morphism& h) {
      if (satisfies(z, h, c1) != satisfies(z, h, c2)) {
        differ = true;
        r.witness = z;
        r.witness_morphism = h;
        return false;
      }
      return true;
    });
    if (differ) {
      r.status = EquivalenceStatus::InequivalentWitnessed;
      return r;
    }
  }
  return r;
}

std::vector<Graph> forbidden_patterns(const Cond& constraint) {
  std::vector<Graph> out;
  std::vector<Cond> parts{constraint};
  if (constraint->kind() == Condition::Kind::And) parts = constraint->children();
  for (const Cond& p : parts)
    if (p->kind() == Condition::Kind::Not && p->inner()->kind() == Condition::Kind::Exists &&
        p->root().empty() && p->inner()->inner()->is_true())
      out.push_back(p->inner()->inner()->root());
  return out;
}

namespace {

Cond reduce_rec(const Cond& c, const std::vector<Graph>& forbidden) {
  switch (c->kind()) {
    case Condition::Kind::True:
      return c;
    case Condition::Kind::Not:
      return Condition::make_not(reduce_rec(c->inner(), forbidden));
    case Condition::Kind::And: {
      std::vector<Cond> parts;
      for (const Cond& p : c->children()) parts.push_back(reduce_rec(p, forbidden));
      return Condition::make_and(std::move(parts));
    }
    case Condition::Kind::Exists: {
      const Graph& y = c->inner()->root();
      for (const Graph& n : forbidden)
        if (exists_mono(n, y)) return Condition::make_false(c->root());
      return Condition::make_exists(c->root(), y, c->embedding(), reduce_rec(c->inner(), forbidden));
    }
  }
  return c;
}

}  // namespace

Cond reduce_modulo(const Cond& c, const std::vector<Graph>& forbidden) {
  if (forbidden.empty()) return c;
  return normalize(reduce_rec(c, forbidden));
}

}  // namespace grs
