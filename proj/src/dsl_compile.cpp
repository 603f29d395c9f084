#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "grs/dsl.hpp"

namespace grs::dsl {

bool CompileResult::ok() const {
  for (const auto& d : diagnostics)
    if (d.severity == Severity::Error) return false;
  return true;
}

namespace {

struct CompileFail {};

/// A graph whose vertices carry names.
struct Scope {
  Graph g;
  std::map<std::string, VertexId> names;
};

class Compiler {
 public:
  Compiler(const SourceModel& m, std::vector<Diagnostic>& diags) : m_(m), diags_(diags) {}

  CompiledModel run() {
    CompiledModel out;
    ModelSpec& spec = out.spec;
    guard([&] { build_types(); });
    spec.types = types_;
    spec.semantics = m_.semantics.value_or(Semantics::Sqpo);
    for (const auto& p : m_.patterns)
      if (!patterns_.emplace(p.name, &p).second) error("pattern '" + p.name + "' declared twice", p.span);
    for (const auto& p : m_.patterns) {
      const std::size_t before = diags_.size();
      guard([&] { extend(p.body, nullptr, nullptr); });
      if (diags_.size() > before) bad_patterns_.insert(p.name);
    }
    for (const auto& p : m_.params)
      if (!spec.params.emplace(p.name, p.value).second) error("parameter '" + p.name + "' declared twice", p.span);

    int anonymous = 0;
    for (const auto& c : m_.constraints)
      guard([&] {
        const std::string name = c.name.empty() ? "constraint" + std::to_string(++anonymous) : c.name;
        spec.constraints.emplace_back(name, condition(c.cond, Scope{}));
      });

    std::set<std::string> rule_names;
    for (const auto& r : m_.rules) {
      if (!rule_names.insert(r.name).second) error("rule '" + r.name + "' declared twice", r.span);
      guard([&] { spec.transitions.push_back(rule(r, spec)); });
    }

    std::set<std::string> obs_names;
    for (const auto& o : m_.observables) {
      if (!obs_names.insert(o.name).second) error("observable '" + o.name + "' declared twice", o.span);
      guard([&] {
        if (!o.pattern) fail("observable '" + o.name + "' has no pattern", o.span);
        Scope p = pattern(*o.pattern, nullptr, nullptr);
        Cond c = o.where ? condition(*o.where, p) : nullptr;
        const Rational f = o.factor.value_or(Rational(1));
        if (f <= Rational(0)) fail("observable factor must be positive", o.span);
        spec.observables.push_back(Observable{o.name, identity_rule(p.g, c), f});
      });
    }

    for (const auto& i : m_.inits)
      guard([&] {
        if (i.copies < 0) fail("negative copy count", i.span);
        const Scope p = pattern(i.pattern, nullptr, nullptr);
        for (int k = 0; k < i.copies; ++k) spec.initial = spec.initial.disjoint_union(p.g);
      });

    if (m_.derive) {
      if (m_.derive->order < 1 || m_.derive->order > 2) error("moment order must be 1 or 2", m_.derive->span);
      if (m_.derive->depth < 0) error("derivation depth must be non-negative", m_.derive->span);
    }
    if (m_.simulate) {
      const auto& s = *m_.simulate;
      if (!(s.t_max > 0) || !(s.grid > 0) || s.runs < 0) error("simulate: t_max and grid must be positive", s.span);
    }
    out.derive = m_.derive;
    out.simulate = m_.simulate;

    if (diags_.empty() || no_errors()) {
      try {
        spec.validate();
      } catch (const Error& e) {
        error(e.what(), SourceSpan{});
      }
      std::string violated;
      if (!spec.constraints.empty() && !spec.satisfies_constraints(spec.initial, &violated)) {
        const SourceSpan sp = m_.inits.empty() ? SourceSpan{} : m_.inits.front().span;
        error("initial state violates constraint '" + violated + "'", sp);
      }
    }
    return out;
  }

 private:
  bool no_errors() const {
    for (const auto& d : diags_)
      if (d.severity == Severity::Error) return false;
    return true;
  }
  void error(const std::string& msg, const SourceSpan& sp) { diags_.push_back({Severity::Error, msg, sp}); }
  void warning(const std::string& msg, const SourceSpan& sp) { diags_.push_back({Severity::Warning, msg, sp}); }
  [[noreturn]] void fail(const std::string& msg, const SourceSpan& sp) {
    error(msg, sp);
    throw CompileFail{};
  }
  template <class F>
  void guard(F&& f) {
    try {
      f();
    } catch (const CompileFail&) {
    } catch (const Error& e) {
      error(e.what(), SourceSpan{});
    }
  }

  // --- types
  void build_types() {
    if (!m_.typegraph) {
      types_ = TypeGraph::untyped();
      return;
    }
    typed_ = true;
    for (const auto& v : m_.typegraph->vertices) {
      if (types_.find_vertex_type(v.name) >= 0) fail("vertex type '" + v.name + "' declared twice", v.span);
      types_.add_vertex_type(v.name);
    }
    for (const auto& e : m_.typegraph->edges) {
      const Label a = types_.find_vertex_type(e.a), b = types_.find_vertex_type(e.b);
      if (a < 0) fail("unknown vertex type '" + e.a + "'", e.span);
      if (b < 0) fail("unknown vertex type '" + e.b + "'", e.span);
      if (types_.find_edge_type(e.name) >= 0) fail("edge type '" + e.name + "' declared twice", e.span);
      types_.add_edge_type(e.name, a, b);
    }
  }

  Label vertex_type(const NodeDecl& n) {
    if (!typed_) {
      if (!n.type.empty()) fail("vertex '" + n.name + "' has a type but the model declares no typegraph", n.span);
      return 0;
    }
    if (n.type.empty()) fail("vertex '" + n.name + "' needs a type", n.span);
    const Label l = types_.find_vertex_type(n.type);
    if (l < 0) fail("unknown vertex type '" + n.type + "'", n.span);
    return l;
  }

  Label edge_type(const EdgeDecl& e, const Graph& g, VertexId a, VertexId b) {
    const Label la = g.vertex_label(a), lb = g.vertex_label(b);
    auto fits = [&](Label t) {
      const Edge& te = types_.graph().edge(t);
      return (te.u == la && te.v == lb) || (te.u == lb && te.v == la);
    };
    if (!typed_) {
      if (!e.type.empty()) fail("edge has a type but the model declares no typegraph", e.span);
      return 0;
    }
    if (!e.type.empty()) {
      const Label t = types_.find_edge_type(e.type);
      if (t < 0) fail("unknown edge type '" + e.type + "'", e.span);
      if (!fits(t))
        fail("edge type '" + e.type + "' does not connect " + types_.vertex_type_name(la) + " and " +
                 types_.vertex_type_name(lb),
             e.span);
      return t;
    }
    Label found = -1;
    for (Label t = 0; t < types_.num_edge_types(); ++t)
      if (fits(t)) {
        if (found >= 0)
          fail("ambiguous edge type between " + types_.vertex_type_name(la) + " and " +
                   types_.vertex_type_name(lb) + "; name it",
               e.span);
        found = t;
      }
    if (found < 0)
      fail("no edge type connects " + types_.vertex_type_name(la) + " and " + types_.vertex_type_name(lb), e.span);
    return found;
  }

  // --- patterns

  /// Extends `base` (or the empty graph) by the body; names already in the
  /// base denote base vertices, and an edge equal to an unused base edge
  /// (same endpoints and type) denotes it.
  Scope extend(const PatternBody& body, const Scope* base, Morphism* embedding) {
    Scope s = base ? *base : Scope{};
    const int base_edges = s.g.num_edges();
    std::set<std::string> declared;
    for (const auto& n : body.nodes) {
      if (!declared.insert(n.name).second) fail("vertex '" + n.name + "' declared twice", n.span);
      auto it = s.names.find(n.name);
      if (it != s.names.end()) {
        if (!n.type.empty() && typed_ && types_.find_vertex_type(n.type) != s.g.vertex_label(it->second))
          fail("vertex '" + n.name + "' is redeclared with a different type", n.span);
        continue;
      }
      s.names.emplace(n.name, s.g.add_vertex(vertex_type(n)));
    }
    std::vector<bool> used(base_edges, false);
    for (const auto& e : body.edges) {
      auto ia = s.names.find(e.a), ib = s.names.find(e.b);
      if (ia == s.names.end()) fail("undeclared vertex '" + e.a + "'", e.span);
      if (ib == s.names.end()) fail("undeclared vertex '" + e.b + "'", e.span);
      const VertexId a = ia->second, b = ib->second;
      if (e.prop && a != b) fail("prop needs a single vertex", e.span);
      const Label t = edge_type(e, s.g, a, b);
      bool matched = false;
      for (EdgeId x = 0; x < base_edges && !matched; ++x) {
        const Edge& be = s.g.edge(x);
        if (!used[x] && be.label == t && ((be.u == a && be.v == b) || (be.u == b && be.v == a)))
          used[x] = matched = true;
      }
      if (!matched) s.g.add_edge(a, b, t);
    }
    if (embedding) {
      embedding->vmap.clear();
      embedding->emap.clear();
      if (base) {
        for (VertexId v = 0; v < base->g.num_vertices(); ++v) embedding->vmap.push_back(v);
        for (EdgeId x = 0; x < base_edges; ++x) embedding->emap.push_back(x);
      }
    }
    return s;
  }

  Scope pattern(const PatternRef& r, const Scope* base, Morphism* embedding) {
    if (r.body) return extend(*r.body, base, embedding);
    auto it = patterns_.find(r.name);
    if (it == patterns_.end()) fail("undeclared pattern '" + r.name + "'", r.span);
    if (bad_patterns_.count(r.name)) throw CompileFail{};  // already reported at the declaration
    return extend(it->second->body, base, embedding);
  }

  Cond condition(const CondExpr& c, const Scope& root) {
    switch (c.kind) {
      case CondExpr::Kind::True:
        return Condition::make_true(root.g);
      case CondExpr::Kind::False:
        return Condition::make_false(root.g);
      case CondExpr::Kind::Not:
        return Condition::make_not(condition(c.children.front(), root));
      case CondExpr::Kind::And:
      case CondExpr::Kind::Or: {
        std::vector<Cond> parts;
        for (const auto& ch : c.children) parts.push_back(condition(ch, root));
        return c.kind == CondExpr::Kind::And ? Condition::make_and(std::move(parts))
                                             : Condition::make_or(std::move(parts));
      }
      case CondExpr::Kind::Exists:
      case CondExpr::Kind::Forall: {
        Morphism f;
        Scope y = pattern(c.pattern, &root, &f);
        Cond inner = c.children.empty() ? nullptr : condition(c.children.front(), y);
        if (c.kind == CondExpr::Kind::Exists) return Condition::make_exists(root.g, y.g, f, inner);
        return Condition::make_forall(root.g, y.g, f, inner);
      }
    }
    throw CompileFail{};
  }

  Transition rule(const RuleDecl& r, const ModelSpec& spec) {
    static const PatternBody empty;
    const Scope in = r.input ? pattern(*r.input, nullptr, nullptr) : extend(empty, nullptr, nullptr);
    const Scope out = r.output ? pattern(*r.output, nullptr, nullptr) : extend(empty, nullptr, nullptr);
    Graph k;
    Morphism i, o;
    std::map<VertexId, VertexId> k_of_in;
    for (const auto& [name, vi] : in.names) {
      auto it = out.names.find(name);
      if (it == out.names.end()) continue;
      if (in.g.vertex_label(vi) != out.g.vertex_label(it->second))
        fail("vertex '" + name + "' changes type; delete and create it under different names", r.span);
    }
    // Context vertices in input order.
    std::vector<std::string> by_id(in.g.num_vertices());
    for (const auto& [name, v] : in.names) by_id[v] = name;
    for (VertexId v = 0; v < in.g.num_vertices(); ++v) {
      auto it = out.names.find(by_id[v]);
      if (it == out.names.end()) continue;
      k_of_in[v] = k.add_vertex(in.g.vertex_label(v));
      i.vmap.push_back(v);
      o.vmap.push_back(it->second);
    }
    std::vector<bool> used(out.g.num_edges(), false);
    for (EdgeId x = 0; x < in.g.num_edges(); ++x) {
      const Edge& e = in.g.edge(x);
      if (!k_of_in.count(e.u) || !k_of_in.count(e.v)) continue;
      const VertexId ou = o.vmap[k_of_in[e.u]], ov = o.vmap[k_of_in[e.v]];
      for (EdgeId y = 0; y < out.g.num_edges(); ++y) {
        const Edge& f = out.g.edge(y);
        if (used[y] || f.label != e.label) continue;
        if ((f.u == ou && f.v == ov) || (f.u == ov && f.v == ou)) {
          used[y] = true;
          k.add_edge(k_of_in[e.u], k_of_in[e.v], e.label);
          i.emap.push_back(x);
          o.emap.push_back(y);
          break;
        }
      }
    }
    Cond c = r.where ? condition(*r.where, in) : nullptr;
    const Rational f = r.factor.value_or(Rational(1));
    if (f <= Rational(0)) fail("rule factor must be positive", r.span);
    auto p = spec.params.find(r.rate);
    if (p == spec.params.end())
      warning("rate '" + r.rate + "' of rule '" + r.name + "' is not bound; it stays symbolic", r.span);
    else if (!(p->second > 0))
      fail("rate '" + r.rate + "' must be positive", r.span);
    check_mono(k, in.g, i, "context -> input");
    check_mono(k, out.g, o, "context -> output");
    return Transition{r.name, r.rate, f, Rule::make(out.g, k, in.g, o, i, c),
                      r.semantics.value_or(spec.semantics)};
  }

  const SourceModel& m_;
  std::vector<Diagnostic>& diags_;
  TypeGraph types_;
  bool typed_ = false;
  std::map<std::string, const PatternDecl*> patterns_;
  std::set<std::string> bad_patterns_;
};

std::string render_all(const std::vector<Diagnostic>& diags, Severity which, const std::string& name,
                       std::string_view text) {
  std::string out;
  for (const auto& d : diags)
    if (d.severity == which) out += d.render(name, text);
  return out;
}

}  // namespace

CompileResult compile(const SourceModel& m) {
  CompileResult r;
  r.model = Compiler(m, r.diagnostics).run();
  return r;
}

CompiledModel load_model_text(std::string_view text, const std::string& name) {
  ParseResult p = parse(text);
  if (!p.ok()) throw ModelError(render_all(p.diagnostics, Severity::Error, name, text));
  CompileResult c = compile(p.model);
  if (!c.ok()) throw ModelError(render_all(c.diagnostics, Severity::Error, name, text));
  for (const auto& d : c.diagnostics)
    if (d.severity == Severity::Warning) c.model.warnings.push_back(d.render(name, text));
  return std::move(c.model);
}

CompiledModel load_model(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ModelError("cannot open model file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return load_model_text(ss.str(), path);
}

}  // namespace grs::dsl
