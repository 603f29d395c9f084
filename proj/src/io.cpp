#include "grs/io.hpp"

#include <charconv>
#include <sstream>

namespace grs::io {

namespace {

std::string vname(const TypeGraph& t, Label l) {
  return t.is_untyped() ? std::string() : t.vertex_type_name(l);
}
std::string ename(const TypeGraph& t, Label l) { return t.is_untyped() ? std::string() : t.edge_type_name(l); }

}  // namespace

std::string format_double(double v) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, p);
}

Json to_json(const Graph& g, const TypeGraph& t) {
  Json vs = Json::array(), es = Json::array();
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    Json j{{"id", v}};
    if (!t.is_untyped()) j["type"] = vname(t, g.vertex_label(v));
    vs.push_back(std::move(j));
  }
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    const Edge& x = g.edge(e);
    Json j{{"id", e}, {"ends", {x.u, x.v}}};
    if (!t.is_untyped()) j["type"] = ename(t, x.label);
    es.push_back(std::move(j));
  }
  return Json{{"vertices", vs}, {"edges", es}};
}

Json to_json(const Morphism& m) { return Json{{"vertices", m.vmap}, {"edges", m.emap}}; }

Json to_json(const Cond& c, const TypeGraph& t) {
  switch (c->kind()) {
    case Condition::Kind::True:
      return Json{{"kind", "true"}};
    case Condition::Kind::Not:
      if (c->is_false()) return Json{{"kind", "false"}};
      return Json{{"kind", "not"}, {"operand", to_json(c->inner(), t)}};
    case Condition::Kind::And: {
      Json ops = Json::array();
      for (const Cond& x : c->children()) ops.push_back(to_json(x, t));
      return Json{{"kind", "and"}, {"operands", ops}};
    }
    case Condition::Kind::Exists:
      return Json{{"kind", "exists"},
                  {"target", to_json(c->inner()->root(), t)},
                  {"embedding", to_json(c->embedding())},
                  {"inner", to_json(c->inner(), t)}};
  }
  return Json{};
}

Json to_json(const Rule& r, const TypeGraph& t) {
  return Json{{"key", rule_key(r).digest()},
              {"input", to_json(r.input, t)},
              {"context", to_json(r.context, t)},
              {"output", to_json(r.output, t)},
              {"context_to_input", to_json(r.i)},
              {"context_to_output", to_json(r.o)},
              {"condition", to_json(r.cond, t)},
              {"sketch", sketch(r, t)}};
}

Json to_json(const RuleVector& v, const TypeGraph& t) {
  Json terms = Json::array();
  for (const auto& [k, term] : v.terms()) terms.push_back(Json{{"coefficient", to_string(term.coeff)}, {"rule", to_json(term.rule, t)}});
  return terms;
}

Json to_json(const LinearForm& f) {
  Json j = Json::object();
  for (const auto& [name, q] : f) j[name.empty() ? "1" : name] = to_string(q);
  return j;
}

Json to_json(const OdeSystem& sys, const TypeGraph& t) {
  Json vars = Json::array();
  for (const auto& v : sys.variables)
    vars.push_back(Json{{"name", v.name},
                        {"key", v.key.digest()},
                        {"factor", to_string(v.factor)},
                        {"depth", v.depth},
                        {"declared", v.declared},
                        {"constant", v.rule.input.empty()},
                        {"pattern", to_json(v.rule.input, t)},
                        {"condition", to_json(v.rule.cond, t)},
                        {"sketch", sketch(v.rule.input, t) + (v.rule.cond->is_true() ? "" : "; " + sketch(v.rule.cond, t))}});
  Json eqs = Json::array();
  for (const auto& e : sys.equations) {
    Json terms = Json::array();
    for (const auto& term : e.terms)
      terms.push_back(Json{{"variable", sys.variables[term.variable].name},
                           {"coefficient", to_json(term.coeff)},
                           {"text", to_string(term.coeff)}});
    eqs.push_back(Json{{"variable", sys.variables[e.variable].name}, {"truncated", e.truncated}, {"terms", terms}});
  }
  Json outs = Json::array();
  for (const auto& o : sys.outputs) {
    Json comb = Json::array();
    for (const auto& [v, q] : o.combination)
      comb.push_back(Json{{"variable", sys.variables[v].name}, {"coefficient", to_string(q)}});
    outs.push_back(Json{{"name", o.name}, {"combination", comb}});
  }
  return Json{{"status", to_string(sys.status)},
              {"max_depth", sys.max_depth},
              {"variables_per_round", sys.variables_per_round},
              {"variables", vars},
              {"equations", eqs},
              {"outputs", outs}};
}

std::string sketch(const Graph& g, const TypeGraph& t) {
  std::ostringstream os;
  os << "[";
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    os << (v ? " " : "") << v;
    if (!t.is_untyped()) os << ":" << vname(t, g.vertex_label(v));
  }
  if (g.num_edges() > 0) os << " |";
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    const Edge& x = g.edge(e);
    os << " " << x.u << "-" << x.v;
    if (!t.is_untyped()) os << ":" << ename(t, x.label);
  }
  os << "]";
  return os.str();
}

std::string sketch(const Cond& c, const TypeGraph& t) {
  switch (c->kind()) {
    case Condition::Kind::True:
      return "true";
    case Condition::Kind::Not:
      if (c->is_false()) return "false";
      return "not " + sketch(c->inner(), t);
    case Condition::Kind::And: {
      std::string s = "(";
      for (std::size_t i = 0; i < c->children().size(); ++i)
        s += (i ? " and " : "") + sketch(c->children()[i], t);
      return s + ")";
    }
    case Condition::Kind::Exists: {
      std::string s = "exists " + sketch(c->inner()->root(), t);
      if (!c->inner()->is_true()) s += " with " + sketch(c->inner(), t);
      return s;
    }
  }
  return "";
}

std::string sketch(const Rule& r, const TypeGraph& t) {
  std::string s = "(" + sketch(r.output, t) + " <- " + sketch(r.context, t) + " -> " + sketch(r.input, t);
  if (!r.cond->is_true()) s += "; " + sketch(r.cond, t);
  return s + ")";
}

void write_csv(std::ostream& os, const TimeSeries& ts) {
  os << "t";
  for (const auto& n : ts.names) os << "," << n;
  os << "\n";
  for (std::size_t i = 0; i < ts.times.size(); ++i) {
    os << format_double(ts.times[i]);
    for (double v : ts.values[i]) os << "," << format_double(v);
    os << "\n";
  }
}

void write_csv(std::ostream& os, const EnsembleStats& s) {
  os << "t";
  for (const auto& n : s.names) os << "," << n;
  for (const auto& n : s.names) os << "," << n << "_se";
  os << "\n";
  if (s.runs == 0) return;
  for (std::size_t i = 0; i < s.grid.size(); ++i) {
    os << format_double(s.grid[i]);
    for (double v : s.mean[i]) os << "," << format_double(v);
    for (double v : s.stderr_[i]) os << "," << format_double(v);
    os << "\n";
  }
}

}  // namespace grs::io
