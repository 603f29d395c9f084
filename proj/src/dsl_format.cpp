#include <charconv>
#include <sstream>

#include "grs/dsl.hpp"

namespace grs::dsl {

namespace {

std::string number(double v) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  std::string s(buf, p);
  return s;
}

std::string rational(const Rational& q) { return to_string(q); }

const char* word(Semantics s) { return s == Semantics::Dpo ? "dpo" : "sqpo"; }

void items(std::ostream& os, const PatternBody& b, const std::string& sep) {
  for (const auto& n : b.nodes) {
    os << sep << n.name;
    if (!n.type.empty()) os << ": " << n.type;
    os << ";";
  }
  for (const auto& e : b.edges) {
    if (e.prop)
      os << sep << "prop " << e.a << ": " << e.type << ";";
    else {
      os << sep << e.a << " - " << e.b;
      if (!e.type.empty()) os << ": " << e.type;
      os << ";";
    }
  }
}

std::string inline_body(const PatternBody& b) {
  std::ostringstream os;
  os << "{";
  items(os, b, " ");
  os << (b.nodes.empty() && b.edges.empty() ? "}" : " }");
  return os.str();
}

std::string ref(const PatternRef& r) { return r.body ? inline_body(*r.body) : r.name; }

int level(const CondExpr& c) {
  switch (c.kind) {
    case CondExpr::Kind::Or:
      return 0;
    case CondExpr::Kind::And:
      return 1;
    default:
      return 2;
  }
}

std::string cond(const CondExpr& c, int need = 0) {
  std::string s;
  switch (c.kind) {
    case CondExpr::Kind::True:
      s = "true";
      break;
    case CondExpr::Kind::False:
      s = "false";
      break;
    case CondExpr::Kind::Not:
      s = "not " + cond(c.children.front(), 2);
      break;
    case CondExpr::Kind::And:
    case CondExpr::Kind::Or: {
      const char* op = c.kind == CondExpr::Kind::And ? " and " : " or ";
      const int child = level(c) + 1;
      for (std::size_t i = 0; i < c.children.size(); ++i) s += (i ? op : "") + cond(c.children[i], child);
      break;
    }
    case CondExpr::Kind::Exists:
    case CondExpr::Kind::Forall: {
      s = c.kind == CondExpr::Kind::Exists ? "exists" : "forall";
      if (c.children.empty())
        s += " " + ref(c.pattern);
      else
        s += "(" + ref(c.pattern) + ", " + cond(c.children.front()) + ")";
      break;
    }
  }
  return level(c) < need ? "(" + s + ")" : s;
}

}  // namespace

std::string format(const SourceModel& m) {
  std::ostringstream os;
  bool section = false;
  auto gap = [&] {
    if (section) os << "\n";
    section = true;
  };
  if (m.semantics) {
    gap();
    os << "semantics " << word(*m.semantics) << ";\n";
  }
  if (m.typegraph) {
    gap();
    os << "typegraph {\n";
    for (const auto& v : m.typegraph->vertices) os << "  vertex " << v.name << ";\n";
    for (const auto& e : m.typegraph->edges) {
      if (e.loop)
        os << "  loop " << e.a << ": " << e.name << ";\n";
      else
        os << "  edge " << e.a << " - " << e.b << ": " << e.name << ";\n";
    }
    os << "}\n";
  }
  if (!m.params.empty()) {
    gap();
    for (const auto& p : m.params) os << "param " << p.name << " = " << number(p.value) << ";\n";
  }
  for (const auto& p : m.patterns) {
    gap();
    os << "pattern " << p.name << " {";
    items(os, p.body, "\n  ");
    os << "\n}\n";
  }
  if (!m.constraints.empty()) {
    gap();
    for (const auto& c : m.constraints) {
      os << "constraint ";
      if (!c.name.empty()) os << c.name << ": ";
      os << cond(c.cond) << ";\n";
    }
  }
  for (const auto& r : m.rules) {
    gap();
    os << "rule " << r.name;
    if (r.semantics) os << " " << word(*r.semantics);
    os << " rate " << r.rate;
    if (r.factor) os << " factor " << rational(*r.factor);
    os << " {\n";
    if (r.input) os << "  input " << ref(*r.input) << ";\n";
    if (r.output) os << "  output " << ref(*r.output) << ";\n";
    if (r.where) os << "  where " << cond(*r.where) << ";\n";
    os << "}\n";
  }
  for (const auto& o : m.observables) {
    gap();
    os << "observable " << o.name << " {\n";
    if (o.pattern) os << "  pattern " << ref(*o.pattern) << ";\n";
    if (o.where) os << "  where " << cond(*o.where) << ";\n";
    if (o.factor) os << "  factor " << rational(*o.factor) << ";\n";
    os << "}\n";
  }
  if (!m.inits.empty()) {
    gap();
    for (const auto& i : m.inits) {
      os << "init ";
      if (i.copies != 1) os << i.copies << " * ";
      os << ref(i.pattern) << ";\n";
    }
  }
  if (m.derive || m.simulate) gap();
  if (m.derive) os << "derive moments order " << m.derive->order << " depth " << m.derive->depth << ";\n";
  if (m.simulate)
    os << "simulate t_max " << number(m.simulate->t_max) << " runs " << m.simulate->runs << " seed "
       << m.simulate->seed << " grid " << number(m.simulate->grid) << ";\n";
  return os.str();
}

}  // namespace grs::dsl
