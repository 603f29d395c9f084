#include <cctype>
#include <charconv>
#include <sstream>

#include "grs/dsl.hpp"

namespace grs::dsl {

bool ParseResult::ok() const {
  for (const auto& d : diagnostics)
    if (d.severity == Severity::Error) return false;
  return true;
}

std::string Diagnostic::render(const std::string& file, std::string_view source) const {
  std::ostringstream os;
  os << file << ":" << span.line << ":" << span.column << ": "
     << (severity == Severity::Error ? "error" : "warning") << ": " << message << "\n";
  std::size_t start = std::min<std::size_t>(span.begin, source.size());
  while (start > 0 && source[start - 1] != '\n') --start;
  std::size_t stop = source.find('\n', start);
  if (stop == std::string_view::npos) stop = source.size();
  os << "  " << source.substr(start, stop - start) << "\n  ";
  for (int i = 1; i < span.column; ++i) os << ' ';
  const int width = std::max(1, std::min<int>(span.end, static_cast<int>(stop)) - span.begin);
  os << '^' << std::string(width - 1, '~') << "\n";
  return os.str();
}

namespace {

enum class Tok { Ident, Number, Punct, End };

struct Token {
  Tok kind;
  std::string text;
  SourceSpan span;
};

struct ParseFail {};

class Lexer {
 public:
  Lexer(std::string_view src, std::vector<Diagnostic>& diags) : src_(src), diags_(diags) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_space();
      SourceSpan sp = here();
      if (pos_ >= src_.size()) {
        out.push_back({Tok::End, "", sp});
        return out;
      }
      const char c = src_[pos_];
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
          advance();
        out.push_back({Tok::Ident, std::string(src_.substr(sp.begin, pos_ - sp.begin)), finish(sp)});
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) advance();
        if (pos_ < src_.size() && src_[pos_] == '.') {
          advance();
          while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) advance();
        }
        if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
          std::size_t save = pos_;
          advance();
          if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) advance();
          if (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) advance();
          } else {
            column_ -= static_cast<int>(pos_ - save);
            pos_ = save;
          }
        }
        out.push_back({Tok::Number, std::string(src_.substr(sp.begin, pos_ - sp.begin)), finish(sp)});
      } else if (std::string_view("{}();:,-=*/").find(c) != std::string_view::npos) {
        advance();
        out.push_back({Tok::Punct, std::string(1, c), finish(sp)});
      } else {
        advance();
        diags_.push_back({Severity::Error, std::string("unexpected character '") + c + "'", finish(sp)});
      }
    }
  }

 private:
  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }
  void skip_space() {
    while (pos_ < src_.size()) {
      if (src_[pos_] == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(src_[pos_]))) {
        advance();
      } else {
        break;
      }
    }
  }
  SourceSpan here() const { return SourceSpan{static_cast<int>(pos_), static_cast<int>(pos_), line_, column_}; }
  SourceSpan finish(SourceSpan sp) const {
    sp.end = static_cast<int>(pos_);
    return sp;
  }

  std::string_view src_;
  std::vector<Diagnostic>& diags_;
  std::size_t pos_ = 0;
  int line_ = 1, column_ = 1;
};

class Parser {
 public:
  Parser(std::vector<Token> toks, std::vector<Diagnostic>& diags) : toks_(std::move(toks)), diags_(diags) {}

  SourceModel run() {
    SourceModel m;
    while (peek().kind != Tok::End) {
      const std::size_t start = pos_;
      try {
        declaration(m);
      } catch (const ParseFail&) {
        recover(start);
      }
    }
    return m;
  }

 private:
  // --- token helpers
  const Token& peek(int k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
  bool is_punct(char c, int k = 0) const { return peek(k).kind == Tok::Punct && peek(k).text[0] == c; }
  bool is_word(std::string_view w, int k = 0) const { return peek(k).kind == Tok::Ident && peek(k).text == w; }
  const Token& take() {
    const Token& t = toks_[pos_];
    if (pos_ + 1 < toks_.size()) ++pos_;
    return t;
  }
  [[noreturn]] void fail(const std::string& msg, const SourceSpan& sp) {
    diags_.push_back({Severity::Error, msg, sp});
    throw ParseFail{};
  }
  [[noreturn]] void fail_here(const std::string& expected) {
    const Token& t = peek();
    const std::string got = t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
    fail("expected " + expected + ", found " + got, t.span);
  }
  void expect(char c) {
    if (!is_punct(c)) fail_here(std::string("'") + c + "'");
    take();
  }
  void expect_word(std::string_view w) {
    if (!is_word(w)) fail_here("'" + std::string(w) + "'");
    take();
  }
  std::string ident(const char* what) {
    if (peek().kind != Tok::Ident) fail_here(what);
    return take().text;
  }
  SourceSpan span_from(const SourceSpan& start) const {
    SourceSpan sp = start;
    sp.end = toks_[pos_ > 0 ? pos_ - 1 : 0].span.end;
    return sp;
  }

  /// Skips to the end of the broken declaration: the next ';' or closing
  /// brace at the nesting level where it started.
  void recover(std::size_t start) {
    pos_ = std::max(pos_, start);
    if (pos_ == start) take();
    int depth = 0;
    for (std::size_t i = start; i < pos_; ++i) {
      if (toks_[i].kind == Tok::Punct && toks_[i].text == "{") ++depth;
      if (toks_[i].kind == Tok::Punct && toks_[i].text == "}") --depth;
    }
    while (peek().kind != Tok::End) {
      if (is_punct('{')) ++depth;
      if (is_punct('}')) {
        --depth;
        if (depth <= 0) {
          take();
          if (is_punct(';')) take();
          return;
        }
      }
      if (is_punct(';') && depth <= 0) {
        take();
        return;
      }
      take();
    }
  }

  // --- numbers
  long long integer(const char* what) {
    if (peek().kind != Tok::Number) fail_here(what);
    const Token& t = take();
    long long v = 0;
    auto [p, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
    if (ec != std::errc() || p != t.text.data() + t.text.size()) fail("expected an integer", t.span);
    return v;
  }
  double real(const char* what) {
    if (peek().kind != Tok::Number) fail_here(what);
    const Token& t = take();
    double v = 0;
    auto [p, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
    if (ec != std::errc() || p != t.text.data() + t.text.size()) fail("malformed number", t.span);
    return v;
  }
  Rational rational() {
    const SourceSpan sp = peek().span;
    const long long n = integer("a rational number");
    long long d = 1;
    if (is_punct('/')) {
      take();
      d = integer("a denominator");
    }
    if (d == 0) fail("zero denominator", span_from(sp));
    return Rational(n, d);
  }
  Semantics semantics_word() {
    if (is_word("dpo")) {
      take();
      return Semantics::Dpo;
    }
    if (is_word("sqpo")) {
      take();
      return Semantics::Sqpo;
    }
    fail_here("'dpo' or 'sqpo'");
  }

  // --- declarations
  void declaration(SourceModel& m) {
    const SourceSpan start = peek().span;
    if (peek().kind != Tok::Ident) fail_here("a declaration");
    const std::string kw = peek().text;
    if (kw == "semantics") {
      take();
      const Semantics s = semantics_word();
      expect(';');
      if (m.semantics) fail("semantics declared twice", span_from(start));
      m.semantics = s;
    } else if (kw == "typegraph") {
      take();
      TypeGraphDecl tg = typegraph();
      tg.span = span_from(start);
      if (m.typegraph) fail("typegraph declared twice", tg.span);
      m.typegraph = std::move(tg);
    } else if (kw == "pattern") {
      take();
      PatternDecl p;
      p.name = ident("a pattern name");
      expect('{');
      p.body = body(start);
      p.span = span_from(start);
      m.patterns.push_back(std::move(p));
    } else if (kw == "constraint") {
      take();
      ConstraintDecl c;
      if (peek().kind == Tok::Ident && is_punct(':', 1)) {
        c.name = take().text;
        take();
      }
      c.cond = condition();
      expect(';');
      c.span = span_from(start);
      m.constraints.push_back(std::move(c));
    } else if (kw == "rule") {
      take();
      m.rules.push_back(rule(start));
    } else if (kw == "observable") {
      take();
      m.observables.push_back(observable(start));
    } else if (kw == "param") {
      take();
      ParamDecl p;
      p.name = ident("a parameter name");
      expect('=');
      p.value = real("a number");
      expect(';');
      p.span = span_from(start);
      m.params.push_back(std::move(p));
    } else if (kw == "init") {
      take();
      InitDecl d;
      if (peek().kind == Tok::Number) {
        d.copies = static_cast<int>(integer("a count"));
        expect('*');
      }
      d.pattern = pattern_ref();
      expect(';');
      d.span = span_from(start);
      m.inits.push_back(std::move(d));
    } else if (kw == "derive") {
      take();
      expect_word("moments");
      DeriveDecl d;
      while (!is_punct(';')) {
        if (is_word("order")) {
          take();
          d.order = static_cast<int>(integer("an order"));
        } else if (is_word("depth")) {
          take();
          d.depth = static_cast<int>(integer("a depth"));
        } else {
          fail_here("'order', 'depth' or ';'");
        }
      }
      take();
      d.span = span_from(start);
      if (m.derive) fail("derive declared twice", d.span);
      m.derive = d;
    } else if (kw == "simulate") {
      take();
      SimulateDecl s;
      while (!is_punct(';')) {
        if (is_word("t_max")) {
          take();
          s.t_max = real("a time");
        } else if (is_word("runs")) {
          take();
          s.runs = static_cast<int>(integer("a run count"));
        } else if (is_word("seed")) {
          take();
          s.seed = static_cast<std::uint64_t>(integer("a seed"));
        } else if (is_word("grid")) {
          take();
          s.grid = real("a grid step");
        } else {
          fail_here("'t_max', 'runs', 'seed', 'grid' or ';'");
        }
      }
      take();
      s.span = span_from(start);
      if (m.simulate) fail("simulate declared twice", s.span);
      m.simulate = s;
    } else {
      fail("unknown declaration '" + kw + "'", peek().span);
    }
  }

  TypeGraphDecl typegraph() {
    TypeGraphDecl tg;
    expect('{');
    while (!is_punct('}')) {
      const SourceSpan start = peek().span;
      if (is_word("vertex")) {
        take();
        for (;;) {
          const SourceSpan sp = peek().span;
          tg.vertices.push_back({ident("a vertex type name"), sp});
          if (!is_punct(',')) break;
          take();
        }
        expect(';');
      } else if (is_word("edge")) {
        take();
        TypeGraphDecl::EdgeType e;
        e.a = ident("a vertex type");
        expect('-');
        e.b = ident("a vertex type");
        expect(':');
        e.name = ident("an edge type name");
        expect(';');
        e.span = span_from(start);
        tg.edges.push_back(std::move(e));
      } else if (is_word("loop")) {
        take();
        TypeGraphDecl::EdgeType e;
        e.a = e.b = ident("a vertex type");
        e.loop = true;
        expect(':');
        e.name = ident("an edge type name");
        expect(';');
        e.span = span_from(start);
        tg.edges.push_back(std::move(e));
      } else {
        fail_here("'vertex', 'edge', 'loop' or '}'");
      }
    }
    take();
    return tg;
  }

  /// Items up to and including the closing brace.
  PatternBody body(const SourceSpan& start) {
    PatternBody b;
    while (!is_punct('}')) {
      const SourceSpan sp = peek().span;
      if (is_word("prop") && peek(1).kind == Tok::Ident) {
        take();
        EdgeDecl e;
        e.a = e.b = ident("a vertex name");
        e.prop = true;
        expect(':');
        e.type = ident("a loop type");
        expect(';');
        e.span = span_from(sp);
        b.edges.push_back(std::move(e));
        continue;
      }
      const std::string a = ident("a vertex name or '}'");
      if (is_punct('-')) {
        take();
        EdgeDecl e;
        e.a = a;
        e.b = ident("a vertex name");
        if (is_punct(':')) {
          take();
          e.type = ident("an edge type");
        }
        expect(';');
        e.span = span_from(sp);
        b.edges.push_back(std::move(e));
      } else {
        NodeDecl n;
        n.name = a;
        if (is_punct(':')) {
          take();
          n.type = ident("a vertex type");
        }
        expect(';');
        n.span = span_from(sp);
        b.nodes.push_back(std::move(n));
      }
    }
    take();
    b.span = span_from(start);
    return b;
  }

  PatternRef pattern_ref() {
    PatternRef r;
    const SourceSpan start = peek().span;
    if (is_punct('{')) {
      take();
      r.body = body(start);
    } else {
      r.name = ident("a pattern name or '{'");
    }
    r.span = span_from(start);
    return r;
  }

  RuleDecl rule(const SourceSpan& start) {
    RuleDecl r;
    r.name = ident("a rule name");
    if (is_word("dpo") || is_word("sqpo")) r.semantics = semantics_word();
    expect_word("rate");
    r.rate = ident("a rate parameter name");
    if (is_word("factor")) {
      take();
      r.factor = rational();
    }
    expect('{');
    while (!is_punct('}')) {
      const SourceSpan sp = peek().span;
      if (is_word("input") || is_word("output")) {
        const bool in = take().text == "input";
        auto& slot = in ? r.input : r.output;
        if (slot) fail(std::string(in ? "input" : "output") + " given twice", sp);
        slot = pattern_ref();
        expect(';');
      } else if (is_word("where")) {
        take();
        if (r.where) fail("condition given twice", sp);
        r.where = condition();
        expect(';');
      } else {
        fail_here("'input', 'output', 'where' or '}'");
      }
    }
    take();
    r.span = span_from(start);
    return r;
  }

  ObservableDecl observable(const SourceSpan& start) {
    ObservableDecl o;
    o.name = ident("an observable name");
    expect('{');
    while (!is_punct('}')) {
      const SourceSpan sp = peek().span;
      if (is_word("pattern")) {
        take();
        if (o.pattern) fail("pattern given twice", sp);
        o.pattern = pattern_ref();
      } else if (is_word("where")) {
        take();
        if (o.where) fail("condition given twice", sp);
        o.where = condition();
      } else if (is_word("factor")) {
        take();
        if (o.factor) fail("factor given twice", sp);
        o.factor = rational();
      } else {
        fail_here("'pattern', 'where', 'factor' or '}'");
      }
      expect(';');
    }
    take();
    o.span = span_from(start);
    return o;
  }

  // --- conditions
  CondExpr condition() {
    const SourceSpan start = peek().span;
    CondExpr first = conjunction();
    if (!is_word("or")) return first;
    CondExpr c;
    c.kind = CondExpr::Kind::Or;
    c.children.push_back(std::move(first));
    while (is_word("or")) {
      take();
      c.children.push_back(conjunction());
    }
    c.span = span_from(start);
    return c;
  }

  CondExpr conjunction() {
    const SourceSpan start = peek().span;
    CondExpr first = unary();
    if (!is_word("and")) return first;
    CondExpr c;
    c.kind = CondExpr::Kind::And;
    c.children.push_back(std::move(first));
    while (is_word("and")) {
      take();
      c.children.push_back(unary());
    }
    c.span = span_from(start);
    return c;
  }

  CondExpr unary() {
    const SourceSpan start = peek().span;
    CondExpr c;
    if (is_word("not")) {
      take();
      c.kind = CondExpr::Kind::Not;
      c.children.push_back(unary());
    } else if (is_word("true")) {
      take();
      c.kind = CondExpr::Kind::True;
    } else if (is_word("false")) {
      take();
      c.kind = CondExpr::Kind::False;
    } else if (is_punct('(')) {
      take();
      c = condition();
      expect(')');
      return c;
    } else if (is_word("exists") || is_word("forall")) {
      c.kind = take().text == "exists" ? CondExpr::Kind::Exists : CondExpr::Kind::Forall;
      if (is_punct('(')) {
        take();
        c.pattern = pattern_ref();
        if (is_punct(',')) {
          take();
          c.children.push_back(condition());
        }
        expect(')');
      } else {
        c.pattern = pattern_ref();
      }
      if (c.kind == CondExpr::Kind::Forall && c.children.empty())
        fail("forall needs a nested condition: forall(P, c)", span_from(start));
    } else {
      fail_here("a condition");
    }
    c.span = span_from(start);
    return c;
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::vector<Diagnostic>& diags_;
};

}  // namespace

ParseResult parse(std::string_view text) {
  ParseResult r;
  std::vector<Token> toks = Lexer(text, r.diagnostics).run();
  r.model = Parser(std::move(toks), r.diagnostics).run();
  return r;
}

}  // namespace grs::dsl
