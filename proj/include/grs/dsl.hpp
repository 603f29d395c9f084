#pragma once

// Plain-text model language.
//
//   semantics sqpo;
//   typegraph { vertex A, B; edge A - B : bond; loop A : phos; }
//   pattern P { a: A; b: B; a - b: bond; }
//   constraint simple: not exists { x: A; y: B; x - y: bond; x - y: bond; };
//   rule link sqpo rate k factor 1/2 { input { a: A; b: B; } output { a: A; b: B; a - b; } where not exists P; }
//   observable O { pattern P; factor 1; }
//   param k = 1.0;
//   init 3 * { a: A; };
//   derive moments order 1 depth 3;
//   simulate t_max 10 runs 1000 seed 42 grid 0.1;
//
// Names identify elements: a rule's context is the set of vertices named in
// both input and output, plus the edges that occur in both with the same
// endpoints and type (matched by occurrence). Patterns nested in conditions
// extend their root the same way.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "grs/stochastic.hpp"

namespace grs::dsl {

/// Byte range plus the line/column of its start (1-based). Spans never take
/// part in structural equality of the syntax tree.
struct SourceSpan {
  int begin = 0, end = 0;
  int line = 1, column = 1;

  friend bool operator==(const SourceSpan&, const SourceSpan&) { return true; }
};

enum class Severity { Error, Warning };

struct Diagnostic {
  Severity severity = Severity::Error;
  std::string message;
  SourceSpan span;

  /// "file:line:col: error: message" followed by the source line and a caret.
  std::string render(const std::string& file, std::string_view source) const;
};

struct NodeDecl {
  std::string name, type;  // type empty when untyped
  SourceSpan span;
  friend bool operator==(const NodeDecl&, const NodeDecl&) = default;
};

struct EdgeDecl {
  std::string a, b, type;  // type may be empty and is then inferred
  bool prop = false;       // written as `prop a: type`, a == b
  SourceSpan span;
  friend bool operator==(const EdgeDecl&, const EdgeDecl&) = default;
};

struct PatternBody {
  std::vector<NodeDecl> nodes;
  std::vector<EdgeDecl> edges;
  SourceSpan span;
  friend bool operator==(const PatternBody&, const PatternBody&) = default;
};

/// A named pattern or an inline body.
struct PatternRef {
  std::string name;
  std::optional<PatternBody> body;
  SourceSpan span;
  friend bool operator==(const PatternRef&, const PatternRef&) = default;
};

struct CondExpr {
  enum class Kind { True, False, Not, And, Or, Exists, Forall };
  Kind kind = Kind::True;
  std::vector<CondExpr> children;  // Exists/Forall: at most one nested condition
  PatternRef pattern;              // Exists/Forall only
  SourceSpan span;
  friend bool operator==(const CondExpr&, const CondExpr&) = default;
};

struct TypeGraphDecl {
  struct VertexType {
    std::string name;
    SourceSpan span;
    friend bool operator==(const VertexType&, const VertexType&) = default;
  };
  struct EdgeType {
    std::string a, b, name;
    bool loop = false;
    SourceSpan span;
    friend bool operator==(const EdgeType&, const EdgeType&) = default;
  };
  std::vector<VertexType> vertices;
  std::vector<EdgeType> edges;
  SourceSpan span;
  friend bool operator==(const TypeGraphDecl&, const TypeGraphDecl&) = default;
};

struct PatternDecl {
  std::string name;
  PatternBody body;
  SourceSpan span;
  friend bool operator==(const PatternDecl&, const PatternDecl&) = default;
};

struct ConstraintDecl {
  std::string name;  // may be empty
  CondExpr cond;
  SourceSpan span;
  friend bool operator==(const ConstraintDecl&, const ConstraintDecl&) = default;
};

struct RuleDecl {
  std::string name;
  std::optional<Semantics> semantics;
  std::string rate;
  std::optional<Rational> factor;
  std::optional<PatternRef> input, output;
  std::optional<CondExpr> where;
  SourceSpan span;
  friend bool operator==(const RuleDecl&, const RuleDecl&) = default;
};

struct ObservableDecl {
  std::string name;
  std::optional<PatternRef> pattern;
  std::optional<CondExpr> where;
  std::optional<Rational> factor;
  SourceSpan span;
  friend bool operator==(const ObservableDecl&, const ObservableDecl&) = default;
};

struct ParamDecl {
  std::string name;
  double value = 0;
  SourceSpan span;
  friend bool operator==(const ParamDecl&, const ParamDecl&) = default;
};

struct InitDecl {
  int copies = 1;
  PatternRef pattern;
  SourceSpan span;
  friend bool operator==(const InitDecl&, const InitDecl&) = default;
};

struct DeriveDecl {
  int order = 1, depth = 3;
  SourceSpan span;
  friend bool operator==(const DeriveDecl&, const DeriveDecl&) = default;
};

struct SimulateDecl {
  double t_max = 10;
  int runs = 1000;
  std::uint64_t seed = 42;
  double grid = 0.1;
  SourceSpan span;
  friend bool operator==(const SimulateDecl&, const SimulateDecl&) = default;
};

struct SourceModel {
  std::optional<Semantics> semantics;
  std::optional<TypeGraphDecl> typegraph;
  std::vector<ParamDecl> params;
  std::vector<PatternDecl> patterns;
  std::vector<ConstraintDecl> constraints;
  std::vector<RuleDecl> rules;
  std::vector<ObservableDecl> observables;
  std::vector<InitDecl> inits;
  std::optional<DeriveDecl> derive;
  std::optional<SimulateDecl> simulate;
  friend bool operator==(const SourceModel&, const SourceModel&) = default;
};

struct ParseResult {
  SourceModel model;
  std::vector<Diagnostic> diagnostics;
  bool ok() const;
};

ParseResult parse(std::string_view text);

/// Canonical pretty-print; parse(format(m)).model == m.
std::string format(const SourceModel& m);

struct CompiledModel {
  ModelSpec spec;
  std::optional<DeriveDecl> derive;
  std::optional<SimulateDecl> simulate;
  std::vector<std::string> warnings;  // rendered, filled by load_model
};

struct CompileResult {
  CompiledModel model;
  std::vector<Diagnostic> diagnostics;
  bool ok() const;
};

CompileResult compile(const SourceModel& m);

/// Thrown by load_model; what() carries the rendered diagnostics.
class ModelError : public Error {
 public:
  using Error::Error;
};

/// Reads, parses and compiles a model file.
CompiledModel load_model(const std::string& path);
CompiledModel load_model_text(std::string_view text, const std::string& name = "<input>");

}  // namespace grs::dsl
