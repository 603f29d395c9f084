#pragma once

#include <json.hpp>
#include <ostream>
#include <string>

#include "grs/stochastic.hpp"

namespace grs::io {

using Json = nlohmann::ordered_json;

Json to_json(const Graph& g, const TypeGraph& t);
Json to_json(const Morphism& m);
Json to_json(const Cond& c, const TypeGraph& t);
Json to_json(const Rule& r, const TypeGraph& t);
Json to_json(const RuleVector& v, const TypeGraph& t);
Json to_json(const LinearForm& f);
Json to_json(const OdeSystem& sys, const TypeGraph& t);

/// One-line sketch, e.g. "[a:K b:k | a-b:K_k]".
std::string sketch(const Graph& g, const TypeGraph& t);
std::string sketch(const Cond& c, const TypeGraph& t);
/// "(O <- K -> I; cond)" with graph sketches.
std::string sketch(const Rule& r, const TypeGraph& t);

/// CSV with a `t` column followed by the named columns.
void write_csv(std::ostream& os, const TimeSeries& ts);
/// Mean columns in declaration order, then `<name>_se` columns.
void write_csv(std::ostream& os, const EnsembleStats& s);

/// Shortest decimal that reads back to the same double.
std::string format_double(double v);

}  // namespace grs::io
