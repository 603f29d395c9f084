#pragma once

#include <functional>
#include <vector>

#include "grs/morphism.hpp"

namespace grs {

/// Receives each found morphism; return false to stop the enumeration.
using MorphismVisitor = std::function<bool(const Morphism&)>;

/// Partial assignment constraining an enumeration; -1 marks a free element.
struct PartialMap {
  std::vector<VertexId> vmap;
  std::vector<EdgeId> emap;

  static PartialMap empty_for(const Graph& p);
  /// The part of `to` reached through `via`: element x of `from` is fixed to
  /// h(x) where via: from -> p and h: from -> target.
  static PartialMap along(const Graph& p, const Morphism& via, const Morphism& h);
};

/// Visits every injective homomorphism p -> x extending `seed` (if given), in
/// lexicographic order of the vertex images. Returns false if stopped early.
bool for_each_mono(const Graph& p, const Graph& x, const MorphismVisitor& visit,
                   const PartialMap* seed = nullptr);

std::vector<Morphism> enumerate_monos(const Graph& p, const Graph& x);
std::vector<Morphism> enumerate_monos(const Graph& p, const Graph& x, const PartialMap& seed);
int count_monos(const Graph& p, const Graph& x);
bool exists_mono(const Graph& p, const Graph& x, const PartialMap* seed = nullptr);

/// Enumerates monos with vertex/edge typing checked against a common type
/// graph first; throws Error when either graph is not typed over it.
std::vector<Morphism> enumerate_typed_monos(const Graph& p, const Graph& x, const class TypeGraph& t);

}  // namespace grs
