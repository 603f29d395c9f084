#pragma once

#include <functional>
#include <optional>

#include "grs/morphism.hpp"

namespace grs {

/// left <- apex -> right
struct Span {
  Graph left, apex, right;
  Morphism to_left, to_right;
};

/// left -> apex <- right
struct Cospan {
  Graph left, apex, right;
  Morphism from_left, from_right;
};

/// Pushout of a span (componentwise in Set, incidence induced). At least one
/// leg must be mono; legs opposite a mono are mono.
Cospan pushout(const Span& s);

/// Pullback of a cospan with at least one mono leg.
Span pullback(const Cospan& c);

/// Result of a complement construction: K -> C -> X.
struct Complement {
  Graph graph;
  Morphism from_context;  // K -> C
  Morphism into_host;     // C -> X
};

/// Pushout complement of k : K -> I and m : I -> X (both mono). Empty when the
/// dangling condition fails; identification holds since m is mono.
std::optional<Complement> pushout_complement(const Graph& k_obj, const Graph& i_obj, const Graph& x,
                                             const Morphism& k, const Morphism& m);

/// Final pullback complement of a : A -> B, b : B -> D (both mono):
/// V_C = V_D \ (V_B \ V_A), E_C = edges of E_D \ (E_B \ E_A) with incidence in V_C.
Complement final_pullback_complement(const Graph& a_obj, const Graph& b_obj, const Graph& d,
                                     const Morphism& a, const Morphism& b);

/// f = mono ∘ epi through the image object.
struct Factorization {
  Graph image;
  Morphism epi;   // src -> image
  Morphism mono;  // image -> tgt
};
Factorization epi_mono_factorize(const Graph& src, const Graph& tgt, const Morphism& f);

/// A jointly surjective pair of monos (y -> w, x2 -> w) agreeing on the shared
/// part: from_y ∘ f == from_x2 ∘ a for f : x -> y and a : x -> x2.
struct Overlap {
  Graph w;
  Morphism from_y;
  Morphism from_x2;
};
using OverlapVisitor = std::function<void(const Overlap&)>;

/// Enumerates every such overlap exactly once up to isomorphism of cospans
/// under y and x2. With x empty this lists all gluings of y and x2.
void for_each_overlap(const Graph& x, const Graph& y, const Morphism& f, const Graph& x2,
                      const Morphism& a, const OverlapVisitor& visit);

}  // namespace grs
