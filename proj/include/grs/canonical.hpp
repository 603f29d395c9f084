#pragma once

#include <compare>
#include <cstddef>
#include <string>
#include <vector>

#include "grs/morphism.hpp"

namespace grs {

/// Isomorphism-invariant code; equal codes iff isomorphic (respecting colours).
struct CanonicalCode {
  std::vector<int> data;

  friend bool operator==(const CanonicalCode&, const CanonicalCode&) = default;
  friend auto operator<=>(const CanonicalCode&, const CanonicalCode&) = default;

  /// Short stable hex digest, for display and JSON keys.
  std::string digest() const;
};

struct CanonicalCodeHash {
  std::size_t operator()(const CanonicalCode& c) const;
};

/// A relabelling that realizes the canonical code: vertex_pos[v] is the new
/// position of v and edge_order lists old edge ids in canonical order.
struct Labeling {
  std::vector<int> vertex_pos;
  std::vector<EdgeId> edge_order;

  /// As a morphism g -> permute(g, ...).
  Morphism as_permutation() const;
};

struct CanonicalResult {
  CanonicalCode code;
  /// One optimal labelling, or all of them (one per automorphism, including
  /// permutations of parallel edges of equal colour) when requested.
  std::vector<Labeling> labelings;
};

/// Individualization-refinement canonical labelling of a coloured multigraph.
/// Colours override labels; pass empty spans to use the graph's labels.
/// `all_labelings` disables twin pruning so every optimal labelling is
/// reported (exponential in the automorphism group; for small graphs).
CanonicalResult canonical_search(const Graph& g, const std::vector<int>& vertex_colors,
                                 const std::vector<int>& edge_colors, bool all_labelings);

CanonicalCode canonical_form(const Graph& g);

/// Canonical representative of the iso class of g; `iso` receives g -> result.
Graph canonical_graph(const Graph& g, Morphism* iso = nullptr);

bool isomorphic(const Graph& a, const Graph& b);

}  // namespace grs
