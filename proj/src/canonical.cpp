#include "grs/canonical.hpp"

#include <algorithm>
#include <cstdio>
#include <tuple>

namespace grs {

std::string CanonicalCode::digest() const {
  std::uint64_t h = 1469598103934665603ULL;
  for (int x : data) {
    auto u = static_cast<std::uint32_t>(x);
    for (int k = 0; k < 4; ++k) {
      h ^= (u >> (8 * k)) & 0xffu;
      h *= 1099511628211ULL;
    }
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::size_t CanonicalCodeHash::operator()(const CanonicalCode& c) const {
  std::size_t h = c.data.size();
  for (int x : c.data) h ^= std::hash<int>()(x) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

Morphism Labeling::as_permutation() const {
  Morphism m;
  m.vmap = vertex_pos;
  m.emap.resize(edge_order.size());
  for (std::size_t k = 0; k < edge_order.size(); ++k) m.emap[edge_order[k]] = static_cast<int>(k);
  return m;
}

namespace {

using Cells = std::vector<std::vector<int>>;

class CanonSearch {
 public:
  CanonSearch(const Graph& g, std::vector<int> vcolor, std::vector<int> ecolor, bool all)
      : g_(g), vcolor_(std::move(vcolor)), ecolor_(std::move(ecolor)), all_(all) {
    const int n = g.num_vertices();
    adj_.resize(n);
    for (int e = 0; e < g.num_edges(); ++e) {
      const Edge& ed = g.edge(e);
      adj_[ed.u].emplace_back(ed.v, ecolor_[e]);
      if (!ed.is_loop()) adj_[ed.v].emplace_back(ed.u, ecolor_[e]);
    }
    for (auto& a : adj_) std::sort(a.begin(), a.end());
    if (!all_) compute_twins();
  }

  CanonicalResult run() {
    std::vector<int> order(g_.num_vertices());
    for (int v = 0; v < g_.num_vertices(); ++v) order[v] = v;
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return vcolor_[a] < vcolor_[b]; });
    Cells cells;
    for (int v : order) {
      if (cells.empty() || vcolor_[cells.back().front()] != vcolor_[v]) cells.emplace_back();
      cells.back().push_back(v);
    }
    search(std::move(cells));
    CanonicalResult r;
    r.code.data = std::move(best_);
    r.labelings = std::move(labelings_);
    return r;
  }

 private:
  void refine(Cells& cells) const {
    const int n = g_.num_vertices();
    std::vector<int> cell_of(n);
    for (bool changed = true; changed;) {
      changed = false;
      for (std::size_t c = 0; c < cells.size(); ++c)
        for (int v : cells[c]) cell_of[v] = static_cast<int>(c);
      Cells next;
      next.reserve(cells.size());
      for (auto& cell : cells) {
        if (cell.size() == 1) {
          next.push_back(std::move(cell));
          continue;
        }
        std::vector<std::pair<std::vector<std::pair<int, int>>, int>> sig;
        sig.reserve(cell.size());
        for (int v : cell) {
          std::vector<std::pair<int, int>> s;
          s.reserve(adj_[v].size());
          for (auto [w, c] : adj_[v]) s.emplace_back(c, w == v ? -1 : cell_of[w]);
          std::sort(s.begin(), s.end());
          sig.emplace_back(std::move(s), v);
        }
        std::stable_sort(sig.begin(), sig.end(),
                         [](const auto& a, const auto& b) { return a.first < b.first; });
        std::size_t start = next.size();
        for (std::size_t i = 0; i < sig.size(); ++i) {
          if (i == 0 || sig[i].first != sig[i - 1].first) next.emplace_back();
          next.back().push_back(sig[i].second);
        }
        if (next.size() - start > 1) changed = true;
      }
      cells = std::move(next);
    }
  }

  void search(Cells cells) {
    refine(cells);
    std::size_t target = cells.size();
    for (std::size_t c = 0; c < cells.size(); ++c)
      if (cells[c].size() > 1) {
        target = c;
        break;
      }
    if (target == cells.size()) return leaf(cells);
    std::vector<int> cell = cells[target];
    std::vector<int> seen_class;
    for (int v : cell) {
      if (!all_) {
        if (std::find(seen_class.begin(), seen_class.end(), twin_[v]) != seen_class.end()) continue;
        seen_class.push_back(twin_[v]);
      }
      Cells next;
      next.reserve(cells.size() + 1);
      for (std::size_t c = 0; c < cells.size(); ++c) {
        if (c != target) {
          next.push_back(cells[c]);
          continue;
        }
        next.push_back({v});
        std::vector<int> rest;
        for (int w : cell)
          if (w != v) rest.push_back(w);
        next.push_back(std::move(rest));
      }
      search(std::move(next));
    }
  }

  void leaf(const Cells& cells) {
    const int n = g_.num_vertices();
    Labeling lab;
    lab.vertex_pos.resize(n);
    for (std::size_t c = 0; c < cells.size(); ++c) lab.vertex_pos[cells[c].front()] = static_cast<int>(c);
    std::vector<std::tuple<int, int, int, int>> es;
    es.reserve(g_.num_edges());
    for (int e = 0; e < g_.num_edges(); ++e) {
      const Edge& ed = g_.edge(e);
      int a = lab.vertex_pos[ed.u], b = lab.vertex_pos[ed.v];
      if (a > b) std::swap(a, b);
      es.emplace_back(a, b, ecolor_[e], e);
    }
    std::sort(es.begin(), es.end());
    std::vector<int> code;
    code.reserve(2 + n + 3 * es.size());
    code.push_back(n);
    code.push_back(g_.num_edges());
    for (const auto& cell : cells) code.push_back(vcolor_[cell.front()]);
    for (const auto& [a, b, c, e] : es) {
      code.push_back(a);
      code.push_back(b);
      code.push_back(c);
      lab.edge_order.push_back(e);
    }
    if (!have_best_ || code < best_) {
      best_ = std::move(code);
      have_best_ = true;
      labelings_.clear();
      add_labelings(lab, es);
    } else if (all_ && code == best_) {
      add_labelings(lab, es);
    }
  }

  void add_labelings(const Labeling& lab, const std::vector<std::tuple<int, int, int, int>>& es) {
    if (!all_) {
      labelings_.push_back(lab);
      return;
    }
    // Parallel edges of equal colour are interchangeable: emit every order.
    std::vector<std::pair<std::size_t, std::size_t>> groups;
    for (std::size_t i = 0; i < es.size();) {
      std::size_t j = i + 1;
      while (j < es.size() && std::get<0>(es[j]) == std::get<0>(es[i]) &&
             std::get<1>(es[j]) == std::get<1>(es[i]) && std::get<2>(es[j]) == std::get<2>(es[i]))
        ++j;
      if (j - i > 1) groups.emplace_back(i, j);
      i = j;
    }
    Labeling cur = lab;
    permute_groups(cur, groups, 0);
  }

  void permute_groups(Labeling& cur, const std::vector<std::pair<std::size_t, std::size_t>>& groups,
                      std::size_t k) {
    if (k == groups.size()) {
      labelings_.push_back(cur);
      return;
    }
    auto first = cur.edge_order.begin() + static_cast<long>(groups[k].first);
    auto last = cur.edge_order.begin() + static_cast<long>(groups[k].second);
    std::sort(first, last);
    do {
      permute_groups(cur, groups, k + 1);
    } while (std::next_permutation(first, last));
  }

  void compute_twins() {
    const int n = g_.num_vertices();
    twin_.resize(n);
    for (int v = 0; v < n; ++v) twin_[v] = v;
    auto strip = [&](int v, int a, int b) {
      std::vector<std::pair<int, int>> s;
      for (auto [w, c] : adj_[v])
        if (w == v)
          s.emplace_back(-1, c);
        else if (w != a && w != b)
          s.emplace_back(w, c);
      std::sort(s.begin(), s.end());
      return s;
    };
    for (int u = 0; u < n; ++u) {
      if (twin_[u] != u) continue;
      for (int v = u + 1; v < n; ++v) {
        if (twin_[v] != v || vcolor_[u] != vcolor_[v]) continue;
        if (adj_[u].size() != adj_[v].size()) continue;
        if (strip(u, u, v) == strip(v, u, v)) twin_[v] = u;
      }
    }
  }

  const Graph& g_;
  std::vector<int> vcolor_, ecolor_;
  bool all_;
  std::vector<std::vector<std::pair<int, int>>> adj_;
  std::vector<int> twin_;
  std::vector<int> best_;
  bool have_best_ = false;
  std::vector<Labeling> labelings_;
};

}  // namespace

CanonicalResult canonical_search(const Graph& g, const std::vector<int>& vertex_colors,
                                 const std::vector<int>& edge_colors, bool all_labelings) {
  std::vector<int> vc = vertex_colors, ec = edge_colors;
  if (vc.empty()) vc = g.vertex_labels();
  if (ec.empty()) {
    ec.reserve(g.num_edges());
    for (const auto& e : g.edges()) ec.push_back(e.label);
  }
  if (static_cast<int>(vc.size()) != g.num_vertices() || static_cast<int>(ec.size()) != g.num_edges())
    throw Error("canonical_search: colour vectors do not match the graph");
  return CanonSearch(g, std::move(vc), std::move(ec), all_labelings).run();
}

CanonicalCode canonical_form(const Graph& g) { return canonical_search(g, {}, {}, false).code; }

Graph canonical_graph(const Graph& g, Morphism* iso) {
  auto r = canonical_search(g, {}, {}, false);
  Morphism perm = r.labelings.front().as_permutation();
  Graph out = permute(g, perm);
  if (iso) *iso = std::move(perm);
  return out;
}

bool isomorphic(const Graph& a, const Graph& b) { return canonical_form(a) == canonical_form(b); }

}  // namespace grs
