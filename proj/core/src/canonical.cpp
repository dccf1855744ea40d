#include "grope/canonical.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>

namespace grope {

namespace {

// Vertex and half-edge nodes of the incidence graph.
struct IncidenceGraph {
  int vertices = 0;
  int nodes = 0;
  std::vector<int> base_color;
  std::vector<std::vector<int>> adj;
};

IncidenceGraph build_incidence(const UnitrivalentGraph& g) {
  IncidenceGraph ig;
  ig.vertices = g.vertex_count();
  ig.nodes = ig.vertices + 2 * g.edge_count();
  ig.base_color.resize(ig.nodes);
  ig.adj.resize(ig.nodes);
  for (int v = 0; v < ig.vertices; ++v) {
    if (g.root() && *g.root() == v)
      ig.base_color[v] = 0;
    else
      ig.base_color[v] = g.is_trivalent(v) ? 2 : 1;
    for (int h : g.half_edges(v)) {
      ig.adj[v].push_back(ig.vertices + h);
      ig.adj[ig.vertices + h].push_back(v);
    }
  }
  for (int h = 0; h < 2 * g.edge_count(); ++h) {
    ig.base_color[ig.vertices + h] = 3;
    ig.adj[ig.vertices + h].push_back(ig.vertices + UnitrivalentGraph::partner(h));
  }
  return ig;
}

std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Colour refinement to a stable ordered partition. Each node is keyed by its
// old colour and a commutative hash of its neighbours' colours; colours are
// ranks of the keys, so the result is invariant.
void refine(const IncidenceGraph& ig, std::vector<int>& color) {
  const int n = ig.nodes;
  int classes = 1 + *std::max_element(color.begin(), color.end());
  std::vector<std::pair<std::uint64_t, int>> keyed(n);
  while (true) {
    for (int x = 0; x < n; ++x) {
      std::uint64_t h = 0;
      for (int y : ig.adj[x]) h += mix(static_cast<std::uint64_t>(color[y]));
      keyed[x] = {(static_cast<std::uint64_t>(color[x]) << 40) | (mix(h) >> 24), x};
    }
    std::sort(keyed.begin(), keyed.end());
    int rank = 0;
    for (int i = 0; i < n; ++i) {
      if (i > 0 && keyed[i].first != keyed[i - 1].first) ++rank;
      color[keyed[i].second] = rank;
    }
    if (rank + 1 == classes) return;
    classes = rank + 1;
  }
}

struct Leaf {
  std::vector<std::uint16_t> code;
  std::vector<int> labels;
  int sign = 1;
};

class CanonSearch {
 public:
  CanonSearch(const UnitrivalentGraph& g, const IncidenceGraph& ig) : g_(g), ig_(ig) {}

  Leaf run() {
    std::vector<int> color = ig_.base_color;
    // Ranks of base colours.
    std::vector<int> present(4, 0);
    for (int c : color) present[c] = 1;
    std::vector<int> remap(4, 0);
    for (int c = 0, r = 0; c < 4; ++c) remap[c] = present[c] ? r++ : -1;
    for (int& c : color) c = remap[c];
    search(std::move(color));
    // An orientation-reversing automorphism makes both signs available; the
    // positive one is canonical.
    if (best_.sign < 0 && !odd_.empty()) {
      std::vector<int> labels(best_.labels.size());
      for (std::size_t y = 0; y < labels.size(); ++y) labels[y] = best_.labels[odd_[y]];
      best_.labels = std::move(labels);
      best_.sign = 1;
    }
    return best_;
  }

 private:
  void search(std::vector<int> color) {
    refine(ig_, color);
    const int n = ig_.nodes;
    std::vector<int> count(n, 0);
    for (int c : color) ++count[c];
    int target = -1;
    for (int c = 0; c < n; ++c)
      if (count[c] > 1) {
        target = c;
        break;
      }
    if (target < 0) {
      visit_leaf(color);
      return;
    }
    std::vector<int> explored;
    for (int x = 0; x < n; ++x) {
      if (color[x] != target || pruned(x, explored)) continue;
      explored.push_back(x);
      std::vector<int> next(n);
      for (int y = 0; y < n; ++y) next[y] = 2 * color[y] + ((color[y] == target && y != x) ? 1 : 0);
      path_.push_back(x);
      search(std::move(next));
      path_.pop_back();
    }
  }

  // x is skipped when a known automorphism fixing the current path maps it
  // onto an already explored sibling.
  bool pruned(int x, const std::vector<int>& explored) const {
    for (const auto& gamma : autos_) {
      if (std::any_of(path_.begin(), path_.end(), [&](int p) { return gamma[p] != p; })) continue;
      if (std::find(explored.begin(), explored.end(), gamma[x]) != explored.end()) return true;
    }
    return false;
  }

  void record_automorphism(const std::vector<int>& label, int sign) {
    const int n = ig_.nodes;
    std::vector<int> inverse(n);
    for (int x = 0; x < n; ++x) inverse[best_.labels[x]] = x;
    std::vector<int> gamma(n);
    for (int y = 0; y < n; ++y) gamma[y] = inverse[label[y]];
    if (sign != best_.sign && odd_.empty()) odd_ = gamma;
    if (autos_.size() < kMaxAutomorphisms) autos_.push_back(std::move(gamma));
  }

  void visit_leaf(const std::vector<int>& label) {
    const int n = ig_.nodes;
    std::vector<int> inverse(n);
    for (int x = 0; x < n; ++x) inverse[label[x]] = x;
    std::vector<std::uint16_t> code;
    code.reserve(4 * n + 2);
    code.push_back(static_cast<std::uint16_t>(ig_.vertices));
    code.push_back(static_cast<std::uint16_t>(n));
    std::vector<int> nbr;
    for (int i = 0; i < n; ++i) {
      const int x = inverse[i];
      code.push_back(static_cast<std::uint16_t>(ig_.base_color[x]));
      nbr.clear();
      for (int y : ig_.adj[x]) nbr.push_back(label[y]);
      std::sort(nbr.begin(), nbr.end());
      code.push_back(static_cast<std::uint16_t>(nbr.size()));
      for (int y : nbr) code.push_back(static_cast<std::uint16_t>(y));
    }
    int sign = 1;
    for (int v = 0; v < g_.vertex_count(); ++v) {
      if (!g_.is_trivalent(v)) continue;
      const auto& hs = g_.half_edges(v);
      const int a = label[ig_.vertices + hs[0]];
      const int b = label[ig_.vertices + hs[1]];
      const int c = label[ig_.vertices + hs[2]];
      const int inversions = (a > b) + (a > c) + (b > c);
      if (inversions % 2) sign = -sign;
    }
    if (!have_ || code < best_.code) {
      best_.code = std::move(code);
      best_.labels = label;
      best_.sign = sign;
      have_ = true;
    } else if (code == best_.code) {
      record_automorphism(label, sign);
    }
  }

  static constexpr std::size_t kMaxAutomorphisms = 64;

  const UnitrivalentGraph& g_;
  const IncidenceGraph& ig_;
  Leaf best_;
  bool have_ = false;
  std::vector<int> path_;
  std::vector<std::vector<int>> autos_;
  std::vector<int> odd_;
};

}  // namespace

CanonicalForm canonical_form(const UnitrivalentGraph& g) {
  IncidenceGraph ig = build_incidence(g);
  Leaf leaf = CanonSearch(g, ig).run();
  CanonicalForm out;
  out.vertex_labels.assign(leaf.labels.begin(), leaf.labels.begin() + ig.vertices);
  out.half_edge_labels.resize(2 * g.edge_count());
  for (int h = 0; h < 2 * g.edge_count(); ++h)
    out.half_edge_labels[h] = leaf.labels[ig.vertices + h] - ig.vertices;
  out.encoding.reserve(2 * leaf.code.size());
  for (std::uint16_t w : leaf.code) {
    out.encoding.push_back(static_cast<char>(w >> 8));
    out.encoding.push_back(static_cast<char>(w & 0xff));
  }
  out.sign = leaf.sign;
  return out;
}

UnitrivalentGraph canonical_graph(const UnitrivalentGraph& g) {
  const CanonicalForm cf = canonical_form(g);
  const int ne = g.edge_count();
  std::vector<int> edges(ne);
  std::iota(edges.begin(), edges.end(), 0);
  auto low = [&](int e) { return std::min(cf.half_edge_labels[2 * e], cf.half_edge_labels[2 * e + 1]); };
  std::sort(edges.begin(), edges.end(), [&](int a, int b) { return low(a) < low(b); });
  std::vector<int> new_edge(ne);
  for (int i = 0; i < ne; ++i) new_edge[edges[i]] = i;

  std::vector<std::vector<int>> inc(g.vertex_count());
  for (int v = 0; v < g.vertex_count(); ++v) {
    std::vector<int> hs = g.half_edges(v);
    std::sort(hs.begin(), hs.end(),
              [&](int a, int b) { return cf.half_edge_labels[a] < cf.half_edge_labels[b]; });
    auto& row = inc[cf.vertex_labels[v]];
    for (int h : hs) row.push_back(new_edge[UnitrivalentGraph::edge_of(h)]);
  }
  std::optional<int> root;
  if (g.root()) root = cf.vertex_labels[*g.root()];
  return UnitrivalentGraph(inc, ne, root);
}

bool isomorphic(const UnitrivalentGraph& a, const UnitrivalentGraph& b) {
  if (a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count()) return false;
  return canonical_form(a).encoding == canonical_form(b).encoding;
}

}  // namespace grope
