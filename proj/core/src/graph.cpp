#include "grope/graph.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace grope {

UnitrivalentGraph::UnitrivalentGraph(const std::vector<std::vector<int>>& incidence,
                                     int edge_count, std::optional<int> root)
    : edge_count_(edge_count), root_(root) {
  if (incidence.empty()) throw DomainError("graph has no vertices");
  if (incidence.size() % 2 != 0)
    throw DomainError("unitrivalent graph needs an even vertex count, got " +
                      std::to_string(incidence.size()));
  if (edge_count < 0) throw DomainError("negative edge count");
  vertex_of_.assign(2 * static_cast<std::size_t>(edge_count), -1);
  std::vector<int> seen(edge_count, 0);
  half_edges_.resize(incidence.size());
  for (std::size_t v = 0; v < incidence.size(); ++v) {
    const auto& edges = incidence[v];
    if (edges.size() != 1 && edges.size() != 3)
      throw DomainError("vertex " + std::to_string(v) + " has degree " +
                        std::to_string(edges.size()) + "; expected 1 or 3");
    for (int e : edges) {
      if (e < 0 || e >= edge_count) throw DomainError("edge id " + std::to_string(e) + " out of range");
      if (seen[e] >= 2) throw DomainError("edge " + std::to_string(e) + " has more than two ends");
      int h = 2 * e + seen[e]++;
      vertex_of_[h] = static_cast<int>(v);
      half_edges_[v].push_back(h);
    }
  }
  for (int e = 0; e < edge_count; ++e)
    if (seen[e] != 2) throw DomainError("edge " + std::to_string(e) + " does not have two ends");
  if (root_) {
    if (*root_ < 0 || *root_ >= vertex_count()) throw DomainError("root vertex out of range");
    if (degree(*root_) != 1) throw DomainError("root must be a univalent vertex");
  }
  vertex_names_.resize(incidence.size());
  for (std::size_t v = 0; v < incidence.size(); ++v) vertex_names_[v] = "v" + std::to_string(v);
  edge_names_.resize(edge_count);
  for (int e = 0; e < edge_count; ++e) edge_names_[e] = "e" + std::to_string(e);
}

int UnitrivalentGraph::trivalent_count() const noexcept {
  int t = 0;
  for (const auto& h : half_edges_) t += h.size() == 3 ? 1 : 0;
  return t;
}

bool UnitrivalentGraph::is_connected() const {
  std::vector<char> seen(vertex_count(), 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int reached = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int h : half_edges_[v]) {
      int w = vertex_of_[partner(h)];
      if (!seen[w]) {
        seen[w] = 1;
        ++reached;
        stack.push_back(w);
      }
    }
  }
  return reached == vertex_count();
}

void UnitrivalentGraph::set_names(std::vector<std::string> vertex_names,
                                  std::vector<std::string> edge_names) {
  if (vertex_names.size() != half_edges_.size() ||
      edge_names.size() != static_cast<std::size_t>(edge_count_))
    throw DomainError("name list sizes do not match the graph");
  vertex_names_ = std::move(vertex_names);
  edge_names_ = std::move(edge_names);
}

std::vector<std::vector<int>> UnitrivalentGraph::incidence() const {
  std::vector<std::vector<int>> out(half_edges_.size());
  for (std::size_t v = 0; v < half_edges_.size(); ++v)
    for (int h : half_edges_[v]) out[v].push_back(edge_of(h));
  return out;
}

int vassiliev_degree(const UnitrivalentGraph& g) { return g.vertex_count() / 2; }

int loop_degree(const UnitrivalentGraph& g) {
  if (!g.is_connected()) throw DomainError("loop degree needs a connected graph");
  return g.edge_count() - g.vertex_count() + 1;
}

int grope_degree(const UnitrivalentGraph& g) { return vassiliev_degree(g) + loop_degree(g); }

// --- trees as graphs -------------------------------------------------------

namespace {

struct TreeGraphBuilder {
  std::vector<std::vector<int>> incidence;
  std::vector<std::string> vnames;
  std::vector<int> tips;
  int edges = 0;
  int internal = 0;

  void attach(const NodePtr& n, int parent_edge) {
    int v = static_cast<int>(incidence.size());
    if (n->kind == NodeKind::Tip) {
      incidence.push_back({parent_edge});
      vnames.push_back("t" + std::to_string(tips.size()));
      tips.push_back(v);
      return;
    }
    int el = edges++;
    int er = edges++;
    incidence.push_back({parent_edge, el, er});
    vnames.push_back("n" + std::to_string(internal++));
    attach(n->children[0], el);
    attach(n->children[1], er);
  }
};

TreeGraphBuilder build_tree_graph(const RootedTree& t) {
  TreeGraphBuilder b;
  b.incidence.push_back({0});
  b.vnames.push_back("r");
  b.edges = 1;
  b.attach(t.root(), 0);
  return b;
}

}  // namespace

UnitrivalentGraph tree_to_graph(const RootedTree& t) {
  TreeGraphBuilder b = build_tree_graph(t);
  UnitrivalentGraph g(b.incidence, b.edges, 0);
  std::vector<std::string> enames(b.edges);
  for (int e = 0; e < b.edges; ++e) enames[e] = "e" + std::to_string(e);
  g.set_names(std::move(b.vnames), std::move(enames));
  return g;
}

std::vector<int> tip_vertices(const RootedTree& t) { return build_tree_graph(t).tips; }

RootedTree graph_to_tree(const UnitrivalentGraph& g) {
  if (!g.root()) throw DomainError("graph has no root");
  if (!g.is_connected() || g.edge_count() != g.vertex_count() - 1)
    throw DomainError("graph is not a tree");
  std::function<NodePtr(int)> build = [&](int incoming) -> NodePtr {
    int v = g.vertex_of(incoming);
    const auto& hs = g.half_edges(v);
    if (hs.size() == 1) return make_tip();
    auto it = std::find(hs.begin(), hs.end(), incoming);
    int pos = static_cast<int>(it - hs.begin());
    int a = hs[(pos + 1) % 3];
    int b = hs[(pos + 2) % 3];
    return make_join(build(UnitrivalentGraph::partner(a)), build(UnitrivalentGraph::partner(b)));
  };
  int root_half = g.half_edges(*g.root()).front();
  return RootedTree(build(UnitrivalentGraph::partner(root_half)));
}

// --- cutting and gluing ----------------------------------------------------

CutResult cut_edges(const UnitrivalentGraph& g, const std::vector<int>& edges) {
  std::set<int> unique(edges.begin(), edges.end());
  if (unique.size() != edges.size()) throw DomainError("cut set lists an edge twice");
  for (int e : edges)
    if (e < 0 || e >= g.edge_count()) throw DomainError("cut edge out of range");
  if (static_cast<int>(edges.size()) != loop_degree(g))
    throw DomainError("cut set has " + std::to_string(edges.size()) + " edges; loop degree is " +
                      std::to_string(loop_degree(g)));

  auto inc = g.incidence();
  std::vector<std::string> vnames, enames;
  for (int v = 0; v < g.vertex_count(); ++v) vnames.push_back(g.vertex_name(v));
  for (int e = 0; e < g.edge_count(); ++e) enames.push_back(g.edge_name(e));

  int next_edge = g.edge_count();
  std::vector<std::pair<int, int>> ends;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const int e = edges[i];
    const int copy = next_edge++;
    // Second end of e moves onto the new edge.
    auto [v1, v2] = g.endpoints(e);
    (void)v1;
    auto& list = inc[v2];
    // When e is a loop both ends are in this list; the second occurrence is the later one.
    auto pos = std::find(list.rbegin(), list.rend(), e);
    *pos = copy;
    const int a = static_cast<int>(inc.size());
    inc.push_back({e});
    inc.push_back({copy});
    vnames.push_back("c" + std::to_string(i) + "a");
    vnames.push_back("c" + std::to_string(i) + "b");
    enames.push_back(g.edge_name(e) + "'");
    ends.emplace_back(a, a + 1);
  }
  UnitrivalentGraph out(inc, next_edge, g.root());
  out.set_names(std::move(vnames), std::move(enames));
  if (!out.is_connected() || out.edge_count() != out.vertex_count() - 1)
    throw DomainError("cut set leaves cycles or disconnects the graph");
  return {std::move(out), std::move(ends)};
}

UnitrivalentGraph glue_univalent(const UnitrivalentGraph& g,
                                 const std::vector<std::pair<int, int>>& pairs) {
  auto inc = g.incidence();
  std::vector<char> vertex_alive(inc.size(), 1), edge_alive(g.edge_count(), 1);
  for (auto [a, b] : pairs) {
    for (int v : {a, b}) {
      if (v < 0 || v >= g.vertex_count()) throw DomainError("glue vertex out of range");
      if (!vertex_alive[v]) throw DomainError("glue pairs are not disjoint");
      if (g.degree(v) != 1) throw DomainError("only univalent vertices can be glued");
      if (g.root() && *g.root() == v) throw DomainError("the root cannot be glued");
    }
    if (a == b) throw DomainError("cannot glue a vertex to itself");
    const int ea = inc[a][0], eb = inc[b][0];
    if (ea == eb) throw DomainError("gluing the two ends of one edge leaves a closed circle");
    vertex_alive[a] = vertex_alive[b] = 0;
    int y = -1;
    for (std::size_t v = 0; v < inc.size() && y < 0; ++v)
      if (vertex_alive[v] && std::find(inc[v].begin(), inc[v].end(), eb) != inc[v].end())
        y = static_cast<int>(v);
    *std::find(inc[y].begin(), inc[y].end(), eb) = ea;
    edge_alive[eb] = 0;
  }
  std::vector<int> vmap(inc.size(), -1), emap(g.edge_count(), -1);
  std::vector<std::string> vnames, enames;
  int nv = 0, ne = 0;
  for (std::size_t v = 0; v < inc.size(); ++v)
    if (vertex_alive[v]) {
      vmap[v] = nv++;
      vnames.push_back(g.vertex_name(static_cast<int>(v)));
    }
  for (int e = 0; e < g.edge_count(); ++e)
    if (edge_alive[e]) {
      emap[e] = ne++;
      enames.push_back(g.edge_name(e));
    }
  std::vector<std::vector<int>> out_inc;
  for (std::size_t v = 0; v < inc.size(); ++v) {
    if (!vertex_alive[v]) continue;
    std::vector<int> row;
    for (int e : inc[v]) row.push_back(emap[e]);
    out_inc.push_back(std::move(row));
  }
  std::optional<int> root;
  if (g.root()) root = vmap[*g.root()];
  UnitrivalentGraph out(out_inc, ne, root);
  out.set_names(std::move(vnames), std::move(enames));
  return out;
}

UnitrivalentGraph glue_tips(const RootedTree& t, const std::vector<std::pair<int, int>>& pairing) {
  const auto tips = tip_vertices(t);
  std::vector<std::pair<int, int>> vpairs;
  for (auto [i, j] : pairing) {
    if (i < 0 || j < 0 || i >= t.tip_count() || j >= t.tip_count())
      throw DomainError("tip index out of range");
    vpairs.emplace_back(tips[i], tips[j]);
  }
  return glue_univalent(tree_to_graph(t), vpairs);
}

}  // namespace grope
