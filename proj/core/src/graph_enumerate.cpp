#include "grope/graph_enumerate.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "grope/canonical.hpp"

namespace grope {

namespace {

// Multigraph on the trivalent vertices after deleting every univalent vertex.
// Degrees are at most 3 (a loop counts twice); each missing slot carries a
// pendant edge in the filled graph.
struct Core {
  int vertices = 0;
  std::vector<std::pair<int, int>> edges;

  std::vector<int> degrees() const {
    std::vector<int> deg(vertices, 0);
    for (auto [a, b] : edges) {
      ++deg[a];
      ++deg[b];
    }
    return deg;
  }
  int deficiency() const {
    int d = 0;
    for (int x : degrees()) d += 3 - x;
    return d;
  }
};

UnitrivalentGraph fill(const Core& c) {
  std::vector<std::vector<int>> inc(c.vertices);
  int ne = 0;
  for (auto [a, b] : c.edges) {
    inc[a].push_back(ne);
    inc[b].push_back(ne);
    ++ne;
  }
  for (int v = 0; v < c.vertices; ++v)
    while (inc[v].size() < 3) {
      inc[v].push_back(ne);
      inc.push_back({ne});
      ++ne;
    }
  return UnitrivalentGraph(inc, ne);
}

UnitrivalentGraph strut() { return UnitrivalentGraph({{0}, {0}}, 1); }

int ceil_div3(int x) { return (x + 2) / 3; }

// All ways to attach one new vertex: `a` edges to existing vertices with spare
// capacity (a multiset), plus an optional loop when a == 1.
template <typename F>
void for_each_extension(const Core& c, F&& f) {
  const std::vector<int> deg = c.degrees();
  std::vector<int> spare(c.vertices);
  for (int v = 0; v < c.vertices; ++v) spare[v] = 3 - deg[v];
  std::vector<int> pick;
  auto rec = [&](auto& self, int start, int remaining) -> void {
    if (remaining == 0) {
      Core n = c;
      const int w = n.vertices++;
      for (int x : pick) n.edges.emplace_back(x, w);
      f(n);
      if (pick.size() == 1) {
        n.edges.emplace_back(w, w);
        f(n);
      }
      return;
    }
    for (int v = start; v < c.vertices; ++v) {
      if (spare[v] == 0) continue;
      --spare[v];
      pick.push_back(v);
      self(self, v, remaining - 1);
      pick.pop_back();
      ++spare[v];
    }
  };
  for (int a = 1; a <= 3; ++a) rec(rec, 0, a);
}

}  // namespace

std::vector<UnitrivalentGraph> enumerate_connected_graphs(int max_vertices) {
  std::vector<UnitrivalentGraph> out;
  if (max_vertices < 2) return out;
  out.push_back(strut());

  std::vector<Core> level;
  Core y;
  y.vertices = 1;
  Core lollipop;
  lollipop.vertices = 1;
  lollipop.edges = {{0, 0}};
  for (const Core& c : {y, lollipop})
    if (c.vertices + ceil_div3(c.deficiency()) <= max_vertices) level.push_back(c);

  std::map<std::string, UnitrivalentGraph> found;
  while (!level.empty()) {
    std::map<std::string, Core> next;
    for (const Core& c : level) {
      if (c.vertices + c.deficiency() <= max_vertices) {
        UnitrivalentGraph g = fill(c);
        found.emplace(canonical_form(g).encoding, canonical_graph(g));
      }
      for_each_extension(c, [&](const Core& n) {
        if (n.vertices + ceil_div3(n.deficiency()) > max_vertices) return;
        next.emplace(canonical_form(fill(n)).encoding, n);
      });
    }
    level.clear();
    for (auto& [key, c] : next) level.push_back(std::move(c));
  }
  for (auto& [key, g] : found) out.push_back(std::move(g));
  std::stable_sort(out.begin(), out.end(), [](const UnitrivalentGraph& a, const UnitrivalentGraph& b) {
    return a.vertex_count() < b.vertex_count();
  });
  return out;
}

std::vector<UnitrivalentGraph> enumerate_graphs(int d, int max_vertices) {
  std::vector<UnitrivalentGraph> out;
  for (auto& g : enumerate_connected_graphs(max_vertices))
    if (grope_degree(g) == d) out.push_back(std::move(g));
  return out;
}

UnitrivalentGraph random_graph(std::mt19937_64& rng, int max_vertices) {
  if (max_vertices < 2) throw DomainError("a unitrivalent graph needs at least 2 vertices");
  while (true) {
    std::uniform_int_distribution<int> coin(0, 9);
    if (max_vertices < 4 || coin(rng) == 0) return shuffled(strut(), rng);
    Core c;
    c.vertices = 1;
    if (coin(rng) < 3) c.edges = {{0, 0}};
    while (true) {
      if (c.vertices + c.deficiency() <= max_vertices && coin(rng) < 3) break;
      std::vector<Core> options;
      for_each_extension(c, [&](const Core& n) {
        if (n.vertices + ceil_div3(n.deficiency()) <= max_vertices) options.push_back(n);
      });
      if (options.empty()) break;
      c = options[std::uniform_int_distribution<std::size_t>(0, options.size() - 1)(rng)];
    }
    if (c.vertices + c.deficiency() <= max_vertices) return shuffled(fill(c), rng);
  }
}

UnitrivalentGraph shuffled(const UnitrivalentGraph& g, std::mt19937_64& rng) {
  const int nv = g.vertex_count();
  const int ne = g.edge_count();
  std::vector<int> vperm(nv), eperm(ne);
  std::iota(vperm.begin(), vperm.end(), 0);
  std::iota(eperm.begin(), eperm.end(), 0);
  std::shuffle(vperm.begin(), vperm.end(), rng);
  std::shuffle(eperm.begin(), eperm.end(), rng);
  auto inc = g.incidence();
  std::vector<std::vector<int>> out(nv);
  std::vector<std::string> vnames(nv), enames(ne);
  for (int v = 0; v < nv; ++v) {
    auto row = inc[v];
    for (int& e : row) e = eperm[e];
    if (row.size() == 3) {
      std::rotate(row.begin(), row.begin() + std::uniform_int_distribution<int>(0, 2)(rng), row.end());
      if (rng() & 1) std::swap(row[1], row[2]);
    }
    out[vperm[v]] = std::move(row);
    vnames[vperm[v]] = g.vertex_name(v);
  }
  for (int e = 0; e < ne; ++e) enames[eperm[e]] = g.edge_name(e);
  std::optional<int> root;
  if (g.root()) root = vperm[*g.root()];
  UnitrivalentGraph res(out, ne, root);
  res.set_names(std::move(vnames), std::move(enames));
  return res;
}

}  // namespace grope
