#include <gtest/gtest.h>

#include <map>
#include <numeric>
#include <random>

#include "grope/canonical.hpp"
#include "grope/graph.hpp"
#include "grope/graph_enumerate.hpp"
#include "oracle.hpp"

using namespace grope;

namespace {

const char* kTheta = "graph\nt a: x y z\nt b: x y z\n";

// Union-find test for "cutting S leaves a spanning tree".
bool leaves_tree(const UnitrivalentGraph& g, const std::vector<int>& cut) {
  std::vector<int> parent(g.vertex_count());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  std::vector<bool> is_cut(g.edge_count(), false);
  for (int e : cut) is_cut[e] = true;
  for (int e = 0; e < g.edge_count(); ++e) {
    if (is_cut[e]) continue;
    auto [a, b] = g.endpoints(e);
    if (find(a) == find(b)) return false;
    parent[find(a)] = find(b);
  }
  for (int v = 1; v < g.vertex_count(); ++v)
    if (find(v) != find(0)) return false;
  return true;
}

// Relabels g and reverses the cyclic order at every vertex in `reflect`.
UnitrivalentGraph relabel(const UnitrivalentGraph& g, const std::vector<int>& vperm, const std::vector<int>& eperm,
                          const std::vector<bool>& reflect, const std::vector<int>& rotate) {
  std::vector<std::vector<int>> inc(g.vertex_count());
  const auto old = g.incidence();
  for (int v = 0; v < g.vertex_count(); ++v) {
    std::vector<int> es;
    for (int e : old[v]) es.push_back(eperm[e]);
    std::rotate(es.begin(), es.begin() + rotate[v] % es.size(), es.end());
    if (reflect[v]) std::reverse(es.begin(), es.end());
    inc[vperm[v]] = es;
  }
  std::optional<int> root;
  if (g.root()) root = vperm[*g.root()];
  return UnitrivalentGraph(inc, g.edge_count(), root);
}

}  // namespace

TEST(GraphDegrees, Examples) {
  const UnitrivalentGraph y = tree_to_graph(parse_rooted_tree("(* *)"));
  EXPECT_EQ(vassiliev_degree(y), 2);
  EXPECT_EQ(loop_degree(y), 0);
  const UnitrivalentGraph theta = parse_graph(kTheta);
  EXPECT_EQ(vassiliev_degree(theta), 1);
  EXPECT_EQ(loop_degree(theta), 2);
  EXPECT_EQ(grope_degree(theta), 3);
  const UnitrivalentGraph h = tree_to_graph(parse_rooted_tree("((* *) *)"));
  EXPECT_EQ(vassiliev_degree(h), 3);
  EXPECT_EQ(loop_degree(glue_tips(parse_rooted_tree("((* *) *)"), {{0, 2}})), 1);
  for (int k = 2; k <= 9; ++k)
    for (const auto& t : enumerate_trees(k)) {
      EXPECT_EQ(grope_degree(tree_to_graph(t)), k);
      EXPECT_EQ(vassiliev_degree(tree_to_graph(t)), class_of(t));
    }
}

TEST(GraphDegrees, GluedTips) {
  const UnitrivalentGraph c4 = glue_tips(gen_half(4), {{1, 2}});
  EXPECT_EQ(loop_degree(c4), 1);
  EXPECT_EQ(grope_degree(c4), 4);
  const UnitrivalentGraph y = glue_tips(gen_half(2), {{0, 1}});
  EXPECT_EQ(y.vertex_count(), 2);
  EXPECT_EQ(loop_degree(y), 1);
  EXPECT_EQ(grope_degree(y), 2);
  EXPECT_TRUE(isomorphic(glue_tips(gen_half(3), {}), tree_to_graph(gen_half(3))));
  EXPECT_THROW(glue_tips(gen_half(3), {{0, 0}}), DomainError);
  EXPECT_THROW(glue_tips(gen_half(3), {{0, 3}}), DomainError);
}

TEST(GraphConstruct, Rejects) {
  EXPECT_THROW(UnitrivalentGraph({{0}}, 1), DomainError);
  EXPECT_THROW(UnitrivalentGraph({{0, 1}, {0, 1}}, 2), DomainError);
  EXPECT_THROW(UnitrivalentGraph({{0}, {0}, {1}}, 2), DomainError);
  EXPECT_THROW(UnitrivalentGraph({{0, 1, 2}, {0, 1, 2}}, 3, 0), DomainError);
  const UnitrivalentGraph two({{0}, {0}, {1}, {1}}, 2);
  EXPECT_FALSE(two.is_connected());
  EXPECT_THROW(loop_degree(two), DomainError);
}

TEST(GraphIO, ParseAndFormat) {
  const UnitrivalentGraph theta = parse_graph(kTheta);
  EXPECT_EQ(format_graph(theta), kTheta);
  const UnitrivalentGraph again = parse_graph(format_graph(theta));
  EXPECT_EQ(again.incidence(), theta.incidence());
  const UnitrivalentGraph rooted = parse_graph("graph\n# Y\nu r: a\nt c: a b d\nu p: b\nu q: d\nroot r\n");
  EXPECT_EQ(rooted.root(), 0);
  EXPECT_TRUE(isomorphic(rooted, tree_to_graph(gen_half(2))));
  EXPECT_THROW(parse_graph("t a: x y z\n"), ParseError);
  EXPECT_THROW(parse_graph("graph\nt a: x y\n"), ParseError);
  EXPECT_THROW(parse_graph("graph\nt a: x y z\nt b: x y w\n"), ParseError);
  EXPECT_THROW(parse_graph("graph\nu a: x\nu b: x\nroot c\n"), ParseError);
  EXPECT_THROW(parse_graph("graph\nq a: x\n"), ParseError);
}

TEST(GraphTree, RoundTrip) {
  for (int k = 1; k <= 7; ++k)
    for (const auto& t : enumerate_planar_trees(k)) {
      const UnitrivalentGraph g = tree_to_graph(t);
      EXPECT_EQ(to_string(graph_to_tree(g)), to_string(t));
      EXPECT_EQ(g.vertex_count(), 2 * k);
      const auto tips = tip_vertices(t);
      ASSERT_EQ(static_cast<int>(tips.size()), k);
      for (int v : tips) EXPECT_EQ(g.degree(v), 1);
    }
  EXPECT_THROW(graph_to_tree(parse_graph(kTheta)), DomainError);
}

TEST(GraphCut, ThetaToH) {
  const UnitrivalentGraph theta = parse_graph(kTheta);
  const CutResult r = cut_edges(theta, {0, 1});
  EXPECT_EQ(r.graph.vertex_count(), 6);
  EXPECT_EQ(loop_degree(r.graph), 0);
  EXPECT_EQ(vassiliev_degree(r.graph), 3);
  EXPECT_EQ(r.ends.size(), 2u);
  EXPECT_THROW(cut_edges(theta, {0}), DomainError);
  EXPECT_THROW(cut_edges(theta, {0, 0}), DomainError);
  const UnitrivalentGraph tree = tree_to_graph(gen_half(4));
  EXPECT_EQ(cut_edges(tree, {}).graph.incidence(), tree.incidence());
}

TEST(GraphCut, EveryValidCutSetPreservesDegree) {
  for (const auto& g : enumerate_connected_graphs(8)) {
    const int l = loop_degree(g);
    const int m = g.edge_count();
    std::vector<int> pick(l);
    std::function<void(int, int)> rec = [&](int start, int depth) {
      if (depth == l) {
        if (!leaves_tree(g, pick)) {
          EXPECT_THROW(cut_edges(g, pick), DomainError);
          return;
        }
        const CutResult r = cut_edges(g, pick);
        EXPECT_EQ(loop_degree(r.graph), 0);
        EXPECT_EQ(grope_degree(r.graph), grope_degree(g));
        const UnitrivalentGraph back = glue_univalent(r.graph, r.ends);
        if (g.vertex_count() <= 6)
          EXPECT_TRUE(oracle::brute_isomorphic(back, g));
        else
          EXPECT_TRUE(isomorphic(back, g));
        return;
      }
      for (int e = start; e < m; ++e) {
        pick[depth] = e;
        rec(e + 1, depth + 1);
      }
    };
    rec(0, 0);
  }
}

TEST(GraphCanonical, ShuffleInvariant) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 300; ++i) {
    const UnitrivalentGraph g = random_graph(rng, 12);
    const UnitrivalentGraph h = shuffled(g, rng);
    EXPECT_EQ(canonical_form(g).encoding, canonical_form(h).encoding);
    EXPECT_TRUE(isomorphic(g, h));
    const UnitrivalentGraph c = canonical_graph(g);
    EXPECT_EQ(canonical_form(c).sign, 1);
    EXPECT_EQ(canonical_form(c).encoding, canonical_form(g).encoding);
  }
}

TEST(GraphCanonical, AgreesWithBruteForce) {
  std::mt19937_64 rng(5);
  std::vector<UnitrivalentGraph> pool;
  for (int i = 0; i < 120; ++i) pool.push_back(random_graph(rng, 6));
  for (std::size_t i = 0; i < pool.size(); ++i)
    for (std::size_t j = i; j < pool.size(); j += 7)
      EXPECT_EQ(isomorphic(pool[i], pool[j]), oracle::brute_isomorphic(pool[i], pool[j]));
}

TEST(GraphCanonical, RootRespected) {
  // Rerooting the class-4 caterpillar at a deepest tip keeps its shape; at
  // the third tip it becomes the symmetric tree.
  const UnitrivalentGraph a = tree_to_graph(gen_half(4));
  auto inc = a.incidence();
  const UnitrivalentGraph unrooted(inc, a.edge_count());
  EXPECT_FALSE(isomorphic(a, unrooted));
  const auto tips = tip_vertices(gen_half(4));
  const UnitrivalentGraph reroot_deep(inc, a.edge_count(), tips[0]);
  const UnitrivalentGraph reroot_mid(inc, a.edge_count(), tips[2]);
  EXPECT_TRUE(isomorphic(a, reroot_deep));
  EXPECT_FALSE(isomorphic(a, reroot_mid));
  EXPECT_TRUE(isomorphic(reroot_mid, tree_to_graph(gen_symmetric(2))));
}

TEST(GraphCanonical, SignTracksReflections) {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 300; ++i) {
    const UnitrivalentGraph g = random_graph(rng, 10);
    const int n = g.vertex_count();
    std::vector<int> vperm(n), eperm(g.edge_count());
    std::iota(vperm.begin(), vperm.end(), 0);
    std::iota(eperm.begin(), eperm.end(), 0);
    std::shuffle(vperm.begin(), vperm.end(), rng);
    std::shuffle(eperm.begin(), eperm.end(), rng);
    std::vector<bool> reflect(n, false);
    std::vector<int> rotate(n);
    int flips = 0;
    for (int v = 0; v < n; ++v) {
      rotate[v] = static_cast<int>(rng() % 3);
      if (g.is_trivalent(v) && rng() % 2) {
        reflect[v] = true;
        ++flips;
      }
    }
    const CanonicalForm a = canonical_form(g);
    const CanonicalForm b = canonical_form(relabel(g, vperm, eperm, reflect, rotate));
    ASSERT_EQ(a.encoding, b.encoding);
    // A graph with an orientation-reversing automorphism has sign +1 in
    // every presentation; otherwise reflections multiply.
    if (a.sign == -1 || b.sign == -1) EXPECT_EQ(a.sign * b.sign, flips % 2 ? -1 : 1);
  }
}

TEST(GraphEnumerate, MatchesBruteForce) {
  const auto all = enumerate_connected_graphs(6);
  std::map<int, std::set<std::string>> lib;
  for (const auto& g : all) {
    EXPECT_TRUE(g.is_connected());
    auto [it, fresh] = lib[g.vertex_count()].insert(oracle::brute_canonical(oracle::to_multigraph(g)));
    EXPECT_TRUE(fresh) << "duplicate graph";
  }
  for (int n : {2, 4, 6}) EXPECT_EQ(lib[n], oracle::brute_graphs(n)) << n;
  EXPECT_EQ(lib[2].size(), 4u);  // strut, tadpole, theta, dumbbell
}

TEST(GraphEnumerate, ByDegree) {
  for (int d = 1; d <= 5; ++d) {
    const auto gs = enumerate_graphs(d, 8);
    EXPECT_FALSE(gs.empty());
    for (const auto& g : gs) EXPECT_EQ(grope_degree(g), d);
  }
  // Degree 1: only the strut.
  EXPECT_EQ(enumerate_graphs(1, 8).size(), 1u);
}

TEST(GraphEnumerate, RandomGraphsAreValid) {
  std::mt19937_64 rng(99);
  for (int i = 0; i < 500; ++i) {
    const UnitrivalentGraph g = random_graph(rng, 14);
    EXPECT_LE(g.vertex_count(), 14);
    EXPECT_TRUE(g.is_connected());
    EXPECT_EQ(grope_degree(g), vassiliev_degree(g) + loop_degree(g));
  }
}
