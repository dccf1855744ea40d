#pragma once

// Unitrivalent graphs: every vertex has degree 1 or 3, trivalent vertices carry
// a cyclic order of their incident half-edges. Loops and multi-edges are
// allowed. Edge e owns half-edges 2e and 2e+1; half-edge h sits at
// vertex_of(h), and its partner is h ^ 1.

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "grope/tree.hpp"

namespace grope {

class UnitrivalentGraph {
 public:
  // `incidence[v]` lists the edge ids at v in cyclic order; each edge id in
  // [0, edge_count) must occur exactly twice overall. The first occurrence
  // becomes half-edge 2e, the second 2e+1. Throws DomainError on bad degrees,
  // an odd vertex count, or a non-univalent root.
  UnitrivalentGraph(const std::vector<std::vector<int>>& incidence, int edge_count,
                    std::optional<int> root = std::nullopt);

  int vertex_count() const noexcept { return static_cast<int>(half_edges_.size()); }
  int edge_count() const noexcept { return edge_count_; }
  int trivalent_count() const noexcept;
  int univalent_count() const noexcept { return vertex_count() - trivalent_count(); }
  int degree(int v) const { return static_cast<int>(half_edges_.at(v).size()); }
  bool is_trivalent(int v) const { return degree(v) == 3; }

  // Half-edges at v in cyclic order.
  const std::vector<int>& half_edges(int v) const { return half_edges_.at(v); }
  int vertex_of(int half_edge) const { return vertex_of_.at(half_edge); }
  static int partner(int half_edge) noexcept { return half_edge ^ 1; }
  static int edge_of(int half_edge) noexcept { return half_edge >> 1; }
  std::pair<int, int> endpoints(int edge) const { return {vertex_of_[2 * edge], vertex_of_[2 * edge + 1]}; }

  std::optional<int> root() const noexcept { return root_; }
  bool is_connected() const;

  // Optional display names; default to "v<i>" and "e<i>".
  const std::string& vertex_name(int v) const { return vertex_names_.at(v); }
  const std::string& edge_name(int e) const { return edge_names_.at(e); }
  void set_names(std::vector<std::string> vertex_names, std::vector<std::string> edge_names);

  // Edge-id incidence in cyclic order (the constructor's input form).
  std::vector<std::vector<int>> incidence() const;

 private:
  std::vector<std::vector<int>> half_edges_;
  std::vector<int> vertex_of_;
  int edge_count_ = 0;
  std::optional<int> root_;
  std::vector<std::string> vertex_names_;
  std::vector<std::string> edge_names_;
};

int vassiliev_degree(const UnitrivalentGraph& g);
// First Betti number; throws DomainError on a disconnected graph.
int loop_degree(const UnitrivalentGraph& g);
int grope_degree(const UnitrivalentGraph& g);

// Tree as a graph: vertex 0 is the (marked) root, the top internal vertex's
// cyclic order is (parent, left, right), tips follow in left-to-right order.
UnitrivalentGraph tree_to_graph(const RootedTree& t);
// Inverse for rooted, acyclic graphs; child order follows the cyclic order
// after the parent half-edge.
RootedTree graph_to_tree(const UnitrivalentGraph& g);
// Vertex id of each tip of tree_to_graph(t), in tip order.
std::vector<int> tip_vertices(const RootedTree& t);

struct CutResult {
  UnitrivalentGraph graph;
  // New univalent vertices created for each cut edge, in input order.
  std::vector<std::pair<int, int>> ends;
};

// Replaces each listed edge by two pendant edges ending in new univalent
// vertices. Requires |edges| = loop_degree(g) and a connected, acyclic result.
CutResult cut_edges(const UnitrivalentGraph& g, const std::vector<int>& edges);

// Removes each paired univalent vertex and joins the two neighbouring
// half-edges into a single edge.
UnitrivalentGraph glue_univalent(const UnitrivalentGraph& g,
                                 const std::vector<std::pair<int, int>>& pairs);

// Pairs are tip indices of t (left-to-right order); the root cannot be paired.
UnitrivalentGraph glue_tips(const RootedTree& t, const std::vector<std::pair<int, int>>& pairing);

// Line format:
//   graph
//   t <id>: <eid> <eid> <eid>
//   u <id>: <eid>
//   root <id>
// Lines starting with '#' are ignored. Throws ParseError.
UnitrivalentGraph parse_graph(std::string_view text);
std::string format_graph(const UnitrivalentGraph& g);

}  // namespace grope
