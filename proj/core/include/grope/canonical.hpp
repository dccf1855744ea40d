#pragma once

// Canonical labelling of unitrivalent graphs.
//
// The graph is encoded as a simple coloured graph on vertices plus
// half-edges (vertex -- its half-edges, half-edge -- partner), so loops and
// parallel edges need no special casing. Individualisation-refinement explores
// every leaf of the search tree and keeps the least encoding.

#include <string>
#include <vector>

#include "grope/graph.hpp"

namespace grope {

struct CanonicalForm {
  // Canonical index of each input vertex.
  std::vector<int> vertex_labels;
  // Canonical index of each input half-edge.
  std::vector<int> half_edge_labels;
  // Equal for two graphs iff they are isomorphic (roots respected, cyclic
  // orders ignored).
  std::string encoding;
  // Product over trivalent vertices of the parity of the input cyclic order
  // against the canonical one. +1 whenever an orientation-reversing
  // automorphism exists, so the canonical representative always gets +1.
  int sign = 1;
};

CanonicalForm canonical_form(const UnitrivalentGraph& g);

// The canonical representative: vertices and edges renumbered canonically and
// every cyclic order listed by increasing canonical half-edge label.
UnitrivalentGraph canonical_graph(const UnitrivalentGraph& g);

bool isomorphic(const UnitrivalentGraph& a, const UnitrivalentGraph& b);

}  // namespace grope
