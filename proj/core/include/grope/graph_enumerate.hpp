#pragma once

#include <random>
#include <vector>

#include "grope/graph.hpp"

namespace grope {

// Every connected unitrivalent graph with at most `max_vertices` vertices, up
// to isomorphism (cyclic orders ignored, no root). Results are canonical
// representatives ordered by vertex count, then by canonical encoding.
std::vector<UnitrivalentGraph> enumerate_connected_graphs(int max_vertices);

// The subset of enumerate_connected_graphs(max_vertices) with grope degree d.
std::vector<UnitrivalentGraph> enumerate_graphs(int d, int max_vertices);

// A random connected unitrivalent graph with at most `max_vertices` (>= 2)
// vertices. Vertex numbering and cyclic orders are shuffled.
UnitrivalentGraph random_graph(std::mt19937_64& rng, int max_vertices);

// Same graph with vertices, edges and cyclic orders randomly permuted. The
// root, if any, follows its vertex.
UnitrivalentGraph shuffled(const UnitrivalentGraph& g, std::mt19937_64& rng);

}  // namespace grope
