#pragma once

// IHX rewriting of rooted trees into caterpillars.

#include <vector>

#include "grope/tree.hpp"

namespace grope {

struct SignedTree {
  int sign = 1;
  RootedTree tree;
};

// Resolution convention: for the edge from u = [w, S] down to w = [A, B],
//   I = [[A,B],S],  H = [A,[B,S]],  X = [B,[A,S]],  I = H + kIhxXSign * X.
inline constexpr int kIhxXSign = -1;

// Edges of the root path: height of the tree plus the root's pendant edge.
// Throws DomainError for the single tip.
int chain_length(const RootedTree& t);

// `edge` is the path of the lower endpoint, which must be an internal node
// with an internal parent (so the path is non-empty). H and X replace the
// parent in place; their signs satisfy i = h.sign * h.tree + x.sign * x.tree.
struct IhxPair {
  SignedTree h;
  SignedTree x;
};
IhxPair ihx_step(const RootedTree& i, const NodePath& edge);

struct IhxTraceStep {
  int step = 0;
  RootedTree input;  // canonical
  NodePath edge;
  IhxPair result;
};

// Rewrites t into caterpillars: canonicalize, take the deepest tip with the
// least path as the maximal chain, resolve the least edge from the chain to an
// internal vertex off it, recurse on both results. Output signs are relative
// to t and tip labels travel with the tips.
std::vector<SignedTree> ihx_reduce(const RootedTree& t, std::vector<IhxTraceStep>* trace = nullptr);

// The chain and the edge ihx_reduce would resolve next on the canonical tree;
// empty paths when c is already a caterpillar.
NodePath maximal_chain(const RootedTree& c);
NodePath next_ihx_edge(const RootedTree& c);

}  // namespace grope
