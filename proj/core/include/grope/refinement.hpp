#pragma once

// Pushing boxes (higher-genus stages) down a tree until only genus-one trees
// remain.

#include <cstdint>
#include <optional>
#include <vector>

#include "grope/tree.hpp"

namespace grope {

// Rewrites the Join at `location`, one of whose children is a Box
// [p1..pm], into Box[Join(p1, A), ..., Join(pm, A)] where A is the other
// child (or Box[Join(A, p1), ...] when the box is the right child). If both
// children are boxes the left one is pushed. Throws DomainError when the
// location does not address such a Join.
TreeWithBoxes push_box_step(const TreeWithBoxes& t, const NodePath& location);

// The Join that refine() pushes next: the first in preorder whose box child
// contains no further boxes. Empty once every box sits at the root.
std::optional<NodePath> next_push_location(const TreeWithBoxes& t);

struct RefineStep {
  NodePath location;
  TreeWithBoxes result;
};

// Pushes until no box is below the root, then splits a root box into its
// pairs. Box-free input yields {t}.
std::vector<RootedTree> refine(const TreeWithBoxes& t, std::vector<RefineStep>* trace = nullptr);

// Number of trees refine() returns, computed without rewriting.
std::uint64_t expansion_count(const TreeWithBoxes& t);

// Termination measure: every push_box_step strictly lowers it and it is zero
// exactly when no box sits below the root.
std::uint64_t push_potential(const TreeWithBoxes& t);

}  // namespace grope
