#pragma once

// Rooted trivalent trees and trees-with-boxes.
//
// Nodes are immutable and shared, so copying a tree is cheap and subtrees can
// be reused when building new trees. Children are stored in a fixed order;
// that order is what printing and tip indexing use. Isomorphism (which ignores
// the order) goes through canonicalize()/tree_encoding().

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "grope/errors.hpp"

namespace grope {

enum class NodeKind : unsigned char { Tip, Join, Box };

struct TreeNode;
using NodePtr = std::shared_ptr<const TreeNode>;

struct TreeNode {
  NodeKind kind = NodeKind::Tip;
  std::vector<NodePtr> children;  // Join: exactly 2. Box: >= 2 Join nodes.
  int label = -1;                 // tips only; -1 means unlabeled
  int tips = 1;
  bool has_box = false;
};

NodePtr make_tip(int label = -1);
NodePtr make_join(NodePtr left, NodePtr right);
// Flattens Box children into this box and collapses a single pair to that
// pair. Throws DomainError if a child is not a Join or no pairs remain.
NodePtr make_box(std::vector<NodePtr> pairs);

// Child indices from the root. Join children are 0/1, box children 0..m-1.
using NodePath = std::vector<int>;
std::string path_to_string(const NodePath& path);
NodePath path_from_string(std::string_view text);

class TreeWithBoxes {
 public:
  TreeWithBoxes();  // the single tip
  explicit TreeWithBoxes(NodePtr root);

  const NodePtr& root() const noexcept { return root_; }
  int tip_count() const noexcept { return root_->tips; }
  bool is_box_free() const noexcept { return !root_->has_box; }
  int box_count() const;

  NodePtr at(const NodePath& path) const;

 private:
  NodePtr root_;
};

class RootedTree {
 public:
  RootedTree();  // the single tip
  // Throws DomainError if the node contains a Box.
  explicit RootedTree(NodePtr root);

  static RootedTree tip(int label = -1);
  static RootedTree join(const RootedTree& left, const RootedTree& right);

  const NodePtr& root() const noexcept { return root_; }
  int tip_count() const noexcept { return root_->tips; }
  bool is_tip() const noexcept { return root_->kind == NodeKind::Tip; }
  RootedTree left() const;
  RootedTree right() const;
  int internal_count() const noexcept { return root_->tips - 1; }

  NodePtr at(const NodePath& path) const;
  TreeWithBoxes boxed() const { return TreeWithBoxes(root_); }

  // Structural equality: same shape, same child order, same labels.
  friend bool operator==(const RootedTree& a, const RootedTree& b);

 private:
  NodePtr root_;
};

bool same_structure(const NodePtr& a, const NodePtr& b, bool compare_labels = true);

// Grammar: tree := "*" | "(" tree tree ")" | "[" pair pair+ "]", pair := "(" tree tree ")".
// Whitespace is ignored between tokens.
TreeWithBoxes parse_tree(std::string_view text);
RootedTree parse_rooted_tree(std::string_view text);

std::string to_string(const NodePtr& node);
std::string to_string(const TreeWithBoxes& t);
std::string to_string(const RootedTree& t);

int class_of(const TreeWithBoxes& t);
int class_of(const RootedTree& t);

// Caterpillar test: some root-to-tip path passes every internal node.
bool is_half_grope(const RootedTree& t);
// Height h if t is the full binary tree with 2^h tips.
std::optional<int> symmetric_height(const RootedTree& t);

RootedTree gen_half(int k);
RootedTree gen_symmetric(int h);

// Tips numbered 0..n-1 in left-to-right order.
RootedTree with_tip_labels(const RootedTree& t);
std::vector<int> tip_labels(const RootedTree& t);

// Replace the subtree at `path`.
NodePtr replace_at(const NodePtr& root, const NodePath& path, NodePtr replacement);

// Canonical representative of the unordered tree: at every Join the child with
// the larger (tip count, encoding) key goes left. `sign` is (-1)^(number of
// child swaps performed). Labels travel with their tips.
struct CanonicalTree {
  RootedTree tree;
  int sign = 1;
  std::string encoding;
};
CanonicalTree canonicalize(const RootedTree& t);
std::string tree_encoding(const RootedTree& t);
bool isomorphic(const RootedTree& a, const RootedTree& b);

// All rooted trees with k tips up to isomorphism, canonical and sorted by encoding.
std::vector<RootedTree> enumerate_trees(int k);
// All ordered (planar) trees with k tips; Catalan(k-1) of them.
std::vector<RootedTree> enumerate_planar_trees(int k);

}  // namespace grope
