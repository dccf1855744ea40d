#include "grope/tree.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <functional>
#include <utility>

namespace grope {

NodePtr make_tip(int label) {
  auto n = std::make_shared<TreeNode>();
  n->kind = NodeKind::Tip;
  n->label = label;
  n->tips = 1;
  return n;
}

NodePtr make_join(NodePtr left, NodePtr right) {
  if (!left || !right) throw DomainError("join of a null subtree");
  auto n = std::make_shared<TreeNode>();
  n->kind = NodeKind::Join;
  n->tips = left->tips + right->tips;
  n->has_box = left->has_box || right->has_box;
  n->children = {std::move(left), std::move(right)};
  return n;
}

NodePtr make_box(std::vector<NodePtr> pairs) {
  std::vector<NodePtr> flat;
  flat.reserve(pairs.size());
  for (auto& p : pairs) {
    if (!p) throw DomainError("box with a null pair");
    if (p->kind == NodeKind::Box) {
      flat.insert(flat.end(), p->children.begin(), p->children.end());
    } else if (p->kind == NodeKind::Join) {
      flat.push_back(std::move(p));
    } else {
      throw DomainError("box entries must be pairs, got a tip");
    }
  }
  if (flat.empty()) throw DomainError("box without pairs");
  if (flat.size() == 1) return flat.front();
  auto n = std::make_shared<TreeNode>();
  n->kind = NodeKind::Box;
  n->has_box = true;
  n->tips = 0;
  for (const auto& p : flat) n->tips += p->tips;
  n->children = std::move(flat);
  return n;
}

std::string path_to_string(const NodePath& path) {
  std::string out;
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (i) out += '.';
    out += std::to_string(path[i]);
  }
  return out;
}

NodePath path_from_string(std::string_view text) {
  NodePath path;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('.', pos);
    if (end == std::string_view::npos) end = text.size();
    int value = 0;
    auto [ptr, ec] = std::from_chars(text.data() + pos, text.data() + end, value);
    if (ec != std::errc() || ptr != text.data() + end || value < 0)
      throw ParseError("bad node path '" + std::string(text) + "'", pos);
    path.push_back(value);
    pos = end + 1;
  }
  return path;
}

namespace {

NodePtr descend(NodePtr node, const NodePath& path) {
  for (int idx : path) {
    if (idx < 0 || static_cast<std::size_t>(idx) >= node->children.size())
      throw DomainError("node path '" + path_to_string(path) + "' leaves the tree");
    node = node->children[idx];
  }
  return node;
}

}  // namespace

TreeWithBoxes::TreeWithBoxes() : root_(make_tip()) {}
TreeWithBoxes::TreeWithBoxes(NodePtr root) : root_(std::move(root)) {
  if (!root_) throw DomainError("null tree");
}

int TreeWithBoxes::box_count() const {
  std::function<int(const NodePtr&)> count = [&](const NodePtr& n) {
    int c = n->kind == NodeKind::Box ? 1 : 0;
    for (const auto& ch : n->children) c += count(ch);
    return c;
  };
  return count(root_);
}

NodePtr TreeWithBoxes::at(const NodePath& path) const { return descend(root_, path); }

RootedTree::RootedTree() : root_(make_tip()) {}
RootedTree::RootedTree(NodePtr root) : root_(std::move(root)) {
  if (!root_) throw DomainError("null tree");
  if (root_->has_box) throw DomainError("rooted tree may not contain boxes");
}

RootedTree RootedTree::tip(int label) { return RootedTree(make_tip(label)); }
RootedTree RootedTree::join(const RootedTree& l, const RootedTree& r) {
  return RootedTree(make_join(l.root_, r.root_));
}
RootedTree RootedTree::left() const {
  if (is_tip()) throw DomainError("a tip has no children");
  return RootedTree(root_->children[0]);
}
RootedTree RootedTree::right() const {
  if (is_tip()) throw DomainError("a tip has no children");
  return RootedTree(root_->children[1]);
}
NodePtr RootedTree::at(const NodePath& path) const { return descend(root_, path); }

bool same_structure(const NodePtr& a, const NodePtr& b, bool compare_labels) {
  if (a == b) return true;
  if (a->kind != b->kind || a->tips != b->tips || a->children.size() != b->children.size())
    return false;
  if (a->kind == NodeKind::Tip) return !compare_labels || a->label == b->label;
  for (std::size_t i = 0; i < a->children.size(); ++i)
    if (!same_structure(a->children[i], b->children[i], compare_labels)) return false;
  return true;
}

bool operator==(const RootedTree& a, const RootedTree& b) {
  return same_structure(a.root_, b.root_, true);
}

// --- parsing ---------------------------------------------------------------

namespace {

class TreeParser {
 public:
  explicit TreeParser(std::string_view text) : text_(text) {}

  NodePtr parse_all() {
    NodePtr t = parse_tree();
    skip_ws();
    if (pos_ != text_.size()) throw ParseError("trailing input after tree", pos_);
    return t;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  char peek() {
    skip_ws();
    if (pos_ >= text_.size()) throw ParseError("unexpected end of input", pos_);
    return text_[pos_];
  }
  void expect(char c) {
    if (peek() != c) throw ParseError(std::string("expected '") + c + "'", pos_);
    ++pos_;
  }

  NodePtr parse_pair() {
    expect('(');
    NodePtr a = parse_tree();
    NodePtr b = parse_tree();
    expect(')');
    return make_join(std::move(a), std::move(b));
  }

  NodePtr parse_tree() {
    char c = peek();
    if (c == '*') {
      ++pos_;
      return make_tip();
    }
    if (c == '(') return parse_pair();
    if (c == '[') {
      std::size_t open = pos_;
      ++pos_;
      std::vector<NodePtr> pairs;
      while (peek() != ']') {
        if (peek() != '(') throw ParseError("box entries must be pairs", pos_);
        pairs.push_back(parse_pair());
      }
      ++pos_;
      if (pairs.size() < 2) throw ParseError("box needs at least 2 pairs", open);
      return make_box(std::move(pairs));
    }
    throw ParseError(std::string("unexpected character '") + c + "'", pos_);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

TreeWithBoxes parse_tree(std::string_view text) { return TreeWithBoxes(TreeParser(text).parse_all()); }

RootedTree parse_rooted_tree(std::string_view text) {
  NodePtr n = TreeParser(text).parse_all();
  if (n->has_box) throw DomainError("expected a tree without boxes");
  return RootedTree(std::move(n));
}

// --- printing and simple queries -------------------------------------------

namespace {
void print_node(const NodePtr& n, std::string& out) {
  switch (n->kind) {
    case NodeKind::Tip:
      out += '*';
      return;
    case NodeKind::Join:
      out += '(';
      print_node(n->children[0], out);
      out += ' ';
      print_node(n->children[1], out);
      out += ')';
      return;
    case NodeKind::Box:
      out += '[';
      for (std::size_t i = 0; i < n->children.size(); ++i) {
        if (i) out += ' ';
        print_node(n->children[i], out);
      }
      out += ']';
      return;
  }
}

int class_rec(const NodePtr& n) {
  switch (n->kind) {
    case NodeKind::Tip:
      return 1;
    case NodeKind::Join:
      return class_rec(n->children[0]) + class_rec(n->children[1]);
    case NodeKind::Box: {
      int best = class_rec(n->children[0]);
      for (std::size_t i = 1; i < n->children.size(); ++i)
        best = std::min(best, class_rec(n->children[i]));
      return best;
    }
  }
  return 0;
}
}  // namespace

std::string to_string(const NodePtr& node) {
  std::string out;
  print_node(node, out);
  return out;
}
std::string to_string(const TreeWithBoxes& t) { return to_string(t.root()); }
std::string to_string(const RootedTree& t) { return to_string(t.root()); }

int class_of(const TreeWithBoxes& t) { return class_rec(t.root()); }
int class_of(const RootedTree& t) { return t.tip_count(); }

bool is_half_grope(const RootedTree& t) {
  const TreeNode* n = t.root().get();
  while (n->kind == NodeKind::Join) {
    const TreeNode* l = n->children[0].get();
    const TreeNode* r = n->children[1].get();
    if (l->kind == NodeKind::Join && r->kind == NodeKind::Join) return false;
    n = l->kind == NodeKind::Join ? l : r;
  }
  return true;
}

std::optional<int> symmetric_height(const RootedTree& t) {
  std::function<int(const TreeNode*)> height = [&](const TreeNode* n) -> int {
    if (n->kind == NodeKind::Tip) return 0;
    int a = height(n->children[0].get());
    int b = height(n->children[1].get());
    return (a < 0 || a != b) ? -1 : a + 1;
  };
  int h = height(t.root().get());
  if (h < 0) return std::nullopt;
  return h;
}

RootedTree gen_half(int k) {
  if (k < 2) throw DomainError("half-grope class must be >= 2");
  RootedTree t = RootedTree::join(RootedTree::tip(), RootedTree::tip());
  for (int c = 3; c <= k; ++c) t = RootedTree::join(t, RootedTree::tip());
  return t;
}

RootedTree gen_symmetric(int h) {
  if (h < 1) throw DomainError("symmetric height must be >= 1");
  RootedTree t = RootedTree::tip();
  for (int i = 0; i < h; ++i) t = RootedTree::join(t, t);
  return t;
}

namespace {
NodePtr relabel(const NodePtr& n, int& next) {
  if (n->kind == NodeKind::Tip) return make_tip(next++);
  NodePtr l = relabel(n->children[0], next);
  NodePtr r = relabel(n->children[1], next);
  return make_join(std::move(l), std::move(r));
}
void collect_labels(const NodePtr& n, std::vector<int>& out) {
  if (n->kind == NodeKind::Tip) {
    out.push_back(n->label);
    return;
  }
  for (const auto& c : n->children) collect_labels(c, out);
}
}  // namespace

RootedTree with_tip_labels(const RootedTree& t) {
  int next = 0;
  return RootedTree(relabel(t.root(), next));
}

std::vector<int> tip_labels(const RootedTree& t) {
  std::vector<int> out;
  collect_labels(t.root(), out);
  return out;
}

NodePtr replace_at(const NodePtr& root, const NodePath& path, NodePtr replacement) {
  std::function<NodePtr(const NodePtr&, std::size_t)> rec = [&](const NodePtr& n,
                                                                std::size_t depth) -> NodePtr {
    if (depth == path.size()) return replacement;
    int idx = path[depth];
    if (idx < 0 || static_cast<std::size_t>(idx) >= n->children.size())
      throw DomainError("node path '" + path_to_string(path) + "' leaves the tree");
    std::vector<NodePtr> kids = n->children;
    kids[idx] = rec(n->children[idx], depth + 1);
    if (n->kind == NodeKind::Join) return make_join(kids[0], kids[1]);
    return make_box(std::move(kids));
  };
  return rec(root, 0);
}

// --- canonical forms -------------------------------------------------------

namespace {
struct CanonNode {
  NodePtr node;
  int sign;
  std::string enc;
};

CanonNode canon_rec(const NodePtr& n) {
  if (n->kind == NodeKind::Tip) return {n, 1, "*"};
  CanonNode a = canon_rec(n->children[0]);
  CanonNode b = canon_rec(n->children[1]);
  int sign = a.sign * b.sign;
  const int ta = a.node->tips, tb = b.node->tips;
  if (ta < tb || (ta == tb && a.enc < b.enc)) {
    std::swap(a, b);
    sign = -sign;
  }
  std::string enc;
  enc.reserve(a.enc.size() + b.enc.size() + 3);
  enc += '(';
  enc += a.enc;
  enc += ' ';
  enc += b.enc;
  enc += ')';
  NodePtr node = (a.node == n->children[0] && b.node == n->children[1])
                     ? n
                     : make_join(a.node, b.node);
  return {std::move(node), sign, std::move(enc)};
}
}  // namespace

CanonicalTree canonicalize(const RootedTree& t) {
  CanonNode c = canon_rec(t.root());
  return {RootedTree(c.node), c.sign, std::move(c.enc)};
}

std::string tree_encoding(const RootedTree& t) { return canon_rec(t.root()).enc; }

bool isomorphic(const RootedTree& a, const RootedTree& b) {
  return a.tip_count() == b.tip_count() && tree_encoding(a) == tree_encoding(b);
}

}  // namespace grope
