#include "grope/refinement.hpp"

#include <functional>

namespace grope {

TreeWithBoxes push_box_step(const TreeWithBoxes& t, const NodePath& location) {
  NodePtr node;
  try {
    node = t.at(location);
  } catch (const DomainError&) {
    throw DomainError("no node at location '" + path_to_string(location) + "'");
  }
  if (node->kind != NodeKind::Join)
    throw DomainError("no box at location '" + path_to_string(location) + "': not a join");
  const NodePtr& l = node->children[0];
  const NodePtr& r = node->children[1];
  const bool left_box = l->kind == NodeKind::Box;
  if (!left_box && r->kind != NodeKind::Box)
    throw DomainError("no box at location '" + path_to_string(location) + "'");
  const NodePtr& box = left_box ? l : r;
  const NodePtr& dual = left_box ? r : l;
  std::vector<NodePtr> pairs;
  pairs.reserve(box->children.size());
  for (const NodePtr& p : box->children)
    pairs.push_back(left_box ? make_join(p, dual) : make_join(dual, p));
  return TreeWithBoxes(replace_at(t.root(), location, make_box(std::move(pairs))));
}

std::optional<NodePath> next_push_location(const TreeWithBoxes& t) {
  std::optional<NodePath> innermost, any;
  NodePath path;
  std::function<void(const NodePtr&)> walk = [&](const NodePtr& n) {
    if (innermost || !n->has_box) return;
    if (n->kind == NodeKind::Join) {
      for (const NodePtr& c : n->children)
        if (c->kind == NodeKind::Box) {
          if (!any) any = path;
          bool inner = true;
          for (const NodePtr& p : c->children) inner = inner && !p->has_box;
          if (inner) {
            innermost = path;
            return;
          }
        }
    }
    for (std::size_t i = 0; i < n->children.size() && !innermost; ++i) {
      path.push_back(static_cast<int>(i));
      walk(n->children[i]);
      path.pop_back();
    }
  };
  walk(t.root());
  return innermost ? innermost : any;
}

std::vector<RootedTree> refine(const TreeWithBoxes& t, std::vector<RefineStep>* trace) {
  TreeWithBoxes cur = t;
  while (auto loc = next_push_location(cur)) {
    cur = push_box_step(cur, *loc);
    if (trace) trace->push_back({*loc, cur});
  }
  std::vector<RootedTree> out;
  const NodePtr& root = cur.root();
  if (root->kind == NodeKind::Box) {
    for (const NodePtr& p : root->children) out.emplace_back(p);
  } else {
    out.emplace_back(root);
  }
  return out;
}

namespace {

// N: expansion terms, S: potential, B: sum over terms of boxes passed.
struct Measure {
  std::uint64_t terms = 1;
  std::uint64_t potential = 0;
  std::uint64_t boxes = 0;
};

Measure measure(const NodePtr& n) {
  Measure m;
  switch (n->kind) {
    case NodeKind::Tip:
      break;
    case NodeKind::Join: {
      const Measure a = measure(n->children[0]);
      const Measure b = measure(n->children[1]);
      m.terms = a.terms * b.terms;
      m.potential = (a.potential + a.boxes) * b.terms + (b.potential + b.boxes) * a.terms;
      m.boxes = a.boxes * b.terms + b.boxes * a.terms;
      break;
    }
    case NodeKind::Box: {
      m.terms = 0;
      for (const NodePtr& c : n->children) {
        const Measure a = measure(c);
        m.terms += a.terms;
        m.potential += a.potential;
        m.boxes += a.boxes;
      }
      m.boxes += m.terms;
      break;
    }
  }
  return m;
}

}  // namespace

std::uint64_t expansion_count(const TreeWithBoxes& t) { return measure(t.root()).terms; }

std::uint64_t push_potential(const TreeWithBoxes& t) { return measure(t.root()).potential; }

}  // namespace grope
