#include "grope/ihx.hpp"

#include <functional>

namespace grope {

namespace {

int height(const TreeNode* n) {
  if (n->kind == NodeKind::Tip) return 0;
  return 1 + std::max(height(n->children[0].get()), height(n->children[1].get()));
}

}  // namespace

int chain_length(const RootedTree& t) {
  if (t.is_tip()) throw DomainError("chain length needs a tree of class >= 2");
  return height(t.root().get()) + 1;
}

IhxPair ihx_step(const RootedTree& i, const NodePath& edge) {
  if (edge.empty()) throw DomainError("the root edge is not an internal edge");
  NodePtr w;
  try {
    w = i.at(edge);
  } catch (const DomainError&) {
    throw DomainError("no edge at '" + path_to_string(edge) + "'");
  }
  if (w->kind != NodeKind::Join)
    throw DomainError("edge '" + path_to_string(edge) + "' is incident to a tip");
  const NodePath parent(edge.begin(), edge.end() - 1);
  const NodePtr u = i.at(parent);
  const int side = edge.back();
  const NodePtr& s = u->children[1 - side];
  const NodePtr& a = w->children[0];
  const NodePtr& b = w->children[1];
  const NodePtr h = make_join(a, make_join(b, s));
  const NodePtr x = make_join(b, make_join(a, s));
  // [S,w] = -[w,S] flips both signs.
  const int orient = side == 0 ? 1 : -1;
  return {{orient, RootedTree(replace_at(i.root(), parent, h))},
          {orient * kIhxXSign, RootedTree(replace_at(i.root(), parent, x))}};
}

NodePath maximal_chain(const RootedTree& c) {
  NodePath path;
  const TreeNode* n = c.root().get();
  while (n->kind == NodeKind::Join) {
    const int hl = height(n->children[0].get());
    const int hr = height(n->children[1].get());
    const int next = hl >= hr ? 0 : 1;
    path.push_back(next);
    n = n->children[next].get();
  }
  return path;
}

NodePath next_ihx_edge(const RootedTree& c) {
  const NodePath chain = maximal_chain(c);
  const TreeNode* n = c.root().get();
  NodePath prefix, best;
  for (int step : chain) {
    const int off = 1 - step;
    if (n->children[off]->kind == NodeKind::Join) {
      NodePath cand = prefix;
      cand.push_back(off);
      if (best.empty() || cand < best) best = std::move(cand);
    }
    prefix.push_back(step);
    n = n->children[step].get();
  }
  return best;
}

std::vector<SignedTree> ihx_reduce(const RootedTree& t, std::vector<IhxTraceStep>* trace) {
  std::vector<SignedTree> out;
  int counter = 0;
  std::function<void(const RootedTree&, int)> rec = [&](const RootedTree& tree, int sign) {
    CanonicalTree c = canonicalize(tree);
    sign *= c.sign;
    if (is_half_grope(c.tree)) {
      out.push_back({sign, c.tree});
      return;
    }
    const NodePath edge = next_ihx_edge(c.tree);
    IhxPair p = ihx_step(c.tree, edge);
    if (trace) trace->push_back({counter, c.tree, edge, p});
    ++counter;
    rec(p.h.tree, sign * p.h.sign);
    rec(p.x.tree, sign * p.x.sign);
  };
  rec(t, 1);
  return out;
}

}  // namespace grope
