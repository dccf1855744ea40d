#include <gtest/gtest.h>

#include "grope/ihx.hpp"
#include "grope/lie.hpp"
#include "oracle.hpp"

using namespace grope;

namespace {

// Tip labels 1..n on a copy of t.
RootedTree labelled(const RootedTree& t) { return with_tip_labels(t); }

Polynomial poly(const RootedTree& t) {
  std::vector<int> labels = tip_labels(t);
  for (int& l : labels) l += 1;
  return bracket_polynomial(t, labels);
}

Polynomial signed_sum(const std::vector<SignedTree>& ts) {
  Polynomial p;
  for (const auto& s : ts) add_scaled(p, poly(s.tree), s.sign);
  return p;
}

}  // namespace

TEST(ChainLength, Examples) {
  EXPECT_EQ(chain_length(gen_half(2)), 2);
  EXPECT_EQ(chain_length(gen_half(4)), 4);
  EXPECT_EQ(chain_length(gen_symmetric(2)), 3);
  EXPECT_THROW(chain_length(RootedTree::tip()), DomainError);
}

TEST(ChainLength, MatchesBreadthFirstSearch) {
  for (int k = 2; k <= 9; ++k)
    for (const auto& t : enumerate_trees(k)) {
      EXPECT_EQ(chain_length(t), oracle::root_path_edges(t)) << to_string(t);
      EXPECT_EQ(chain_length(t) == k, is_half_grope(t)) << to_string(t);
    }
}

TEST(IhxStep, SymmetricToCaterpillars) {
  const RootedTree i = labelled(gen_symmetric(2));
  const IhxPair r = ihx_step(i, {0});
  EXPECT_TRUE(is_half_grope(r.h.tree));
  EXPECT_TRUE(is_half_grope(r.x.tree));
  EXPECT_EQ(class_of(r.h.tree), 4);
  EXPECT_EQ(class_of(r.x.tree), 4);
  EXPECT_EQ(r.h.sign, 1);
  EXPECT_EQ(r.x.sign, kIhxXSign);
  EXPECT_EQ(poly(i), signed_sum({r.h, r.x}));
}

TEST(IhxStep, Errors) {
  EXPECT_THROW(ihx_step(gen_half(2), {0}), DomainError);
  EXPECT_THROW(ihx_step(gen_half(3), {}), DomainError);
  EXPECT_THROW(ihx_step(gen_half(3), {1}), DomainError);
}

TEST(IhxStep, LabelledIdentityOnEveryEdge) {
  for (int k = 3; k <= 7; ++k)
    for (const auto& t : enumerate_planar_trees(k)) {
      const RootedTree i = labelled(t);
      std::function<void(const NodePtr&, NodePath&)> walk = [&](const NodePtr& n, NodePath& path) {
        if (n->kind != NodeKind::Join) return;
        if (!path.empty()) {
          const IhxPair r = ihx_step(i, path);
          EXPECT_EQ(poly(i), signed_sum({r.h, r.x})) << to_string(t) << " @" << path_to_string(path);
          EXPECT_EQ(class_of(r.h.tree), k);
        }
        for (int c = 0; c < 2; ++c) {
          path.push_back(c);
          walk(n->children[c], path);
          path.pop_back();
        }
      };
      NodePath p;
      walk(i.root(), p);
    }
}

TEST(IhxStep, ChosenEdgeLengthensChain) {
  for (int k = 4; k <= 9; ++k)
    for (const auto& t : enumerate_trees(k)) {
      if (is_half_grope(t)) {
        EXPECT_TRUE(next_ihx_edge(t).empty());
        continue;
      }
      const NodePath e = next_ihx_edge(t);
      ASSERT_FALSE(e.empty());
      const IhxPair r = ihx_step(t, e);
      EXPECT_GT(chain_length(r.h.tree), chain_length(t)) << to_string(t);
      EXPECT_GT(chain_length(r.x.tree), chain_length(t)) << to_string(t);
      EXPECT_EQ(static_cast<int>(maximal_chain(t).size()) + 1, chain_length(t));
    }
}

TEST(IhxReduce, Examples) {
  const auto cat = ihx_reduce(gen_half(5));
  ASSERT_EQ(cat.size(), 1u);
  EXPECT_EQ(cat[0].sign, 1);
  EXPECT_EQ(cat[0].tree, gen_half(5));

  std::vector<IhxTraceStep> trace;
  const auto sym = ihx_reduce(gen_symmetric(2), &trace);
  EXPECT_EQ(sym.size(), 2u);
  EXPECT_EQ(trace.size(), 1u);
  for (const auto& s : sym) {
    EXPECT_TRUE(is_half_grope(s.tree));
    EXPECT_EQ(class_of(s.tree), 4);
  }

  trace.clear();
  const auto big = ihx_reduce(gen_symmetric(3), &trace);
  EXPECT_GE(trace.size(), 2u);
  for (const auto& s : big) {
    EXPECT_TRUE(is_half_grope(s.tree));
    EXPECT_EQ(class_of(s.tree), 8);
  }
}

TEST(IhxReduce, LabelledIdentity) {
  for (int k = 2; k <= 7; ++k)
    for (const auto& t : enumerate_trees(k)) {
      const RootedTree i = labelled(t);
      const auto out = ihx_reduce(i);
      EXPECT_EQ(poly(i), signed_sum(out)) << to_string(t);
      for (const auto& s : out) {
        EXPECT_TRUE(is_half_grope(s.tree));
        EXPECT_EQ(tip_labels(s.tree).size(), static_cast<std::size_t>(k));
      }
    }
}

TEST(IhxReduce, TraceChainGrows) {
  for (int k = 4; k <= 8; ++k)
    for (const auto& t : enumerate_trees(k)) {
      std::vector<IhxTraceStep> trace;
      ihx_reduce(t, &trace);
      for (const auto& s : trace) {
        EXPECT_GT(chain_length(s.result.h.tree), chain_length(s.input));
        EXPECT_GT(chain_length(s.result.x.tree), chain_length(s.input));
      }
    }
}
