#include <algorithm>
#include <map>
#include <mutex>

#include "grope/tree.hpp"

namespace grope {

namespace {

// Canonical trees by tip count. Building Join(A, B) from canonical A, B with
// key(A) >= key(B) yields a canonical tree, so no dedup pass is needed.
const std::vector<CanonicalTree>& canonical_trees(int k) {
  static std::mutex mu;
  static std::map<int, std::vector<CanonicalTree>> memo;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = memo.find(k);
    if (it != memo.end()) return it->second;
  }
  std::vector<CanonicalTree> out;
  if (k == 1) {
    out.push_back(canonicalize(RootedTree::tip()));
  } else {
    for (int i = k - 1; 2 * i >= k; --i) {
      const int j = k - i;
      const auto& big = canonical_trees(i);
      const auto& small = canonical_trees(j);
      for (const auto& a : big)
        for (const auto& b : small) {
          if (i == j && a.encoding < b.encoding) continue;
          out.push_back(canonicalize(RootedTree::join(a.tree, b.tree)));
        }
    }
    std::sort(out.begin(), out.end(),
              [](const CanonicalTree& x, const CanonicalTree& y) { return x.encoding < y.encoding; });
  }
  std::lock_guard<std::mutex> lock(mu);
  return memo.emplace(k, std::move(out)).first->second;
}

}  // namespace

std::vector<RootedTree> enumerate_trees(int k) {
  if (k < 1) throw DomainError("tree class must be >= 1");
  std::vector<RootedTree> out;
  for (const auto& c : canonical_trees(k)) out.push_back(c.tree);
  return out;
}

std::vector<RootedTree> enumerate_planar_trees(int k) {
  if (k < 1) throw DomainError("tree class must be >= 1");
  if (k == 1) return {RootedTree::tip()};
  std::vector<RootedTree> out;
  for (int i = 1; i < k; ++i) {
    auto left = enumerate_planar_trees(i);
    auto right = enumerate_planar_trees(k - i);
    for (const auto& a : left)
      for (const auto& b : right) out.push_back(RootedTree::join(a, b));
  }
  return out;
}

}  // namespace grope
