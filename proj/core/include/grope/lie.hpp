#pragma once

// Trees as iterated group commutators, and truncated Magnus expansions.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "grope/tree.hpp"

namespace grope {

// Free-group word over generators 1..r; -g is the inverse of g. Always freely
// reduced.
class GroupWord {
 public:
  GroupWord() = default;
  static GroupWord generator(int g);

  const std::vector<int>& letters() const noexcept { return letters_; }
  bool is_identity() const noexcept { return letters_.empty(); }
  int rank() const;  // largest generator index used

  GroupWord inverse() const;
  friend GroupWord operator*(const GroupWord& a, const GroupWord& b);
  friend bool operator==(const GroupWord&, const GroupWord&) = default;

 private:
  std::vector<int> letters_;
};

// [a, b] = a b a^-1 b^-1
GroupWord commutator(const GroupWord& a, const GroupWord& b);
// Letters x1, x2, ...; inverses as x1^-1.
std::string to_string(const GroupWord& w);

// Tip i gets labels[i] (>= 1). Throws DomainError on a size mismatch.
GroupWord tree_to_bracket(const RootedTree& t, const std::vector<int>& labels);

// Noncommutative polynomial in X_1..X_r with monomials as letter sequences.
using Monomial = std::vector<int>;
using Polynomial = std::map<Monomial, std::int64_t>;
std::string to_string(const Polynomial& p);

// Dense truncated expansion: coefficient of every monomial of degree <= N.
class MagnusSeries {
 public:
  MagnusSeries(int rank, int max_degree);
  static MagnusSeries one(int rank, int max_degree);

  int rank() const noexcept { return rank_; }
  int max_degree() const noexcept { return max_degree_; }
  // Multiply on the right by the image of one letter (x -> 1 + X,
  // x^-1 -> 1 - X + X^2 - ...). Throws DomainError on int64 overflow.
  void multiply_letter(int letter);
  Polynomial homogeneous(int degree) const;
  bool degree_vanishes(int degree) const;
  std::int64_t constant() const { return coeff_[0]; }

 private:
  int rank_;
  int max_degree_;
  std::vector<std::size_t> offset_;  // start of each degree block
  std::vector<std::int64_t> coeff_;
};

constexpr int kMaxMagnusDegree = 8;

// 1 <= N <= kMaxMagnusDegree. `rank` defaults to w.rank().
MagnusSeries magnus(const GroupWord& w, int N, int rank = 0);

// Smallest k in [1, N] with a nonzero degree-k term; empty means >= N+1.
std::optional<int> lcs_degree(const GroupWord& w, int N);

// Tip -> X_label, Join -> PQ - QP.
Polynomial bracket_polynomial(const RootedTree& t, const std::vector<int>& labels);
// Same, with labels taken from the tips' own labels.
Polynomial bracket_polynomial(const RootedTree& t);

Polynomial& add_scaled(Polynomial& into, const Polynomial& p, std::int64_t factor);

}  // namespace grope
