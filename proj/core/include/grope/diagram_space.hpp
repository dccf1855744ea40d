#pragma once

// The module of rooted tree diagrams of a fixed class modulo AS and IHX.
//
// An oriented diagram is a planar rooted tree; the planar order at a vertex is
// its cyclic orientation. Generators are the canonical planar representatives
// of the isomorphism classes, and a planar tree P stands for
// canonicalize(P).sign times its generator.

#include <map>
#include <string>
#include <vector>

#include "grope/snf.hpp"
#include "grope/tree.hpp"

namespace grope {

struct SparseRow {
  std::vector<std::pair<int, BigInt>> entries;  // sorted by index, no zeros
  friend bool operator==(const SparseRow&, const SparseRow&) = default;
};

// Formal integer combination of oriented tree diagrams, keyed by canonical
// encoding.
class DiagramVector {
 public:
  void add(const RootedTree& t, const BigInt& coeff);
  void add(const DiagramVector& other, const BigInt& factor = 1);
  const std::map<std::string, BigInt>& terms() const noexcept { return terms_; }
  bool empty() const noexcept { return terms_.empty(); }

 private:
  std::map<std::string, BigInt> terms_;
};

struct ModulePresentation {
  std::vector<RootedTree> generators;
  std::vector<std::string> encodings;
  std::vector<SparseRow> relations;

  int index_of(const std::string& encoding) const;
  IntMatrix matrix() const;
  // Coordinates of v; throws DomainError on a diagram outside the generators.
  std::vector<BigInt> coordinates(const DiagramVector& v) const;
};

// Generators of class k and the rows D + D' from swapping at each vertex
// (zero rows dropped, duplicates removed).
ModulePresentation tree_generators(int k);
std::vector<SparseRow> as_relations(int k);
// Jacobi rows [[A,B],S] + [[B,S],A] + [[S,A],B] for every edge between two
// internal vertices of every generator; rows equal up to sign are merged.
std::vector<SparseRow> ihx_relations(int k);
ModulePresentation tree_presentation(int k);

enum class Ring { Integers, Rationals };

class Quotient {
 public:
  explicit Quotient(ModulePresentation p);

  const ModulePresentation& presentation() const noexcept { return p_; }
  const SmithForm& smith() const noexcept { return snf_; }
  // Nonzero Smith diagonal, including units.
  const std::vector<BigInt>& invariant_factors() const noexcept { return snf_.factors; }
  std::vector<BigInt> torsion() const;
  std::size_t free_rank() const noexcept { return p_.generators.size() - snf_.rank(); }

  // y = x V reduced mod each invariant factor; zero iff v lies in the
  // relation lattice.
  std::vector<BigInt> reduce(const DiagramVector& v) const;
  bool is_zero(const DiagramVector& v, Ring ring = Ring::Integers) const;

 private:
  ModulePresentation p_;
  SmithForm snf_;
};

// True iff the caterpillar of class k generates the quotient.
bool span_check(int k);

std::string dump_presentation(const ModulePresentation& p);

}  // namespace grope
