#include "grope/diagram_space.hpp"

#include <algorithm>
#include <functional>
#include <optional>
#include <set>
#include <sstream>

namespace grope {

void DiagramVector::add(const RootedTree& t, const BigInt& coeff) {
  if (coeff == 0) return;
  const CanonicalTree c = canonicalize(t);
  BigInt& slot = terms_[c.encoding];
  if (c.sign > 0)
    slot += coeff;
  else
    slot -= coeff;
  if (slot == 0) terms_.erase(c.encoding);
}

void DiagramVector::add(const DiagramVector& other, const BigInt& factor) {
  for (const auto& [enc, c] : other.terms_) {
    BigInt& slot = terms_[enc];
    slot += factor * c;
    if (slot == 0) terms_.erase(enc);
  }
}

int ModulePresentation::index_of(const std::string& encoding) const {
  for (std::size_t i = 0; i < encodings.size(); ++i)
    if (encodings[i] == encoding) return static_cast<int>(i);
  return -1;
}

IntMatrix ModulePresentation::matrix() const {
  IntMatrix m(relations.size(), generators.size());
  for (std::size_t r = 0; r < relations.size(); ++r)
    for (const auto& [j, c] : relations[r].entries) m(r, j) = c;
  return m;
}

std::vector<BigInt> ModulePresentation::coordinates(const DiagramVector& v) const {
  std::vector<BigInt> x(generators.size());
  for (const auto& [enc, c] : v.terms()) {
    const int i = index_of(enc);
    if (i < 0) throw DomainError("diagram " + enc + " is not a generator of this module");
    x[i] = c;
  }
  return x;
}

namespace {

void internal_paths(const NodePtr& n, NodePath& path, std::vector<NodePath>& out) {
  if (n->kind != NodeKind::Join) return;
  out.push_back(path);
  for (int i = 0; i < 2; ++i) {
    path.push_back(i);
    internal_paths(n->children[i], path, out);
    path.pop_back();
  }
}

std::vector<NodePath> internal_paths(const RootedTree& t) {
  std::vector<NodePath> out;
  NodePath path;
  internal_paths(t.root(), path, out);
  return out;
}

// Converts to a row with a positive leading coefficient; empty if zero.
std::optional<SparseRow> to_row(const ModulePresentation& p, const DiagramVector& v) {
  SparseRow row;
  for (const auto& [enc, c] : v.terms()) {
    const int i = p.index_of(enc);
    if (i < 0) throw DomainError("relation leaves the generator set");
    row.entries.emplace_back(i, c);
  }
  if (row.entries.empty()) return std::nullopt;
  std::sort(row.entries.begin(), row.entries.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  if (row.entries.front().second < 0)
    for (auto& e : row.entries) e.second = -e.second;
  return row;
}

struct RowLess {
  bool operator()(const SparseRow& a, const SparseRow& b) const {
    if (a.entries.size() != b.entries.size()) return a.entries.size() < b.entries.size();
    for (std::size_t i = 0; i < a.entries.size(); ++i) {
      if (a.entries[i].first != b.entries[i].first) return a.entries[i].first < b.entries[i].first;
      const int c = cmp(a.entries[i].second, b.entries[i].second);
      if (c != 0) return c < 0;
    }
    return false;
  }
};

std::vector<SparseRow> collect(const ModulePresentation& p,
                               const std::function<void(const RootedTree&, std::vector<DiagramVector>&)>& gen) {
  std::vector<SparseRow> out;
  std::set<SparseRow, RowLess> seen;
  for (const RootedTree& g : p.generators) {
    std::vector<DiagramVector> rows;
    gen(g, rows);
    for (const auto& v : rows)
      if (auto r = to_row(p, v); r && seen.insert(*r).second) out.push_back(std::move(*r));
  }
  return out;
}

std::vector<SparseRow> as_rows(const ModulePresentation& p) {
  return collect(p, [](const RootedTree& g, std::vector<DiagramVector>& rows) {
    for (const NodePath& path : internal_paths(g)) {
      const NodePtr n = g.at(path);
      DiagramVector v;
      v.add(g, 1);
      v.add(RootedTree(replace_at(g.root(), path, make_join(n->children[1], n->children[0]))), 1);
      rows.push_back(std::move(v));
    }
  });
}

std::vector<SparseRow> ihx_rows(const ModulePresentation& p) {
  return collect(p, [](const RootedTree& g, std::vector<DiagramVector>& rows) {
    for (const NodePath& path : internal_paths(g)) {
      const NodePtr u = g.at(path);
      for (int side = 0; side < 2; ++side) {
        const NodePtr& w = u->children[side];
        if (w->kind != NodeKind::Join) continue;
        const NodePtr& a = w->children[0];
        const NodePtr& b = w->children[1];
        const NodePtr& s = u->children[1 - side];
        DiagramVector v;
        for (const NodePtr& term : {make_join(make_join(a, b), s), make_join(make_join(b, s), a),
                                    make_join(make_join(s, a), b)})
          v.add(RootedTree(replace_at(g.root(), path, term)), 1);
        rows.push_back(std::move(v));
      }
    }
  });
}

}  // namespace

ModulePresentation tree_generators(int k) {
  if (k < 1) throw DomainError("class must be >= 1");
  ModulePresentation p;
  p.generators = enumerate_trees(k);
  for (const auto& g : p.generators) p.encodings.push_back(tree_encoding(g));
  return p;
}

std::vector<SparseRow> as_relations(int k) { return as_rows(tree_generators(k)); }

std::vector<SparseRow> ihx_relations(int k) { return ihx_rows(tree_generators(k)); }

ModulePresentation tree_presentation(int k) {
  ModulePresentation p = tree_generators(k);
  p.relations = as_rows(p);
  std::set<SparseRow, RowLess> seen(p.relations.begin(), p.relations.end());
  for (auto& r : ihx_rows(p))
    if (seen.insert(r).second) p.relations.push_back(std::move(r));
  return p;
}

Quotient::Quotient(ModulePresentation p) : p_(std::move(p)), snf_(smith_normal_form(p_.matrix(), true)) {}

std::vector<BigInt> Quotient::torsion() const {
  std::vector<BigInt> out;
  for (const auto& d : snf_.factors)
    if (d != 1) out.push_back(d);
  return out;
}

std::vector<BigInt> Quotient::reduce(const DiagramVector& v) const {
  const std::vector<BigInt> x = p_.coordinates(v);
  const std::size_t n = x.size();
  std::vector<BigInt> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < n; ++j)
      if (snf_.v(i, j) != 0) y[j] += x[i] * snf_.v(i, j);
  }
  for (std::size_t i = 0; i < snf_.rank(); ++i) mpz_fdiv_r(y[i].get_mpz_t(), y[i].get_mpz_t(), snf_.factors[i].get_mpz_t());
  return y;
}

bool Quotient::is_zero(const DiagramVector& v, Ring ring) const {
  const std::vector<BigInt> y = reduce(v);
  const std::size_t start = ring == Ring::Integers ? 0 : snf_.rank();
  for (std::size_t i = start; i < y.size(); ++i)
    if (y[i] != 0) return false;
  return true;
}

bool span_check(int k) {
  if (k == 1) return true;
  ModulePresentation p = tree_presentation(k);
  const int cat = p.index_of(tree_encoding(gen_half(k)));
  SparseRow r;
  r.entries.emplace_back(cat, 1);
  p.relations.push_back(r);
  const SmithForm s = smith_normal_form(p.matrix(), false);
  if (s.rank() != p.generators.size()) return false;
  for (const auto& d : s.factors)
    if (d != 1) return false;
  return true;
}

std::string dump_presentation(const ModulePresentation& p) {
  std::ostringstream out;
  out << "generators " << p.generators.size() << '\n';
  for (std::size_t i = 0; i < p.generators.size(); ++i) out << i << ' ' << p.encodings[i] << '\n';
  out << "relations " << p.relations.size() << '\n';
  for (const auto& r : p.relations) {
    bool first = true;
    for (const auto& [j, c] : r.entries) {
      out << (first ? "" : " ") << j << ':' << c.get_str();
      first = false;
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace grope
