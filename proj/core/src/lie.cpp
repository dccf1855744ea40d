#include "grope/lie.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "grope/errors.hpp"

namespace grope {

GroupWord GroupWord::generator(int g) {
  if (g == 0) throw DomainError("generator index must be nonzero");
  GroupWord w;
  w.letters_.push_back(g);
  return w;
}

int GroupWord::rank() const {
  int r = 0;
  for (int l : letters_) r = std::max(r, std::abs(l));
  return r;
}

GroupWord GroupWord::inverse() const {
  GroupWord w;
  w.letters_.reserve(letters_.size());
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) w.letters_.push_back(-*it);
  return w;
}

GroupWord operator*(const GroupWord& a, const GroupWord& b) {
  GroupWord w = a;
  for (int l : b.letters_) {
    if (!w.letters_.empty() && w.letters_.back() == -l)
      w.letters_.pop_back();
    else
      w.letters_.push_back(l);
  }
  return w;
}

GroupWord commutator(const GroupWord& a, const GroupWord& b) { return a * b * a.inverse() * b.inverse(); }

std::string to_string(const GroupWord& w) {
  if (w.is_identity()) return "1";
  std::ostringstream out;
  bool first = true;
  for (int l : w.letters()) {
    if (!first) out << ' ';
    first = false;
    out << 'x' << std::abs(l);
    if (l < 0) out << "^-1";
  }
  return out.str();
}

GroupWord tree_to_bracket(const RootedTree& t, const std::vector<int>& labels) {
  if (static_cast<int>(labels.size()) != t.tip_count())
    throw DomainError("need one label per tip: " + std::to_string(t.tip_count()) + " tips, " +
                      std::to_string(labels.size()) + " labels");
  for (int l : labels)
    if (l < 1) throw DomainError("labels must be >= 1");
  std::size_t next = 0;
  std::function<GroupWord(const NodePtr&)> rec = [&](const NodePtr& n) -> GroupWord {
    if (n->kind == NodeKind::Tip) return GroupWord::generator(labels[next++]);
    GroupWord a = rec(n->children[0]);
    GroupWord b = rec(n->children[1]);
    return commutator(a, b);
  };
  return rec(t.root());
}

std::string to_string(const Polynomial& p) {
  if (p.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [m, c] : p) {
    if (c == 0) continue;
    const std::int64_t mag = c < 0 ? -c : c;
    if (first)
      out << (c < 0 ? "-" : "");
    else
      out << (c < 0 ? " - " : " + ");
    first = false;
    if (mag != 1 || m.empty()) out << mag;
    for (int l : m) out << 'X' << l;
  }
  return first ? "0" : out.str();
}

namespace {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw DomainError("Magnus coefficient overflow");
  return r;
}

}  // namespace

MagnusSeries::MagnusSeries(int rank, int max_degree) : rank_(rank), max_degree_(max_degree) {
  if (rank < 1) throw DomainError("Magnus expansion needs at least one generator");
  if (max_degree < 1 || max_degree > kMaxMagnusDegree)
    throw DomainError("truncation degree must be in [1, " + std::to_string(kMaxMagnusDegree) + "]");
  std::size_t block = 1, total = 0;
  for (int d = 0; d <= max_degree; ++d) {
    offset_.push_back(total);
    total += block;
    block *= static_cast<std::size_t>(rank);
  }
  offset_.push_back(total);
  coeff_.assign(total, 0);
}

MagnusSeries MagnusSeries::one(int rank, int max_degree) {
  MagnusSeries s(rank, max_degree);
  s.coeff_[0] = 1;
  return s;
}

void MagnusSeries::multiply_letter(int letter) {
  const int g = std::abs(letter);
  if (g < 1 || g > rank_) throw DomainError("letter outside the expansion's generators");
  const std::size_t x = static_cast<std::size_t>(g - 1);
  const std::size_t r = static_cast<std::size_t>(rank_);
  // P * X: monomial m of degree d maps to m*r + x in degree d+1. For the
  // inverse, P * (1 - X + X^2 - ...) = P - Q * X with Q the result itself,
  // computed degree by degree.
  if (letter > 0) {
    for (int d = max_degree_ - 1; d >= 0; --d)
      for (std::size_t i = 0; i < offset_[d + 1] - offset_[d]; ++i) {
        const std::int64_t c = coeff_[offset_[d] + i];
        if (c == 0) continue;
        std::int64_t& dst = coeff_[offset_[d + 1] + i * r + x];
        dst = checked_add(dst, c);
      }
  } else {
    for (int d = 1; d <= max_degree_; ++d)
      for (std::size_t i = 0; i < offset_[d] - offset_[d - 1]; ++i) {
        const std::int64_t c = coeff_[offset_[d - 1] + i];
        if (c == 0) continue;
        std::int64_t& dst = coeff_[offset_[d] + i * r + x];
        dst = checked_add(dst, -c);
      }
  }
}

Polynomial MagnusSeries::homogeneous(int degree) const {
  Polynomial p;
  if (degree < 0 || degree > max_degree_) return p;
  const std::size_t r = static_cast<std::size_t>(rank_);
  for (std::size_t i = 0; i < offset_[degree + 1] - offset_[degree]; ++i) {
    const std::int64_t c = coeff_[offset_[degree] + i];
    if (c == 0) continue;
    Monomial m(degree);
    std::size_t code = i;
    for (int j = degree - 1; j >= 0; --j) {
      m[j] = static_cast<int>(code % r) + 1;
      code /= r;
    }
    p.emplace(std::move(m), c);
  }
  return p;
}

bool MagnusSeries::degree_vanishes(int degree) const {
  for (std::size_t i = offset_[degree]; i < offset_[degree + 1]; ++i)
    if (coeff_[i] != 0) return false;
  return true;
}

MagnusSeries magnus(const GroupWord& w, int N, int rank) {
  MagnusSeries s = MagnusSeries::one(std::max({rank, w.rank(), 1}), N);
  for (int l : w.letters()) s.multiply_letter(l);
  return s;
}

std::optional<int> lcs_degree(const GroupWord& w, int N) {
  const MagnusSeries s = magnus(w, N);
  for (int d = 1; d <= N; ++d)
    if (!s.degree_vanishes(d)) return d;
  return std::nullopt;
}

Polynomial& add_scaled(Polynomial& into, const Polynomial& p, std::int64_t factor) {
  for (const auto& [m, c] : p) {
    std::int64_t prod;
    if (__builtin_mul_overflow(c, factor, &prod)) throw DomainError("polynomial coefficient overflow");
    std::int64_t& slot = into[m];
    slot = checked_add(slot, prod);
    if (slot == 0) into.erase(m);
  }
  return into;
}

namespace {

Polynomial multiply(const Polynomial& a, const Polynomial& b) {
  Polynomial out;
  for (const auto& [ma, ca] : a)
    for (const auto& [mb, cb] : b) {
      Monomial m = ma;
      m.insert(m.end(), mb.begin(), mb.end());
      std::int64_t prod;
      if (__builtin_mul_overflow(ca, cb, &prod)) throw DomainError("polynomial coefficient overflow");
      std::int64_t& slot = out[m];
      slot = checked_add(slot, prod);
      if (slot == 0) out.erase(m);
    }
  return out;
}

}  // namespace

Polynomial bracket_polynomial(const RootedTree& t, const std::vector<int>& labels) {
  if (static_cast<int>(labels.size()) != t.tip_count()) throw DomainError("need one label per tip");
  std::size_t next = 0;
  std::function<Polynomial(const NodePtr&)> rec = [&](const NodePtr& n) -> Polynomial {
    if (n->kind == NodeKind::Tip) return Polynomial{{Monomial{labels[next++]}, 1}};
    const Polynomial a = rec(n->children[0]);
    const Polynomial b = rec(n->children[1]);
    Polynomial p = multiply(a, b);
    return add_scaled(p, multiply(b, a), -1);
  };
  return rec(t.root());
}

Polynomial bracket_polynomial(const RootedTree& t) {
  std::vector<int> labels = tip_labels(t);
  for (int& l : labels)
    if (l < 1) throw DomainError("every tip needs a label >= 1");
  return bracket_polynomial(t, labels);
}

}  // namespace grope
