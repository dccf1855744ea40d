#include "grope/clasper.hpp"

#include <cctype>
#include <charconv>
#include <functional>
#include <sstream>

namespace grope {

std::string_view to_string(LeafKind kind) {
  switch (kind) {
    case LeafKind::GoodCap: return "good_cap";
    case LeafKind::GoodClasp: return "good_clasp";
    case LeafKind::DE: return "D_E";
    case LeafKind::DK: return "D_K";
    case LeafKind::DCl: return "D_Cl";
    case LeafKind::DEK: return "D_EK";
    case LeafKind::DEKCl: return "D_EKCl";
    case LeafKind::Root: return "root";
    case LeafKind::Trivial: return "trivial";
  }
  return "?";
}

bool is_bad(LeafKind kind) {
  switch (kind) {
    case LeafKind::DE:
    case LeafKind::DK:
    case LeafKind::DCl:
    case LeafKind::DEK:
    case LeafKind::DEKCl:
      return true;
    default:
      return false;
  }
}

LeafKind count_kind(const LeafState& l) {
  if (l.is_root) return LeafKind::Root;
  const int e = l.e, k = l.k, cl = l.clasp;
  if (cl >= 1) {
    if (e >= 1 || k >= 1) return LeafKind::DEKCl;
    return cl == 1 ? LeafKind::GoodClasp : LeafKind::DCl;
  }
  if (e >= 1) return k >= 1 ? LeafKind::DEK : LeafKind::DE;
  if (k == 0) return LeafKind::Trivial;
  return k == 1 ? LeafKind::GoodCap : LeafKind::DK;
}

namespace {

bool is_cap(const LeafState& l) { return !l.is_root && l.e == 0 && l.clasp == 0; }

void check_leaf(const ClasperState& s, int leaf) {
  if (leaf < 0 || leaf >= s.tree.tip_count())
    throw DomainError("leaf " + std::to_string(leaf) + " is not a tip leaf (tips are 0.." +
                      std::to_string(s.tree.tip_count() - 1) + ")");
}

void require_kind(const ClasperState& s, int leaf, LeafKind want, std::string_view move) {
  check_leaf(s, leaf);
  const LeafKind got = classify_leaf(s.leaves[leaf]);
  if (got != want)
    throw DomainError("move " + std::string(move) + " needs a " + std::string(to_string(want)) +
                      " leaf; leaf " + std::to_string(leaf) + " is " + std::string(to_string(got)));
}

}  // namespace

LeafKind classify_leaf(const LeafState& leaf) {
  if (leaf.framing != 0 || leaf.knot != 0)
    throw DomainError("leaf must be 0-framed and unknotted before classification");
  return count_kind(leaf);
}

ClasperState ClasperState::simple(const RootedTree& t) {
  ClasperState s;
  s.tree = t;
  s.leaves.assign(t.tip_count(), LeafState::good_cap());
  s.leaves.push_back(LeafState::root());
  s.grope_deg = class_of(t);
  return s;
}

void ClasperState::validate() const {
  if (static_cast<int>(leaves.size()) != tree.tip_count() + 1)
    throw DomainError("clasper needs one leaf per tip plus the root leaf");
  if (grope_deg != class_of(tree)) throw DomainError("grope degree does not match the tree class");
  for (std::size_t i = 0; i < leaves.size(); ++i) {
    const LeafState& l = leaves[i];
    const bool root = static_cast<int>(i) == root_leaf();
    if (l.is_root != root) throw DomainError("exactly the last leaf must be the root leaf");
    if (l.knot < 0 || l.e < 0 || l.k < 0 || l.clasp < 0)
      throw DomainError("leaf " + std::to_string(i) + " has a negative count");
    if (root && !(l == LeafState::root())) throw DomainError("the root leaf must be an unknotted good cap");
  }
}

Complexity complexity(const ClasperState& s) {
  Complexity c;
  for (const LeafState& l : s.leaves) {
    if (l.is_root) continue;
    if (is_cap(l)) {
      c.c[0] -= 1;
      c.c[1] += l.k;
    }
    c.c[2] += l.clasp;
    const LeafKind kind = count_kind(l);
    if (kind == LeafKind::DEK) c.c[3] += 1;
    if (kind == LeafKind::DEKCl) c.c[4] += 1;
  }
  return c;
}

std::vector<Complexity> complexity(const std::vector<ClasperState>& config) {
  std::vector<Complexity> out;
  out.reserve(config.size());
  for (const auto& s : config) out.push_back(complexity(s));
  return out;
}

bool has_trivial_leaf(const ClasperState& s) {
  for (const LeafState& l : s.leaves)
    if (count_kind(l) == LeafKind::Trivial) return true;
  return false;
}

bool all_leaves_good(const ClasperState& s) {
  for (const LeafState& l : s.leaves) {
    const LeafKind k = classify_leaf(l);
    if (k != LeafKind::GoodCap && k != LeafKind::GoodClasp && k != LeafKind::Root) return false;
  }
  return true;
}

std::optional<int> first_bad_leaf(const ClasperState& s) {
  for (int i = 0; i < s.root_leaf(); ++i)
    if (is_bad(classify_leaf(s.leaves[i]))) return i;
  return std::nullopt;
}

ClasperState zero_frame(const ClasperState& s, int leaf) {
  check_leaf(s, leaf);
  if (s.leaves[leaf].framing == 0) throw DomainError("leaf " + std::to_string(leaf) + " is already 0-framed");
  ClasperState out = s;
  out.leaves[leaf].framing = 0;
  return out;
}

std::pair<int, int> default_unknot_split(int u) {
  if (u < 1) throw DomainError("leaf is already unknotted");
  return {u / 2, (u - 1) / 2};
}

std::pair<ClasperState, ClasperState> unknot_step(const ClasperState& s, int leaf,
                                                  std::pair<int, int> split) {
  check_leaf(s, leaf);
  const int u = s.leaves[leaf].knot;
  if (u < 1) throw DomainError("leaf " + std::to_string(leaf) + " is already unknotted");
  auto [u1, u2] = split;
  if (u1 < 0 || u2 < 0 || u1 >= u || u2 >= u)
    throw DomainError("unknotting split must be two values in [0, " + std::to_string(u) + ")");
  std::pair<ClasperState, ClasperState> out{s, s};
  out.first.leaves[leaf].knot = u1;
  out.second.leaves[leaf].knot = u2;
  return out;
}

std::pair<ClasperState, ClasperState> zip(const ClasperState& s, int leaf, LeafCounts half1,
                                          LeafCounts half2) {
  check_leaf(s, leaf);
  const LeafState& l = s.leaves[leaf];
  if (half1.e < 0 || half1.k < 0 || half1.clasp < 0 || half2.e < 0 || half2.k < 0 || half2.clasp < 0 ||
      half1.e + half2.e != l.e || half1.k + half2.k != l.k || half1.clasp + half2.clasp != l.clasp)
    throw DomainError("zip partition does not conserve the leaf's counts");
  std::pair<ClasperState, ClasperState> out{s, s};
  auto set = [&](ClasperState& c, LeafCounts h) {
    c.leaves[leaf].e = h.e;
    c.leaves[leaf].k = h.k;
    c.leaves[leaf].clasp = h.clasp;
  };
  set(out.first, half1);
  set(out.second, half2);
  return out;
}

RootedTree graft_y(const RootedTree& t, int tip) {
  if (tip < 0 || tip >= t.tip_count()) throw DomainError("tip index out of range");
  int seen = 0;
  std::function<NodePtr(const NodePtr&)> rec = [&](const NodePtr& n) -> NodePtr {
    if (n->kind == NodeKind::Tip) {
      if (seen++ == tip) return make_join(make_tip(), make_tip());
      return n;
    }
    NodePtr a = rec(n->children[0]);
    NodePtr b = rec(n->children[1]);
    return make_join(std::move(a), std::move(b));
  };
  return RootedTree(rec(t.root()));
}

std::pair<int, int> balanced_split(int x) { return {(x + 1) / 2, x / 2}; }

// --- interference --------------------------------------------------------

Interference::Interference(const InterferencePolicy& policy)
    : policy_(policy), rng_(policy.seed), remaining_(policy.budget) {
  if (policy.bound < 0) throw DomainError("interference bound must be >= 0");
}

int Interference::draw(int hi) {
  if (policy_.mode == InterferencePolicy::Mode::Zero || hi <= 0) return 0;
  int v = std::uniform_int_distribution<int>(0, hi)(rng_);
  if (remaining_) {
    v = static_cast<int>(std::min<std::uint64_t>(v, *remaining_));
    *remaining_ -= v;
  }
  return v;
}

namespace {

void scatter(std::mt19937_64& rng, std::vector<int> targets, int units, const std::function<void(int)>& add) {
  if (targets.empty()) return;
  std::uniform_int_distribution<std::size_t> pick(0, targets.size() - 1);
  for (int i = 0; i < units; ++i) add(targets[pick(rng)]);
}

}  // namespace

void Interference::inflate_second(ClasperState& c2, bool knot_on_caps) {
  if (policy_.mode == InterferencePolicy::Mode::Zero) return;
  std::vector<int> non_caps, knot_targets;
  for (int i = 0; i < c2.root_leaf(); ++i) {
    if (!is_cap(c2.leaves[i])) {
      non_caps.push_back(i);
      knot_targets.push_back(i);
    } else if (knot_on_caps) {
      knot_targets.push_back(i);
    }
  }
  const int de = draw(policy_.bound);
  const int dk = draw(policy_.bound);
  scatter(rng_, non_caps, de, [&](int i) { c2.leaves[i].e += 1; });
  scatter(rng_, knot_targets, dk, [&](int i) { c2.leaves[i].k += 1; });
}

int Interference::cap_pairs() { return draw(policy_.bound / 2); }

int Interference::extra_higher() { return draw(policy_.bound); }

void Interference::inflate_higher(ClasperState& h) {
  if (policy_.mode == InterferencePolicy::Mode::Zero) return;
  std::vector<int> tips(h.root_leaf());
  for (int i = 0; i < h.root_leaf(); ++i) tips[i] = i;
  const int de = draw(policy_.bound);
  const int dk = draw(policy_.bound);
  const int dc = draw(policy_.bound);
  scatter(rng_, tips, de, [&](int i) { h.leaves[i].e += 1; });
  scatter(rng_, tips, dk, [&](int i) { h.leaves[i].k += 1; });
  scatter(rng_, tips, dc, [&](int i) { h.leaves[i].clasp += 1; });
}

// --- moves ---------------------------------------------------------------

EResult move_E(const ClasperState& s, int leaf, Interference& policy) {
  require_kind(s, leaf, LeafKind::DE, "E");
  EResult out;
  out.c1 = s;
  LeafState& l = out.c1.leaves[leaf];
  const int emitted = l.e + policy.extra_higher();
  l.e = 0;
  l.k = 2 * policy.cap_pairs();
  const RootedTree grafted = graft_y(s.tree, leaf);
  for (int i = 0; i < emitted; ++i) {
    ClasperState h = ClasperState::simple(grafted);
    policy.inflate_higher(h);
    out.higher.push_back(std::move(h));
  }
  return out;
}

namespace {

std::pair<int, int> checked_split(std::optional<std::pair<int, int>> split, int total, std::string_view move) {
  auto [a, b] = split.value_or(balanced_split(total));
  if (a < 1 || b < 1 || a + b != total)
    throw DomainError("move " + std::string(move) + " needs two nonempty parts summing to " + std::to_string(total));
  return {a, b};
}

}  // namespace

std::pair<ClasperState, ClasperState> move_K(const ClasperState& s, int leaf, Interference& policy,
                                             std::optional<std::pair<int, int>> split) {
  require_kind(s, leaf, LeafKind::DK, "K");
  auto [a, b] = checked_split(split, s.leaves[leaf].k, "K");
  auto out = zip(s, leaf, {0, a, 0}, {0, b, 0});
  policy.inflate_second(out.second, false);
  return out;
}

std::pair<ClasperState, ClasperState> move_Cl(const ClasperState& s, int leaf, Interference& policy,
                                              std::optional<std::pair<int, int>> split) {
  require_kind(s, leaf, LeafKind::DCl, "Cl");
  auto [a, b] = checked_split(split, s.leaves[leaf].clasp, "Cl");
  auto out = zip(s, leaf, {0, 0, a}, {0, 0, b});
  policy.inflate_second(out.second, false);
  return out;
}

std::pair<ClasperState, ClasperState> move_EK(const ClasperState& s, int leaf, Interference& policy) {
  require_kind(s, leaf, LeafKind::DEK, "EK");
  const LeafState& l = s.leaves[leaf];
  auto out = zip(s, leaf, {l.e, 0, 0}, {0, l.k, 0});
  policy.inflate_second(out.second, true);
  return out;
}

std::pair<ClasperState, ClasperState> move_EKCl(const ClasperState& s, int leaf, Interference& policy) {
  require_kind(s, leaf, LeafKind::DEKCl, "EKCl");
  const LeafState& l = s.leaves[leaf];
  auto out = zip(s, leaf, {0, 0, l.clasp}, {l.e, l.k, 0});
  policy.inflate_second(out.second, false);
  return out;
}

// --- text format ---------------------------------------------------------

ClasperState parse_clasper_state(std::string_view text) {
  std::optional<RootedTree> tree;
  struct Pending {
    int tip;
    LeafState leaf;
    std::size_t offset;
  };
  std::vector<Pending> leaves;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = text.substr(pos, end - pos);
    const std::size_t base = pos;
    pos = end + 1;
    std::size_t i = 0;
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i == line.size() || line[i] == '#') {
      if (end == text.size()) break;
      continue;
    }
    if (!tree) {
      try {
        tree = parse_rooted_tree(line);
      } catch (const ParseError& e) {
        throw ParseError(std::string("bad tree line: ") + e.what(), base + e.offset());
      } catch (const DomainError& e) {
        throw ParseError(e.what(), base + i);
      }
    } else {
      if (line.substr(i, 4) != "leaf") throw ParseError("expected 'leaf <tip>: ...'", base + i);
      i += 4;
      auto skip = [&] {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
      };
      auto number = [&](int& out) {
        skip();
        const char* first = line.data() + i;
        const char* last = line.data() + line.size();
        auto [ptr, ec] = std::from_chars(first, last, out);
        if (ec != std::errc() || ptr == first) throw ParseError("expected an integer", base + i);
        i += static_cast<std::size_t>(ptr - first);
      };
      Pending p{0, LeafState{0, 0, 0, 0, 0, false}, base + i};
      number(p.tip);
      skip();
      if (i >= line.size() || line[i] != ':') throw ParseError("expected ':' after the tip index", base + i);
      ++i;
      while (true) {
        skip();
        if (i >= line.size()) break;
        const std::size_t key_start = i;
        while (i < line.size() && std::isalpha(static_cast<unsigned char>(line[i]))) ++i;
        const std::string_view key = line.substr(key_start, i - key_start);
        if (i >= line.size() || line[i] != '=') throw ParseError("expected '<field>=<int>'", base + key_start);
        ++i;
        int value = 0;
        number(value);
        if (key == "f") p.leaf.framing = value;
        else if (key == "u") p.leaf.knot = value;
        else if (key == "e") p.leaf.e = value;
        else if (key == "k") p.leaf.k = value;
        else if (key == "cl") p.leaf.clasp = value;
        else throw ParseError("unknown leaf field '" + std::string(key) + "'", base + key_start);
        if (key != "f" && value < 0) throw ParseError("counts must be nonnegative", base + key_start);
      }
      leaves.push_back(p);
    }
    if (end == text.size()) break;
  }
  if (!tree) throw ParseError("missing tree line", text.size());
  ClasperState s = ClasperState::simple(*tree);
  std::vector<char> seen(tree->tip_count(), 0);
  for (const Pending& p : leaves) {
    if (p.tip < 0 || p.tip >= tree->tip_count())
      throw ParseError("tip index " + std::to_string(p.tip) + " out of range", p.offset);
    if (seen[p.tip]++) throw ParseError("leaf " + std::to_string(p.tip) + " given twice", p.offset);
    s.leaves[p.tip] = p.leaf;
  }
  return s;
}

std::string format_clasper_state(const ClasperState& s) {
  std::ostringstream out;
  out << to_string(s.tree) << '\n';
  for (int i = 0; i < s.root_leaf(); ++i) {
    const LeafState& l = s.leaves[i];
    out << "leaf " << i << ": f=" << l.framing << " u=" << l.knot << " e=" << l.e << " k=" << l.k
        << " cl=" << l.clasp << '\n';
  }
  return out.str();
}

}  // namespace grope
