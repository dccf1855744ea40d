#include <algorithm>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>

#include "grope/clasper.hpp"

namespace grope {

std::string_view to_string(MoveKind m) {
  switch (m) {
    case MoveKind::F: return "F";
    case MoveKind::U: return "U";
    case MoveKind::E: return "E";
    case MoveKind::K: return "K";
    case MoveKind::Cl: return "Cl";
    case MoveKind::EK: return "EK";
    case MoveKind::EKCl: return "EKCl";
  }
  return "?";
}

MoveKind move_from_string(std::string_view s) {
  for (MoveKind m : {MoveKind::F, MoveKind::U, MoveKind::E, MoveKind::K, MoveKind::Cl, MoveKind::EK,
                     MoveKind::EKCl})
    if (to_string(m) == s) return m;
  throw DomainError("unknown move '" + std::string(s) + "'");
}

Aux aux_of(const ClasperState& s) {
  Aux a{};
  for (const LeafState& l : s.leaves) {
    if (l.framing != 0) a[0] += 1;
    a[1] += l.knot;
  }
  return a;
}

namespace {

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

// Every field that can distinguish two claspers, including the degree.
std::string state_key(const ClasperState& s) {
  std::string k = std::to_string(s.grope_deg) + "|" + to_string(s.tree);
  for (const LeafState& l : s.leaves) {
    k += '|';
    for (int v : {l.framing, l.knot, l.e, l.k, l.clasp, int(l.is_root)}) k += std::to_string(v) + ',';
  }
  return k;
}

// Parents sort strictly before their daughters.
struct OrderKey {
  int grope_deg;
  Complexity complexity;
  Aux aux;
  std::string key;

  friend bool operator<(const OrderKey& a, const OrderKey& b) {
    if (a.grope_deg != b.grope_deg) return a.grope_deg < b.grope_deg;
    if (a.complexity != b.complexity) return b.complexity < a.complexity;
    if (a.aux != b.aux) return b.aux < a.aux;
    return a.key < b.key;
  }
};

struct Node {
  std::uint64_t id;
  ClasperState state;
  BigInt copies;
};

class Cleaner {
 public:
  Cleaner(const InterferencePolicy& policy, Strategy strategy, int max_degree)
      : interference_(policy), strategy_(strategy), max_degree_(max_degree), seed_(policy.seed) {}

  CleanupResult run(const ClasperState& initial) {
    initial.validate();
    add(initial, 1);
    while (!work_.empty()) {
      auto it = work_.begin();
      current_ = it->first;
      Node n = std::move(it->second);
      work_.erase(it);
      process(n);
    }
    return std::move(result_);
  }

 private:
  OrderKey order_of(const ClasperState& s) const {
    return {s.grope_deg, complexity(s), aux_of(s), state_key(s)};
  }

  std::uint64_t add(ClasperState s, const BigInt& copies) {
    OrderKey k = order_of(s);
    if (current_ && !(*current_ < k)) throw std::logic_error("cleanup produced a daughter that is not smaller");
    auto it = work_.find(k);
    if (it == work_.end()) it = work_.emplace(std::move(k), Node{next_id_++, std::move(s), 0}).first;
    it->second.copies += copies;
    return it->second.id;
  }

  static void merge_into(std::vector<WeightedClasper>& list, std::map<std::string, std::size_t>& index,
                         const Node& n) {
    const std::string k = state_key(n.state);
    auto [it, fresh] = index.emplace(k, list.size());
    if (fresh)
      list.push_back({n.state, n.copies});
    else
      list[it->second].copies += n.copies;
  }

  int pick_leaf(const std::vector<int>& candidates) {
    if (strategy_ == Strategy::First || candidates.size() == 1) return candidates.front();
    return candidates[std::uniform_int_distribution<std::size_t>(0, candidates.size() - 1)(interference_.rng())];
  }

  std::optional<std::pair<int, int>> pick_split(int total) {
    if (strategy_ == Strategy::First) return std::nullopt;
    const int a = std::uniform_int_distribution<int>(1, total - 1)(interference_.rng());
    return std::make_pair(a, total - a);
  }

  void emit(MoveKind move, const Node& parent, int leaf, std::vector<ClasperState> daughters) {
    TraceRecord r;
    r.step = result_.trace.size();
    r.move = move;
    r.clasper_id = parent.id;
    r.leaf_id = leaf;
    r.parent_complexity = complexity(parent.state);
    r.parent_grope_deg = parent.state.grope_deg;
    r.parent_aux = aux_of(parent.state);
    r.seed = seed_;
    r.copies = parent.copies;
    for (auto& d : daughters) {
      DaughterRecord dr{0, complexity(d), d.grope_deg, aux_of(d), has_trivial_leaf(d)};
      dr.id = add(std::move(d), parent.copies);
      r.daughters.push_back(dr);
    }
    result_.trace.push_back(std::move(r));
  }

  void process(const Node& n) {
    const ClasperState& s = n.state;
    if (s.grope_deg > max_degree_) {
      merge_into(result_.remainder, remainder_index_, n);
      return;
    }
    interference_.reseed(splitmix(seed_ ^ fnv1a(state_key(s))));
    const int tips = s.root_leaf();
    std::vector<int> framed, knotted;
    for (int i = 0; i < tips; ++i) {
      if (s.leaves[i].framing != 0) framed.push_back(i);
      if (s.leaves[i].knot != 0) knotted.push_back(i);
    }
    if (!framed.empty()) {
      const int leaf = pick_leaf(framed);
      emit(MoveKind::F, n, leaf, {zero_frame(s, leaf)});
      return;
    }
    if (!knotted.empty()) {
      const int leaf = pick_leaf(knotted);
      auto [a, b] = unknot_step(s, leaf, default_unknot_split(s.leaves[leaf].knot));
      emit(MoveKind::U, n, leaf, {std::move(a), std::move(b)});
      return;
    }
    if (has_trivial_leaf(s)) {
      result_.discarded += n.copies;
      return;
    }
    std::vector<int> bad;
    for (int i = 0; i < tips; ++i)
      if (is_bad(classify_leaf(s.leaves[i]))) bad.push_back(i);
    if (bad.empty()) {
      merge_into(result_.terminal, terminal_index_, n);
      return;
    }
    const int leaf = pick_leaf(bad);
    switch (classify_leaf(s.leaves[leaf])) {
      case LeafKind::DE: {
        EResult r = move_E(s, leaf, interference_);
        std::vector<ClasperState> ds;
        ds.push_back(std::move(r.c1));
        for (auto& h : r.higher) ds.push_back(std::move(h));
        emit(MoveKind::E, n, leaf, std::move(ds));
        break;
      }
      case LeafKind::DK: {
        auto split = pick_split(s.leaves[leaf].k);
        auto [a, b] = move_K(s, leaf, interference_, split);
        emit(MoveKind::K, n, leaf, {std::move(a), std::move(b)});
        break;
      }
      case LeafKind::DCl: {
        auto split = pick_split(s.leaves[leaf].clasp);
        auto [a, b] = move_Cl(s, leaf, interference_, split);
        emit(MoveKind::Cl, n, leaf, {std::move(a), std::move(b)});
        break;
      }
      case LeafKind::DEK: {
        auto [a, b] = move_EK(s, leaf, interference_);
        emit(MoveKind::EK, n, leaf, {std::move(a), std::move(b)});
        break;
      }
      case LeafKind::DEKCl: {
        auto [a, b] = move_EKCl(s, leaf, interference_);
        emit(MoveKind::EKCl, n, leaf, {std::move(a), std::move(b)});
        break;
      }
      default:
        break;
    }
  }

  Interference interference_;
  Strategy strategy_;
  int max_degree_;
  std::uint64_t seed_;
  std::uint64_t next_id_ = 0;
  std::map<OrderKey, Node> work_;
  std::optional<OrderKey> current_;
  std::map<std::string, std::size_t> terminal_index_, remainder_index_;
  CleanupResult result_;
};

}  // namespace

CleanupResult cleanup(const ClasperState& initial, const InterferencePolicy& policy, Strategy strategy,
                      std::optional<int> max_degree) {
  const int cap = max_degree.value_or(2 * initial.grope_deg);
  if (cap < initial.grope_deg) throw DomainError("max degree is below the clasper's degree");
  return Cleaner(policy, strategy, cap).run(initial);
}

// --- verification --------------------------------------------------------

namespace {

struct MoveRule {
  int lead1;
  int lead2;  // -1: second daughters must have higher degree
  std::array<bool, 5> up1;
  std::array<bool, 5> up2;
};

MoveRule rule_for(MoveKind m) {
  // Components are 0-based: c1 -> 0 ... c5 -> 4.
  switch (m) {
    case MoveKind::E: return {0, -1, {false, true, false, false, false}, {}};
    case MoveKind::K: return {1, 1, {}, {false, false, false, true, true}};
    case MoveKind::Cl: return {2, 2, {}, {false, false, false, true, true}};
    case MoveKind::EK: return {3, 0, {}, {false, true, false, true, true}};
    case MoveKind::EKCl: return {4, 2, {}, {false, false, false, true, true}};
    default: return {};
  }
}

bool fail(std::string* why, const TraceRecord& r, const std::string& msg) {
  if (why) *why = "step " + std::to_string(r.step) + " (" + std::string(to_string(r.move)) + "): " + msg;
  return false;
}

}  // namespace

bool verify_trace(const std::vector<TraceRecord>& trace, std::string* why) {
  for (const TraceRecord& r : trace) {
    const Complexity& pc = r.parent_complexity;
    if (r.copies < 1) return fail(why, r, "record stands for no clasper");
    if (r.move == MoveKind::F || r.move == MoveKind::U) {
      const std::size_t want = r.move == MoveKind::F ? 1 : 2;
      if (r.daughters.size() != want) return fail(why, r, "wrong number of daughters");
      for (const auto& d : r.daughters) {
        if (d.complexity != pc || d.grope_deg != r.parent_grope_deg)
          return fail(why, r, "Step 1/2 must not change complexity or degree");
        if (!(d.aux < r.parent_aux)) return fail(why, r, "framing/knotting measure did not drop");
      }
      continue;
    }
    const MoveRule rule = rule_for(r.move);
    if (r.daughters.empty()) return fail(why, r, "no daughters");
    if (r.move != MoveKind::E && r.daughters.size() != 2) return fail(why, r, "expected two daughters");
    for (std::size_t i = 0; i < r.daughters.size(); ++i) {
      const DaughterRecord& d = r.daughters[i];
      const bool second = i > 0;
      if (r.move == MoveKind::E && second) {
        if (d.grope_deg <= r.parent_grope_deg) return fail(why, r, "(E) emitted a clasper of no higher degree");
        continue;
      }
      if (d.grope_deg != r.parent_grope_deg) return fail(why, r, "daughter changed degree");
      const int lead = second ? rule.lead2 : rule.lead1;
      auto up = second ? rule.up2 : rule.up1;
      if (r.move == MoveKind::EKCl && second && d.complexity.c[0] < pc.c[0]) up[1] = true;
      if (!(d.complexity.c[lead] < pc.c[lead]))
        return fail(why, r, "daughter " + std::to_string(i + 1) + ": c" + std::to_string(lead + 1) + " did not drop");
      for (int j = 0; j < 5; ++j)
        if (d.complexity.c[j] > pc.c[j] && !up[j])
          return fail(why, r, "daughter " + std::to_string(i + 1) + ": c" + std::to_string(j + 1) + " rose");
      if (!(d.complexity < pc)) return fail(why, r, "daughter " + std::to_string(i + 1) + " is not smaller");
    }
  }
  return true;
}

// --- step bound ----------------------------------------------------------

namespace {

constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) { return a > kMax - b ? kMax : a + b; }
std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) return 0;
  return a > kMax / b ? kMax : a * b;
}

// Moves of one clasper and all its descendants, given its tip count n and
// count totals. Along a branch c1 changes at most n times; between changes
// c2 only drops, c3 only drops, and without either at most c4 + c5 <= n
// moves occur. The rewrite tree is binary, hence 2^L - 1 nodes.
std::uint64_t moves_bound(int degree, int n, std::uint64_t k0, std::uint64_t e0, std::uint64_t cl0,
                          std::uint64_t b, int max_degree) {
  if (degree > max_degree) return 0;
  std::uint64_t len = 0;
  for (int epoch = 0; epoch <= n; ++epoch) {
    const std::uint64_t c2 = sat_add(k0, sat_mul(b, sat_add(len, 1)));
    len = sat_add(len, sat_mul(sat_add(sat_add(c2, cl0), 1), static_cast<std::uint64_t>(n + 1)));
  }
  const std::uint64_t tree = len >= 64 ? kMax : (std::uint64_t{1} << len) - 1;
  if (b == 0) return tree;
  const std::uint64_t per_e = sat_add(sat_add(e0, sat_mul(b, len)), b);
  const std::uint64_t higher =
      moves_bound(degree + 1, n + 1, static_cast<std::uint64_t>(n + 1) + b, b, b, b, max_degree);
  return sat_add(tree, sat_mul(sat_mul(tree, per_e), higher));
}

}  // namespace

std::uint64_t step_bound(const ClasperState& initial, const InterferencePolicy& policy, int max_degree) {
  const int n = initial.root_leaf();
  std::uint64_t framed = 0, copies = 1, k0 = 0, e0 = 0, cl0 = 0, weight = 1;
  for (int i = 0; i < n; ++i) {
    const LeafState& l = initial.leaves[i];
    if (l.framing != 0) ++framed;
    copies = sat_mul(copies, static_cast<std::uint64_t>(l.knot) + 1);
    k0 += l.k;
    e0 += l.e;
    cl0 += l.clasp;
    // Final claspers satisfy W(C) >= W(C1) + W(C2) without interference.
    weight = sat_mul(weight, std::max<std::uint64_t>(1, l.clasp + l.k + (l.e > 0 ? 1 : 0)));
  }
  const std::uint64_t steps12 = sat_add(framed, copies - 1);
  std::uint64_t per_copy;
  if (policy.mode == InterferencePolicy::Mode::Zero || policy.bound == 0) {
    // Each branch holds at most n (E) moves; higher claspers start good.
    per_copy = sat_mul(weight, static_cast<std::uint64_t>(n + 1));
  } else {
    per_copy = moves_bound(initial.grope_deg, n, k0, e0, cl0, static_cast<std::uint64_t>(policy.bound), max_degree);
  }
  return sat_add(steps12, sat_mul(copies, per_copy));
}

// --- JSON ----------------------------------------------------------------

nlohmann::json to_json(const Complexity& c) { return nlohmann::json(c.c); }

nlohmann::json to_json(const TraceRecord& r) {
  nlohmann::json ds = nlohmann::json::array();
  for (const auto& d : r.daughters)
    ds.push_back({{"id", d.id},
                  {"complexity", d.complexity.c},
                  {"grope_deg", d.grope_deg},
                  {"aux", d.aux},
                  {"discarded", d.discarded}});
  return {{"step", r.step},
          {"move", std::string(to_string(r.move))},
          {"clasper_id", r.clasper_id},
          {"leaf_id", r.leaf_id},
          {"parent_complexity", r.parent_complexity.c},
          {"parent_grope_deg", r.parent_grope_deg},
          {"parent_aux", r.parent_aux},
          {"daughters", std::move(ds)},
          {"seed", r.seed},
          {"copies", r.copies.fits_ulong_p() ? nlohmann::json(r.copies.get_ui()) : nlohmann::json(r.copies.get_str())}};
}

TraceRecord trace_record_from_json(const nlohmann::json& j) {
  try {
    TraceRecord r;
    r.step = j.at("step").get<std::uint64_t>();
    r.move = move_from_string(j.at("move").get<std::string>());
    r.clasper_id = j.at("clasper_id").get<std::uint64_t>();
    r.leaf_id = j.at("leaf_id").get<int>();
    r.parent_complexity.c = j.at("parent_complexity").get<std::array<std::int64_t, 5>>();
    r.parent_grope_deg = j.at("parent_grope_deg").get<int>();
    r.parent_aux = j.value("parent_aux", Aux{});
    for (const auto& d : j.at("daughters")) {
      DaughterRecord dr;
      dr.id = d.at("id").get<std::uint64_t>();
      dr.complexity.c = d.at("complexity").get<std::array<std::int64_t, 5>>();
      dr.grope_deg = d.at("grope_deg").get<int>();
      dr.aux = d.value("aux", Aux{});
      dr.discarded = d.value("discarded", false);
      r.daughters.push_back(dr);
    }
    r.seed = j.value("seed", std::uint64_t{0});
    if (const auto c = j.find("copies"); c != j.end()) {
      if (c->is_string()) {
        if (r.copies.set_str(c->get<std::string>(), 10) != 0) throw ParseError("malformed copies field", 0);
      } else {
        r.copies = static_cast<unsigned long>(c->get<std::uint64_t>());
      }
    }
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed trace record: ") + e.what(), 0);
  }
}

nlohmann::json to_json(const ClasperState& s) {
  nlohmann::json leaves = nlohmann::json::array();
  for (const LeafState& l : s.leaves) {
    leaves.push_back({{"f", l.framing},
                      {"u", l.knot},
                      {"e", l.e},
                      {"k", l.k},
                      {"cl", l.clasp},
                      {"root", l.is_root},
                      {"kind", std::string(to_string(count_kind(l)))}});
  }
  return {{"tree", to_string(s.tree)}, {"grope_deg", s.grope_deg}, {"leaves", std::move(leaves)},
          {"complexity", complexity(s).c}};
}

}  // namespace grope
