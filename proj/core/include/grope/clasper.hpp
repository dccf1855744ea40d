#pragma once

// Abstract clasper states and the cleanup rewrite system.
//
// A clasper is its tree type plus one LeafState per tip (tip order) and a
// final root leaf. Leaves only record counts: framing, knottedness and the
// numbers of edge, knot and clasp intersections of the disk they bound.

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "grope/bigint.hpp"
#include "grope/tree.hpp"

namespace grope {

struct LeafCounts {
  int e = 0;
  int k = 0;
  int clasp = 0;
  friend bool operator==(const LeafCounts&, const LeafCounts&) = default;
};

struct LeafState {
  int framing = 0;
  int knot = 0;  // 0 = unknotted
  int e = 0;
  int k = 0;
  int clasp = 0;
  bool is_root = false;

  static LeafState good_cap() { return {0, 0, 0, 1, 0, false}; }
  static LeafState root() { return {0, 0, 0, 1, 0, true}; }
  LeafCounts counts() const { return {e, k, clasp}; }
  friend bool operator==(const LeafState&, const LeafState&) = default;
};

// Trivial: a non-root disk meeting nothing; surgery on such a clasper is a no-op.
enum class LeafKind { GoodCap, GoodClasp, DE, DK, DCl, DEK, DEKCl, Root, Trivial };
std::string_view to_string(LeafKind kind);
bool is_bad(LeafKind kind);

// Throws DomainError unless framing and knottedness are 0.
LeafKind classify_leaf(const LeafState& leaf);
// Same classification from the intersection counts alone.
LeafKind count_kind(const LeafState& leaf);

struct Complexity {
  std::array<std::int64_t, 5> c{};
  auto operator<=>(const Complexity&) const = default;
};

struct ClasperState {
  RootedTree tree;
  std::vector<LeafState> leaves;
  int grope_deg = 1;

  // All tips good caps.
  static ClasperState simple(const RootedTree& t);
  int root_leaf() const { return tree.tip_count(); }
  // Throws DomainError on a malformed state.
  void validate() const;
  friend bool operator==(const ClasperState&, const ClasperState&) = default;
};

// c1 = -#caps, c2 = knot points on caps, c3 = clasps, c4 = #D_EK, c5 = #D_EKCl.
// Caps are non-root leaves without edge or clasp intersections. Framing and
// knottedness are ignored.
Complexity complexity(const ClasperState& s);
std::vector<Complexity> complexity(const std::vector<ClasperState>& config);

bool has_trivial_leaf(const ClasperState& s);
bool all_leaves_good(const ClasperState& s);
// First bad leaf (Step 3 kinds), if any.
std::optional<int> first_bad_leaf(const ClasperState& s);

ClasperState zero_frame(const ClasperState& s, int leaf);
std::pair<int, int> default_unknot_split(int u);
std::pair<ClasperState, ClasperState> unknot_step(const ClasperState& s, int leaf,
                                                  std::pair<int, int> split);
// Splits the leaf's counts into two halves; both daughters keep the tree type
// and every other leaf. Throws DomainError if the halves do not add up.
std::pair<ClasperState, ClasperState> zip(const ClasperState& s, int leaf, LeafCounts half1,
                                          LeafCounts half2);

// T with a Y grafted onto tip `tip`.
RootedTree graft_y(const RootedTree& t, int tip);

std::pair<int, int> balanced_split(int x);

struct InterferencePolicy {
  enum class Mode { Zero, Adversarial };
  Mode mode = Mode::Zero;
  int bound = 0;
  std::uint64_t seed = 0;
  // Total increments the adversary may make over one cleanup run; unlimited
  // when empty.
  std::optional<std::uint64_t> budget;
};

// Stateful source of the policy's choices. Under Zero mode every increment is
// 0 and no randomness is drawn.
class Interference {
 public:
  explicit Interference(const InterferencePolicy& policy);

  const InterferencePolicy& policy() const noexcept { return policy_; }
  std::mt19937_64& rng() noexcept { return rng_; }
  void reseed(std::uint64_t seed) { rng_.seed(seed); }

  // Adds up to `bound` edge and up to `bound` knot intersections to the second
  // daughter of a non-(E) move. Only non-cap, non-root leaves are touched,
  // plus knot points on caps when `knot_on_caps` is set. Never adds clasps.
  void inflate_second(ClasperState& c2, bool knot_on_caps);
  // Number p of knot-point pairs the (E) move's new cap receives; 2p <= bound.
  int cap_pairs();
  // Extra higher-degree claspers emitted by (E), at most `bound`.
  int extra_higher();
  // Up to `bound` each of edge, knot and clasp intersections on a fresh
  // higher-degree clasper.
  void inflate_higher(ClasperState& h);

 private:
  int draw(int hi);
  InterferencePolicy policy_;
  std::mt19937_64 rng_;
  std::optional<std::uint64_t> remaining_;
};

struct EResult {
  ClasperState c1;
  std::vector<ClasperState> higher;
};

EResult move_E(const ClasperState& s, int leaf, Interference& policy);
std::pair<ClasperState, ClasperState> move_K(const ClasperState& s, int leaf, Interference& policy,
                                             std::optional<std::pair<int, int>> split = std::nullopt);
std::pair<ClasperState, ClasperState> move_Cl(const ClasperState& s, int leaf, Interference& policy,
                                              std::optional<std::pair<int, int>> split = std::nullopt);
std::pair<ClasperState, ClasperState> move_EK(const ClasperState& s, int leaf, Interference& policy);
std::pair<ClasperState, ClasperState> move_EKCl(const ClasperState& s, int leaf, Interference& policy);

// Text format: a tree line, then optional lines
//   leaf <tip-index>: f=<int> u=<int> e=<int> k=<int> cl=<int>
// Omitted fields are 0; omitted leaves are good caps. '#' starts a comment line.
ClasperState parse_clasper_state(std::string_view text);
std::string format_clasper_state(const ClasperState& s);

// --- cleanup --------------------------------------------------------------

enum class MoveKind { F, U, E, K, Cl, EK, EKCl };
std::string_view to_string(MoveKind m);
MoveKind move_from_string(std::string_view s);

using Aux = std::array<std::int64_t, 2>;  // (framed leaves, total knottedness)
Aux aux_of(const ClasperState& s);

struct DaughterRecord {
  std::uint64_t id = 0;
  Complexity complexity;
  int grope_deg = 0;
  Aux aux{};
  bool discarded = false;
};

struct TraceRecord {
  std::uint64_t step = 0;
  MoveKind move = MoveKind::K;
  std::uint64_t clasper_id = 0;
  int leaf_id = 0;
  Complexity parent_complexity;
  int parent_grope_deg = 0;
  Aux parent_aux{};
  // (E): the same-degree daughter first, then the higher-degree claspers.
  std::vector<DaughterRecord> daughters;
  std::uint64_t seed = 0;
  // Number of identical claspers the record stands for.
  BigInt copies = 1;
};

enum class Strategy { First, Random };

struct WeightedClasper {
  ClasperState state;
  BigInt copies = 1;
  friend bool operator==(const WeightedClasper&, const WeightedClasper&) = default;
};

struct CleanupResult {
  std::vector<WeightedClasper> terminal;
  std::vector<WeightedClasper> remainder;
  std::vector<TraceRecord> trace;
  BigInt discarded = 0;
};

// Step 1 (framings), Step 2 (knotted leaves), then Step 3 moves on every bad
// leaf of every clasper with grope_deg <= max_degree (default 2 * class).
//
// The configuration is a multiset: identical claspers are merged and rewritten
// once. Every choice (leaf, split, interference) is drawn from an RNG seeded by
// the policy seed and the clasper itself, so merged copies would have evolved
// identically. Claspers are processed by increasing degree, then decreasing
// (complexity, aux), which moves can only lower.
CleanupResult cleanup(const ClasperState& initial, const InterferencePolicy& policy,
                      Strategy strategy = Strategy::First, std::optional<int> max_degree = std::nullopt);

// True iff every record obeys the move table: the leading complexity drops,
// only permitted complexities rise, and each daughter is lexicographically
// smaller or of higher degree.
bool verify_trace(const std::vector<TraceRecord>& trace, std::string* why = nullptr);

// Upper bound on the number of moves cleanup() performs counted with
// multiplicity, i.e. the sum of TraceRecord::copies (saturating at
// UINT64_MAX). Assumes the default Step 2 split.
std::uint64_t step_bound(const ClasperState& initial, const InterferencePolicy& policy, int max_degree);

nlohmann::json to_json(const TraceRecord& r);
TraceRecord trace_record_from_json(const nlohmann::json& j);
nlohmann::json to_json(const ClasperState& s);
nlohmann::json to_json(const Complexity& c);

}  // namespace grope
