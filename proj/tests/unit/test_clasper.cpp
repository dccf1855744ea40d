#include <gtest/gtest.h>

#include <functional>

#include "grope/clasper.hpp"
#include "oracle.hpp"

using namespace grope;

namespace {

LeafState leaf(int e, int k, int cl) { return {0, 0, e, k, cl, false}; }

ClasperState with_leaves(const RootedTree& t, std::vector<LeafState> tips) {
  ClasperState s = ClasperState::simple(t);
  for (std::size_t i = 0; i < tips.size(); ++i) s.leaves[i] = tips[i];
  return s;
}

const InterferencePolicy kZero{};

InterferencePolicy adversarial(int bound, std::uint64_t seed) {
  return {InterferencePolicy::Mode::Adversarial, bound, seed, 64u * bound};
}

BigInt total(const std::vector<WeightedClasper>& list) {
  BigInt n = 0;
  for (const auto& w : list) n += w.copies;
  return n;
}

BigInt moves(const std::vector<TraceRecord>& trace) {
  BigInt n = 0;
  for (const auto& r : trace) n += r.copies;
  return n;
}

}  // namespace

TEST(Leaf, Classification) {
  EXPECT_EQ(classify_leaf(leaf(0, 1, 0)), LeafKind::GoodCap);
  EXPECT_EQ(classify_leaf(leaf(0, 0, 1)), LeafKind::GoodClasp);
  EXPECT_EQ(classify_leaf(leaf(2, 1, 1)), LeafKind::DEKCl);
  EXPECT_EQ(classify_leaf(leaf(1, 0, 0)), LeafKind::DE);
  EXPECT_EQ(classify_leaf(leaf(0, 2, 0)), LeafKind::DK);
  EXPECT_EQ(classify_leaf(leaf(0, 0, 3)), LeafKind::DCl);
  EXPECT_EQ(classify_leaf(leaf(1, 4, 0)), LeafKind::DEK);
  EXPECT_EQ(classify_leaf(leaf(0, 3, 2)), LeafKind::DEKCl);
  EXPECT_EQ(classify_leaf(leaf(0, 0, 0)), LeafKind::Trivial);
  EXPECT_EQ(classify_leaf(LeafState::root()), LeafKind::Root);
  EXPECT_THROW(classify_leaf({1, 0, 0, 1, 0, false}), DomainError);
  EXPECT_THROW(classify_leaf({0, 2, 0, 1, 0, false}), DomainError);
}

TEST(Complexity, Examples) {
  const RootedTree t = gen_half(3);
  EXPECT_EQ(complexity(with_leaves(t, {leaf(0, 1, 0), leaf(0, 2, 0), leaf(0, 0, 1)})).c,
            (std::array<std::int64_t, 5>{-2, 3, 1, 0, 0}));
  const ClasperState simple = ClasperState::simple(t);
  EXPECT_EQ(complexity(simple).c, (std::array<std::int64_t, 5>{-3, 3, 0, 0, 0}));
  EXPECT_FALSE(first_bad_leaf(simple).has_value());
  EXPECT_TRUE(all_leaves_good(simple));
  EXPECT_EQ(complexity(with_leaves(gen_half(2), {leaf(1, 1, 0)})).c[3], 1);
  EXPECT_LT((Complexity{{-2, 0, 0, 0, 0}}), (Complexity{{-1, 0, 0, 0, 0}}));
}

TEST(Steps, ZeroFrame) {
  ClasperState s = ClasperState::simple(gen_half(2));
  s.leaves[0].framing = 3;
  const ClasperState z = zero_frame(s, 0);
  EXPECT_EQ(z.leaves[0].framing, 0);
  EXPECT_EQ(z.tree, s.tree);
  EXPECT_EQ(z.leaves[1], s.leaves[1]);
  EXPECT_THROW(zero_frame(z, 0), DomainError);
  s.leaves[1].framing = -2;
  EXPECT_EQ(aux_of(zero_frame(zero_frame(s, 0), 1))[0], 0);
}

TEST(Steps, Unknot) {
  ClasperState s = ClasperState::simple(gen_half(2));
  s.leaves[1].knot = 1;
  auto [a, b] = unknot_step(s, 1, default_unknot_split(1));
  EXPECT_EQ(a.leaves[1].knot, 0);
  EXPECT_EQ(b.leaves[1].knot, 0);
  EXPECT_EQ(default_unknot_split(4), std::make_pair(2, 1));
  EXPECT_THROW(default_unknot_split(0), DomainError);
  EXPECT_THROW(unknot_step(a, 1, {0, 0}), DomainError);
  s.leaves[1].knot = 3;
  EXPECT_THROW(unknot_step(s, 1, {3, 0}), DomainError);
  // Along any branch the default split reaches 0 within u steps.
  std::function<int(int)> depth = [&](int u) -> int {
    if (u == 0) return 0;
    auto [x, y] = default_unknot_split(u);
    return 1 + std::max(depth(x), depth(y));
  };
  for (int u = 1; u <= 40; ++u) EXPECT_LE(depth(u), u);
}

TEST(Zip, Partitions) {
  const ClasperState s = with_leaves(gen_half(2), {leaf(0, 2, 0), leaf(1, 1, 0)});
  auto [c1, c2] = zip(s, 0, {0, 1, 0}, {0, 1, 0});
  EXPECT_EQ(c1.leaves[0].k, 1);
  EXPECT_EQ(c2.leaves[0].k, 1);
  EXPECT_EQ(c2.leaves[1], s.leaves[1]);
  auto [t1, t2] = zip(s, 0, {0, 2, 0}, {0, 0, 0});
  EXPECT_EQ(t1, s);
  EXPECT_TRUE(has_trivial_leaf(t2));
  auto [e1, e2] = zip(s, 1, {1, 0, 0}, {0, 1, 0});
  EXPECT_EQ(classify_leaf(e1.leaves[1]), LeafKind::DE);
  EXPECT_EQ(classify_leaf(e2.leaves[1]), LeafKind::GoodCap);
  EXPECT_THROW(zip(s, 0, {0, 1, 0}, {0, 0, 0}), DomainError);
  EXPECT_THROW(zip(s, 2, {0, 1, 0}, {0, 0, 0}), DomainError);
}

TEST(Moves, E) {
  Interference zero(kZero);
  const ClasperState s = with_leaves(gen_half(3), {leaf(1, 0, 0)});
  const EResult r = move_E(s, 0, zero);
  EXPECT_EQ(r.c1.leaves[0], leaf(0, 0, 0));
  EXPECT_LT(complexity(r.c1).c[0], complexity(s).c[0]);
  ASSERT_EQ(r.higher.size(), 1u);
  EXPECT_EQ(r.higher[0].grope_deg, 4);
  EXPECT_EQ(to_string(r.higher[0].tree), "(((* *) *) *)");
  EXPECT_TRUE(all_leaves_good(r.higher[0]));
  EXPECT_THROW(move_E(ClasperState::simple(gen_half(3)), 0, zero), DomainError);
  const EResult two = move_E(with_leaves(gen_half(3), {leaf(0, 1, 0), leaf(2, 0, 0)}), 1, zero);
  EXPECT_EQ(two.higher.size(), 2u);
  EXPECT_EQ(to_string(two.higher[0].tree), "((* (* *)) *)");
  EXPECT_EQ(to_string(graft_y(gen_half(3), 2)), "((* *) (* *))");
}

TEST(Moves, E_Adversarial) {
  Interference adv(adversarial(3, 42));
  for (int i = 0; i < 200; ++i) {
    const ClasperState s = with_leaves(gen_half(3), {leaf(0, 1, 0), leaf(2, 0, 0)});
    const EResult r = move_E(s, 1, adv);
    EXPECT_EQ(r.c1.leaves[1].k % 2, 0);
    EXPECT_LE(r.c1.leaves[1].k, 2);
    EXPECT_GE(r.higher.size(), 2u);
    EXPECT_LE(r.higher.size(), 5u);
    for (const auto& h : r.higher) EXPECT_EQ(h.grope_deg, 4);
  }
}

TEST(Moves, K_Cl_EKCl) {
  Interference zero(kZero);
  const ClasperState k = with_leaves(gen_half(2), {leaf(0, 3, 0)});
  auto [k1, k2] = move_K(k, 0, zero, std::make_pair(2, 1));
  EXPECT_EQ(k1.leaves[0].k, 2);
  EXPECT_EQ(k2.leaves[0].k, 1);
  EXPECT_LT(complexity(k1).c[1], complexity(k).c[1]);
  EXPECT_LT(complexity(k2).c[1], complexity(k).c[1]);
  EXPECT_THROW(move_K(k, 0, zero, std::make_pair(3, 0)), DomainError);

  const ClasperState cl = with_leaves(gen_half(2), {leaf(0, 0, 2)});
  auto [l1, l2] = move_Cl(cl, 0, zero);
  EXPECT_EQ(classify_leaf(l1.leaves[0]), LeafKind::GoodClasp);
  EXPECT_EQ(classify_leaf(l2.leaves[0]), LeafKind::GoodClasp);
  EXPECT_LT(complexity(l1).c[2], complexity(cl).c[2]);

  const ClasperState ekcl = with_leaves(gen_half(2), {leaf(1, 0, 2)});
  auto [x1, x2] = move_EKCl(ekcl, 0, zero);
  EXPECT_EQ(x1.leaves[0], leaf(0, 0, 2));
  EXPECT_EQ(x2.leaves[0], leaf(1, 0, 0));
  EXPECT_LT(complexity(x1).c[4], complexity(ekcl).c[4]);
  EXPECT_LT(complexity(x2).c[2], complexity(ekcl).c[2]);

  const ClasperState ek = with_leaves(gen_half(2), {leaf(2, 3, 0)});
  auto [y1, y2] = move_EK(ek, 0, zero);
  EXPECT_EQ(y1.leaves[0], leaf(2, 0, 0));
  EXPECT_EQ(y2.leaves[0], leaf(0, 3, 0));
  EXPECT_THROW(move_EK(cl, 0, zero), DomainError);
}

TEST(Moves, AdversarialStaysInTable) {
  // Second daughters never gain clasps, and caps only gain knot points in (E,K).
  Interference adv(adversarial(3, 7));
  const ClasperState s = with_leaves(gen_half(3), {leaf(0, 4, 0), leaf(0, 1, 0), leaf(1, 0, 1)});
  for (int i = 0; i < 200; ++i) {
    auto [a, b] = move_K(s, 0, adv);
    EXPECT_EQ(a.leaves[0].k + b.leaves[0].k, 4);
    EXPECT_EQ(complexity(b).c[2], complexity(s).c[2]);
    EXPECT_EQ(b.leaves[1], s.leaves[1]);
  }
}

TEST(Parse, RoundTrip) {
  const ClasperState s = parse_clasper_state("# y\n((* *) *)\nleaf 0: f=2 u=1 e=1\nleaf 2: k=3 cl=1\n");
  EXPECT_EQ(s.leaves[0].framing, 2);
  EXPECT_EQ(s.leaves[0].knot, 1);
  EXPECT_EQ(s.leaves[0].e, 1);
  EXPECT_EQ(s.leaves[1], LeafState::good_cap());
  EXPECT_EQ(s.leaves[2].k, 3);
  EXPECT_EQ(s.leaves[3], LeafState::root());
  EXPECT_EQ(parse_clasper_state(format_clasper_state(s)), s);
  EXPECT_THROW(parse_clasper_state(""), ParseError);
  EXPECT_THROW(parse_clasper_state("(* *)\nleaf 5: k=1\n"), ParseError);
  EXPECT_THROW(parse_clasper_state("(* *)\nleaf 0: z=1\n"), ParseError);
  EXPECT_THROW(parse_clasper_state("(* *)\nleaf 0: k=-1\n"), ParseError);
  EXPECT_THROW(parse_clasper_state("(* *)\nleaf 0: k=1\nleaf 0: k=2\n"), ParseError);
  EXPECT_THROW(parse_clasper_state("(* *\n"), ParseError);
}

TEST(Cleanup, SimpleIsTerminal) {
  const ClasperState s = ClasperState::simple(gen_half(3));
  const CleanupResult r = cleanup(s, kZero);
  ASSERT_EQ(r.terminal.size(), 1u);
  EXPECT_EQ(r.terminal[0].state, s);
  EXPECT_EQ(r.terminal[0].copies, 1);
  EXPECT_TRUE(r.trace.empty());
}

TEST(Cleanup, SingleKMove) {
  const CleanupResult r = cleanup(with_leaves(gen_half(2), {leaf(0, 2, 0)}), kZero);
  ASSERT_EQ(r.trace.size(), 1u);
  EXPECT_EQ(r.trace[0].move, MoveKind::K);
  // Both daughters are the simple Y and merge into one entry.
  ASSERT_EQ(r.terminal.size(), 1u);
  EXPECT_EQ(r.terminal[0].state, ClasperState::simple(gen_half(2)));
  EXPECT_EQ(r.terminal[0].copies, 2);
}

TEST(Cleanup, MixedZeroPolicy) {
  const ClasperState s = with_leaves(gen_half(3), {leaf(1, 0, 0), leaf(0, 2, 0)});
  const CleanupResult r = cleanup(s, kZero, Strategy::First, 6);
  std::string why;
  EXPECT_TRUE(verify_trace(r.trace, &why)) << why;
  EXPECT_FALSE(r.terminal.empty());
  for (const auto& t : r.terminal) {
    EXPECT_TRUE(all_leaves_good(t.state));
    if (t.state.grope_deg == 3) EXPECT_EQ(t.state.tree, s.tree);
  }
  EXPECT_LE(moves(r.trace), step_bound(s, kZero, 6));
  EXPECT_THROW(cleanup(s, kZero, Strategy::First, 2), DomainError);
}

TEST(Cleanup, StepsOneAndTwo) {
  ClasperState s = with_leaves(gen_half(2), {leaf(0, 1, 0), leaf(0, 1, 0)});
  s.leaves[0].framing = -4;
  s.leaves[1].knot = 3;
  const CleanupResult r = cleanup(s, kZero);
  EXPECT_EQ(r.trace.front().move, MoveKind::F);
  // u=3 splits into 1 and 1, each splitting into 0 and 0: four copies.
  EXPECT_EQ(total(r.terminal), 4);
  EXPECT_TRUE(verify_trace(r.trace));
  EXPECT_LE(moves(r.trace), step_bound(s, kZero, 4));
}

TEST(Cleanup, RemainderAboveDegreeCap) {
  const ClasperState s = with_leaves(gen_half(2), {leaf(1, 0, 0)});
  const CleanupResult r = cleanup(s, kZero, Strategy::First, 2);
  EXPECT_EQ(r.remainder.size(), 1u);
  EXPECT_EQ(r.remainder[0].state.grope_deg, 3);
  EXPECT_EQ(r.discarded, 1);  // the emptied cap meets nothing
}

TEST(Cleanup, RandomRunsVerify) {
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 300; ++i) {
    const ClasperState s = oracle::random_clasper_state(rng, 3, 3, false);
    const InterferencePolicy p = (i % 2) ? adversarial(2, rng()) : kZero;
    const Strategy st = (i % 3 == 0) ? Strategy::Random : Strategy::First;
    const CleanupResult r = cleanup(s, p, st);
    std::string why;
    ASSERT_TRUE(verify_trace(r.trace, &why)) << why << "\n" << format_clasper_state(s);
    EXPECT_LE(moves(r.trace), step_bound(s, p, 2 * s.grope_deg));
    for (const auto& t : r.terminal) EXPECT_TRUE(all_leaves_good(t.state));
    for (const auto& t : r.remainder) EXPECT_GT(t.state.grope_deg, 2 * s.grope_deg);
  }
}

TEST(Cleanup, Deterministic) {
  std::mt19937_64 rng(3);
  const ClasperState s = oracle::random_clasper_state(rng, 4, 4, false);
  const auto a = cleanup(s, adversarial(3, 99), Strategy::Random);
  const auto b = cleanup(s, adversarial(3, 99), Strategy::Random);
  ASSERT_EQ(a.trace.size(), b.trace.size());
  for (std::size_t i = 0; i < a.trace.size(); ++i) EXPECT_EQ(to_json(a.trace[i]), to_json(b.trace[i]));
  EXPECT_EQ(a.terminal, b.terminal);
}

TEST(Cleanup, CappedUsesOnlyK) {
  std::mt19937_64 rng(8);
  for (int i = 0; i < 200; ++i) {
    const ClasperState s = oracle::random_clasper_state(rng, 4, 5, true);
    const CleanupResult r = cleanup(s, adversarial(3, rng()), Strategy::Random);
    for (const auto& rec : r.trace)
      EXPECT_TRUE(rec.move == MoveKind::K || rec.move == MoveKind::F || rec.move == MoveKind::U);
    EXPECT_TRUE(r.remainder.empty());
    for (const auto& t : r.terminal) EXPECT_EQ(t.state, ClasperState::simple(s.tree));
  }
}

TEST(Cleanup, ZeroBudgetIsZeroPolicy) {
  std::mt19937_64 rng(12);
  for (int i = 0; i < 100; ++i) {
    const ClasperState s = oracle::random_clasper_state(rng, 4, 4, false);
    InterferencePolicy p = adversarial(3, rng());
    p.budget = 0;
    const CleanupResult a = cleanup(s, p);
    const CleanupResult b = cleanup(s, kZero);
    EXPECT_EQ(a.terminal, b.terminal);
    EXPECT_EQ(a.remainder, b.remainder);
    EXPECT_EQ(a.trace.size(), b.trace.size());
  }
}

TEST(Cleanup, MergingMatchesPlainRecursion) {
  std::mt19937_64 rng(77);
  for (int i = 0; i < 200; ++i) {
    const ClasperState s = oracle::random_clasper_state(rng, 3, 3, false);
    const int cap = 2 * s.grope_deg;
    const CleanupResult r = cleanup(s, kZero, Strategy::First, cap);
    const oracle::PlainCleanup want = oracle::plain_cleanup(s, cap);
    std::map<std::string, BigInt> got_t, got_r;
    for (const auto& w : r.terminal) got_t[format_clasper_state(w.state) + std::to_string(w.state.grope_deg)] += w.copies;
    for (const auto& w : r.remainder) got_r[format_clasper_state(w.state) + std::to_string(w.state.grope_deg)] += w.copies;
    EXPECT_EQ(got_t, want.terminal) << format_clasper_state(s);
    EXPECT_EQ(got_r, want.remainder) << format_clasper_state(s);
    EXPECT_EQ(r.discarded, want.discarded);
    EXPECT_EQ(moves(r.trace), want.moves);
  }
}

TEST(VerifyTrace, RejectsForgery) {
  EXPECT_TRUE(verify_trace({}));
  const CleanupResult r = cleanup(with_leaves(gen_half(2), {leaf(0, 3, 0)}), kZero);
  ASSERT_FALSE(r.trace.empty());
  auto forged = r.trace;
  forged[0].daughters[0].complexity.c[1] = forged[0].parent_complexity.c[1] + 1;
  std::string why;
  EXPECT_FALSE(verify_trace(forged, &why));
  EXPECT_NE(why.find("c2"), std::string::npos);
  forged = r.trace;
  forged[0].daughters[1].complexity.c[2] += 1;  // (K) may not add clasps
  EXPECT_FALSE(verify_trace(forged));
  forged = r.trace;
  forged[0].daughters[1].grope_deg += 1;
  EXPECT_FALSE(verify_trace(forged));
}

TEST(VerifyTrace, JsonRoundTrip) {
  const ClasperState s = with_leaves(gen_half(3), {leaf(1, 0, 0), leaf(0, 2, 1), leaf(1, 1, 0)});
  const CleanupResult r = cleanup(s, adversarial(2, 5));
  std::vector<TraceRecord> back;
  for (const auto& rec : r.trace) back.push_back(trace_record_from_json(nlohmann::json::parse(to_json(rec).dump())));
  EXPECT_TRUE(verify_trace(back));
  for (std::size_t i = 0; i < back.size(); ++i) EXPECT_EQ(to_json(back[i]), to_json(r.trace[i]));
  EXPECT_THROW(trace_record_from_json(nlohmann::json::parse(R"({"step":0})")), ParseError);
}

TEST(StepBound, Saturates) {
  const ClasperState s = with_leaves(gen_half(4), {leaf(5, 5, 5), leaf(5, 5, 5), leaf(5, 5, 5), leaf(5, 5, 5)});
  EXPECT_EQ(step_bound(s, adversarial(3, 0), 8), std::numeric_limits<std::uint64_t>::max());
  EXPECT_LT(step_bound(s, kZero, 8), std::numeric_limits<std::uint64_t>::max());
}
