#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace hironaka;
using Config = PointConfiguration<Integer>;
using RConfig = PointConfiguration<Rational>;

namespace {

const VariantRules kBasic = VariantRules::of(Variant::basic);
const VariantRules kShifted = VariantRules::of(Variant::basic_shifted);
const VariantRules kPolyhedra = VariantRules::of(Variant::polyhedra);
const VariantRules kThom = VariantRules::of(Variant::thom);
const VariantRules kHauser = VariantRules::of(Variant::hauser);

GameState<Integer> state(Config S, const VariantRules& r = kShifted) { return make_state(std::move(S), r); }

}  // namespace

TEST(VariantRules, Table) {
  EXPECT_EQ(kBasic.shift, ShiftMode::none);
  EXPECT_EQ(kShifted.shift, ShiftMode::axes);
  EXPECT_EQ(kHauser.pruning, PruningMode::hull_vertices);
  EXPECT_EQ(kPolyhedra.transform_offset, -1);
  EXPECT_EQ(kPolyhedra.field, ScalarField::rational);
  EXPECT_EQ(kPolyhedra.terminal, TerminalRule::some_point_sum_at_most_one);
  EXPECT_EQ(kThom.shift, ShiftMode::diagonal);
  EXPECT_EQ(kThom.agent_legality, AgentLegality::weight_minimal_in_subset);
  EXPECT_TRUE(kThom.uses_weights);
  for (Variant v : {Variant::basic, Variant::basic_shifted, Variant::hauser, Variant::polyhedra, Variant::thom}) {
    EXPECT_EQ(parse_variant(variant_name(v)), v);
  }
  EXPECT_THROW(parse_variant("stratify"), std::invalid_argument);
}

TEST(MakeState, WeightsFollowTheVariant) {
  EXPECT_EQ(make_state(Config{{2, 0}, {0, 3}}, kThom).weights, (Weights{1, 1}));
  EXPECT_THROW(make_state(Config{{2, 0}, {0, 3}}, kBasic, Weights{1, 1}), InvalidConfiguration);
  EXPECT_THROW(make_state(Config{{2, 0}, {0, 3}}, kThom, Weights{1}), InvalidConfiguration);
  EXPECT_THROW(make_state(Config{{2, 0}, {0, 3}}, kThom, Weights{1, -1}), InvalidConfiguration);
}

TEST(LegalHostMoves, Examples) {
  const auto s3 = state(Config{{2, 0, 0}, {0, 2, 0}}, kBasic);
  EXPECT_EQ(legal_host_moves(s3, kBasic), (std::vector<HostMove>{{0, 1}, {0, 2}, {1, 2}, {0, 1, 2}}));
  const auto s2 = state(Config{{2, 0}, {0, 2}}, kBasic);
  EXPECT_EQ(legal_host_moves(s2, kBasic), (std::vector<HostMove>{{0, 1}}));
  const auto poly = make_state(RConfig{{Rational(3, 2), 0}, {0, Rational(5, 4)}}, kPolyhedra);
  EXPECT_EQ(legal_host_moves(poly, kPolyhedra), (std::vector<HostMove>{{0, 1}}));
  EXPECT_THROW(legal_host_moves(state(Config{{1, 1}}, kBasic), kBasic), TerminalState);
}

TEST(LegalHostMoves, SumConditionFilters) {
  // Subsets {0,1} and {1,2} give (0,0,2) a zero sum.
  const auto s = make_state(Config{{2, 0, 0}, {0, 2, 0}, {0, 0, 2}}, kThom);
  EXPECT_EQ(legal_host_moves(s, kThom), (std::vector<HostMove>{{0, 1, 2}}));
}

TEST(LegalAgentMoves, Examples) {
  const auto s = state(Config{{2, 0, 0}, {0, 2, 0}}, kBasic);
  EXPECT_EQ(legal_agent_moves(s, HostMove{0, 2}, kBasic), (std::vector<AgentMove>{{0}, {2}}));
  const auto t1 = make_state(Config{{2, 1, 0}, {0, 2, 3}}, kThom, Weights{3, 1, 5});
  EXPECT_EQ(legal_agent_moves(t1, HostMove{0, 1}, kThom), (std::vector<AgentMove>{{1}}));
  const auto t2 = make_state(Config{{2, 1, 0}, {0, 2, 3}}, kThom, Weights{2, 2, 5});
  EXPECT_EQ(legal_agent_moves(t2, HostMove{0, 1}, kThom), (std::vector<AgentMove>{{0}, {1}}));
}

TEST(Apply, A2Transcript) {
  const auto root = state(Config{{2, 0, 0}, {0, 2, 0}, {0, 0, 3}});
  const HostMove all{0, 1, 2};
  const auto s2 = apply(root, all, AgentMove{2}, kShifted);
  EXPECT_EQ(s2.config, (Config{{2, 0, 0}, {0, 2, 0}, {0, 0, 1}}));
  EXPECT_EQ(s2.step, 1u);
  for (std::size_t i : {0u, 1u}) {
    const auto s = apply(root, all, AgentMove{i}, kShifted);
    EXPECT_EQ(s.config, (Config{{0, 0, 0}}));
    EXPECT_TRUE(is_terminal(s, kShifted));
  }
}

TEST(Apply, RawTransformOfAgentZero) {
  // The raw image under (I={0,1,2}, i=0) before pruning.
  const Config S{{2, 0, 0}, {0, 2, 0}, {0, 0, 3}};
  const Config raw(transform_points(S, HostMove{0, 1, 2}, 0));
  EXPECT_EQ(raw, (Config{{2, 0, 0}, {2, 2, 0}, {3, 0, 3}}));
}

TEST(Apply, ThomExample) {
  const auto s = make_state(Config{{2, 0}, {0, 3}}, kThom, Weights{1, 1});
  const auto next = apply(s, HostMove{0, 1}, AgentMove{0}, kThom);
  EXPECT_EQ(next.config, (Config{{2, 0}}));
  EXPECT_EQ(next.weights, (Weights{1, 0}));
  EXPECT_TRUE(is_terminal(next, kThom));
}

TEST(Apply, PolyhedraOffset) {
  // (3/2,0) -> (1/2,0) and (0,5/4) -> (1/4,5/4) under I={0,1}, i=0.
  const auto s = make_state(RConfig{{Rational(3, 2), 0}, {0, Rational(5, 4)}}, kPolyhedra);
  const auto next = apply(s, HostMove{0, 1}, AgentMove{0}, kPolyhedra);
  EXPECT_EQ(next.config, (RConfig{{Rational(1, 2), 0}, {Rational(1, 4), Rational(5, 4)}}));
  EXPECT_TRUE(is_terminal(next, kPolyhedra));
}

TEST(Apply, RejectsIllegalMoves) {
  const auto s = state(Config{{2, 0, 0}, {0, 2, 0}});
  EXPECT_THROW(apply(s, HostMove{0}, AgentMove{0}, kShifted), IllegalMove);
  EXPECT_THROW(apply(s, HostMove{0, 1}, AgentMove{2}, kShifted), IllegalMove);
  EXPECT_THROW(apply(state(Config{{1, 0, 0}}), HostMove{0, 1}, AgentMove{0}, kShifted), TerminalState);
  const auto t = make_state(Config{{2, 1, 0}, {0, 2, 3}}, kThom, Weights{3, 1, 5});
  EXPECT_THROW(apply(t, HostMove{0, 1}, AgentMove{0}, kThom), IllegalMove);
}

TEST(Terminal, Examples) {
  EXPECT_TRUE(is_terminal(state(Config{{0, 0, 0}}, kBasic), kBasic));
  EXPECT_FALSE(is_terminal(state(Config{{2, 0, 0}, {0, 2, 0}}, kBasic), kBasic));
  const auto p = make_state(RConfig{{Rational(1, 2), Rational(1, 4)}, {2, 3}}, kPolyhedra);
  EXPECT_TRUE(is_terminal(p, kPolyhedra));
}

TEST(SmoothMarker, Examples) {
  EXPECT_TRUE(is_smooth_marker(state(Config{{1, 0, 0}, {0, 0, 1}})));
  EXPECT_TRUE(is_smooth_marker(state(Config{{2, 0, 0}, {0, 2, 0}, {0, 0, 1}})));
  EXPECT_FALSE(is_smooth_marker(state(Config{{2, 0, 0}, {0, 2, 0}, {0, 0, 3}})));
}

TEST(Episode, RewardsOnTermination) {
  const auto root = state(Config{{2, 0, 0}, {0, 2, 0}, {0, 0, 3}});
  const auto a = make_step(root, HostMove{0, 1, 2}, AgentMove{2}, kShifted);
  EXPECT_FALSE(a.terminal);
  EXPECT_EQ(a.agent_reward, 0);
  EXPECT_EQ(a.host_reward, 0);
  const auto b = make_step(root, HostMove{0, 1, 2}, AgentMove{0}, kShifted);
  EXPECT_TRUE(b.terminal);
  EXPECT_EQ(b.agent_reward, -1);
  EXPECT_EQ(b.host_reward, 1);
}

namespace {

template <class F>
void random_playouts(std::uint64_t seed, int games, std::size_t n, F&& step_check) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> count(2, 5);
  for (int g = 0; g < games; ++g) {
    auto pts = oracle::random_points(rng, n, count(rng), 0, 6);
    step_check(pts, rng);
  }
}

}  // namespace

TEST(Apply, MatchesIndependentTransitionOracle) {
  for (const auto& rules : {kBasic, kShifted}) {
    const bool shift = rules.shift == ShiftMode::axes;
    random_playouts(21, 300, 3, [&](std::vector<oracle::Pt> pts, std::mt19937_64& rng) {
      auto s = make_state(remove_dominated(oracle::from_int_points(pts)), rules);
      pts = oracle::to_int_points(s.config);
      for (int t = 0; t < 30 && !is_terminal(s, rules); ++t) {
        const auto moves = legal_host_moves(s, rules);
        const HostMove I = moves[rng() % moves.size()];
        const auto idx = I.indices();
        const std::size_t i = idx[rng() % idx.size()];
        s = apply(s, I, AgentMove{i}, rules);
        pts = oracle::basic_move(pts, idx, i, true, shift);
        ASSERT_EQ(oracle::to_int_points(s.config), pts);
      }
    });
  }
}

TEST(Apply, ScaleInvariance) {
  for (const auto& rules : {kBasic, kShifted}) {
    random_playouts(7, 300, 3, [&](const std::vector<oracle::Pt>& pts, std::mt19937_64& rng) {
      const Integer c = 2 + static_cast<int>(rng() % 4);
      auto s = make_state(remove_dominated(oracle::from_int_points(pts)), rules);
      for (int t = 0; t < 20 && !is_terminal(s, rules); ++t) {
        const auto scaled = make_state(scale(s.config, c), rules);
        ASSERT_EQ(legal_host_moves(scaled, rules), legal_host_moves(s, rules));
        const auto moves = legal_host_moves(s, rules);
        const HostMove I = moves[rng() % moves.size()];
        const AgentMove i{I.indices()[rng() % I.size()]};
        const auto next = apply(s, I, i, rules);
        ASSERT_EQ(apply(scaled, I, i, rules).config, scale(next.config, c));
        ASSERT_EQ(is_terminal(apply(scaled, I, i, rules), rules), is_terminal(next, rules));
        s = next;
      }
    });
  }
}

TEST(Apply, PruningIsOptional) {
  // Without pruning, a game ends once all but one point are dominated.
  random_playouts(9, 300, 3, [&](const std::vector<oracle::Pt>& pts, std::mt19937_64& rng) {
    auto raw = oracle::from_int_points(pts);
    auto s = make_state(remove_dominated(raw), kBasic);
    for (int t = 0; t < 40; ++t) {
      const bool raw_done = remove_dominated(raw).size() == 1;
      ASSERT_EQ(raw_done, is_terminal(s, kBasic));
      ASSERT_EQ(remove_dominated(raw), s.config);
      if (raw_done) break;
      const auto moves = legal_host_moves(s, kBasic);
      const HostMove I = moves[rng() % moves.size()];
      const std::size_t i = I.indices()[rng() % I.size()];
      raw = Config(transform_points(raw, I, i));
      s = apply(s, I, AgentMove{i}, kBasic);
    }
  });
}

TEST(Apply, ThomWeightsStayNonnegative) {
  random_playouts(13, 300, 3, [&](const std::vector<oracle::Pt>& pts, std::mt19937_64& rng) {
    auto s = make_state(newton_vertices(oracle::from_int_points(pts)), kThom,
                        Weights{static_cast<std::int64_t>(rng() % 4), static_cast<std::int64_t>(rng() % 4),
                                static_cast<std::int64_t>(rng() % 4)});
    for (int t = 0; t < 30 && !is_terminal(s, kThom); ++t) {
      const auto moves = legal_host_moves(s, kThom);
      ASSERT_FALSE(moves.empty());
      const HostMove I = moves[rng() % moves.size()];
      const auto replies = legal_agent_moves(s, I, kThom);
      s = apply(s, I, replies[rng() % replies.size()], kThom);
      for (auto w : *s.weights) ASSERT_GE(w, 0);
      for (const auto& p : s.config) {
        for (const auto& x : p) ASSERT_GE(x, 0);
      }
    }
  });
}

TEST(Apply, PolyhedraStaysInOrthant) {
  std::mt19937_64 rng(17);
  for (int g = 0; g < 200; ++g) {
    std::vector<Point<Rational>> pts;
    for (int k = 0; k < 3; ++k) {
      Point<Rational> p;
      for (int j = 0; j < 3; ++j) p.push_back(Rational(static_cast<int>(rng() % 9), 1 + static_cast<int>(rng() % 3)));
      pts.push_back(p);
    }
    auto s = make_state(newton_vertices(RConfig(pts)), kPolyhedra);
    for (int t = 0; t < 30 && !is_terminal(s, kPolyhedra); ++t) {
      const auto moves = legal_host_moves(s, kPolyhedra);
      if (moves.empty()) break;
      const HostMove I = moves[rng() % moves.size()];
      s = apply(s, I, AgentMove{I.indices()[rng() % I.size()]}, kPolyhedra);
      for (const auto& p : s.config) {
        for (const auto& x : p) ASSERT_GE(x, 0);
      }
    }
  }
}

TEST(Apply, Deterministic) {
  const auto s = state(Config{{3, 1, 0}, {0, 4, 2}, {1, 0, 5}});
  EXPECT_EQ(apply(s, HostMove{0, 2}, AgentMove{2}, kShifted), apply(s, HostMove{0, 2}, AgentMove{2}, kShifted));
}
