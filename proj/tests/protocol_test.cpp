#include "maxcover/protocol.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

namespace maxcover {
namespace {

// Brute-force scan for v with D = 3 v (v+1).
std::optional<std::int64_t> turn_scan(std::int64_t d) {
  if (d < 0 || d % 3 != 0) return std::nullopt;
  const auto limit = static_cast<std::int64_t>(std::sqrt(static_cast<double>(d) / 3.0)) + 1;
  for (std::int64_t v = 0; v <= limit; ++v)
    if (3 * v * (v + 1) == d) return v;
  return std::nullopt;
}

TEST(Sextant, Examples) {
  EXPECT_EQ(sextant_of(7), 1);
  EXPECT_EQ(sextant_of(12), 6);
  EXPECT_EQ(sextant_of(5), 5);
  EXPECT_EQ(sextant_of(6), 6);
  EXPECT_THROW(sextant_of(0), std::invalid_argument);
}

TEST(InitialTransition, NodeZeroStaysAtOrigin) {
  const auto s = initial_transition(0, 5);
  EXPECT_TRUE(s.stable());
  EXPECT_EQ(s.pos, kOrigin);
  EXPECT_EQ(s.moves_made, 0);
}

TEST(InitialTransition, Node7) {
  const auto s = initial_transition(7, 20);
  EXPECT_FALSE(s.stable());
  EXPECT_EQ(s.node_type, NodeType::double_);
  EXPECT_EQ(s.heading, Direction(1));
  EXPECT_EQ(s.pos, (LatticeCoord{0, 1}));
  EXPECT_EQ(s.m_id, 7);
  EXPECT_EQ(s.min_id, 1);
  EXPECT_EQ(s.moves_made, 1);
}

TEST(InitialTransition, Node12UsesSextantSix) {
  const auto s = initial_transition(12, 20);
  EXPECT_EQ(s.heading, Direction(0));
  EXPECT_EQ(s.pos, (LatticeCoord{1, 0}));
  EXPECT_EQ(s.m_id, 12);
  EXPECT_EQ(s.min_id, 6);
  EXPECT_EQ(s.sextant, 6);
}

TEST(InitialTransition, RejectsIdOutsideRange) {
  EXPECT_THROW(initial_transition(5, 5), std::invalid_argument);
  EXPECT_THROW(initial_transition(-1, 5), std::invalid_argument);
}

TEST(TurnTest, Examples) {
  EXPECT_EQ(turn_test(7, 1), 1);
  EXPECT_EQ(turn_test(13, 1), std::nullopt);
  EXPECT_EQ(turn_test(18, 6), std::nullopt);
  EXPECT_EQ(turn_test(18, 0), 2);  // the literal residue would turn node 18
  for (int j = 1; j <= 6; ++j) EXPECT_EQ(turn_test(j, j), 0);
}

TEST(TurnTest, AgreesWithBruteForceScan) {
  for (std::int64_t d = 0; d <= 300000; d += 3) ASSERT_EQ(turn_test(d + 1, 1), turn_scan(d)) << d;
  std::mt19937_64 rng(42);
  std::uniform_int_distribution<std::int64_t> dist(0, 333333333);
  for (int i = 0; i < 20000; ++i) {
    const std::int64_t d = 3 * dist(rng);
    ASSERT_EQ(turn_test(d + 6, 6), turn_scan(d)) << d;
  }
  // Near-misses around exact hits where rounding of sqrt would matter.
  for (std::int64_t v : {1LL, 1000LL, 18256LL, 18257LL}) {
    const std::int64_t d = 3 * v * (v + 1);
    if (d > 1'000'000'000) continue;
    EXPECT_EQ(turn_test(d + 2, 2), v);
    EXPECT_EQ(turn_test(d + 3 + 2, 2), std::nullopt);
    EXPECT_EQ(turn_test(d - 3 + 2, 2), std::nullopt);
  }
}

TEST(TurnTest, MatchesFloatingPointValForSmallInputs) {
  // val = -1/2 + sqrt((m_id - j)/3 + 1/4) is an integer exactly when the turn fires.
  for (std::int64_t d = 0; d <= 60000; d += 3) {
    const double val = -0.5 + std::sqrt(static_cast<double>(d) / 3.0 + 0.25);
    const bool integral = std::abs(val - std::round(val)) < 1e-9;
    ASSERT_EQ(integral, turn_test(d + 4, 4).has_value()) << d;
  }
}

TEST(StableThreshold, Examples) {
  EXPECT_EQ(stable_threshold(0, 1), 1);
  EXPECT_EQ(stable_threshold(0, 6), 6);
  EXPECT_EQ(stable_threshold(1, 1), 7);
  EXPECT_EQ(stable_threshold(2, 1), 19);
}

TEST(DoubleTransition, Node7Turns) {
  const auto s = double_transition(initial_transition(7, 8), 1);
  EXPECT_FALSE(s.stable());
  EXPECT_EQ(s.node_type, NodeType::single);
  EXPECT_EQ(s.heading, Direction(2));
  EXPECT_EQ(s.pos, (LatticeCoord{-1, 2}));
  EXPECT_EQ(s.min_id, 7);
  EXPECT_EQ(s.m_id, 7);
}

TEST(DoubleTransition, Node13GoesStraight) {
  const auto s = double_transition(initial_transition(13, 14), 1);
  EXPECT_EQ(s.node_type, NodeType::double_);
  EXPECT_EQ(s.pos, (LatticeCoord{0, 2}));
  EXPECT_EQ(s.m_id, 7);
  EXPECT_EQ(s.min_id, 7);
}

TEST(DoubleTransition, Node6BecomesStable) {
  const auto s = double_transition(initial_transition(6, 7), 1);
  EXPECT_TRUE(s.stable());
  EXPECT_EQ(s.pos, (LatticeCoord{1, 0}));
  EXPECT_EQ(s.moves_made, 1);
}

TEST(DoubleTransition, RejectsWrongState) {
  EXPECT_THROW(double_transition(initial_transition(0, 1), 1), std::logic_error);
  const auto single = double_transition(initial_transition(7, 8), 1);
  EXPECT_THROW(double_transition(single, 2), std::logic_error);
  EXPECT_THROW(double_transition(initial_transition(13, 14), 0), std::logic_error);
}

TEST(SingleTransition, Node7Stabilizes) {
  const auto s = single_transition(double_transition(initial_transition(7, 8), 1), 2);
  EXPECT_TRUE(s.stable());
  EXPECT_EQ(s.pos, (LatticeCoord{-1, 2}));
}

TEST(SingleTransition, Node19Trace) {
  const auto r1 = double_transition(initial_transition(19, 20), 1);
  EXPECT_EQ(r1.node_type, NodeType::single);
  EXPECT_EQ(r1.pos, (LatticeCoord{-1, 2}));
  EXPECT_EQ(r1.min_id, 7);
  const auto r2 = single_transition(r1, 2);
  EXPECT_FALSE(r2.stable());
  EXPECT_EQ(r2.pos, (LatticeCoord{-2, 3}));
  EXPECT_EQ(r2.min_id, 19);
  const auto r3 = single_transition(r2, 3);
  EXPECT_TRUE(r3.stable());
  EXPECT_EQ(r3.pos, (LatticeCoord{-2, 3}));
  EXPECT_EQ(r3.moves_made, 3);
}

TEST(SingleTransition, RejectsWrongState) {
  EXPECT_THROW(single_transition(initial_transition(13, 14), 1), std::logic_error);
}

TEST(Protocol, SextantSixNodesLandOnInnerRings) {
  const auto settle = [](NodeId id) {
    NodeState s = initial_transition(id, id + 1);
    Round k = 0;
    while (!s.stable()) s = advance(s, ++k);
    return std::pair{s.pos, k};
  };
  EXPECT_EQ(settle(6), (std::pair{LatticeCoord{1, 0}, Round{1}}));
  EXPECT_EQ(settle(12), (std::pair{LatticeCoord{1, 1}, Round{2}}));
  EXPECT_EQ(settle(18), (std::pair{LatticeCoord{2, 0}, Round{2}}));
}

TEST(Protocol, LiteralResidueSendsNode18OutToRingThree) {
  NodeState s = initial_transition(18, 19);
  Round k = 0;
  while (!s.stable()) s = advance(s, ++k, ProtocolVariant::literal_j0);
  EXPECT_EQ(ring(s.pos), 3);
  EXPECT_EQ(k, 3);
}

// Per-node invariants over the whole lifetime of every id < 2000.
TEST(Protocol, LifetimeInvariants) {
  for (NodeId id = 1; id < 2000; ++id) {
    NodeState s = initial_transition(id, id + 1);
    const int j = sextant_of(id);
    int turns = 0;
    for (Round k = 1; !s.stable(); ++k) {
      ASSERT_LT(k, 200);
      // The stored threshold and the stateless one agree.
      ASSERT_EQ(s.m_id == s.min_id, s.m_id == 3 * (k - 1) * k + j) << id << " round " << k;
      ASSERT_EQ(s.m_id % 6, id % 6);
      ASSERT_LE(s.m_id, id);
      ASSERT_GE(s.m_id - j, 0);
      ASSERT_EQ((s.m_id - j) % 6, 0);
      if (s.node_type == NodeType::double_)
        ASSERT_EQ(s.heading, Direction(j));
      else
        ASSERT_EQ(s.heading, Direction(j + 1));

      const NodeState next = advance(s, k);
      if (next.stable()) {
        ASSERT_EQ(next.pos, s.pos);
        ASSERT_EQ(next.m_id, s.m_id);
        ASSERT_EQ(next.moves_made, s.moves_made);
      } else if (s.node_type == NodeType::single) {
        ASSERT_EQ(next.m_id, s.m_id);
        ASSERT_EQ(next.heading, s.heading);
      } else if (next.node_type == NodeType::single) {
        ++turns;
        // A turn only happens with v >= 1.
        const auto v = turn_test(s.m_id, j);
        ASSERT_TRUE(v.has_value());
        ASSERT_GE(*v, 1);
        ASSERT_EQ(next.m_id, s.m_id);
      } else {
        ASSERT_EQ(next.m_id, s.m_id - 6);
        ASSERT_EQ(next.heading, s.heading);
      }
      s = next;
    }
    EXPECT_LE(turns, 1);
    const NodeState frozen = advance(s, 500);
    EXPECT_EQ(frozen, s);
  }
}

TEST(Isqrt, ExactOnLargeValues) {
  for (std::int64_t v : {0LL, 1LL, 2LL, 3037000499LL}) {
    EXPECT_EQ(isqrt(v * v), v);
    if (v > 0) {
      EXPECT_EQ(isqrt(v * v - 1), v - 1);
    }
  }
  EXPECT_EQ(triangular_root(0), 0);
  EXPECT_EQ(triangular_root(1), 1);
  EXPECT_EQ(triangular_root(2), 1);
  EXPECT_EQ(triangular_root(3), 2);
  EXPECT_EQ(triangular_root(6), 3);
}

}  // namespace
}  // namespace maxcover
