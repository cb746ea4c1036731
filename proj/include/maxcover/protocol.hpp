#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string_view>

#include "maxcover/hexlattice.hpp"

namespace maxcover {

using NodeId = std::int64_t;
using Round = std::int64_t;

enum class Status : std::uint8_t { unstable, stable };
enum class NodeType : std::uint8_t { single, double_ };

constexpr std::string_view to_string(Status s) { return s == Status::stable ? "stable" : "unstable"; }
constexpr std::string_view to_string(NodeType t) { return t == NodeType::single ? "single" : "double"; }

/// How ids divisible by six are treated in the turn test and thresholds.
///
/// `effective_sextant` uses sextant 6 everywhere. `literal_j0` uses the raw
/// residue 0 in the turn test and threshold updates (while still starting from
/// min_id = 6); it reproduces a vacancy at (1,1) for n >= 19 and exists only
/// so that failure can be demonstrated.
enum class ProtocolVariant : std::uint8_t { effective_sextant, literal_j0 };

struct NodeState {
  NodeId id = 0;
  NodeId m_id = 0;
  NodeId min_id = 0;
  LatticeCoord pos{};
  std::int32_t moves_made = 0;  // bounded by the round count
  Status status = Status::unstable;
  NodeType node_type = NodeType::double_;
  std::int8_t sextant = 0;  // 1..6; 0 only for node 0
  Direction heading{};

  bool stable() const { return status == Status::stable; }
  friend bool operator==(const NodeState&, const NodeState&) = default;
};

/// Sector 1..6 of a node; residue 0 maps to 6.
constexpr int sextant_of(NodeId id) {
  if (id < 1) throw std::invalid_argument("sextant_of: id must be >= 1");
  const auto j = static_cast<int>(id % 6);
  return j == 0 ? 6 : j;
}

/// Floor of sqrt(x) for x >= 0, exact for the full int64 range.
inline std::int64_t isqrt(std::int64_t x) {
  if (x < 0) throw std::invalid_argument("isqrt of negative value");
  constexpr std::int64_t kMaxRoot = 3037000499;  // floor(sqrt(2^63 - 1))
  auto r = std::min(static_cast<std::int64_t>(std::sqrt(static_cast<double>(x))), kMaxRoot);
  while (r * r > x) --r;
  while (r < kMaxRoot && (r + 1) * (r + 1) <= x) ++r;
  return r;
}

/// Largest v >= 0 with v(v+1)/2 <= q.
inline std::int64_t triangular_root(std::int64_t q) {
  std::int64_t v = (isqrt(8 * q + 1) - 1) / 2;
  while ((v + 1) * (v + 2) / 2 <= q) ++v;
  while (v > 0 && v * (v + 1) / 2 > q) --v;
  return v;
}

namespace detail {

// Bit i set iff i is a square modulo 64; rejects most non-squares before isqrt.
inline constexpr std::uint64_t kSquaresMod64 = [] {
  std::uint64_t mask = 0;
  for (std::uint64_t i = 0; i < 64; ++i) mask |= std::uint64_t{1} << ((i * i) % 64);
  return mask;
}();

}  // namespace detail

/// The turn decision. The quantity -1/2 + sqrt((m_id - j)/3 + 1/4) is an
/// integer v exactly when m_id - j == 3 v (v+1), i.e. when 4 (m_id - j)/3 + 1
/// is the odd square (2v+1)^2; decided without floating point rounding.
inline std::optional<std::int64_t> turn_test(NodeId m_id, std::int64_t j) {
  const std::int64_t d = m_id - j;
  if (d < 0 || d % 3 != 0) return std::nullopt;
  const std::int64_t x = 4 * (d / 3) + 1;
  if (((detail::kSquaresMod64 >> (x & 63)) & 1) == 0) return std::nullopt;
  const std::int64_t root = isqrt(x);
  if (root * root != x) return std::nullopt;
  return (root - 1) / 2;
}

/// The id a node must carry to become stable at the round after k.
constexpr NodeId stable_threshold(Round k, std::int64_t j) { return 3 * k * (k + 1) + j; }

/// Sextant value used by the turn test and thresholds under a variant.
constexpr std::int64_t turn_sextant(const NodeState& s, ProtocolVariant variant) {
  return variant == ProtocolVariant::literal_j0 ? s.sextant % 6 : s.sextant;
}

/// Round 0.
inline NodeState initial_transition(NodeId id, NodeId n) {
  if (id < 0 || id >= n) throw std::invalid_argument("initial_transition: id outside [0, n)");
  NodeState s;
  s.id = id;
  if (id == 0) {
    s.status = Status::stable;
    return s;
  }
  s.sextant = static_cast<std::int8_t>(sextant_of(id));
  s.heading = Direction(s.sextant);
  s.node_type = NodeType::double_;
  s.m_id = id;
  s.min_id = stable_threshold(0, s.sextant);
  s.pos = step(kOrigin, s.heading);
  s.moves_made = 1;
  return s;
}

/// Round k >= 1 for an unstable double node. Stability is checked before the
/// turn test, which is checked before moving.
inline NodeState double_transition(NodeState s, Round k, ProtocolVariant variant = ProtocolVariant::effective_sextant) {
  if (s.stable() || s.node_type != NodeType::double_ || k < 1)
    throw std::logic_error("double_transition: requires an unstable double node and k >= 1");
  if (s.m_id == s.min_id) {
    s.status = Status::stable;
    return s;
  }
  const std::int64_t j = turn_sextant(s, variant);
  if (turn_test(s.m_id, j)) {
    s.heading = s.heading + 1;
    s.node_type = NodeType::single;
  } else {
    s.m_id -= 6;
  }
  s.min_id = stable_threshold(k, j);
  s.pos = step(s.pos, s.heading);
  ++s.moves_made;
  return s;
}

inline NodeState single_transition(NodeState s, Round k, ProtocolVariant variant = ProtocolVariant::effective_sextant) {
  if (s.stable() || s.node_type != NodeType::single || k < 1)
    throw std::logic_error("single_transition: requires an unstable single node and k >= 1");
  if (s.m_id == s.min_id) {
    s.status = Status::stable;
    return s;
  }
  s.min_id = stable_threshold(k, turn_sextant(s, variant));
  s.pos = step(s.pos, s.heading);
  ++s.moves_made;
  return s;
}

/// Dispatches one round k >= 1; stable nodes are returned unchanged.
inline NodeState advance(const NodeState& s, Round k, ProtocolVariant variant = ProtocolVariant::effective_sextant) {
  if (s.stable()) return s;
  return s.node_type == NodeType::double_ ? double_transition(s, k, variant) : single_transition(s, k, variant);
}

}  // namespace maxcover
