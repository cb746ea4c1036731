#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <vector>

#include "maxcover/hexlattice.hpp"
#include "maxcover/protocol.hpp"

namespace maxcover {

/// Where a node ends up: ring `ring` of the hexagon, in the sector between
/// headings `sextant` and `sextant + 1`, `index` steps from the sector's far end.
/// index == ring - 1 is the corner in direction `sextant`.
struct Slot {
  int sextant = 0;
  std::int64_t ring = 0;
  std::int64_t index = 0;
  LatticeCoord coord{};

  friend bool operator==(const Slot&, const Slot&) = default;
};

/// Closed-form destination of node id >= 1.
///
/// With q = (id - sextant) / 6 and v the largest integer with v(v+1)/2 <= q,
/// the node settles on ring v+1 at slot s = q - v(v+1)/2, i.e. at
/// (s+1) u_sextant + (v-s) u_{sextant+1}.
inline Slot final_slot(NodeId id) {
  if (id < 1) throw std::invalid_argument("final_slot: id must be >= 1 (node 0 stays at the origin)");
  const int j = sextant_of(id);
  const std::int64_t q = (id - j) / 6;
  const std::int64_t v = triangular_root(q);
  const std::int64_t s = q - v * (v + 1) / 2;
  const Direction outward(j);
  return Slot{j, v + 1, s, unit_vector(outward) * (s + 1) + unit_vector(outward + 1) * (v - s)};
}

inline LatticeCoord final_coord(NodeId id) { return id == 0 ? kOrigin : final_slot(id).coord; }

inline Round stable_round_of(NodeId id) {
  if (id < 0) throw std::invalid_argument("stable_round_of: negative id");
  return id == 0 ? 0 : final_slot(id).ring;
}

struct IterativeDestination {
  LatticeCoord coord{};
  Round stable_round = 0;
};

/// Runs one node's transitions on paper, without moving, until it would become stable.
inline IterativeDestination iterate_destination(NodeId id, ProtocolVariant variant = ProtocolVariant::effective_sextant) {
  if (id < 0) throw std::invalid_argument("iterative_plan: negative id");
  NodeState s = initial_transition(id, id + 1);
  Round k = 0;
  while (!s.stable()) s = advance(s, ++k, variant);
  return {s.pos, k};
}

inline LatticeCoord iterative_plan(NodeId id) { return iterate_destination(id).coord; }

enum class PlanMethod { closed_form, iterative };

/// Destinations of ids 0..n-1, in id order.
inline std::vector<LatticeCoord> plan_all(NodeId n, PlanMethod method = PlanMethod::closed_form) {
  if (n < 1) throw std::invalid_argument("plan_all: n must be >= 1");
  std::vector<LatticeCoord> out;
  out.reserve(static_cast<std::size_t>(n));
  for (NodeId id = 0; id < n; ++id)
    out.push_back(method == PlanMethod::closed_form ? final_coord(id) : iterative_plan(id));
  return out;
}

inline double straight_line_distance(NodeId id, double r) { return displacement(final_coord(id), r); }

struct DeploymentPlan {
  std::vector<Point> starts;
  std::vector<Point> targets;
  std::vector<double> distances;
  bool one_shot = true;
  int broadcast_count = 0;

  double total_distance() const {
    double t = 0.0;
    for (double d : distances) t += d;
    return t;
  }
};

/// Point deployment: everyone starts at the origin and flies straight to its vertex.
inline DeploymentPlan point_deployment_plan(NodeId n, double r) {
  require_radius(r);
  DeploymentPlan plan;
  for (NodeId id = 0; id < n; ++id) {
    plan.starts.push_back({});
    plan.targets.push_back(to_cartesian(final_coord(id), r));
    plan.distances.push_back(straight_line_distance(id, r));
  }
  return plan;
}

/// Arbitrary starting points. Node 0 announces its position once; every other
/// node flies to its lattice slot offset by that position.
inline DeploymentPlan random_deployment_plan(std::span<const Point> starts, double r) {
  if (starts.empty()) throw std::invalid_argument("random_deployment_plan: no start positions");
  require_radius(r);
  DeploymentPlan plan;
  plan.broadcast_count = 1;
  plan.starts.assign(starts.begin(), starts.end());
  const Point anchor = starts.front();
  for (std::size_t i = 0; i < starts.size(); ++i) {
    const Point target = i == 0 ? anchor : anchor + to_cartesian(final_coord(static_cast<NodeId>(i)), r);
    plan.targets.push_back(target);
    plan.distances.push_back(distance(starts[i], target));
  }
  return plan;
}

/// n points uniform over [0, spread]^2 from a 64-bit Mersenne Twister.
inline std::vector<Point> uniform_starts(NodeId n, std::uint64_t seed, double spread) {
  if (n < 1) throw std::invalid_argument("uniform_starts: n must be >= 1");
  if (!(spread >= 0.0)) throw std::invalid_argument("uniform_starts: spread must be >= 0");
  std::mt19937_64 rng(seed);
  // Built from raw bits so the sequence does not depend on the standard library's distributions.
  const auto unit = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  std::vector<Point> out;
  out.reserve(static_cast<std::size_t>(n));
  for (NodeId i = 0; i < n; ++i) {
    const double x = unit() * spread;
    const double y = unit() * spread;
    out.push_back({x, y});
  }
  return out;
}

}  // namespace maxcover
