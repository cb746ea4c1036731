#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <vector>

#include "maxcover/hexlattice.hpp"
#include "maxcover/protocol.hpp"

namespace maxcover {

struct SimulationConfig {
  NodeId n = 1;
  double r = 1.0;
  bool record_trajectories = false;
  bool compatibility_literal_j0 = false;

  ProtocolVariant variant() const {
    return compatibility_literal_j0 ? ProtocolVariant::literal_j0 : ProtocolVariant::effective_sextant;
  }
  void validate() const {
    if (n < 1) throw std::invalid_argument("node count must be >= 1");
    require_radius(r);
  }
};

/// Census of one round. `double_group_positions` are the distinct positions
/// holding unstable double nodes when the round starts, sorted.
struct RoundReport {
  Round k = 0;
  std::vector<NodeId> newly_stable;
  std::vector<LatticeCoord> double_group_positions;
  NodeId unstable_remaining = 0;
};

struct SimulationResult {
  std::vector<NodeState> final_states;  // indexed by id
  std::vector<Round> stable_rounds;     // indexed by id
  std::vector<RoundReport> reports;     // reports[k].k == k
  Round termination_round = 0;
  /// trajectories[k][id] is the state of every node after round k.
  std::optional<std::vector<std::vector<NodeState>>> trajectories;
};

/// Smallest m >= 0 with n <= 1 + 3 m (m+1).
inline Round expected_termination_round(NodeId n) {
  if (n < 1) throw std::invalid_argument("expected_termination_round: n must be >= 1");
  Round m = (isqrt(12 * n - 3) - 3) / 6;
  if (m < 0) m = 0;
  while (m > 0 && 1 + 3 * (m - 1) * m >= n) --m;
  while (1 + 3 * m * (m + 1) < n) ++m;
  return m;
}

/// ceil(-1/2 + sqrt((4n-1)/3)). Kept for side-by-side display only; it does
/// not agree with the round count (n = 7 gives 3, the protocol needs 1).
inline Round published_round_formula(NodeId n) {
  return static_cast<Round>(std::ceil(-0.5 + std::sqrt((4.0 * static_cast<double>(n) - 1.0) / 3.0)));
}

/// ceil((-3 + sqrt(12n - 3)) / 6), the floating-point solution of n <= 1 + 3m(m+1).
inline Round derived_round_formula(NodeId n) {
  return static_cast<Round>(std::ceil((-3.0 + std::sqrt(12.0 * static_cast<double>(n) - 3.0)) / 6.0));
}

namespace detail {

inline void note_double_group(std::vector<LatticeCoord>& groups, LatticeCoord p) {
  if (std::find(groups.begin(), groups.end(), p) == groups.end()) groups.push_back(p);
}

}  // namespace detail

/// Runs the synchronous rounds to completion. Every round-k state is computed
/// from round-(k-1) states only, so evaluation order inside a round is
/// irrelevant to the result.
inline SimulationResult run(const SimulationConfig& config) {
  config.validate();
  const NodeId n = config.n;
  const auto variant = config.variant();
  const auto count = static_cast<std::size_t>(n);

  SimulationResult result;
  result.final_states.resize(count);
  result.stable_rounds.assign(count, -1);

  // Unstable nodes, split by type so each pass runs a single transition kind.
  std::vector<NodeState> doubles, singles;
  doubles.reserve(count - 1);

  RoundReport first;
  for (NodeId id = 0; id < n; ++id) {
    NodeState s = initial_transition(id, n);
    result.final_states[static_cast<std::size_t>(id)] = s;
    if (s.stable()) {
      first.newly_stable.push_back(id);
      result.stable_rounds[static_cast<std::size_t>(id)] = 0;
    } else {
      doubles.push_back(s);
    }
  }
  first.unstable_remaining = static_cast<NodeId>(doubles.size());
  result.reports.push_back(std::move(first));

  if (config.record_trajectories) result.trajectories.emplace().push_back(result.final_states);

  // Only the literal variant can fail to settle; the bound is far above the
  // proven round count.
  const Round round_limit = 4 * expected_termination_round(n) + 16;

  for (Round k = 1; !doubles.empty() || !singles.empty(); ++k) {
    if (k > round_limit) throw std::runtime_error("simulation did not terminate within the round limit");

    RoundReport report;
    report.k = k;
    const auto settle = [&](const NodeState& s) {
      const auto idx = static_cast<std::size_t>(s.id);
      report.newly_stable.push_back(s.id);
      result.stable_rounds[idx] = k;
      result.final_states[idx] = s;
    };

    // Singles first: nodes turning this round join the single set only after it is processed.
    std::size_t kept = 0;
    for (std::size_t i = 0; i < singles.size(); ++i) {
      const NodeState next = single_transition(singles[i], k, variant);
      if (next.stable())
        settle(next);
      else
        singles[kept++] = next;
    }
    singles.resize(kept);

    kept = 0;
    const std::size_t doubles_before = doubles.size();
    for (std::size_t i = 0; i < doubles_before; ++i) {
      const NodeState& cur = doubles[i];
      detail::note_double_group(report.double_group_positions, cur.pos);
      const NodeState next = double_transition(cur, k, variant);
      if (next.stable())
        settle(next);
      else if (next.node_type == NodeType::single)
        singles.push_back(next);
      else
        doubles[kept++] = next;
    }
    doubles.resize(kept);

    std::sort(report.double_group_positions.begin(), report.double_group_positions.end());
    std::sort(report.newly_stable.begin(), report.newly_stable.end());
    report.unstable_remaining = static_cast<NodeId>(doubles.size() + singles.size());
    result.reports.push_back(std::move(report));

    if (config.record_trajectories) {
      auto snapshot = result.final_states;
      for (const auto& s : doubles) snapshot[static_cast<std::size_t>(s.id)] = s;
      for (const auto& s : singles) snapshot[static_cast<std::size_t>(s.id)] = s;
      result.trajectories->push_back(std::move(snapshot));
    }
  }

  result.termination_round = result.reports.back().k;
  return result;
}

struct NodeEnergy {
  NodeId id = 0;
  double path_length = 0.0;
  double straight_line = 0.0;
  double ratio = 1.0;  // straight / path; 1 when the node never moved
};

struct EnergyReport {
  std::vector<NodeEnergy> nodes;
  double total_path = 0.0;
  double total_straight = 0.0;

  double ratio() const { return total_path > 0.0 ? total_straight / total_path : 1.0; }
};

/// Per-round path (one lattice edge per move) against the straight line from
/// the origin to the final vertex.
inline EnergyReport energy_report(const SimulationResult& result, double r) {
  require_radius(r);
  EnergyReport report;
  report.nodes.reserve(result.final_states.size());
  const double edge = std::numbers::sqrt3 * r;
  for (const auto& s : result.final_states) {
    NodeEnergy e;
    e.id = s.id;
    e.path_length = static_cast<double>(s.moves_made) * edge;
    e.straight_line = displacement(s.pos, r);
    e.ratio = e.path_length > 0.0 ? e.straight_line / e.path_length : 1.0;
    report.total_path += e.path_length;
    report.total_straight += e.straight_line;
    report.nodes.push_back(e);
  }
  return report;
}

}  // namespace maxcover
