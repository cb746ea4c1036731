#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <unordered_set>
#include <vector>

#include "maxcover/engine.hpp"
#include "maxcover/hexlattice.hpp"
#include "maxcover/protocol.hpp"

namespace maxcover {

using CoordSet = std::unordered_set<LatticeCoord, LatticeCoordHash>;

/// Dense boolean map over the lattice vertices with ring <= radius.
class RingGrid {
 public:
  explicit RingGrid(std::int64_t radius)
      : radius_(radius), width_(2 * radius + 1), cells_(static_cast<std::size_t>(width_ * width_), 0) {}

  std::int64_t radius() const { return radius_; }
  bool contains(LatticeCoord c) const { return ring(c) <= radius_; }
  std::uint8_t& at(LatticeCoord c) { return cells_[index(c)]; }
  std::uint8_t at(LatticeCoord c) const { return cells_[index(c)]; }

  template <typename Fn>
  void for_each(Fn&& fn) const {
    for (std::int64_t a = -radius_; a <= radius_; ++a)
      for (std::int64_t b = -radius_; b <= radius_; ++b)
        if (LatticeCoord c{a, b}; contains(c)) fn(c);
  }

 private:
  std::size_t index(LatticeCoord c) const {
    return static_cast<std::size_t>((c.a + radius_) * width_ + (c.b + radius_));
  }

  std::int64_t radius_;
  std::int64_t width_;
  std::vector<std::uint8_t> cells_;
};

inline std::int64_t max_ring(std::span<const LatticeCoord> coords) {
  std::int64_t m = 0;
  for (auto c : coords) m = std::max(m, ring(c));
  return m;
}

/// Coordinates that appear more than once, each reported once, sorted.
inline std::vector<LatticeCoord> find_duplicates(std::span<const LatticeCoord> coords) {
  std::vector<LatticeCoord> sorted(coords.begin(), coords.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<LatticeCoord> dups;
  for (std::size_t i = 1; i < sorted.size(); ++i)
    if (sorted[i] == sorted[i - 1] && (dups.empty() || dups.back() != sorted[i])) dups.push_back(sorted[i]);
  return dups;
}

struct TilingCheck {
  bool ok = false;
  std::vector<LatticeCoord> duplicates;
  /// Smallest Cartesian distance between distinct occupied vertices; empty for a single vertex.
  std::optional<double> min_pairwise_distance;
  bool connected = false;
};

/// Occupied vertices must be distinct, at least one lattice edge apart, and
/// connected under lattice adjacency.
inline TilingCheck check_tiling(std::span<const LatticeCoord> coords, double r) {
  require_radius(r);
  TilingCheck out;
  out.duplicates = find_duplicates(coords);
  const CoordSet occupied(coords.begin(), coords.end());
  if (occupied.empty()) return out;

  std::optional<std::pair<LatticeCoord, LatticeCoord>> adjacent_pair;
  for (auto c : occupied) {
    for (auto nb : neighbors(c))
      if (occupied.contains(nb)) {
        adjacent_pair = {c, nb};
        break;
      }
    if (adjacent_pair) break;
  }
  if (adjacent_pair) {
    out.min_pairwise_distance = distance(to_cartesian(adjacent_pair->first, r), to_cartesian(adjacent_pair->second, r));
  } else if (occupied.size() > 1) {
    // No adjacent pair: fall back to the exhaustive minimum.
    const std::vector<LatticeCoord> v(occupied.begin(), occupied.end());
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < v.size(); ++i)
      for (std::size_t j = i + 1; j < v.size(); ++j)
        best = std::min(best, distance(to_cartesian(v[i], r), to_cartesian(v[j], r)));
    out.min_pairwise_distance = best;
  }

  CoordSet seen{*occupied.begin()};
  std::vector<LatticeCoord> stack{*occupied.begin()};
  while (!stack.empty()) {
    const auto c = stack.back();
    stack.pop_back();
    for (auto nb : neighbors(c))
      if (occupied.contains(nb) && seen.insert(nb).second) stack.push_back(nb);
  }
  out.connected = seen.size() == occupied.size();

  const double edge = std::sqrt(3.0) * r;
  const bool spacing_ok =
      !out.min_pairwise_distance || std::abs(*out.min_pairwise_distance - edge) <= 1e-12 * edge;
  out.ok = out.duplicates.empty() && out.connected && spacing_ok;
  return out;
}

/// Unoccupied vertices with no unoccupied lattice path to the outside.
///
/// Flood-fills vacant vertices inward from the ring just beyond the occupied
/// set; anything vacant and unreached is enclosed.
inline std::vector<LatticeCoord> check_no_holes(std::span<const LatticeCoord> coords) {
  if (coords.empty()) return {};
  const std::int64_t outer = max_ring(coords) + 1;
  RingGrid grid(outer);
  constexpr std::uint8_t kOccupied = 1, kReached = 2;
  for (auto c : coords) grid.at(c) = kOccupied;

  std::vector<LatticeCoord> stack;
  grid.for_each([&](LatticeCoord c) {
    if (ring(c) == outer) {
      grid.at(c) = kReached;
      stack.push_back(c);
    }
  });
  while (!stack.empty()) {
    const auto c = stack.back();
    stack.pop_back();
    for (auto nb : neighbors(c)) {
      if (!grid.contains(nb)) continue;
      auto& cell = grid.at(nb);
      if (cell == 0) {
        cell = kReached;
        stack.push_back(nb);
      }
    }
  }

  std::vector<LatticeCoord> holes;
  grid.for_each([&](LatticeCoord c) {
    if (grid.at(c) == 0) holes.push_back(c);
  });
  std::sort(holes.begin(), holes.end());
  return holes;
}

/// Unoccupied vertices on rings strictly inside the outermost occupied ring.
/// A hexagonal spreading fills rings from the inside out, so only the outer
/// ring may be partial.
inline std::vector<LatticeCoord> interior_vacancies(std::span<const LatticeCoord> coords) {
  if (coords.empty()) return {};
  const std::int64_t outer = max_ring(coords);
  if (outer == 0) return {};
  RingGrid grid(outer - 1);
  for (auto c : coords)
    if (grid.contains(c)) grid.at(c) = 1;
  std::vector<LatticeCoord> vacant;
  grid.for_each([&](LatticeCoord c) {
    if (grid.at(c) == 0) vacant.push_back(c);
  });
  std::sort(vacant.begin(), vacant.end());
  return vacant;
}

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

inline double unit_double(std::uint64_t bits) { return static_cast<double>(bits >> 11) * 0x1.0p-53; }

}  // namespace detail

/// Lattice triangles whose three corners are all occupied. Each triangle is
/// listed once, anchored at the corner c with offsets {0, u0, u1} or {0, u1, u2}.
inline std::vector<std::array<LatticeCoord, 3>> occupied_triangles(std::span<const LatticeCoord> coords) {
  CoordSet occupied(coords.begin(), coords.end());
  std::vector<LatticeCoord> sorted(occupied.begin(), occupied.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<std::array<LatticeCoord, 3>> out;
  for (auto c : sorted) {
    const auto p0 = step(c, Direction(0)), p1 = step(c, Direction(1)), p2 = step(c, Direction(2));
    if (occupied.contains(p0) && occupied.contains(p1)) out.push_back({c, p0, p1});
    if (occupied.contains(p1) && occupied.contains(p2)) out.push_back({c, p1, p2});
  }
  return out;
}

/// Samples points uniformly from the union of occupied triangles and checks
/// that each lies within sensing_r of an occupied vertex. Lattice spacing
/// comes from lattice_r; sensing_r defaults to lattice_r. Sample i depends only
/// on (seed, i).
inline bool check_coverage(std::span<const LatticeCoord> coords, double lattice_r, std::int64_t samples,
                           std::uint64_t seed, std::optional<double> sensing_r = std::nullopt) {
  require_radius(lattice_r);
  const double reach = sensing_r.value_or(lattice_r) * (1.0 + 1e-9);
  const auto triangles = occupied_triangles(coords);
  if (triangles.empty() || samples < 1) return true;

  std::vector<Point> centers;
  centers.reserve(coords.size());
  for (auto c : coords) centers.push_back(to_cartesian(c, lattice_r));

  for (std::int64_t i = 0; i < samples; ++i) {
    const std::uint64_t base = detail::splitmix64(seed ^ detail::splitmix64(static_cast<std::uint64_t>(i)));
    const auto& tri = triangles[detail::splitmix64(base) % triangles.size()];
    double u = detail::unit_double(detail::splitmix64(base + 1));
    double v = detail::unit_double(detail::splitmix64(base + 2));
    if (u + v > 1.0) {
      u = 1.0 - u;
      v = 1.0 - v;
    }
    const Point a = to_cartesian(tri[0], lattice_r), b = to_cartesian(tri[1], lattice_r),
                c = to_cartesian(tri[2], lattice_r);
    const Point p{a.x + u * (b.x - a.x) + v * (c.x - a.x), a.y + u * (b.y - a.y) + v * (c.y - a.y)};

    bool covered = distance(p, a) <= reach || distance(p, b) <= reach || distance(p, c) <= reach;
    for (std::size_t j = 0; !covered && j < centers.size(); ++j) covered = distance(p, centers[j]) <= reach;
    if (!covered) return false;
  }
  return true;
}

/// Number of nodes expected to settle in each round 0..m for n nodes:
/// 1, then 6k while rings fill, then the remainder.
inline std::vector<std::int64_t> expected_stable_counts(NodeId n) {
  const Round m = expected_termination_round(n);
  std::vector<std::int64_t> counts{1};
  for (Round k = 1; k < m; ++k) counts.push_back(6 * k);
  if (m >= 1) counts.push_back(n - 1 - 3 * (m - 1) * m);
  return counts;
}

inline bool is_complete_hexagon(NodeId n) {
  const Round m = expected_termination_round(n);
  return n == 1 + 3 * m * (m + 1);
}

struct RoundCountCheck {
  bool stable_counts_ok = false;  // 1, 6k..., remainder
  bool double_groups_ok = false;  // six groups per round when complete, otherwise at most six
  bool termination_ok = false;
};

inline RoundCountCheck check_round_counts(std::span<const RoundReport> reports, NodeId n) {
  RoundCountCheck out;
  if (reports.empty()) return out;
  std::vector<std::int64_t> counts;
  for (const auto& r : reports) counts.push_back(static_cast<std::int64_t>(r.newly_stable.size()));
  out.stable_counts_ok = counts == expected_stable_counts(n);
  out.termination_ok = reports.back().k == expected_termination_round(n);
  const bool complete = is_complete_hexagon(n);
  out.double_groups_ok = true;
  for (const auto& r : reports) {
    if (r.k == 0) continue;
    const auto groups = r.double_group_positions.size();
    if (complete ? groups != 6 : groups > 6) out.double_groups_ok = false;
  }
  return out;
}

/// Stable-round histogram check for configurations read back from disk.
inline bool check_stable_round_schedule(std::span<const Round> stable_rounds) {
  if (stable_rounds.empty()) return false;
  std::map<Round, std::int64_t> histogram;
  for (auto k : stable_rounds) ++histogram[k];
  const auto expected = expected_stable_counts(static_cast<NodeId>(stable_rounds.size()));
  if (histogram.size() != expected.size()) return false;
  for (std::size_t k = 0; k < expected.size(); ++k) {
    const auto it = histogram.find(static_cast<Round>(k));
    if (it == histogram.end() || it->second != expected[k]) return false;
  }
  return true;
}

struct VerificationReport {
  bool tiling_ok = false;
  bool connected = false;
  std::vector<LatticeCoord> holes_found;
  std::vector<LatticeCoord> interior_vacancies;
  bool coverage_ok = false;
  std::optional<double> min_pairwise_distance;
  std::vector<LatticeCoord> duplicates;
  bool lemma1_ok = true;  // only decidable from round reports
  bool lemma2_ok = false;
  bool termination_ok = false;
  std::int64_t node_count = 0;
  Round termination_round = 0;
  Round expected_termination_round = 0;

  bool passed() const {
    return tiling_ok && holes_found.empty() && interior_vacancies.empty() && coverage_ok && duplicates.empty() &&
           lemma1_ok && lemma2_ok && termination_ok;
  }
};

struct VerifyOptions {
  double r = 1.0;
  std::int64_t samples = 10000;
  std::uint64_t seed = 1;
};

/// Full check of a final configuration. `stable_rounds` (parallel to
/// `coords`) feeds the settling-schedule and termination checks.
inline VerificationReport verify_configuration(std::span<const LatticeCoord> coords, std::span<const Round> stable_rounds,
                                               const VerifyOptions& opts,
                                               std::span<const RoundReport> reports = {}) {
  VerificationReport rep;
  rep.node_count = static_cast<std::int64_t>(coords.size());
  if (coords.empty()) return rep;
  const auto tiling = check_tiling(coords, opts.r);
  rep.tiling_ok = tiling.ok;
  rep.connected = tiling.connected;
  rep.duplicates = tiling.duplicates;
  rep.min_pairwise_distance = tiling.min_pairwise_distance;
  rep.holes_found = check_no_holes(coords);
  rep.interior_vacancies = interior_vacancies(coords);
  rep.coverage_ok = check_coverage(coords, opts.r, opts.samples, opts.seed);

  const auto n = static_cast<NodeId>(coords.size());
  rep.expected_termination_round = maxcover::expected_termination_round(n);
  if (!stable_rounds.empty()) {
    rep.termination_round = *std::max_element(stable_rounds.begin(), stable_rounds.end());
    rep.lemma2_ok = stable_rounds.size() == coords.size() && check_stable_round_schedule(stable_rounds);
    rep.termination_ok = rep.termination_round == rep.expected_termination_round;
  }
  if (!reports.empty()) {
    const auto counts = check_round_counts(reports, n);
    rep.lemma1_ok = counts.double_groups_ok;
    rep.lemma2_ok = rep.lemma2_ok && counts.stable_counts_ok;
    rep.termination_ok = rep.termination_ok && counts.termination_ok;
  }
  return rep;
}

}  // namespace maxcover
