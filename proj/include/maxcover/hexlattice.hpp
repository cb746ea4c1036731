#pragma once

#include <array>
#include <cmath>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numbers>
#include <stdexcept>

namespace maxcover {

/**
 * A vertex of the triangular lattice with edge length sqrt(3)*r.
 *
 * The position is a*u0 + b*u1 where u_d points at angle d*pi/3. Everything the
 * protocol does happens on these integers; Cartesian values are only produced
 * for output.
 *
 * Components are 32-bit: n sensors never reach beyond ring sqrt(n/3) + 1,
 * which stays below 2^31 for any 64-bit node count. Derived quantities are
 * computed in 64 bits.
 */
struct LatticeCoord {
  using value_type = std::int32_t;

  value_type a = 0;
  value_type b = 0;

  constexpr LatticeCoord() = default;
  constexpr LatticeCoord(std::int64_t a_, std::int64_t b_)
      : a(static_cast<value_type>(a_)), b(static_cast<value_type>(b_)) {}

  friend constexpr bool operator==(LatticeCoord, LatticeCoord) = default;
  friend constexpr auto operator<=>(LatticeCoord, LatticeCoord) = default;

  constexpr LatticeCoord operator+(LatticeCoord o) const { return {std::int64_t{a} + o.a, std::int64_t{b} + o.b}; }
  constexpr LatticeCoord operator-(LatticeCoord o) const { return {std::int64_t{a} - o.a, std::int64_t{b} - o.b}; }
  constexpr LatticeCoord operator*(std::int64_t k) const { return {a * k, b * k}; }
};

inline constexpr LatticeCoord kOrigin{0, 0};

/// One of the six lattice headings, angle = d*pi/3. Arithmetic wraps mod 6.
class Direction {
 public:
  constexpr Direction() = default;
  constexpr explicit Direction(int d) : d_(static_cast<std::int8_t>(((d % 6) + 6) % 6)) {}

  constexpr int value() const { return d_; }
  double angle() const { return d_ * std::numbers::pi / 3.0; }

  constexpr Direction operator+(int turns) const { return Direction(d_ + turns); }
  friend constexpr bool operator==(Direction, Direction) = default;

 private:
  std::int8_t d_ = 0;
};

inline constexpr std::array<LatticeCoord, 6> kUnitSteps{{
    {1, 0}, {0, 1}, {-1, 1}, {-1, 0}, {0, -1}, {1, -1}}};

constexpr LatticeCoord unit_vector(Direction d) { return kUnitSteps[static_cast<std::size_t>(d.value())]; }

constexpr LatticeCoord step(LatticeCoord c, Direction d) { return c + unit_vector(d); }

constexpr std::int64_t abs64(std::int64_t v) { return v < 0 ? -v : v; }

/// Hexagonal layer index: the lattice distance from the origin.
constexpr std::int64_t ring(LatticeCoord c) {
  const std::int64_t a = c.a, b = c.b;
  return (abs64(a) + abs64(b) + abs64(a + b)) / 2;
}

constexpr std::int64_t lattice_distance(LatticeCoord p, LatticeCoord q) { return ring(p - q); }

constexpr std::array<LatticeCoord, 6> neighbors(LatticeCoord c) {
  std::array<LatticeCoord, 6> out{};
  for (int d = 0; d < 6; ++d) out[static_cast<std::size_t>(d)] = step(c, Direction(d));
  return out;
}

/// a^2 + ab + b^2; the squared length of a*u0 + b*u1 in units of (sqrt(3) r)^2.
constexpr std::int64_t norm2(LatticeCoord c) {
  const std::int64_t a = c.a, b = c.b;
  return a * a + a * b + b * b;
}

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend constexpr bool operator==(Point, Point) = default;
  Point operator+(Point o) const { return {x + o.x, y + o.y}; }
  Point operator-(Point o) const { return {x - o.x, y - o.y}; }
};

inline double distance(Point p, Point q) { return std::hypot(p.x - q.x, p.y - q.y); }

inline void require_radius(double r) {
  if (!(r > 0.0) || !std::isfinite(r)) throw std::invalid_argument("sensing radius must be positive and finite");
}

/// X = sqrt(3) r (a + b/2), Y = (3r/2) b.
inline Point to_cartesian(LatticeCoord c, double r) {
  require_radius(r);
  const double a = static_cast<double>(c.a);
  const double b = static_cast<double>(c.b);
  return {std::numbers::sqrt3 * r * (a + 0.5 * b), 1.5 * r * b};
}

/// Euclidean distance from the origin, computed from the exact integer norm.
inline double displacement(LatticeCoord c, double r) {
  require_radius(r);
  return std::numbers::sqrt3 * r * std::sqrt(static_cast<double>(norm2(c)));
}

struct LatticeCoordHash {
  std::size_t operator()(LatticeCoord c) const noexcept {
    const auto packed = (static_cast<std::uint64_t>(static_cast<std::uint32_t>(c.a)) << 32) | static_cast<std::uint32_t>(c.b);
    auto h = packed * 0x9E3779B97F4A7C15ULL;
    h ^= h >> 29;
    return static_cast<std::size_t>(h);
  }
};

}  // namespace maxcover
