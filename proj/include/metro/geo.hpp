#pragma once

#include <cmath>
#include <cstdint>
#include <string>

namespace metro {

struct Coord {
  double x = 0.0;
  double y = 0.0;
};

/// Euclidean distance in kilometers.
inline double distance(Coord a, Coord b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return std::sqrt(dx * dx + dy * dy);
}

inline double squared_distance(Coord a, Coord b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return dx * dx + dy * dy;
}

// Axis-aligned rectangle, [x0,x1] x [y0,y1].
struct Rect {
  double x0 = 0.0, y0 = 0.0, x1 = 0.0, y1 = 0.0;

  bool contains(Coord c) const { return c.x >= x0 && c.x <= x1 && c.y >= y0 && c.y <= y1; }
  bool contains(const Rect& r) const {
    return r.x0 >= x0 && r.x1 <= x1 && r.y0 >= y0 && r.y1 <= y1;
  }
  bool overlaps(const Rect& r) const {
    return x0 < r.x1 && r.x0 < x1 && y0 < r.y1 && r.y0 < y1;
  }
  bool valid() const { return x0 <= x1 && y0 <= y1; }
};

struct Municipality {
  int id = 0;
  std::string name;
  Rect region;
  Rect urban_zone;
  double initial_qli = 0.0;       // in (0, 1]
  std::int64_t target_population = 0;
  std::int64_t target_firms = 0;
  double urban_fraction = 0.0;
};

struct House {
  std::uint32_t id = 0;
  Coord coord;
  std::uint16_t municipality = 0;
  double size = 0.0;
  double quality = 0.0;
  std::int32_t owner = -1;     // family id; -1 = municipal vacant pool
  std::int32_t occupant = -1;  // family id; -1 = unoccupied
};

}  // namespace metro
