#pragma once

#include <vector>

#include "pcf/mesh.hpp"

namespace pcf {

enum class LatticeKind { doubly_periodic, singly_periodic };

/// Planar coordinates for every vertex of a cut mesh together with the
/// translations that glue its seams back together. For a doubly periodic
/// layout the pins are O = (0,0) and t = (1,0); a singly periodic strip pins
/// O1 = (0,0) and t = (t1, 0), and h is unused.
struct FlatLayout {
  LatticeKind kind = LatticeKind::doubly_periodic;
  std::vector<Vec2> coords;
  Vec2 h = Vec2::Zero();
  Vec2 t = Vec2::Zero();
};

}  // namespace pcf
