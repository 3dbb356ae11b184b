#pragma once

#include <cstdint>
#include <cstdlib>

namespace stratfuse::ctf {

enum class Team : std::uint8_t { Blue = 0, Red = 1 };

inline Team other(Team t) { return t == Team::Blue ? Team::Red : Team::Blue; }
inline int team_index(Team t) { return static_cast<int>(t); }

struct Cell {
  int x = 0;
  int y = 0;

  friend bool operator==(const Cell&, const Cell&) = default;
};

// Movement is 4-connected, so all ranges use Manhattan distance.
inline int manhattan(Cell a, Cell b) {
  return std::abs(a.x - b.x) + std::abs(a.y - b.y);
}

// Primitive actions available to the low-level macro policies.
enum class Primitive : std::uint8_t { Stay, Up, Down, Left, Right, Tag };

inline Cell apply_move(Cell c, Primitive p) {
  switch (p) {
    case Primitive::Up: return {c.x, c.y + 1};
    case Primitive::Down: return {c.x, c.y - 1};
    case Primitive::Left: return {c.x - 1, c.y};
    case Primitive::Right: return {c.x + 1, c.y};
    default: return c;
  }
}

// Deterministic greedy step toward target: close the x gap first, then y.
inline Primitive step_toward(Cell from, Cell to) {
  if (from.x < to.x) return Primitive::Right;
  if (from.x > to.x) return Primitive::Left;
  if (from.y < to.y) return Primitive::Up;
  if (from.y > to.y) return Primitive::Down;
  return Primitive::Stay;
}

}  // namespace stratfuse::ctf
