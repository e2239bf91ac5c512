#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace cubeplan {

enum class LatticeKind { square2d, hexAxial2d, squareEdge2d, finiteGraph };

std::string to_string(LatticeKind kind);
LatticeKind lattice_kind_from_string(const std::string& name);

// A lattice site. Interpretation of the coordinates depends on the lattice:
//   square2d      (x, y)
//   hexAxial2d    (q, r) axial coordinates
//   squareEdge2d  (x, y, o): edge leaving (x, y), o = 0 horizontal, 1 vertical
//   finiteGraph   (vertex id)
// Unused coordinates are zero.
struct Cell {
  std::int32_t x = 0;
  std::int32_t y = 0;
  std::int32_t z = 0;

  auto operator<=>(const Cell&) const = default;
};

struct Offset {
  std::int32_t dx = 0;
  std::int32_t dy = 0;

  auto operator<=>(const Offset&) const = default;
  Offset operator+(Offset o) const { return {dx + o.dx, dy + o.dy}; }
  Offset operator-(Offset o) const { return {dx - o.dx, dy - o.dy}; }
  Offset operator-() const { return {-dx, -dy}; }
};

inline Cell translate(Cell c, Offset t) { return {c.x + t.dx, c.y + t.dy, c.z}; }

struct CellHash {
  std::size_t operator()(const Cell& c) const noexcept {
    std::uint64_t h = static_cast<std::uint32_t>(c.x);
    h = h * 0x9E3779B97F4A7C15ull ^ static_cast<std::uint32_t>(c.y);
    h = h * 0x9E3779B97F4A7C15ull ^ static_cast<std::uint32_t>(c.z);
    return static_cast<std::size_t>(h ^ (h >> 29));
  }
};

class Lattice {
 public:
  static Lattice square();
  static Lattice hex();
  static Lattice square_edge();
  static Lattice graph(int vertex_count, std::vector<std::pair<int, int>> edges);

  LatticeKind kind() const { return kind_; }
  // 2 for the periodic lattices, 0 for a finite graph.
  int translation_rank() const { return kind_ == LatticeKind::finiteGraph ? 0 : 2; }
  // Number of integer coordinates used in textual cell notation.
  int arity() const;

  bool in_domain(Cell c) const;
  std::vector<Cell> neighbors(Cell c) const;
  bool adjacent(Cell a, Cell b) const;

  int vertex_count() const { return vertex_count_; }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }

  bool operator==(const Lattice&) const = default;

 private:
  LatticeKind kind_ = LatticeKind::square2d;
  int vertex_count_ = 0;
  std::vector<std::pair<int, int>> edges_;  // normalized (lo, hi), sorted
  std::vector<std::vector<int>> adjacency_;
};

// Axial hex directions in rotational order; consecutive entries are adjacent.
inline constexpr Offset kHexDirections[6] = {{1, 0}, {1, -1}, {0, -1}, {-1, 0}, {-1, 1}, {0, 1}};

std::string format_cell(Cell c, const Lattice& lattice);

}  // namespace cubeplan
