#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "cubeplan/lattice.hpp"
#include "cubeplan/state.hpp"

namespace cubeplan {

struct Box {
  int xmin = 0, ymin = 0, xmax = 0, ymax = 0;
  bool operator==(const Box&) const = default;
};

// Cells available to the system: either a finite set, or the whole lattice
// minus a finite excluded set. Obstacles carry a fixed occupancy bit.
class Workspace {
 public:
  static Workspace finite(Lattice lattice, std::vector<Cell> cells,
                          std::vector<std::pair<Cell, bool>> obstacles = {});
  // Every lattice cell with xmin <= x <= xmax, ymin <= y <= ymax (both edge
  // orientations on the edge lattice). Finite graphs take all vertices.
  static Workspace box(Lattice lattice, Box bounds,
                       std::vector<std::pair<Cell, bool>> obstacles = {});
  static Workspace unbounded(Lattice lattice, std::vector<Cell> excluded = {},
                             std::vector<std::pair<Cell, bool>> obstacles = {});

  const Lattice& lattice() const { return lattice_; }
  bool is_finite() const { return finite_; }
  bool contains(Cell c) const;

  // Member cells of a finite workspace; excluded cells of an unbounded one.
  const std::vector<Cell>& cells() const { return cells_; }
  const std::optional<Box>& bounds() const { return box_; }

  const std::vector<std::pair<Cell, bool>>& obstacles() const { return obstacles_; }
  bool is_obstacle(Cell c) const;
  // Occupancy bit of an obstacle cell; nullopt if not an obstacle.
  std::optional<bool> obstacle_occupancy(Cell c) const;
  bool has_obstacles() const { return !obstacles_.empty(); }

  // True iff the state lies in the workspace and agrees with every obstacle bit.
  bool admits(const State& state) const;

  bool operator==(const Workspace& o) const {
    return lattice_ == o.lattice_ && finite_ == o.finite_ && cells_ == o.cells_ &&
           obstacles_ == o.obstacles_;
  }

 private:
  Lattice lattice_;
  bool finite_ = true;
  std::vector<Cell> cells_;
  std::optional<Box> box_;
  std::vector<std::pair<Cell, bool>> obstacles_;  // sorted by cell
};

}  // namespace cubeplan
