#pragma once

#include <vector>

#include "cubeplan/lattice.hpp"

namespace cubeplan {

// The set of occupied cells. Kept sorted and duplicate-free, so equality,
// ordering and hashing are structural.
class State {
 public:
  State() = default;
  explicit State(std::vector<Cell> cells);

  bool contains(Cell c) const;
  const std::vector<Cell>& cells() const { return cells_; }
  std::size_t size() const { return cells_.size(); }
  bool empty() const { return cells_.empty(); }

  State translated(Offset t) const;

  auto operator<=>(const State&) const = default;

 private:
  std::vector<Cell> cells_;
};

struct StateHash {
  std::size_t operator()(const State& s) const noexcept;
};

}  // namespace cubeplan
