#include "cubeplan/state.hpp"

#include <algorithm>

namespace cubeplan {

State::State(std::vector<Cell> cells) : cells_(std::move(cells)) {
  std::sort(cells_.begin(), cells_.end());
  cells_.erase(std::unique(cells_.begin(), cells_.end()), cells_.end());
}

bool State::contains(Cell c) const { return std::binary_search(cells_.begin(), cells_.end(), c); }

State State::translated(Offset t) const {
  State out;
  out.cells_.reserve(cells_.size());
  for (Cell c : cells_) out.cells_.push_back(translate(c, t));
  return out;  // translation preserves lexicographic order
}

std::size_t StateHash::operator()(const State& s) const noexcept {
  std::size_t h = s.size();
  CellHash ch;
  for (Cell c : s.cells()) h = (h ^ ch(c)) * 0x100000001B3ull;
  return h;
}

}  // namespace cubeplan
