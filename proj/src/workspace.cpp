#include "cubeplan/workspace.hpp"

#include <algorithm>

#include "cubeplan/error.hpp"

namespace cubeplan {

namespace {

std::vector<std::pair<Cell, bool>> sorted_obstacles(std::vector<std::pair<Cell, bool>> obs) {
  std::sort(obs.begin(), obs.end());
  for (std::size_t i = 1; i < obs.size(); ++i)
    if (obs[i].first == obs[i - 1].first)
      throw Error("InvalidWorkspace", "obstacle listed twice");
  return obs;
}

}  // namespace

Workspace Workspace::finite(Lattice lattice, std::vector<Cell> cells,
                            std::vector<std::pair<Cell, bool>> obstacles) {
  Workspace w;
  w.lattice_ = std::move(lattice);
  std::sort(cells.begin(), cells.end());
  cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
  for (Cell c : cells)
    if (!w.lattice_.in_domain(c))
      throw Error("InvalidWorkspace", "cell " + format_cell(c, w.lattice_) + " outside lattice");
  w.cells_ = std::move(cells);
  w.obstacles_ = sorted_obstacles(std::move(obstacles));
  for (auto& [c, occ] : w.obstacles_)
    if (!w.contains(c))
      throw Error("InvalidWorkspace", "obstacle " + format_cell(c, w.lattice_) + " outside workspace");
  return w;
}

Workspace Workspace::box(Lattice lattice, Box b, std::vector<std::pair<Cell, bool>> obstacles) {
  std::vector<Cell> cells;
  if (lattice.kind() == LatticeKind::finiteGraph) {
    for (int v = 0; v < lattice.vertex_count(); ++v) cells.push_back({v, 0, 0});
    return finite(std::move(lattice), std::move(cells), std::move(obstacles));
  }
  int layers = lattice.kind() == LatticeKind::squareEdge2d ? 2 : 1;
  for (int x = b.xmin; x <= b.xmax; ++x)
    for (int y = b.ymin; y <= b.ymax; ++y)
      for (int z = 0; z < layers; ++z) cells.push_back({x, y, z});
  Workspace w = finite(std::move(lattice), std::move(cells), std::move(obstacles));
  w.box_ = b;
  return w;
}

Workspace Workspace::unbounded(Lattice lattice, std::vector<Cell> excluded,
                               std::vector<std::pair<Cell, bool>> obstacles) {
  if (lattice.kind() == LatticeKind::finiteGraph)
    return finite(lattice, [&] {
      std::vector<Cell> cells;
      for (int v = 0; v < lattice.vertex_count(); ++v)
        if (std::find(excluded.begin(), excluded.end(), Cell{v, 0, 0}) == excluded.end())
          cells.push_back({v, 0, 0});
      return cells;
    }(), std::move(obstacles));
  Workspace w;
  w.lattice_ = std::move(lattice);
  w.finite_ = false;
  std::sort(excluded.begin(), excluded.end());
  excluded.erase(std::unique(excluded.begin(), excluded.end()), excluded.end());
  w.cells_ = std::move(excluded);
  w.obstacles_ = sorted_obstacles(std::move(obstacles));
  for (auto& [c, occ] : w.obstacles_)
    if (!w.contains(c))
      throw Error("InvalidWorkspace", "obstacle " + format_cell(c, w.lattice_) + " outside workspace");
  return w;
}

bool Workspace::contains(Cell c) const {
  if (!lattice_.in_domain(c)) return false;
  bool listed = std::binary_search(cells_.begin(), cells_.end(), c);
  return finite_ ? listed : !listed;
}

bool Workspace::is_obstacle(Cell c) const { return obstacle_occupancy(c).has_value(); }

std::optional<bool> Workspace::obstacle_occupancy(Cell c) const {
  auto it = std::lower_bound(obstacles_.begin(), obstacles_.end(), c,
                             [](const auto& o, Cell v) { return o.first < v; });
  if (it == obstacles_.end() || it->first != c) return std::nullopt;
  return it->second;
}

bool Workspace::admits(const State& state) const {
  for (Cell c : state.cells()) {
    if (!contains(c)) return false;
    if (auto occ = obstacle_occupancy(c); occ && !*occ) return false;
  }
  for (auto& [c, occ] : obstacles_)
    if (occ && !state.contains(c)) return false;
  return true;
}

}  // namespace cubeplan
