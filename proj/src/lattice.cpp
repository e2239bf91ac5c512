#include "cubeplan/lattice.hpp"

#include <algorithm>
#include <sstream>

#include "cubeplan/error.hpp"

namespace cubeplan {

std::string to_string(LatticeKind kind) {
  switch (kind) {
    case LatticeKind::square2d: return "square";
    case LatticeKind::hexAxial2d: return "hex";
    case LatticeKind::squareEdge2d: return "square-edge";
    case LatticeKind::finiteGraph: return "graph";
  }
  return "?";
}

LatticeKind lattice_kind_from_string(const std::string& name) {
  if (name == "square") return LatticeKind::square2d;
  if (name == "hex") return LatticeKind::hexAxial2d;
  if (name == "square-edge") return LatticeKind::squareEdge2d;
  if (name == "graph") return LatticeKind::finiteGraph;
  throw Error("UnknownLattice", "unknown lattice kind '" + name + "'");
}

Lattice Lattice::square() { return Lattice{}; }

Lattice Lattice::hex() {
  Lattice l;
  l.kind_ = LatticeKind::hexAxial2d;
  return l;
}

Lattice Lattice::square_edge() {
  Lattice l;
  l.kind_ = LatticeKind::squareEdge2d;
  return l;
}

Lattice Lattice::graph(int vertex_count, std::vector<std::pair<int, int>> edges) {
  if (vertex_count < 0) throw Error("InvalidGraph", "negative vertex count");
  Lattice l;
  l.kind_ = LatticeKind::finiteGraph;
  l.vertex_count_ = vertex_count;
  for (auto& [a, b] : edges) {
    if (a == b || a < 0 || b < 0 || a >= vertex_count || b >= vertex_count)
      throw Error("InvalidGraph", "edge {" + std::to_string(a) + "," + std::to_string(b) +
                                      "} is a loop or references a missing vertex");
    if (a > b) std::swap(a, b);
  }
  std::sort(edges.begin(), edges.end());
  if (std::adjacent_find(edges.begin(), edges.end()) != edges.end())
    throw Error("InvalidGraph", "graph must be simple (duplicate edge)");
  l.edges_ = std::move(edges);
  l.adjacency_.assign(vertex_count, {});
  for (auto [a, b] : l.edges_) {
    l.adjacency_[a].push_back(b);
    l.adjacency_[b].push_back(a);
  }
  for (auto& adj : l.adjacency_) std::sort(adj.begin(), adj.end());
  return l;
}

int Lattice::arity() const {
  switch (kind_) {
    case LatticeKind::squareEdge2d: return 3;
    case LatticeKind::finiteGraph: return 1;
    default: return 2;
  }
}

bool Lattice::in_domain(Cell c) const {
  switch (kind_) {
    case LatticeKind::square2d:
    case LatticeKind::hexAxial2d: return c.z == 0;
    case LatticeKind::squareEdge2d: return c.z == 0 || c.z == 1;
    case LatticeKind::finiteGraph: return c.y == 0 && c.z == 0 && c.x >= 0 && c.x < vertex_count_;
  }
  return false;
}

std::vector<Cell> Lattice::neighbors(Cell c) const {
  switch (kind_) {
    case LatticeKind::square2d:
      return {{c.x + 1, c.y, 0}, {c.x, c.y + 1, 0}, {c.x - 1, c.y, 0}, {c.x, c.y - 1, 0}};
    case LatticeKind::hexAxial2d: {
      std::vector<Cell> out;
      for (auto d : kHexDirections) out.push_back(translate(c, d));
      return out;
    }
    case LatticeKind::squareEdge2d:
      // Edges sharing an endpoint.
      if (c.z == 0)
        return {{c.x, c.y, 1},     {c.x - 1, c.y, 0},     {c.x, c.y - 1, 1},
                {c.x + 1, c.y, 0}, {c.x + 1, c.y, 1},     {c.x + 1, c.y - 1, 1}};
      return {{c.x, c.y, 0},     {c.x - 1, c.y, 0},     {c.x, c.y - 1, 1},
              {c.x, c.y + 1, 1}, {c.x, c.y + 1, 0},     {c.x - 1, c.y + 1, 0}};
    case LatticeKind::finiteGraph: {
      std::vector<Cell> out;
      if (!in_domain(c)) return out;
      for (int v : adjacency_[c.x]) out.push_back({v, 0, 0});
      return out;
    }
  }
  return {};
}

bool Lattice::adjacent(Cell a, Cell b) const {
  auto n = neighbors(a);
  return std::find(n.begin(), n.end(), b) != n.end();
}

std::string format_cell(Cell c, const Lattice& lattice) {
  std::ostringstream os;
  os << '(' << c.x;
  if (lattice.arity() >= 2) os << ',' << c.y;
  if (lattice.arity() >= 3) os << ',' << c.z;
  os << ')';
  return os.str();
}

}  // namespace cubeplan
