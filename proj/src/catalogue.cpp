#include "cubeplan/catalogue.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "cubeplan/error.hpp"

namespace cubeplan {

namespace {

Offset hex_dir(int i) { return kHexDirections[((i % 6) + 6) % 6]; }

Cell at(Offset o) { return {o.dx, o.dy, 0}; }

void push(Generator& g, Cell c, int trace, int u0, int u1) {
  g.support.push_back(c);
  g.trace.push_back(static_cast<std::uint8_t>(trace));
  g.u0.push_back(static_cast<std::uint8_t>(u0));
  g.u1.push_back(static_cast<std::uint8_t>(u1));
}

}  // namespace

HexVariant hex_variant_from_string(const std::string& name) {
  if (name == "preserving" || name == "topologyPreserving") return HexVariant::topologyPreserving;
  if (name == "changing" || name == "topologyChanging") return HexVariant::topologyChanging;
  throw Error("InvalidArgument", "unknown hex variant '" + name + "' (preserving|changing)");
}

std::string to_string(HexVariant v) {
  return v == HexVariant::topologyPreserving ? "preserving" : "changing";
}

std::vector<Generator> hex_pivot_generators(HexVariant variant) {
  std::vector<Generator> out;
  for (int i = 0; i < 6; ++i) {
    Generator g;
    g.id = "pivot" + std::to_string(i);
    const Offset b = hex_dir(i), c = hex_dir(i + 1);
    push(g, at({0, 0}), 1, 1, 0);
    push(g, at(b), 0, 1, 1);
    push(g, at(c), 1, 0, 1);
    if (variant == HexVariant::topologyPreserving) {
      // Apart from the pivot, the moving cell may only touch the other
      // common neighbour of itself and the pivot, before and after.
      push(g, at(hex_dir(i + 2)), 0, 0, 0);
      push(g, at(hex_dir(i + 3)), 0, 0, 0);
      push(g, at(hex_dir(i + 4)), 0, 0, 0);
      push(g, at(c + hex_dir(i + 1)), 0, 0, 0);
      push(g, at(c + hex_dir(i + 2)), 0, 0, 0);
    }
    out.push_back(std::move(g));
  }
  return out;
}

std::shared_ptr<const System> hex_pivot_system(HexVariant variant, Workspace workspace,
                                               std::optional<GlobalConstraint> constraint,
                                               std::vector<State> seeds) {
  if (workspace.lattice().kind() != LatticeKind::hexAxial2d)
    throw Error("InvalidArgument", "hex pivots need a hex lattice");
  return std::make_shared<const System>(std::move(workspace), hex_pivot_generators(variant),
                                        std::move(constraint), std::move(seeds));
}

std::vector<Cell> hex_region(int radius) {
  std::vector<Cell> out;
  for (int q = -radius; q <= radius; ++q)
    for (int r = -radius; r <= radius; ++r)
      if (std::abs(q + r) <= radius) out.push_back({q, r, 0});
  return out;
}

State hex_line(int n) {
  std::vector<Cell> cells;
  for (int i = 0; i < n; ++i) cells.push_back({i, 0, 0});
  return State(std::move(cells));
}

CurvatureFixture curvature_fixture() {
  // Found by exhaustive search over connected six-cell aggregates in the
  // radius-2 hexagon.
  CurvatureFixture f;
  f.state = State({{-2, 0, 0}, {-2, 1, 0}, {-2, 2, 0}, {-1, 0, 0}, {0, -1, 0}, {0, 0, 0}});
  f.actions = {{{1, -1, 0}, Direction::forward},
               {{3, 1, -1}, Direction::backward},
               {{5, -2, 1}, Direction::forward}};
  return f;
}

std::shared_ptr<const System> curvature_system(bool with_constraint) {
  std::optional<GlobalConstraint> constraint;
  if (with_constraint) constraint = constraint_by_name("connected", Lattice::hex());
  return hex_pivot_system(HexVariant::topologyChanging, Workspace::finite(Lattice::hex(), hex_region(2)),
                          std::move(constraint), {curvature_fixture().state});
}

// ---- sliding squares ----

std::vector<Generator> sliding_square_generators(int kmax) {
  if (kmax < 0) throw Error("InvalidArgument", "kmax must be non-negative");
  std::vector<Generator> out;
  struct Axis {
    const char* name;
    Offset row, flank;
  };
  const Axis axes[2] = {{"h", {1, 0}, {0, 1}}, {"v", {0, 1}, {1, 0}}};
  for (const auto& ax : axes) {
    auto cell = [&](int c, int s) { return Cell{c * ax.row.dx + s * ax.flank.dx, c * ax.row.dy + s * ax.flank.dy, 0}; };
    for (int m = 1; m <= kmax + 1; ++m) {
      const int cols = m + 1;  // flank columns 1..m+1 on each side
      for (std::uint32_t bits = 0; bits < (1u << (2 * cols)); ++bits) {
        // F[side][c] for c = 1..m+1; side 0 below, side 1 above.
        auto flank = [&](int side, int c) { return (bits >> (side * cols + c - 1)) & 1; };
        bool ok = true, before = false, after = false;
        for (int side = 0; side < 2; ++side) {
          if (flank(side, 1) && !flank(side, 2)) ok = false;
          if (flank(side, m + 1) && !flank(side, m)) ok = false;
          for (int c = 1; c <= m; ++c) before = before || flank(side, c);
          for (int c = 2; c <= m + 1; ++c) after = after || flank(side, c);
        }
        if (!ok || !before || !after) continue;
        Generator g;
        g.id = std::string("slide-") + ax.name + std::to_string(m) + "-";
        for (int side = 0; side < 2; ++side) {
          if (side) g.id += '.';
          for (int c = 1; c <= m + 1; ++c) g.id += flank(side, c) ? '1' : '0';
        }
        push(g, cell(0, 0), 0, 0, 0);
        for (int c = 1; c <= m + 1; ++c) push(g, cell(c, 0), 1, c <= m, c >= 2);
        push(g, cell(m + 2, 0), 0, 0, 0);
        for (int side = 0; side < 2; ++side)
          for (int c = 1; c <= m + 1; ++c) {
            int f = static_cast<int>(flank(side, c));
            push(g, cell(c, side ? 1 : -1), 0, f, f);
          }
        out.push_back(std::move(g));
      }
    }
  }
  return out;
}

std::shared_ptr<const System> sliding_squares_system(int kmax, Workspace workspace, std::vector<State> seeds) {
  if (workspace.lattice().kind() != LatticeKind::square2d)
    throw Error("InvalidArgument", "sliding squares need a square lattice");
  return std::make_shared<const System>(std::move(workspace), sliding_square_generators(kmax), std::nullopt,
                                        std::move(seeds));
}

std::shared_ptr<const System> sliding_obstacle_system(int p, int q) {
  if (p < 1 || q < 1) throw Error("InvalidArgument", "obstacle sides must be positive");
  std::vector<std::pair<Cell, bool>> obstacles;
  for (int x = 0; x < p; ++x)
    for (int y = 0; y < q; ++y) obstacles.push_back({{x, y, 0}, true});
  constexpr int margin = 4;
  Workspace ws = Workspace::box(Lattice::square(), {-margin, -margin, p - 1 + margin, q - 1 + margin},
                                std::move(obstacles));
  std::vector<Cell> cells;
  for (int x = 0; x < p; ++x)
    for (int y = 0; y < q; ++y) cells.push_back({x, y, 0});
  cells.push_back({-1, 0, 0});
  cells.push_back({-1, -1, 0});
  return sliding_squares_system(1, std::move(ws), {State(std::move(cells))});
}

// ---- planar arm ----

namespace {

Cell h_edge(int x, int y) { return {x, y, 0}; }
Cell v_edge(int x, int y) { return {x, y, 1}; }

}  // namespace

std::shared_ptr<const System> arm_system(int n) {
  if (n < 1) throw Error("InvalidArgument", "arm length must be at least 1");
  Generator corner;
  corner.id = "corner";
  push(corner, h_edge(0, 0), 1, 1, 0);
  push(corner, v_edge(1, 0), 1, 1, 0);
  push(corner, v_edge(0, 0), 1, 0, 1);
  push(corner, h_edge(0, 1), 1, 0, 1);
  Generator flip;
  flip.id = "flip";
  push(flip, h_edge(0, 0), 1, 1, 0);
  push(flip, v_edge(0, 0), 1, 0, 1);
  // Nothing continues from either candidate edge, so it is the last one.
  push(flip, h_edge(1, 0), 0, 0, 0);
  push(flip, v_edge(1, 0), 0, 0, 0);
  push(flip, h_edge(0, 1), 0, 0, 0);
  push(flip, v_edge(0, 1), 0, 0, 0);
  std::vector<Cell> cells;
  for (int x = 0; x <= n; ++x)
    for (int y = 0; x + y <= n; ++y) {
      cells.push_back(h_edge(x, y));
      cells.push_back(v_edge(x, y));
    }
  Workspace ws = Workspace::finite(Lattice::square_edge(), std::move(cells));
  return std::make_shared<const System>(std::move(ws), std::vector<Generator>{corner, flip}, std::nullopt,
                                        std::vector<State>{arm_state(std::string(n, 'y'))});
}

State arm_state(const std::string& word) {
  std::vector<Cell> cells;
  int x = 0, y = 0;
  for (char ch : word) {
    if (ch == 'x') cells.push_back(h_edge(x++, y));
    else if (ch == 'y') cells.push_back(v_edge(x, y++));
    else throw Error("InvalidArgument", "arm words use the letters x and y");
  }
  return State(std::move(cells));
}

std::string arm_word(const State& state) {
  std::string w;
  int x = 0, y = 0;
  while (w.size() < state.size()) {
    if (state.contains(h_edge(x, y))) {
      w += 'x';
      ++x;
    } else if (state.contains(v_edge(x, y))) {
      w += 'y';
      ++y;
    } else {
      break;
    }
  }
  if (w.size() != state.size()) throw Error("InvalidState", "state is not an arm from the origin");
  return w;
}

WordComplex arm_word_complex(int n) {
  if (n < 1) throw Error("InvalidArgument", "arm length must be at least 1");
  WordComplex out;
  const std::uint32_t nv = 1u << n;
  for (std::uint32_t bits = 0; bits < nv; ++bits) {
    std::string w(n, 'x');
    for (int i = 0; i < n; ++i)
      if ((bits >> (n - 1 - i)) & 1) w[i] = 'y';
    out.words.push_back(w);
  }
  std::map<std::string, std::uint32_t> index;
  for (std::uint32_t i = 0; i < nv; ++i) index[out.words[i]] = i;
  // Move i < n-1 transposes positions i, i+1 (0-based); move n-1 flips the last letter.
  auto apply_move = [&](std::string w, int move) {
    if (move == n - 1) w[n - 1] = w[n - 1] == 'x' ? 'y' : 'x';
    else std::swap(w[move], w[move + 1]);
    return w;
  };
  out.cells.counts.assign(1, nv);
  out.cells.facets.assign(1, {});
  using Key = std::pair<std::uint32_t, std::vector<int>>;
  std::vector<std::map<Key, std::uint32_t>> keys(1);
  std::vector<std::vector<Key>> by_dim(1);
  for (std::uint32_t v = 0; v < nv; ++v) {
    const std::string& w = out.words[v];
    std::vector<int> fwd;
    for (int i = 0; i + 1 < n; ++i)
      if (w[i] == 'x' && w[i + 1] == 'y') fwd.push_back(i);
    if (w[n - 1] == 'x') fwd.push_back(n - 1);
    // Subsets with pairwise disjoint index sets.
    const std::size_t f = fwd.size();
    for (std::uint32_t mask = 1; mask < (1u << f); ++mask) {
      std::vector<int> moves;
      bool ok = true;
      for (std::size_t j = 0; j < f && ok; ++j) {
        if (!((mask >> j) & 1)) continue;
        if (!moves.empty() && moves.back() + 1 >= fwd[j]) ok = false;
        moves.push_back(fwd[j]);
      }
      if (!ok) continue;
      const std::size_t k = moves.size();
      if (by_dim.size() <= k) by_dim.resize(k + 1);
      by_dim[k].push_back({v, moves});
    }
  }
  keys.resize(by_dim.size());
  for (std::size_t k = 1; k < by_dim.size(); ++k) {
    std::sort(by_dim[k].begin(), by_dim[k].end());
    for (std::uint32_t id = 0; id < by_dim[k].size(); ++id) keys[k][by_dim[k][id]] = id;
  }
  for (std::size_t k = 1; k < by_dim.size(); ++k) {
    for (const auto& [v, moves] : by_dim[k]) {
      std::vector<std::uint32_t> facets;
      for (std::size_t i = 0; i < k; ++i) {
        std::vector<int> rest;
        for (std::size_t j = 0; j < k; ++j)
          if (j != i) rest.push_back(moves[j]);
        std::uint32_t up = index.at(apply_move(out.words[v], moves[i]));
        if (k == 1) {
          facets.push_back(v);
          facets.push_back(up);
        } else {
          facets.push_back(keys[k - 1].at({v, rest}));
          facets.push_back(keys[k - 1].at({up, rest}));
        }
      }
      out.cells.add_cell(k, facets);
    }
  }
  return out;
}

std::vector<std::vector<std::vector<std::uint32_t>>> cell_vertex_sets(const CubeComplex& complex) {
  std::vector<std::vector<std::vector<std::uint32_t>>> sets(complex.counts.size());
  for (std::uint32_t v = 0; v < complex.count(0); ++v) sets[0].push_back({v});
  for (std::size_t k = 1; k < complex.counts.size(); ++k)
    for (std::uint32_t id = 0; id < complex.counts[k]; ++id) {
      std::vector<std::uint32_t> vs;
      for (auto f : complex.facets_of(k, id)) vs.insert(vs.end(), sets[k - 1][f].begin(), sets[k - 1][f].end());
      std::sort(vs.begin(), vs.end());
      vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
      sets[k].push_back(std::move(vs));
    }
  return sets;
}

bool arm_isomorphic(const StateComplex& arm, const WordComplex& words) {
  const auto& a = arm.cells();
  const auto& b = words.cells;
  if (a.counts != b.counts) return false;
  std::map<std::string, std::uint32_t> index;
  for (std::uint32_t i = 0; i < words.words.size(); ++i) index[words.words[i]] = i;
  std::vector<std::uint32_t> vmap(a.count(0));
  for (std::uint32_t v = 0; v < a.count(0); ++v) {
    auto it = index.find(arm_word(arm.vertex(v)));
    if (it == index.end()) return false;
    vmap[v] = it->second;
  }
  auto sa = cell_vertex_sets(a);
  auto sb = cell_vertex_sets(b);
  // Map each cell of `a` to the cell of `b` with the same vertex set.
  std::vector<std::vector<std::uint32_t>> cmap(a.counts.size());
  cmap[0] = vmap;
  for (std::size_t k = 1; k < a.counts.size(); ++k) {
    std::map<std::vector<std::uint32_t>, std::uint32_t> lookup;
    for (std::uint32_t id = 0; id < b.counts[k]; ++id)
      if (!lookup.emplace(sb[k][id], id).second) return false;
    std::vector<std::uint8_t> hit(b.counts[k], 0);
    for (std::uint32_t id = 0; id < a.counts[k]; ++id) {
      std::vector<std::uint32_t> vs;
      for (auto v : sa[k][id]) vs.push_back(vmap[v]);
      std::sort(vs.begin(), vs.end());
      auto it = lookup.find(vs);
      if (it == lookup.end() || hit[it->second]) return false;
      hit[it->second] = 1;
      cmap[k].push_back(it->second);
      std::vector<std::uint32_t> fa, fb;
      for (auto f : a.facets_of(k, id)) fa.push_back(cmap[k - 1][f]);
      for (auto f : b.facets_of(k, it->second)) fb.push_back(f);
      std::sort(fa.begin(), fa.end());
      std::sort(fb.begin(), fb.end());
      if (fa != fb) return false;
    }
  }
  return true;
}

// ---- tokens on a graph ----

Lattice complete_graph(int n) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) edges.emplace_back(i, j);
  return Lattice::graph(n, std::move(edges));
}

Lattice disjoint_paths(const std::vector<int>& lengths) {
  std::vector<std::pair<int, int>> edges;
  int base = 0;
  for (int len : lengths) {
    for (int i = 0; i + 1 < len; ++i) edges.emplace_back(base + i, base + i + 1);
    base += len;
  }
  return Lattice::graph(base, std::move(edges));
}

std::shared_ptr<const System> graph_agv_system(const Lattice& graph, int tokens) {
  if (graph.kind() != LatticeKind::finiteGraph) throw Error("InvalidArgument", "AGV systems need a finite graph");
  if (tokens < 0 || tokens > graph.vertex_count())
    throw Error("InvalidArgument", "token count out of range");
  Generator g;
  g.id = "move";
  push(g, {0, 0, 0}, 1, 1, 0);
  push(g, {1, 0, 0}, 1, 0, 1);
  std::vector<Cell> cells;
  for (int v = 0; v < tokens; ++v) cells.push_back({v, 0, 0});
  Workspace ws = Workspace::box(graph, {});
  return std::make_shared<const System>(std::move(ws), std::vector<Generator>{g}, std::nullopt,
                                        std::vector<State>{State(std::move(cells))});
}

std::shared_ptr<const System> agv_grid_system(int length) {
  if (length < 1) throw Error("InvalidArgument", "path length must be positive");
  Lattice g = disjoint_paths({length, length});
  Generator move;
  move.id = "move";
  push(move, {0, 0, 0}, 1, 1, 0);
  push(move, {1, 0, 0}, 1, 0, 1);
  Workspace ws = Workspace::box(g, {});
  return std::make_shared<const System>(std::move(ws), std::vector<Generator>{move}, std::nullopt,
                                        std::vector<State>{State({{0, 0, 0}, {length, 0, 0}})});
}

// ---- named instances ----

std::vector<std::string> builtin_names() { return {"agv-k5", "agv-grid", "arm", "hex", "hex-curved", "sliding"}; }

std::shared_ptr<const System> builtin_system(const std::string& name, const BuiltinParams& params) {
  auto pick = [](int v, int dflt) { return v > 0 ? v : dflt; };
  if (name == "agv-k5") return graph_agv_system(complete_graph(5), params.n > 0 ? params.n : 2);
  if (name == "agv-grid") return agv_grid_system(pick(params.m, pick(params.n, 6)));
  if (name == "arm") return arm_system(pick(params.n, 3));
  if (name == "sliding") return sliding_obstacle_system(params.p, params.q);
  if (name == "hex-curved") return curvature_system(params.constraint != "none");
  if (name == "hex") {
    const int n = pick(params.n, 3);
    const int radius = pick(params.radius, n + 1);
    if (radius < n - 1) throw Error("InvalidArgument", "radius too small for the seed line");
    std::optional<GlobalConstraint> constraint;
    if (!params.constraint.empty() && params.constraint != "none") {
      constraint = constraint_by_name(params.constraint, Lattice::hex());
      if (!constraint) throw Error("InvalidArgument", "unknown constraint '" + params.constraint + "'");
    }
    return hex_pivot_system(hex_variant_from_string(params.variant),
                            Workspace::finite(Lattice::hex(), hex_region(radius)), std::move(constraint),
                            {hex_line(n)});
  }
  throw Error("UnknownBuiltin", "unknown builtin '" + name + "'");
}

}  // namespace cubeplan
