#include "cubeplan/system.hpp"

#include <algorithm>
#include <deque>
#include <sstream>
#include <unordered_set>

#include "cubeplan/error.hpp"

namespace cubeplan {

std::vector<Cell> Generator::trace_cells() const {
  std::vector<Cell> out;
  for (std::size_t i = 0; i < support.size(); ++i)
    if (trace[i]) out.push_back(support[i]);
  return out;
}

void validate_generator(const Generator& g, const Lattice& lattice) {
  auto fail = [&](const std::string& why) {
    throw Error("InvalidGenerator", "generator '" + g.id + "': " + why);
  };
  if (g.id.empty()) throw Error("InvalidGenerator", "generator without id");
  if (g.support.empty()) fail("empty support");
  if (g.trace.size() != g.support.size() || g.u0.size() != g.support.size() ||
      g.u1.size() != g.support.size())
    fail("trace/u0/u1 must align with the support");
  std::vector<Cell> sorted = g.support;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) fail("repeated support cell");
  for (Cell c : g.support)
    if (c.z < 0 || (lattice.kind() != LatticeKind::squareEdge2d && c.z != 0) || c.z > 1)
      fail("support cell " + format_cell(c, lattice) + " outside lattice coordinates");
  if (lattice.kind() == LatticeKind::finiteGraph) {
    if (sorted != std::vector<Cell>{{0, 0, 0}, {1, 0, 0}})
      fail("graph generators must be supported on the abstract edge {(0),(1)}");
  }
  bool differs = false;
  for (std::size_t i = 0; i < g.support.size(); ++i) {
    if (g.trace[i] > 1 || g.u0[i] > 1 || g.u1[i] > 1) fail("masks must be 0/1");
    if (g.u0[i] != g.u1[i]) {
      differs = true;
      if (!g.trace[i])
        fail("local states must agree off trace (cell " + format_cell(g.support[i], lattice) + ")");
    }
  }
  if (!differs) fail("u0 = u1 (generators must be nondegenerate)");
}

bool is_connected(const State& state, const Lattice& lattice) {
  if (state.size() <= 1) return true;
  std::vector<Cell> stack{state.cells().front()};
  std::unordered_set<Cell, CellHash> seen{state.cells().front()};
  while (!stack.empty()) {
    Cell c = stack.back();
    stack.pop_back();
    for (Cell n : lattice.neighbors(c))
      if (state.contains(n) && seen.insert(n).second) stack.push_back(n);
  }
  return seen.size() == state.size();
}

std::optional<GlobalConstraint> constraint_by_name(const std::string& name, const Lattice& lattice) {
  if (name == "connected")
    return GlobalConstraint{name, [lattice](const State& s) { return is_connected(s, lattice); }};
  return std::nullopt;
}

System::System(Workspace workspace, std::vector<Generator> catalogue,
               std::optional<GlobalConstraint> constraint, std::vector<State> seeds)
    : workspace_(std::move(workspace)),
      catalogue_(std::move(catalogue)),
      constraint_(std::move(constraint)),
      seeds_(std::move(seeds)) {
  std::unordered_set<std::string> ids;
  for (const auto& g : catalogue_) {
    validate_generator(g, lattice());
    if (!ids.insert(g.id).second)
      throw Error("InvalidGenerator", "duplicate generator id '" + g.id + "'");
    auto first_on = [](const std::vector<std::uint8_t>& u) {
      auto it = std::find(u.begin(), u.end(), 1);
      return it == u.end() ? -1 : static_cast<int>(it - u.begin());
    };
    anchor0_.push_back(first_on(g.u0));
    anchor1_.push_back(first_on(g.u1));
  }
  for (const auto& s : seeds_)
    if (!workspace_.admits(s)) throw Error("InvalidState", "seed state not admitted by the workspace");
}

std::optional<std::uint32_t> System::generator_index(const std::string& id) const {
  for (std::uint32_t i = 0; i < catalogue_.size(); ++i)
    if (catalogue_[i].id == id) return i;
  return std::nullopt;
}

Cell System::map_cell(const Generator& g, std::size_t i, const Placement& p) const {
  if (lattice().kind() == LatticeKind::finiteGraph) {
    const auto& [lo, hi] = lattice().edges().at(static_cast<std::size_t>(p.tx));
    bool low = (g.support[i].x ^ p.ty) == 0;
    return {low ? lo : hi, 0, 0};
  }
  return translate(g.support[i], p.offset());
}

std::vector<Cell> System::placed_support(const Placement& p) const {
  const auto& g = catalogue_.at(p.gen);
  std::vector<Cell> out(g.support.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = map_cell(g, i, p);
  return out;
}

std::vector<Cell> System::placed_trace(const Placement& p) const {
  const auto& g = catalogue_.at(p.gen);
  std::vector<Cell> out;
  for (std::size_t i = 0; i < g.support.size(); ++i)
    if (g.trace[i]) out.push_back(map_cell(g, i, p));
  return out;
}

PlacementFailure System::check_placement(const Placement& p) const {
  if (p.gen >= catalogue_.size()) return PlacementFailure::outOfWorkspace;
  if (lattice().kind() == LatticeKind::finiteGraph &&
      (p.tx < 0 || static_cast<std::size_t>(p.tx) >= lattice().edges().size() || p.ty < 0 || p.ty > 1))
    return PlacementFailure::outOfWorkspace;
  const auto& g = catalogue_[p.gen];
  for (std::size_t i = 0; i < g.support.size(); ++i)
    if (!workspace_.contains(map_cell(g, i, p))) return PlacementFailure::outOfWorkspace;
  for (std::size_t i = 0; i < g.support.size(); ++i)
    if (g.trace[i] && workspace_.is_obstacle(map_cell(g, i, p))) return PlacementFailure::obstacleTrace;
  return PlacementFailure::none;
}

namespace {

using PlacedLocal = std::vector<std::pair<Cell, std::uint8_t>>;

PlacedLocal placed_local(const std::vector<Cell>& cells, const std::vector<std::uint8_t>& u) {
  PlacedLocal out;
  for (std::size_t i = 0; i < cells.size(); ++i) out.emplace_back(cells[i], u[i]);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::vector<Placement> System::placements_of(std::uint32_t gen) const {
  if (!workspace_.is_finite())
    throw Error("WorkspaceNotFinite", "cannot enumerate placements in an unbounded workspace");
  const auto& g = catalogue_.at(gen);
  std::vector<Placement> out;
  if (lattice().kind() == LatticeKind::finiteGraph) {
    for (std::int32_t e = 0; e < static_cast<std::int32_t>(lattice().edges().size()); ++e) {
      Placement p0{gen, e, 0}, p1{gen, e, 1};
      if (check_placement(p0) == PlacementFailure::none) out.push_back(p0);
      if (check_placement(p1) != PlacementFailure::none) continue;
      // Orientation 1 is the same action when the generator is symmetric
      // under swapping the edge endpoints.
      auto s0 = placed_support(p0), s1 = placed_support(p1);
      auto a0 = placed_local(s0, g.u0), b0 = placed_local(s0, g.u1);
      auto a1 = placed_local(s1, g.u0), b1 = placed_local(s1, g.u1);
      bool same = (a0 == a1 && b0 == b1) || (a0 == b1 && b0 == a1);
      if (!same) out.push_back(p1);
    }
    return out;
  }
  for (Cell w : workspace_.cells()) {
    if (w.z != g.support[0].z) continue;
    Placement p{gen, w.x - g.support[0].x, w.y - g.support[0].y};
    if (check_placement(p) == PlacementFailure::none) out.push_back(p);
  }
  std::sort(out.begin(), out.end());
  return out;
}

const std::vector<std::uint8_t>& System::source(const Action& a) const {
  const auto& g = catalogue_.at(a.at.gen);
  return a.dir == Direction::forward ? g.u0 : g.u1;
}

const std::vector<std::uint8_t>& System::target(const Action& a) const {
  const auto& g = catalogue_.at(a.at.gen);
  return a.dir == Direction::forward ? g.u1 : g.u0;
}

bool System::operator==(const System& o) const {
  auto cname = [](const std::optional<GlobalConstraint>& c) { return c ? c->name : std::string(); };
  return workspace_ == o.workspace_ && catalogue_ == o.catalogue_ && seeds_ == o.seeds_ &&
         cname(constraint_) == cname(o.constraint_);
}

std::vector<Action> placements(const System& system, std::uint32_t gen) {
  std::vector<Action> out;
  for (const auto& p : system.placements_of(gen)) {
    out.push_back({p, Direction::forward});
    out.push_back({p, Direction::backward});
  }
  return out;
}

namespace {

bool matches_source(const State& state, const Action& a, const System& system) {
  const auto& src = system.source(a);
  auto cells = system.placed_support(a.at);
  for (std::size_t i = 0; i < cells.size(); ++i)
    if (state.contains(cells[i]) != static_cast<bool>(src[i])) return false;
  return true;
}

}  // namespace

State apply_unchecked(const State& state, const Action& a, const System& system) {
  auto cells = system.placed_support(a.at);
  const auto& tgt = system.target(a);
  std::vector<Cell> out;
  out.reserve(state.size() + cells.size());
  for (Cell c : state.cells())
    if (std::find(cells.begin(), cells.end(), c) == cells.end()) out.push_back(c);
  for (std::size_t i = 0; i < cells.size(); ++i)
    if (tgt[i]) out.push_back(cells[i]);
  return State(std::move(out));
}

bool is_admissible(const State& state, const Action& a, const System& system) {
  if (system.check_placement(a.at) != PlacementFailure::none) return false;
  if (!matches_source(state, a, system)) return false;
  if (system.constraint() && !system.constraint()->test(apply_unchecked(state, a, system))) return false;
  return true;
}

State apply(const State& state, const Action& a, const System& system) {
  if (!is_admissible(state, a, system))
    throw Error("NotAdmissible", "action " + format_action(a, system) + " is not admissible");
  return apply_unchecked(state, a, system);
}

State apply_all(const State& state, std::span<const Action> actions, const System& system) {
  State s = state;
  for (const auto& a : actions) s = apply_unchecked(s, a, system);
  return s;
}

bool commute(const Action& a, const Action& b, const System& system) {
  const auto& ga = system.generator(a.at.gen);
  const auto& gb = system.generator(b.at.gen);
  auto sa = system.placed_support(a.at);
  auto sb = system.placed_support(b.at);
  for (std::size_t i = 0; i < sa.size(); ++i)
    for (std::size_t j = 0; j < sb.size(); ++j)
      if (sa[i] == sb[j] && (ga.trace[i] || gb.trace[j])) return false;
  return true;
}

bool commute(std::span<const Action> actions, const System& system) {
  for (std::size_t i = 0; i < actions.size(); ++i)
    for (std::size_t j = i + 1; j < actions.size(); ++j)
      if (!commute(actions[i], actions[j], system)) return false;
  return true;
}

std::vector<Action> admissible_actions(const State& state, const System& system) {
  std::vector<Action> out;
  const bool graph = system.lattice().kind() == LatticeKind::finiteGraph;
  for (std::uint32_t g = 0; g < system.catalogue_.size(); ++g) {
    const auto& gen = system.catalogue_[g];
    for (Direction dir : {Direction::forward, Direction::backward}) {
      int anchor = dir == Direction::forward ? system.anchor0_[g] : system.anchor1_[g];
      auto consider = [&](Placement p) {
        Action a{p, dir};
        if (is_admissible(state, a, system)) out.push_back(a);
      };
      if (graph || anchor < 0) {
        if (!graph && !system.workspace().is_finite())
          throw Error("WorkspaceNotFinite",
                      "generator '" + gen.id + "' has an empty local state; its placements are unbounded");
        for (const auto& p : system.placements_of(g)) consider(p);
        continue;
      }
      Cell s = gen.support[static_cast<std::size_t>(anchor)];
      for (Cell c : state.cells()) {
        if (c.z != s.z) continue;
        consider({g, c.x - s.x, c.y - s.y});
      }
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::string format_action(const Action& a, const System& system) {
  std::ostringstream os;
  os << '(' << system.generator(a.at.gen).id << ", " << a.at.tx << ", " << a.at.ty << ", "
     << (a.dir == Direction::forward ? "fwd" : "bwd") << ')';
  return os.str();
}

}  // namespace cubeplan
