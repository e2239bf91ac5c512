#include "cubeplan/shape.hpp"

#include <algorithm>

#include "cubeplan/error.hpp"

namespace cubeplan {

std::pair<State, Offset> canonicalize(const State& state, const Lattice& lattice) {
  if (state.empty()) throw Error("EmptyState", "cannot canonicalize an empty state");
  if (lattice.translation_rank() == 0) return {state, {}};
  const Cell least = state.cells().front();
  Offset t{-least.x, -least.y};
  return {state.translated(t), t};
}

std::shared_ptr<const System> homogeneous_system(const System& system) {
  if (system.workspace().has_obstacles())
    throw Error("ShapeRequiresHomogeneousWorkspace", "shape complexes need an obstacle-free lattice");
  const Lattice& lat = system.lattice();
  Workspace ws = lat.translation_rank() == 0 ? system.workspace() : Workspace::unbounded(lat);
  std::vector<State> seeds;
  for (const auto& s : system.seeds()) seeds.push_back(canonicalize(s, lat).first);
  return std::make_shared<const System>(std::move(ws), system.catalogue(), system.constraint(),
                                        std::move(seeds));
}

StateComplex build_shape_complex(const System& system, std::vector<State> seed_shapes, BuildOptions options) {
  auto h = homogeneous_system(system);
  if (seed_shapes.empty()) seed_shapes = h->seeds();
  if (seed_shapes.empty()) throw Error("InvalidState", "no seed shape given");
  return build_quotient_complex(h, std::move(seed_shapes), options);
}

namespace {

Step shift_step(const Step& step, Offset t) {
  Step out;
  for (const auto& a : step) out.push_back({{a.at.gen, a.at.tx + t.dx, a.at.ty + t.dy}, a.dir});
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

ShapePath to_shape_path(const System& homogeneous, const CubePath& path) {
  const Lattice& lat = homogeneous.lattice();
  ShapePath out;
  State s = path.start;
  auto [c, off] = canonicalize(s, lat);
  out.start = c;
  for (const auto& step : path.steps) {
    out.steps.push_back(shift_step(step, off));
    s = apply_all(s, step, homogeneous);
    off = canonicalize(s, lat).second;
  }
  return out;
}

std::vector<State> shape_vertices(const System& homogeneous, const ShapePath& path) {
  std::vector<State> out{path.start};
  for (const auto& step : path.steps)
    out.push_back(canonicalize(apply_all(out.back(), step, homogeneous), homogeneous.lattice()).first);
  return out;
}

std::string to_string(LiftFailure::Reason reason) {
  switch (reason) {
    case LiftFailure::Reason::outOfWorkspace: return "outOfWorkspace";
    case LiftFailure::Reason::obstacleTrace: return "obstacleTrace";
    case LiftFailure::Reason::notAdmissible: return "notAdmissible";
  }
  return "unknown";
}

LiftResult lift_path(const ShapePath& shape_path, Offset base, const System& system) {
  const Lattice& lat = system.lattice();
  const Workspace& ws = system.workspace();
  auto fail = [](std::size_t step, LiftFailure::Reason r) {
    LiftResult res;
    res.failure = LiftFailure{step, r};
    return res;
  };

  // Occupied obstacles are part of every real state.
  std::vector<Cell> cells;
  for (Cell c : shape_path.start.cells()) {
    Cell r = translate(c, base);
    if (!ws.contains(r)) return fail(0, LiftFailure::Reason::outOfWorkspace);
    if (ws.is_obstacle(r)) return fail(0, LiftFailure::Reason::obstacleTrace);
    cells.push_back(r);
  }
  for (const auto& [c, occ] : ws.obstacles())
    if (occ) cells.push_back(c);
  CubePath out{State(std::move(cells)), {}};
  if (system.constraint() && !system.constraint()->test(out.start))
    return fail(0, LiftFailure::Reason::notAdmissible);

  State shape = shape_path.start;
  State real = out.start;
  Offset off = base;
  for (std::size_t i = 0; i < shape_path.steps.size(); ++i) {
    Step step = shift_step(shape_path.steps[i], off);
    for (const auto& a : step) {
      switch (system.check_placement(a.at)) {
        case PlacementFailure::outOfWorkspace: return fail(i + 1, LiftFailure::Reason::outOfWorkspace);
        case PlacementFailure::obstacleTrace: return fail(i + 1, LiftFailure::Reason::obstacleTrace);
        case PlacementFailure::none: break;
      }
    }
    bool ok = commute(step, system);
    for (std::size_t j = 0; ok && j < step.size(); ++j) ok = is_admissible(real, step[j], system);
    if (ok && system.constraint()) {
      for (std::uint32_t m = 1; ok && m < (1u << step.size()); ++m) {
        State corner = real;
        for (std::size_t j = 0; j < step.size(); ++j)
          if ((m >> j) & 1) corner = apply_unchecked(corner, step[j], system);
        ok = system.constraint()->test(corner);
      }
    }
    if (!ok) return fail(i + 1, LiftFailure::Reason::notAdmissible);
    real = apply_all(real, step, system);
    out.steps.push_back(std::move(step));
    auto [next, t] = canonicalize(apply_all(shape, shape_path.steps[i], system), lat);
    shape = std::move(next);
    off = off - t;
  }
  LiftResult res;
  res.path = std::move(out);
  return res;
}

}  // namespace cubeplan
