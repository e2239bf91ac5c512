#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cubeplan/complex.hpp"
#include "cubeplan/path.hpp"

namespace cubeplan {

// Translates a state so its lexicographically least cell sits at the origin;
// returns the translated state and the translation used. Identity on finite
// graphs. Throws Error("EmptyState") for an empty state.
std::pair<State, Offset> canonicalize(const State& state, const Lattice& lattice);

// The same catalogue over the whole, obstacle-free lattice. Throws
// Error("ShapeRequiresHomogeneousWorkspace") if the system has obstacles.
std::shared_ptr<const System> homogeneous_system(const System& system);

StateComplex build_shape_complex(const System& system, std::vector<State> seed_shapes,
                                 BuildOptions options = {});

// A path in the shape complex: each step is written in the canonical frame
// of the shape it leaves.
struct ShapePath {
  State start;  // canonical
  std::vector<Step> steps;
};

// Re-expresses a path over the homogeneous lattice in shape frames.
ShapePath to_shape_path(const System& homogeneous, const CubePath& path);
// Shapes visited by a shape path (canonical states).
std::vector<State> shape_vertices(const System& homogeneous, const ShapePath& path);

struct LiftFailure {
  enum class Reason { outOfWorkspace, obstacleTrace, notAdmissible };
  std::size_t step = 0;  // 1-based
  Reason reason = Reason::notAdmissible;
};

std::string to_string(LiftFailure::Reason reason);

struct LiftResult {
  std::optional<CubePath> path;
  std::optional<LiftFailure> failure;
  bool ok() const { return path.has_value(); }
};

// Places a shape path at `base` inside the system's real workspace,
// checking containment, obstacles and admissibility step by step.
LiftResult lift_path(const ShapePath& shape_path, Offset base, const System& system);

}  // namespace cubeplan
