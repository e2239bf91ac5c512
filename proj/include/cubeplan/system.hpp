#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cubeplan/lattice.hpp"
#include "cubeplan/state.hpp"
#include "cubeplan/workspace.hpp"

namespace cubeplan {

// A local rewrite rule. `support` is listed in generator-local coordinates;
// `trace`, `u0` and `u1` are masks aligned with it. The pair (u0, u1) is
// unordered: a placement may run in either direction.
struct Generator {
  std::string id;
  std::vector<Cell> support;
  std::vector<std::uint8_t> trace;
  std::vector<std::uint8_t> u0;
  std::vector<std::uint8_t> u1;

  std::vector<Cell> trace_cells() const;
  bool operator==(const Generator&) const = default;
};

// Throws Error("InvalidGenerator") naming the generator and the broken rule.
void validate_generator(const Generator& g, const Lattice& lattice);

// Where a generator sits in the workspace. For periodic lattices (tx, ty) is
// the translation; on a finite graph tx is the edge index and ty the endpoint
// assignment (0: support cell 0 -> lower endpoint).
struct Placement {
  std::uint32_t gen = 0;
  std::int32_t tx = 0;
  std::int32_t ty = 0;

  auto operator<=>(const Placement&) const = default;
  Offset offset() const { return {tx, ty}; }
};

struct PlacementHash {
  std::size_t operator()(const Placement& p) const noexcept {
    std::uint64_t h = p.gen;
    h = h * 0x9E3779B97F4A7C15ull ^ static_cast<std::uint32_t>(p.tx);
    h = h * 0x9E3779B97F4A7C15ull ^ static_cast<std::uint32_t>(p.ty);
    return static_cast<std::size_t>(h ^ (h >> 31));
  }
};

// forward runs u0 -> u1, backward runs u1 -> u0.
enum class Direction : std::uint8_t { forward = 0, backward = 1 };

struct Action {
  Placement at;
  Direction dir = Direction::forward;

  auto operator<=>(const Action&) const = default;
  Action reversed() const {
    return {at, dir == Direction::forward ? Direction::backward : Direction::forward};
  }
};

struct GlobalConstraint {
  std::string name;
  std::function<bool(const State&)> test;
};

// Registry of named constraints usable from system files.
std::optional<GlobalConstraint> constraint_by_name(const std::string& name, const Lattice& lattice);
bool is_connected(const State& state, const Lattice& lattice);

enum class PlacementFailure { none, outOfWorkspace, obstacleTrace };

class System {
 public:
  System(Workspace workspace, std::vector<Generator> catalogue,
         std::optional<GlobalConstraint> constraint = std::nullopt,
         std::vector<State> seeds = {});

  const Workspace& workspace() const { return workspace_; }
  const Lattice& lattice() const { return workspace_.lattice(); }
  const std::vector<Generator>& catalogue() const { return catalogue_; }
  const Generator& generator(std::uint32_t index) const { return catalogue_.at(index); }
  std::optional<std::uint32_t> generator_index(const std::string& id) const;
  const std::optional<GlobalConstraint>& constraint() const { return constraint_; }
  bool is_local() const { return !constraint_.has_value(); }
  const std::vector<State>& seeds() const { return seeds_; }

  // Placed cells, aligned with the generator's support order.
  std::vector<Cell> placed_support(const Placement& p) const;
  std::vector<Cell> placed_trace(const Placement& p) const;

  PlacementFailure check_placement(const Placement& p) const;

  // All valid placements of one generator (finite workspaces only), sorted.
  std::vector<Placement> placements_of(std::uint32_t gen) const;

  // Source / target local states of an action.
  const std::vector<std::uint8_t>& source(const Action& a) const;
  const std::vector<std::uint8_t>& target(const Action& a) const;

  // Same workspace/catalogue/seeds; constraints compare by name.
  bool operator==(const System& o) const;

 private:
  Cell map_cell(const Generator& g, std::size_t i, const Placement& p) const;

  Workspace workspace_;
  std::vector<Generator> catalogue_;
  std::optional<GlobalConstraint> constraint_;
  std::vector<State> seeds_;
  // First support index occupied in u0 / u1, or -1; used as anchors.
  std::vector<int> anchor0_, anchor1_;
  friend std::vector<Action> admissible_actions(const State&, const System&);
};

// Every valid placement of a generator, both directions, ordered by
// (translation, direction).
std::vector<Action> placements(const System& system, std::uint32_t gen);

bool is_admissible(const State& state, const Action& action, const System& system);

// Applies an admissible action; throws Error("NotAdmissible") otherwise.
State apply(const State& state, const Action& action, const System& system);
// Applies without checking admissibility or the global constraint.
State apply_unchecked(const State& state, const Action& action, const System& system);
State apply_all(const State& state, std::span<const Action> actions, const System& system);

bool commute(const Action& a, const Action& b, const System& system);
bool commute(std::span<const Action> actions, const System& system);

// Deterministic, duplicate-free list of admissible actions at `state`.
std::vector<Action> admissible_actions(const State& state, const System& system);

std::string format_action(const Action& a, const System& system);

}  // namespace cubeplan
