#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cubeplan/system.hpp"

namespace cubeplan {

class StateComplex;

// A set of pairwise-commuting actions executed simultaneously, kept sorted.
using Step = std::vector<Action>;

// A cube path: a start state and the action set of each cube in order.
// Its length (number of cubes) is the elapsed time.
struct CubePath {
  State start;
  std::vector<Step> steps;

  std::size_t length() const { return steps.size(); }
  // Sum over i (1-based) of i * dim(C_i).
  std::int64_t potential() const;
  bool operator==(const CubePath&) const = default;
};

// Throws Error("NotAdmissible") naming the first bad move (1-based).
CubePath from_edge_path(const System& system, State start, std::span<const Action> moves);

// v_0 .. v_N. Assumes a structurally valid path.
std::vector<State> path_vertices(const System& system, const CubePath& path);
State path_end(const System& system, const CubePath& path);

// Actions of `next` whose trace misses every support of `cur` and whose
// support misses every trace of `cur`.
Step commute_sub(const System& system, const Step& cur, const Step& next);

// Drops every placement present in both steps.
std::pair<Step, Step> common_edge(const Step& prev, const Step& cur);

struct ShrinkStats {
  std::size_t iterations = 0;  // passes through the loop body
};

// One curve-shortening sweep. Throws Error("InvalidPath") on an invalid path.
CubePath shrink_cube_path(const System& system, CubePath path, ShrinkStats* stats = nullptr);

enum class OptimizeMode { stopOnLength, normalize };

struct GeodesicStats {
  std::size_t shrink_calls = 0;
  std::size_t iterations = 0;
};

CubePath time_geodesic(const System& system, CubePath path, OptimizeMode mode,
                       GeodesicStats* stats = nullptr);

bool is_normal(const System& system, const CubePath& path);

struct PathReport {
  bool ok = true;                     // structural invariants hold
  std::optional<std::size_t> index;   // first bad step (1-based)
  std::string reason;
  bool reduced = true;                // no placement shared by consecutive steps
  std::optional<std::size_t> shared_index;  // first step sharing a placement with its successor
};

PathReport validate(const System& system, const CubePath& path);

// Fewest cubes from u to v, by breadth-first search over "jump to the
// opposite corner of an incident cube". Throws Error("Disconnected").
std::size_t oracle_shortest(const StateComplex& complex, const State& u, const State& v);

// Seeded random walk of up to `length` admissible moves.
std::vector<Action> random_edge_path(const System& system, const State& start, std::size_t length,
                                     std::uint64_t seed);

}  // namespace cubeplan
