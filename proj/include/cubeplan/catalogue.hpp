#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cubeplan/complex.hpp"
#include "cubeplan/system.hpp"

namespace cubeplan {

// ---- hexagonal pivots ----

enum class HexVariant { topologyPreserving, topologyChanging };

HexVariant hex_variant_from_string(const std::string& name);  // "preserving" | "changing"
std::string to_string(HexVariant v);

// Six rotations of the pivot generator: a cell at the origin rolls around
// the occupied pivot D[i] into the empty cell D[i+1].
std::vector<Generator> hex_pivot_generators(HexVariant variant);
std::shared_ptr<const System> hex_pivot_system(HexVariant variant, Workspace workspace,
                                               std::optional<GlobalConstraint> constraint = std::nullopt,
                                               std::vector<State> seeds = {});
// Axial cells within hex distance `radius` of the origin.
std::vector<Cell> hex_region(int radius);
// N cells in a row along the first axis, starting at the origin.
State hex_line(int n);

// Three pairwise commuting pivots whose single and double applications keep
// the aggregate connected while the triple does not.
struct CurvatureFixture {
  State state;
  std::vector<Action> actions;
};
CurvatureFixture curvature_fixture();
std::shared_ptr<const System> curvature_system(bool with_constraint = true);

// ---- sliding squares ----

// Row slides of a maximal block of 1..kmax+1 squares along both axes, one
// generator per admissible flank pattern.
std::vector<Generator> sliding_square_generators(int kmax);
std::shared_ptr<const System> sliding_squares_system(int kmax, Workspace workspace, std::vector<State> seeds = {});
// Two free squares next to a p x q block of occupied obstacles.
std::shared_ptr<const System> sliding_obstacle_system(int p, int q);

// ---- planar arm ----

// Arm of N unit edges from the origin moving on the square-edge lattice.
std::shared_ptr<const System> arm_system(int n);
State arm_state(const std::string& word);
// Reads the word of x/y steps by walking from the origin.
std::string arm_word(const State& state);

struct WordComplex {
  CubeComplex cells;
  std::vector<std::string> words;  // vertex labels
};
// Direct construction from words: transpositions xy <-> yx at i and the
// last-letter flip, cubes = moves with disjoint index sets.
WordComplex arm_word_complex(int n);

// Vertex set of every cell, per dimension, in cell-id order.
std::vector<std::vector<std::vector<std::uint32_t>>> cell_vertex_sets(const CubeComplex& complex);
// True iff mapping each state to its word gives a dimension-preserving,
// boundary-respecting bijection between the two complexes.
bool arm_isomorphic(const StateComplex& arm, const WordComplex& words);

// ---- tokens on a graph ----

Lattice complete_graph(int n);
// Disjoint union of paths with the given vertex counts.
Lattice disjoint_paths(const std::vector<int>& lengths);
std::shared_ptr<const System> graph_agv_system(const Lattice& graph, int tokens);
// Two tokens, one on each of two disjoint paths of `length` vertices; the
// complex is a length x length grid of squares.
std::shared_ptr<const System> agv_grid_system(int length);

// ---- named instances ----

struct BuiltinParams {
  int n = 0;  // 0: per-builtin default
  std::string variant = "preserving";
  std::string constraint;
  int p = 1, q = 1;
  int m = 0;
  int radius = 0;
};

std::vector<std::string> builtin_names();
// Throws Error("UnknownBuiltin") or Error("InvalidArgument").
std::shared_ptr<const System> builtin_system(const std::string& name, const BuiltinParams& params);

}  // namespace cubeplan
