#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "cubeplan/cube_complex.hpp"
#include "cubeplan/system.hpp"

namespace cubeplan {

// A representative of a cube: a vertex state plus commuting actions that are
// admissible there (directions as seen from `base`).
struct Cube {
  State base;
  std::vector<Action> actions;

  std::size_t dim() const { return actions.size(); }
};

struct CellRef {
  std::size_t dim = 0;
  std::uint32_t id = 0;
  auto operator<=>(const CellRef&) const = default;
};

struct BuildOptions {
  std::size_t max_vertices = 1'000'000;
  int threads = 1;
};

struct CubeKey {
  std::uint32_t base = 0;
  std::vector<Placement> placements;
  bool operator==(const CubeKey&) const = default;
};

struct CubeKeyHash {
  std::size_t operator()(const CubeKey& k) const noexcept {
    std::size_t h = k.base * 0x9E3779B97F4A7C15ull;
    PlacementHash ph;
    for (const auto& p : k.placements) h = (h ^ ph(p)) * 0x100000001B3ull;
    return h;
  }
};

// The state complex of a system (or its translation quotient, the shape
// complex). Every stored k-cube is keyed by the vertex at which all of its
// actions run forward plus its sorted placements; that vertex is its base.
class StateComplex {
 public:
  const System& system() const { return *system_; }
  const std::shared_ptr<const System>& system_ptr() const { return system_; }
  bool truncated() const { return truncated_; }
  std::size_t cap() const { return cap_; }
  bool is_quotient() const { return quotient_; }

  std::size_t dimension() const { return cells_.dimension(); }
  std::size_t count(std::size_t dim) const { return cells_.count(dim); }
  std::size_t vertex_count() const { return vertices_.size(); }
  const CubeComplex& cells() const { return cells_; }

  const State& vertex(std::uint32_t id) const { return vertices_.at(id); }
  // Looks a state up, canonicalizing it first in a quotient complex.
  std::optional<std::uint32_t> find_vertex(const State& s) const;

  std::uint32_t base(std::size_t dim, std::uint32_t id) const;
  std::span<const Placement> placements(std::size_t dim, std::uint32_t id) const;
  std::span<const std::uint32_t> facets(std::size_t dim, std::uint32_t id) const {
    return cells_.facets_of(dim, id);
  }
  std::span<const std::uint32_t> cofacets(std::size_t dim, std::uint32_t id) const;
  // Vertex ids of the 2^dim corners; bit i of the index means action i applied.
  std::span<const std::uint32_t> corners(std::size_t dim, std::uint32_t id) const;
  // Translation taking the state at a corner (in the base frame) to the
  // canonical vertex it was identified with. Zero outside quotients.
  Offset corner_offset(std::size_t dim, std::uint32_t id, std::uint32_t mask) const;

  Cube cube(std::size_t dim, std::uint32_t id) const;
  std::optional<CellRef> find_cube(const Cube& cube) const;
  std::optional<std::uint32_t> find_key(std::size_t dim, const CubeKey& key) const;

  // Cells having the given cell as a face, including itself, sorted.
  std::vector<CellRef> upward_closure(CellRef cell) const;

 private:
  friend class ComplexBuilder;

  std::shared_ptr<const System> system_;
  bool truncated_ = false;
  bool quotient_ = false;
  std::size_t cap_ = 0;

  std::vector<State> vertices_;
  std::unordered_map<State, std::uint32_t, StateHash> vertex_index_;
  CubeComplex cells_;
  std::vector<std::vector<std::uint32_t>> bases_;
  std::vector<std::vector<Placement>> placements_;
  std::vector<std::vector<std::uint32_t>> corners_;
  std::vector<std::vector<Offset>> corner_offsets_;
  std::vector<std::unordered_map<CubeKey, std::uint32_t, CubeKeyHash>> key_index_;
  std::vector<std::vector<std::uint32_t>> cofacet_start_;
  std::vector<std::vector<std::uint32_t>> cofacet_data_;
};

// Breadth-first closure of the seeds under admissible actions, then every
// cube of pairwise-commuting admissible actions. The per-vertex work runs on
// `options.threads` OpenMP threads; the result does not depend on it.
StateComplex build_complex(std::shared_ptr<const System> system, std::vector<State> seeds,
                           BuildOptions options = {});
// Single-threaded reference build with a plain FIFO queue.
StateComplex build_complex_serial(std::shared_ptr<const System> system, std::vector<State> seeds,
                                  BuildOptions options = {});

// Translation quotient builds; used by the shape-complex module.
StateComplex build_quotient_complex(std::shared_ptr<const System> system, std::vector<State> seeds,
                                    BuildOptions options = {});

// True iff two complexes agree cell for cell (same ids, keys and facets).
bool identical(const StateComplex& a, const StateComplex& b);

// 2k facets of a cube computed from the boundary formula directly:
// for each i, [U; A - a_i] and [a_i U; A - a_i].
std::vector<Cube> boundary(const Cube& cube, const System& system);

struct LinkComplex {
  std::uint32_t vertex = 0;
  std::vector<Action> vertices;                       // actions at the vertex, sorted
  std::vector<std::vector<std::uint32_t>> simplices;  // sorted index sets, one per incident cube corner
};

LinkComplex link(const StateComplex& complex, const State& state);
LinkComplex link(const StateComplex& complex, std::uint32_t vertex);

struct LinkViolation {
  enum class Kind { missing, duplicated };
  std::uint32_t vertex = 0;
  std::vector<Action> actions;
  Kind kind = Kind::missing;
};

struct LinkReport {
  bool ok = true;
  std::vector<LinkViolation> violations;
};

// Every clique of every vertex link must span exactly one simplex. Refuses
// truncated complexes.
LinkReport check_link_condition(const StateComplex& complex, int threads = 1);
LinkReport check_link_condition_serial(const StateComplex& complex);

std::vector<Cube> star(const StateComplex& complex, const Cube& cube);

// Line-oriented export: `fvec:` header then one line per cell.
std::string export_complex(const StateComplex& complex);

}  // namespace cubeplan
