#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cubeplan/cube_complex.hpp"

namespace cubeplan {

class StateComplex;

// Dense matrix over the two-element field, one bit row per cell.
class BitMatrix {
 public:
  BitMatrix(std::size_t rows, std::size_t cols);
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool get(std::size_t r, std::size_t c) const { return (row(r)[c / 64] >> (c % 64)) & 1; }
  void flip(std::size_t r, std::size_t c) { row(r)[c / 64] ^= std::uint64_t{1} << (c % 64); }
  std::uint64_t* row(std::size_t r) { return bits_.data() + r * words_; }
  const std::uint64_t* row(std::size_t r) const { return bits_.data() + r * words_; }
  std::size_t words() const { return words_; }

 private:
  std::size_t rows_, cols_, words_;
  std::vector<std::uint64_t> bits_;
};

// Cells above this many matrix bits are refused with Error("HomologyTooLarge").
inline constexpr std::size_t kMaxBoundaryBits = 400'000'000;

// Row k-cells, column (k-1)-cells; entries are facet multiplicities mod 2.
BitMatrix boundary_matrix(const CubeComplex& complex, std::size_t k);

// Row-echelon elimination; the row loop of each pivot runs on `threads`.
std::size_t rank_mod2(BitMatrix m, int threads = 1);
// Reference: incremental reduction of each row against stored pivots.
std::size_t rank_mod2_serial(BitMatrix m);

std::vector<std::size_t> f_vector(const CubeComplex& complex);
std::int64_t euler_characteristic(const CubeComplex& complex);
std::vector<std::size_t> betti_mod2(const CubeComplex& complex, int threads = 1);
std::vector<std::size_t> betti_mod2_serial(const CubeComplex& complex);

// The boundary of every boundary vanishes mod 2.
bool boundary_squared_zero(const CubeComplex& complex);

struct SurfaceReport {
  bool ok = false;
  std::string reason;
};

SurfaceReport closed_surface(const CubeComplex& complex);
bool is_closed_surface(const CubeComplex& complex);
// Throws Error("NotClosedSurface") unless is_closed_surface holds.
bool is_orientable_surface(const CubeComplex& complex);

struct CollapseResult {
  CubeComplex remaining;
  std::size_t steps = 0;
};

// Removes free faces with their unique cofaces until none remain. Free
// faces are processed top dimension first, then by id, in FIFO order.
CollapseResult collapse(const CubeComplex& complex);
std::vector<std::size_t> greedy_collapse(const CubeComplex& complex);
// True iff the remaining complex is a single vertex.
bool collapses_to_point(const CubeComplex& complex);

// The same invariants on a state complex; all refuse truncated complexes
// with Error("TruncatedComplex").
std::vector<std::size_t> f_vector(const StateComplex& complex);
std::int64_t euler_characteristic(const StateComplex& complex);
std::vector<std::size_t> betti_mod2(const StateComplex& complex, int threads = 1);
bool is_closed_surface(const StateComplex& complex);
bool is_orientable_surface(const StateComplex& complex);
std::vector<std::size_t> greedy_collapse(const StateComplex& complex);

}  // namespace cubeplan
