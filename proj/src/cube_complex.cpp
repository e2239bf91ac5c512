#include "cubeplan/cube_complex.hpp"

namespace cubeplan {

std::uint32_t CubeComplex::add_cell(std::size_t dim, std::span<const std::uint32_t> cell_facets) {
  if (counts.size() <= dim) {
    counts.resize(dim + 1, 0);
    facets.resize(dim + 1);
  }
  facets[dim].insert(facets[dim].end(), cell_facets.begin(), cell_facets.end());
  return static_cast<std::uint32_t>(counts[dim]++);
}

}  // namespace cubeplan
