#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace cubeplan {

// Abstract cube complex: cell counts per dimension plus, for every k-cell
// (k >= 1), its 2k facets in the order
//   [lower_0, upper_0, lower_1, upper_1, ...]
// where lower_i drops coordinate i at the base corner and upper_i drops it at
// the opposite side. For edges the facets are [tail, head].
struct CubeComplex {
  std::vector<std::size_t> counts;
  std::vector<std::vector<std::uint32_t>> facets;  // facets[0] unused

  std::size_t dimension() const { return counts.empty() ? 0 : counts.size() - 1; }
  std::size_t count(std::size_t dim) const { return dim < counts.size() ? counts[dim] : 0; }
  std::span<const std::uint32_t> facets_of(std::size_t dim, std::uint32_t id) const {
    return {facets[dim].data() + static_cast<std::size_t>(id) * 2 * dim, 2 * dim};
  }
  // Appends a cell and returns its id.
  std::uint32_t add_cell(std::size_t dim, std::span<const std::uint32_t> cell_facets);
};

}  // namespace cubeplan
