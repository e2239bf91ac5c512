#include "cubeplan/topology.hpp"

#include <omp.h>

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>

#include "cubeplan/complex.hpp"
#include "cubeplan/error.hpp"

namespace cubeplan {

BitMatrix::BitMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), words_((cols + 63) / 64), bits_(rows * words_, 0) {}

BitMatrix boundary_matrix(const CubeComplex& complex, std::size_t k) {
  const std::size_t rows = complex.count(k), cols = k == 0 ? 0 : complex.count(k - 1);
  if (rows * cols > kMaxBoundaryBits)
    throw Error("HomologyTooLarge", "boundary matrix in dimension " + std::to_string(k) + " is " +
                                        std::to_string(rows) + " x " + std::to_string(cols));
  BitMatrix m(rows, cols);
  if (k == 0) return m;
  for (std::uint32_t id = 0; id < rows; ++id)
    for (auto f : complex.facets_of(k, id)) m.flip(id, f);
  return m;
}

std::size_t rank_mod2_serial(BitMatrix m) {
  const std::size_t w = m.words();
  std::vector<std::int64_t> pivot_row(m.cols(), -1);
  std::size_t rank = 0;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    std::uint64_t* row = m.row(r);
    for (;;) {
      std::int64_t lead = -1;
      for (std::size_t i = w; i-- > 0;)
        if (row[i]) {
          lead = static_cast<std::int64_t>(i * 64 + 63 - __builtin_clzll(row[i]));
          break;
        }
      if (lead < 0) break;
      if (pivot_row[lead] < 0) {
        pivot_row[lead] = static_cast<std::int64_t>(r);
        ++rank;
        break;
      }
      const std::uint64_t* p = m.row(static_cast<std::size_t>(pivot_row[lead]));
      for (std::size_t i = 0; i <= static_cast<std::size_t>(lead) / 64; ++i) row[i] ^= p[i];
    }
  }
  return rank;
}

std::size_t rank_mod2(BitMatrix m, int threads) {
  const std::size_t w = m.words();
  std::size_t rank = 0;
  for (std::size_t c = 0; c < m.cols() && rank < m.rows(); ++c) {
    const std::size_t word = c / 64;
    const std::uint64_t bit = std::uint64_t{1} << (c % 64);
    std::size_t p = rank;
    while (p < m.rows() && !(m.row(p)[word] & bit)) ++p;
    if (p == m.rows()) continue;
    if (p != rank) std::swap_ranges(m.row(p), m.row(p) + w, m.row(rank));
    const std::uint64_t* pivot = m.row(rank);
    const std::int64_t n = static_cast<std::int64_t>(m.rows());
#pragma omp parallel for schedule(static) num_threads(threads) if (n - static_cast<std::int64_t>(rank) > 256)
    for (std::int64_t r = static_cast<std::int64_t>(rank) + 1; r < n; ++r) {
      std::uint64_t* row = m.row(static_cast<std::size_t>(r));
      if (row[word] & bit)
        for (std::size_t i = word; i < w; ++i) row[i] ^= pivot[i];
    }
    ++rank;
  }
  return rank;
}

std::vector<std::size_t> f_vector(const CubeComplex& complex) { return complex.counts; }

std::int64_t euler_characteristic(const CubeComplex& complex) {
  std::int64_t chi = 0;
  for (std::size_t k = 0; k < complex.counts.size(); ++k)
    chi += (k % 2 ? -1 : 1) * static_cast<std::int64_t>(complex.counts[k]);
  return chi;
}

namespace {

template <class Rank>
std::vector<std::size_t> betti_with(const CubeComplex& complex, Rank rank) {
  const std::size_t top = complex.counts.size();
  std::vector<std::size_t> ranks(top + 1, 0);
  for (std::size_t k = 1; k < top; ++k) ranks[k] = rank(boundary_matrix(complex, k));
  std::vector<std::size_t> betti(top);
  for (std::size_t k = 0; k < top; ++k) betti[k] = complex.counts[k] - ranks[k] - ranks[k + 1];
  return betti;
}

}  // namespace

std::vector<std::size_t> betti_mod2(const CubeComplex& complex, int threads) {
  return betti_with(complex, [threads](BitMatrix m) { return rank_mod2(std::move(m), threads); });
}

std::vector<std::size_t> betti_mod2_serial(const CubeComplex& complex) {
  return betti_with(complex, [](BitMatrix m) { return rank_mod2_serial(std::move(m)); });
}

bool boundary_squared_zero(const CubeComplex& complex) {
  for (std::size_t k = 2; k < complex.counts.size(); ++k) {
    for (std::uint32_t id = 0; id < complex.counts[k]; ++id) {
      std::map<std::uint32_t, int> parity;
      for (auto f : complex.facets_of(k, id))
        for (auto g : complex.facets_of(k - 1, f)) parity[g] ^= 1;
      for (auto& [g, p] : parity)
        if (p) return false;
    }
  }
  return true;
}

namespace {

// Which edge-ends of a square meet at each of its corners, as
// (slot, end) pairs over the facet order [L0, U0, L1, U1].
constexpr int kCornerEnds[4][2][2] = {
    {{0, 0}, {2, 0}}, {{1, 0}, {2, 1}}, {{0, 1}, {3, 0}}, {{1, 1}, {3, 1}}};

std::uint32_t find_root(std::vector<std::uint32_t>& parent, std::uint32_t x) {
  while (parent[x] != x) x = parent[x] = parent[parent[x]];
  return x;
}

}  // namespace

SurfaceReport closed_surface(const CubeComplex& complex) {
  if (complex.counts.size() != 3 || complex.counts[2] == 0) return {false, "not two-dimensional"};
  const std::size_t nv = complex.counts[0], ne = complex.counts[1], ns = complex.counts[2];
  std::vector<int> edge_use(ne, 0);
  for (auto e : complex.facets[2]) ++edge_use[e];
  for (std::uint32_t e = 0; e < ne; ++e)
    if (edge_use[e] != 2)
      return {false, "edge " + std::to_string(e) + " lies in " + std::to_string(edge_use[e]) + " squares"};

  // Link nodes are edge-ends (2e + end); each square corner joins two.
  std::vector<std::uint32_t> parent(2 * ne);
  std::iota(parent.begin(), parent.end(), 0);
  std::vector<int> degree(2 * ne, 0);
  for (std::uint32_t s = 0; s < ns; ++s) {
    auto f = complex.facets_of(2, s);
    for (const auto& corner : kCornerEnds) {
      std::uint32_t a = 2 * f[corner[0][0]] + corner[0][1];
      std::uint32_t b = 2 * f[corner[1][0]] + corner[1][1];
      ++degree[a];
      ++degree[b];
      parent[find_root(parent, a)] = find_root(parent, b);
    }
  }
  std::vector<std::int64_t> component(nv, -1);
  for (std::uint32_t e = 0; e < ne; ++e) {
    auto ends = complex.facets_of(1, e);
    for (std::uint32_t end = 0; end < 2; ++end) {
      std::uint32_t node = 2 * e + end;
      if (degree[node] != 2)
        return {false, "vertex " + std::to_string(ends[end]) + " has a link vertex of degree " +
                           std::to_string(degree[node])};
      std::int64_t root = find_root(parent, node);
      auto& comp = component[ends[end]];
      if (comp < 0) comp = root;
      else if (comp != root) return {false, "link of vertex " + std::to_string(ends[end]) + " is not connected"};
    }
  }
  for (std::uint32_t v = 0; v < nv; ++v)
    if (component[v] < 0) return {false, "vertex " + std::to_string(v) + " has an empty link"};
  return {true, ""};
}

bool is_closed_surface(const CubeComplex& complex) { return closed_surface(complex).ok; }

bool is_orientable_surface(const CubeComplex& complex) {
  auto report = closed_surface(complex);
  if (!report.ok) throw Error("NotClosedSurface", report.reason);
  // Induced orientation of each boundary slot relative to the edge's own.
  constexpr int kSign[4] = {-1, +1, +1, -1};
  const std::size_t ne = complex.counts[1], ns = complex.counts[2];
  std::vector<std::vector<std::pair<std::uint32_t, int>>> uses(ne);
  for (std::uint32_t s = 0; s < ns; ++s) {
    auto f = complex.facets_of(2, s);
    for (int slot = 0; slot < 4; ++slot) uses[f[slot]].emplace_back(s, kSign[slot]);
  }
  std::vector<std::vector<std::pair<std::uint32_t, int>>> adj(ns);  // (neighbour, parity)
  for (const auto& u : uses) {
    auto [a, sa] = u[0];
    auto [b, sb] = u[1];
    int differ = sa * sb == 1 ? 1 : 0;
    if (a == b) {
      if (differ) return false;
      continue;
    }
    adj[a].emplace_back(b, differ);
    adj[b].emplace_back(a, differ);
  }
  std::vector<int> parity(ns, -1);
  for (std::uint32_t s0 = 0; s0 < ns; ++s0) {
    if (parity[s0] >= 0) continue;
    parity[s0] = 0;
    std::deque<std::uint32_t> queue{s0};
    while (!queue.empty()) {
      auto s = queue.front();
      queue.pop_front();
      for (auto [t, d] : adj[s]) {
        int want = parity[s] ^ d;
        if (parity[t] < 0) {
          parity[t] = want;
          queue.push_back(t);
        } else if (parity[t] != want) {
          return false;
        }
      }
    }
  }
  return true;
}

CollapseResult collapse(const CubeComplex& complex) {
  const std::size_t top = complex.counts.size();
  std::vector<std::vector<std::uint8_t>> alive(top);
  std::vector<std::vector<int>> uses(top);
  std::vector<std::vector<std::vector<std::uint32_t>>> cofaces(top);
  for (std::size_t k = 0; k < top; ++k) {
    alive[k].assign(complex.counts[k], 1);
    uses[k].assign(complex.counts[k], 0);
    cofaces[k].resize(complex.counts[k]);
  }
  for (std::size_t k = 1; k < top; ++k)
    for (std::uint32_t id = 0; id < complex.counts[k]; ++id)
      for (auto f : complex.facets_of(k, id)) {
        ++uses[k - 1][f];
        cofaces[k - 1][f].push_back(id);
      }

  std::deque<std::pair<std::size_t, std::uint32_t>> work;
  for (std::size_t k = top; k-- > 0;)
    for (std::uint32_t id = 0; id < complex.counts[k]; ++id)
      if (uses[k][id] == 1) work.emplace_back(k, id);

  CollapseResult out;
  auto release = [&](std::size_t k, std::uint32_t id) {
    alive[k][id] = 0;
    if (k == 0) return;
    for (auto f : complex.facets_of(k, id))
      if (alive[k - 1][f] && --uses[k - 1][f] == 1) work.emplace_back(k - 1, f);
  };
  while (!work.empty()) {
    auto [k, id] = work.front();
    work.pop_front();
    if (!alive[k][id] || uses[k][id] != 1) continue;
    std::uint32_t coface = 0;
    for (auto c : cofaces[k][id])
      if (alive[k + 1][c]) { coface = c; break; }
    release(k + 1, coface);  // also drops id's use count to 0
    release(k, id);
    ++out.steps;
  }

  std::vector<std::vector<std::uint32_t>> renum(top);
  for (std::size_t k = 0; k < top; ++k) {
    renum[k].assign(complex.counts[k], 0);
    std::uint32_t next = 0;
    for (std::uint32_t id = 0; id < complex.counts[k]; ++id)
      if (alive[k][id]) renum[k][id] = next++;
  }
  out.remaining.counts.assign(top, 0);
  out.remaining.facets.assign(top, {});
  for (std::size_t k = 0; k < top; ++k)
    for (std::uint32_t id = 0; id < complex.counts[k]; ++id) {
      if (!alive[k][id]) continue;
      std::vector<std::uint32_t> f;
      if (k > 0)
        for (auto x : complex.facets_of(k, id)) f.push_back(renum[k - 1][x]);
      out.remaining.add_cell(k, f);
    }
  return out;
}

std::vector<std::size_t> greedy_collapse(const CubeComplex& complex) { return collapse(complex).remaining.counts; }

bool collapses_to_point(const CubeComplex& complex) {
  auto f = greedy_collapse(complex);
  return !f.empty() && f[0] == 1 && std::all_of(f.begin() + 1, f.end(), [](auto n) { return n == 0; });
}

namespace {

const CubeComplex& complete_cells(const StateComplex& complex) {
  if (complex.truncated())
    throw Error("TruncatedComplex", "complex was truncated at " + std::to_string(complex.cap()) + " vertices");
  return complex.cells();
}

}  // namespace

std::vector<std::size_t> f_vector(const StateComplex& c) { return f_vector(complete_cells(c)); }
std::int64_t euler_characteristic(const StateComplex& c) { return euler_characteristic(complete_cells(c)); }
std::vector<std::size_t> betti_mod2(const StateComplex& c, int threads) {
  return betti_mod2(complete_cells(c), threads);
}
bool is_closed_surface(const StateComplex& c) { return is_closed_surface(complete_cells(c)); }
bool is_orientable_surface(const StateComplex& c) { return is_orientable_surface(complete_cells(c)); }
std::vector<std::size_t> greedy_collapse(const StateComplex& c) { return greedy_collapse(complete_cells(c)); }

}  // namespace cubeplan
