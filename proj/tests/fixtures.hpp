#pragma once

#include <map>
#include <stdexcept>
#include <utility>

#include "cubeplan/cube_complex.hpp"

namespace fixtures {

// Builds a square complex from oriented edges given as (tail, head) pairs.
// A square is named by its corners: base, a0 base, a1 base and the far one.
class SquareBuilder {
 public:
  explicit SquareBuilder(std::size_t vertices) { cx_.counts = {vertices}; cx_.facets = {{}}; }

  void edge(std::uint32_t tail, std::uint32_t head) {
    if (edges_.count({head, tail})) throw std::logic_error("edge given in both directions");
    if (edges_.count({tail, head})) return;
    std::uint32_t f[2] = {tail, head};
    edges_[{tail, head}] = cx_.add_cell(1, f);
  }

  void square(std::uint32_t v, std::uint32_t a0v, std::uint32_t a1v, std::uint32_t far) {
    std::uint32_t f[4] = {at(v, a1v), at(a0v, far), at(v, a0v), at(a1v, far)};
    cx_.add_cell(2, f);
  }

  const cubeplan::CubeComplex& complex() const { return cx_; }

 private:
  std::uint32_t at(std::uint32_t tail, std::uint32_t head) const {
    auto it = edges_.find({tail, head});
    if (it == edges_.end()) throw std::logic_error("square uses a missing or reversed edge");
    return it->second;
  }

  cubeplan::CubeComplex cx_;
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t> edges_;
};

inline cubeplan::CubeComplex single_square() {
  SquareBuilder b(4);
  b.edge(0, 1);
  b.edge(0, 2);
  b.edge(1, 3);
  b.edge(2, 3);
  b.square(0, 1, 2, 3);
  return b.complex();
}

// m x n periodic grid of squares.
inline cubeplan::CubeComplex torus(std::uint32_t m, std::uint32_t n) {
  auto id = [&](std::uint32_t x, std::uint32_t y) { return (x % m) * n + (y % n); };
  SquareBuilder b(m * n);
  for (std::uint32_t x = 0; x < m; ++x)
    for (std::uint32_t y = 0; y < n; ++y) {
      b.edge(id(x, y), id(x + 1, y));
      b.edge(id(x, y), id(x, y + 1));
    }
  for (std::uint32_t x = 0; x < m; ++x)
    for (std::uint32_t y = 0; y < n; ++y) b.square(id(x, y), id(x + 1, y), id(x, y + 1), id(x + 1, y + 1));
  return b.complex();
}

// One vertex, two loops, one square.
inline cubeplan::CubeComplex torus_1x1() {
  cubeplan::CubeComplex cx;
  cx.counts = {1};
  cx.facets = {{}};
  std::uint32_t loop[2] = {0, 0};
  auto h = cx.add_cell(1, loop);
  auto v = cx.add_cell(1, loop);
  std::uint32_t sq[4] = {v, v, h, h};
  cx.add_cell(2, sq);
  return cx;
}

// 4 x 3 grid glued top to bottom with the flip (x, 3) ~ (-x mod 4, 0), and
// left to right as usual. Horizontal edges point +x in columns 0, 1 and -x
// in columns 2, 3, which is consistent with the flip.
inline cubeplan::CubeComplex klein_bottle() {
  constexpr int w = 4, h = 3;
  auto id = [](int x, int y) -> std::uint32_t {
    x = ((x % w) + w) % w;
    if (y == h) {
      x = ((-x) % w + w) % w;
      y = 0;
    }
    return static_cast<std::uint32_t>(y * w + x);
  };
  SquareBuilder b(w * h);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      if (x < 2) b.edge(id(x, y), id(x + 1, y));
      else b.edge(id(x + 1, y), id(x, y));
      b.edge(id(x, y), id(x, y + 1));
    }
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      if (x < 2) b.square(id(x, y), id(x + 1, y), id(x, y + 1), id(x + 1, y + 1));
      else b.square(id(x + 1, y), id(x, y), id(x + 1, y + 1), id(x, y + 1));
    }
  return b.complex();
}

}  // namespace fixtures
