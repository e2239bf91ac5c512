// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "cubeplan/catalogue.hpp"
#include "cubeplan/error.hpp"
#include "cubeplan/shape.hpp"
#include "cubeplan/text_format.hpp"
#include "cubeplan/topology.hpp"

using namespace cubeplan;
using V = std::vector<std::size_t>;

namespace {

struct Check {
  bool ok = true;
  std::ostringstream notes;

  void expect(bool cond, const std::string& what) {
    if (!cond) {
      if (ok) notes << "first failure: " << what << "; ";
      ok = false;
    }
  }
};

std::string fmt(const V& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + ")";
}

int failures = 0;

void criterion(int n, double limit_s, const std::function<void(Check&)>& body) {
  Check c;
  auto t0 = std::chrono::steady_clock::now();
  try {
    body(c);
  } catch (const std::exception& e) {
    c.expect(false, std::string("exception: ") + e.what());
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (limit_s > 0 && secs > limit_s) c.expect(false, "runtime " + std::to_string(secs) + " s over the limit");
  if (!c.ok) ++failures;
  std::printf("criterion %d: %s (%.2f s) %s\n", n, c.ok ? "PASS" : "FAIL", secs, c.notes.str().c_str());
  std::fflush(stdout);
}

// Flat fixture: two tokens on two disjoint paths.
constexpr int kGrid = 8;

struct Fixture {
  std::string name;
  std::shared_ptr<const System> system;
  StateComplex complex;
};

std::vector<Fixture> optimizer_fixtures() {
  std::vector<Fixture> out;
  for (int n : {3, 4}) {
    auto sys = arm_system(n);
    out.push_back({"arm" + std::to_string(n), sys, build_complex(sys, sys->seeds())});
  }
  auto grid = agv_grid_system(kGrid);
  out.push_back({"grid", grid, build_complex(grid, grid->seeds())});
  return out;
}

// Random walk of 1..30 moves from a random vertex.
CubePath random_path(const Fixture& f, std::mt19937_64& rng, std::size_t max_len = 30) {
  const State& start = f.complex.vertex(static_cast<std::uint32_t>(rng() % f.complex.vertex_count()));
  const std::size_t len = 1 + rng() % max_len;
  return from_edge_path(*f.system, start, random_edge_path(*f.system, start, len, rng()));
}

// Inverse of a path as an edge sequence.
std::vector<Action> edges_of(const CubePath& p) {
  std::vector<Action> out;
  for (const auto& step : p.steps) out.insert(out.end(), step.begin(), step.end());
  return out;
}

// ---- criterion 10 helpers ----

Lattice random_lattice(std::mt19937_64& rng) {
  switch (rng() % 4) {
    case 0: return Lattice::square();
    case 1: return Lattice::hex();
    case 2: return Lattice::square_edge();
    default: {
      int n = 3 + static_cast<int>(rng() % 5);
      std::vector<std::pair<int, int>> edges;
      for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
          if (b == a + 1 || rng() % 3 == 0) edges.emplace_back(a, b);
      return Lattice::graph(n, edges);
    }
  }
}

Cell random_cell(const Lattice& lat, std::mt19937_64& rng, int span) {
  if (lat.kind() == LatticeKind::finiteGraph)
    return {static_cast<int>(rng() % static_cast<unsigned>(lat.vertex_count())), 0, 0};
  Cell c{static_cast<int>(rng() % (2 * span + 1)) - span, static_cast<int>(rng() % (2 * span + 1)) - span, 0};
  if (lat.kind() == LatticeKind::squareEdge2d) c.z = static_cast<int>(rng() % 2);
  return c;
}

Generator random_generator(const Lattice& lat, std::mt19937_64& rng, int index) {
  Generator g;
  g.id = "g" + std::to_string(index);
  if (lat.kind() == LatticeKind::finiteGraph) {
    g.support = {{0, 0, 0}, {1, 0, 0}};
  } else {
    std::set<Cell> cells;
    const std::size_t k = 1 + rng() % 5;
    while (cells.size() < k) cells.insert(random_cell(lat, rng, 2));
    g.support.assign(cells.begin(), cells.end());
    std::shuffle(g.support.begin(), g.support.end(), rng);
  }
  const std::size_t n = g.support.size();
  g.trace.assign(n, 0);
  g.u0.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    g.trace[i] = rng() % 2;
    g.u0[i] = rng() % 2;
  }
  g.trace[rng() % n] = 1;
  g.u1 = g.u0;
  for (std::size_t i = 0; i < n; ++i)
    if (g.trace[i] && rng() % 3) g.u1[i] ^= 1;
  if (g.u1 == g.u0)
    for (std::size_t i = 0; i < n; ++i)
      if (g.trace[i]) {
        g.u1[i] ^= 1;
        break;
      }
  return g;
}

std::shared_ptr<const System> random_system(std::mt19937_64& rng) {
  Lattice lat = random_lattice(rng);
  const bool graph = lat.kind() == LatticeKind::finiteGraph;
  std::vector<std::pair<Cell, bool>> obstacles;
  std::set<Cell> used;
  const std::size_t nobs = rng() % 4;
  Workspace probe = graph ? Workspace::box(lat, {}) : Workspace::box(lat, {-3, -3, 3, 3});
  for (std::size_t i = 0; i < nobs; ++i) {
    Cell c = random_cell(lat, rng, 3);
    if (probe.contains(c) && used.insert(c).second) obstacles.emplace_back(c, rng() % 2 == 0);
  }
  const unsigned kind = graph ? 0 : rng() % 3;
  Workspace ws = [&] {
    if (kind == 0) return Workspace::box(lat, graph ? Box{} : Box{-3, -3, 3, 3}, obstacles);
    if (kind == 1) {
      std::vector<Cell> cells;
      for (int x = -3; x <= 3; ++x)
        for (int y = -3; y <= 3; ++y)
          for (int z = 0; z <= (lat.kind() == LatticeKind::squareEdge2d ? 1 : 0); ++z)
            if (rng() % 4 || used.count({x, y, z})) cells.push_back({x, y, z});
      return Workspace::finite(lat, cells, obstacles);
    }
    std::vector<Cell> excluded;
    for (int i = 0; i < 3; ++i) {
      Cell c = random_cell(lat, rng, 6);
      if (!used.count(c)) excluded.push_back(c);
    }
    return Workspace::unbounded(lat, excluded, obstacles);
  }();
  std::vector<Generator> gens;
  const int ngen = 1 + static_cast<int>(rng() % 4);
  for (int i = 0; i < ngen; ++i) gens.push_back(random_generator(lat, rng, i));
  std::vector<State> seeds;
  const std::size_t nseeds = rng() % 3;
  for (std::size_t s = 0; s < nseeds; ++s) {
    std::vector<Cell> cells;
    for (auto& [c, occ] : obstacles)
      if (occ) cells.push_back(c);
    for (int i = 0; i < 4; ++i) {
      Cell c = random_cell(lat, rng, 3);
      if (ws.contains(c) && !used.count(c)) cells.push_back(c);
    }
    seeds.emplace_back(std::move(cells));
  }
  std::optional<GlobalConstraint> constraint;
  if (rng() % 3 == 0) constraint = constraint_by_name("connected", lat);
  return std::make_shared<const System>(std::move(ws), std::move(gens), std::move(constraint), std::move(seeds));
}

}  // namespace

int main() {
  criterion(1, 1.0, [](Check& c) {
    auto sys = builtin_system("agv-k5", {});
    auto cx = build_complex(sys, sys->seeds());
    auto f = f_vector(cx);
    c.expect(f == V{10, 30, 15}, "f-vector " + fmt(f));
    c.expect(euler_characteristic(cx) == -5, "chi");
    const bool closed = is_closed_surface(cx);
    c.expect(closed, "closed surface");
    if (closed) c.expect(!is_orientable_surface(cx), "non-orientable");
    c.notes << "fvec " << fmt(f) << " chi " << euler_characteristic(cx) << " betti " << fmt(betti_mod2(cx));
  });

  criterion(2, 10.0, [](Check& c) {
    for (int n = 2; n <= 6; ++n) {
      auto sys = arm_system(n);
      auto cx = build_complex(sys, sys->seeds());
      auto words = arm_word_complex(n);
      const std::string tag = "N=" + std::to_string(n) + " ";
      c.expect(f_vector(cx) == f_vector(words.cells), tag + "f-vector differs from the word model");
      c.expect(arm_isomorphic(cx, words), tag + "not isomorphic");
      c.expect(cx.vertex_count() == (std::size_t{1} << n), tag + "vertex count");
      V b = betti_mod2(cx);
      V expect(b.size(), 0);
      expect[0] = 1;
      c.expect(b == expect, tag + "betti " + fmt(b));
      c.expect(collapses_to_point(cx.cells()), tag + "collapse " + fmt(greedy_collapse(cx)));
      if (n == 5) c.expect(cx.count(3) == 1, "N=5 3-cubes");
      c.notes << tag << fmt(f_vector(cx)) << " ";
    }
  });

  criterion(3, 30.0, [](Check& c) {
    std::vector<std::pair<std::string, std::shared_ptr<const System>>> local;
    local.push_back({"agv-k5", builtin_system("agv-k5", {})});
    for (int n = 2; n <= 6; ++n) local.push_back({"arm" + std::to_string(n), arm_system(n)});
    for (auto v : {"preserving", "changing"}) {
      BuiltinParams p;
      p.variant = v;
      p.n = 3;
      local.push_back({std::string("hex-") + v, builtin_system("hex", p)});
    }
    local.push_back({"sliding-1x1", sliding_obstacle_system(1, 1)});
    local.push_back({"sliding-2x3", sliding_obstacle_system(2, 3)});
    for (const auto& [name, sys] : local) {
      auto cx = build_complex(sys, sys->seeds());
      auto r = check_link_condition(cx);
      c.expect(r.ok && r.violations.empty(), name + " has " + std::to_string(r.violations.size()) + " violations");
    }
    auto sys = curvature_system(true);
    auto cx = build_complex(sys, sys->seeds());
    auto r = check_link_condition(cx);
    auto v = cx.find_vertex(curvature_fixture().state);
    std::size_t at_fixture = 0;
    for (const auto& viol : r.violations) at_fixture += v && viol.vertex == *v;
    c.expect(at_fixture >= 1, "no violation at the fixture state");
    c.notes << local.size() << " local instances clean; constrained hex: " << r.violations.size()
            << " violations, " << at_fixture << " at the fixture";
  });

  auto fixtures = optimizer_fixtures();

  criterion(4, 60.0, [&](Check& c) {
    std::mt19937_64 rng(4);
    for (const auto& f : fixtures) {
      std::size_t worst = 0;
      for (int t = 0; t < 200; ++t) {
        auto p = random_path(f, rng);
        auto out = time_geodesic(*f.system, p, OptimizeMode::stopOnLength);
        auto best = oracle_shortest(f.complex, p.start, path_end(*f.system, p));
        c.expect(out.length() == best, f.name + " trial " + std::to_string(t) + ": " + std::to_string(out.length()) +
                                           " vs oracle " + std::to_string(best));
        c.expect(path_end(*f.system, out) == path_end(*f.system, p), f.name + " endpoint moved");
        worst = std::max(worst, p.length());
      }
      c.notes << f.name << " ok; ";
    }
  });

  criterion(5, 0, [&](Check& c) {
    std::mt19937_64 rng(5);
    std::size_t pairs = 0, grouped = 0;
    for (const auto& f : fixtures) {
      std::map<std::pair<State, State>, CubePath> normal;
      for (int t = 0; t < 200; ++t) {
        auto p = random_path(f, rng);
        auto n = time_geodesic(*f.system, p, OptimizeMode::normalize);
        c.expect(is_normal(*f.system, n), f.name + " output not normal");
        // Same endpoints via a detour and back.
        auto end = path_end(*f.system, p);
        auto detour = random_edge_path(*f.system, end, 1 + rng() % 6, rng());
        auto moves = edges_of(p);
        moves.insert(moves.end(), detour.begin(), detour.end());
        for (auto it = detour.rbegin(); it != detour.rend(); ++it) moves.push_back(it->reversed());
        auto q = from_edge_path(*f.system, p.start, moves);
        c.expect(time_geodesic(*f.system, q, OptimizeMode::normalize) == n, f.name + " detour changes the normal form");
        ++pairs;
        auto key = std::make_pair(p.start, end);
        auto [it, fresh] = normal.emplace(key, n);
        if (!fresh) {
          ++grouped;
          c.expect(it->second == n, f.name + " two paths with equal ends differ in normal form");
        }
      }
    }
    std::size_t fixed = 0;
    for (int t = 0; t < 500; ++t) {
      const auto& f = fixtures[t % fixtures.size()];
      auto p = random_path(f, rng);
      if (t % 2) p = time_geodesic(*f.system, p, OptimizeMode::normalize);
      const bool is_fixed = shrink_cube_path(*f.system, p) == p;
      fixed += is_fixed;
      c.expect(is_fixed == is_normal(*f.system, p), f.name + " fixed point vs is_normal mismatch");
    }
    c.notes << pairs << " detour pairs, " << grouped << " independent pairs, " << fixed << "/500 fixed points";
  });

  criterion(6, 0, [&](Check& c) {
    std::mt19937_64 rng(6);
    std::size_t changing = 0;
    for (const auto& f : fixtures)
      for (int t = 0; t < 200; ++t) {
        auto p = random_path(f, rng);
        const auto input_len = p.length();
        for (;;) {
          auto next = shrink_cube_path(*f.system, p);
          if (next == p) break;
          ++changing;
          c.expect(next.potential() < p.potential(), f.name + " potential did not drop");
          c.expect(next.length() <= p.length(), f.name + " shrink lengthened a path");
          p = std::move(next);
        }
        c.expect(p.length() <= input_len, f.name + " output longer than input");
        c.expect(time_geodesic(*f.system, p, OptimizeMode::normalize) == p, f.name + " not idempotent");
        auto once = time_geodesic(*f.system, p, OptimizeMode::stopOnLength);
        c.expect(time_geodesic(*f.system, once, OptimizeMode::stopOnLength) == once, f.name + " stopOnLength drift");
      }
    c.notes << changing << " path-changing shrink calls";
  });

  criterion(7, 0, [](Check& c) {
    std::vector<double> ratios;
    double t320 = 0;
    for (int n : {40, 80, 160, 320}) {
      auto sys = agv_grid_system(n / 2 + 1);
      State s = sys->seeds()[0];
      std::vector<Action> moves;
      for (int which : {0, 1})
        for (int k = 0; k < n / 2; ++k)
          for (const auto& a : admissible_actions(s, *sys)) {
            auto t = apply_unchecked(s, a, *sys);
            if (t.cells()[which].x > s.cells()[which].x) {
              moves.push_back(a);
              s = t;
              break;
            }
          }
      c.expect(moves.size() == static_cast<std::size_t>(n), "L-path construction");
      auto path = from_edge_path(*sys, sys->seeds()[0], moves);
      GeodesicStats st;
      auto t0 = std::chrono::steady_clock::now();
      auto out = time_geodesic(*sys, path, OptimizeMode::normalize, &st);
      double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      if (n == 320) t320 = secs;
      c.expect(out.length() == static_cast<std::size_t>(n / 2), "L-path not straightened");
      ratios.push_back(static_cast<double>(st.iterations) / (static_cast<double>(n) * n));
      c.notes << "N=" << n << ": " << st.iterations << " it (" << ratios.back() << " N^2), " << secs << " s; ";
    }
    const double spread = *std::max_element(ratios.begin(), ratios.end()) / *std::min_element(ratios.begin(), ratios.end());
    c.expect(spread <= 2.0, "iterations/N^2 spread " + std::to_string(spread));
    c.expect(t320 < 10.0, "N=320 took " + std::to_string(t320) + " s");
    c.notes << "spread " << spread;
  });

  criterion(8, 0, [](Check& c) {
    for (auto [p, q] : {std::pair{1, 1}, std::pair{2, 3}}) {
      auto sys = sliding_obstacle_system(p, q);
      auto cx = build_complex(sys, sys->seeds());
      V b = betti_mod2(cx);
      V expect(b.size(), 0);
      expect[0] = 1;
      if (b.size() > 1) expect[1] = 1;
      c.expect(b == expect, "betti " + fmt(b));
      const std::size_t ve = 4 * (p * q + 1) + 2 * (p + q), ee = 8 * (p * q + 1) - 2 * (p + q);
      c.notes << p << "x" << q << ": V=" << cx.count(0) << " (formula " << ve << "), E=" << cx.count(1)
              << " (formula " << ee << "), betti " << fmt(b) << "; ";
    }
  });

  criterion(9, 0, [](Check& c) {
    auto region = Workspace::finite(Lattice::hex(), hex_region(4));
    auto sys = hex_pivot_system(HexVariant::topologyPreserving, region);
    auto shapes = build_shape_complex(*sys, {hex_line(3)});
    c.expect(shapes.count(2) == 9, "2-cells " + std::to_string(shapes.count(2)));
    c.expect(check_link_condition(shapes).ok, "link condition on the quotient");
    c.notes << "shape fvec " << fmt(f_vector(shapes)) << "; ";

    auto h = homogeneous_system(*sys);
    auto big = hex_pivot_system(HexVariant::topologyPreserving, Workspace::finite(Lattice::hex(), hex_region(40)));
    std::mt19937_64 rng(9);
    std::size_t lifted = 0, walls = 0;
    for (int t = 0; t < 50; ++t) {
      const State start = hex_line(3);
      auto path = from_edge_path(*h, start, random_edge_path(*h, start, 20, rng()));
      auto sp = to_shape_path(*h, path);
      Offset base{static_cast<int>(rng() % 11) - 5, static_cast<int>(rng() % 11) - 5};
      auto res = lift_path(sp, base, *big);
      c.expect(res.ok(), "lift " + std::to_string(t) + " failed");
      if (res.ok()) {
        ++lifted;
        c.expect(path_end(*big, *res.path) == path_end(*h, path).translated(base), "lift endpoint");
      }

      // Wall of empty obstacles on one side of the start.
      int qmax = -100, qmin = 100, rmax = -100, rmin = 100;
      for (Cell x : start.cells()) {
        qmax = std::max(qmax, x.x), qmin = std::min(qmin, x.x);
        rmax = std::max(rmax, x.y), rmin = std::min(rmin, x.y);
      }
      std::vector<std::function<bool(Cell)>> sides{[&](Cell x) { return x.x == qmax + 1; },
                                                   [&](Cell x) { return x.x == qmin - 1; },
                                                   [&](Cell x) { return x.y == rmax + 1; },
                                                   [&](Cell x) { return x.y == rmin - 1; }};
      for (const auto& on_wall : sides) {
        std::size_t hit = 0;
        for (std::size_t k = 0; k < path.steps.size() && !hit; ++k)
          for (const auto& a : path.steps[k])
            for (Cell x : h->placed_trace(a.at))
              if (on_wall(x)) hit = k + 1;
        if (!hit) continue;
        std::vector<std::pair<Cell, bool>> wall;
        for (Cell x : hex_region(40))
          if (on_wall(x)) wall.push_back({x, false});
        auto blocked = hex_pivot_system(HexVariant::topologyPreserving,
                                        Workspace::finite(Lattice::hex(), hex_region(40), wall));
        auto r = lift_path(sp, {0, 0}, *blocked);
        c.expect(!r.ok() && r.failure->step == hit && r.failure->reason == LiftFailure::Reason::obstacleTrace,
                 "wall test " + std::to_string(t) + " expected step " + std::to_string(hit));
        ++walls;
        break;
      }
    }
    c.expect(walls >= 25, "too few wall tests");
    c.notes << lifted << "/50 lifts, " << walls << " wall tests";
  });

  criterion(10, 0, [](Check& c) {
    std::mt19937_64 rng(10);
    std::size_t systems = 0, scripts = 0;
    for (int t = 0; t < 100; ++t) {
      auto sys = random_system(rng);
      auto back = parse_system(serialize_system(*sys));
      c.expect(*back == *sys, "system " + std::to_string(t) + " differs after round trip");
      systems += *back == *sys;
    }
    std::vector<std::shared_ptr<const System>> pool{arm_system(4), agv_grid_system(5), builtin_system("agv-k5", {}),
                                                    sliding_obstacle_system(2, 3), builtin_system("hex", {})};
    for (int t = 0; t < 100; ++t) {
      const auto& sys = pool[t % pool.size()];
      const State& s = sys->seeds()[0];
      auto path = from_edge_path(*sys, s, random_edge_path(*sys, s, 1 + rng() % 20, rng()));
      if (t % 2) path = time_geodesic(*sys, path, OptimizeMode::normalize);
      auto back = parse_move_script(serialize_move_script(path, *sys), *sys);
      c.expect(back == path, "script " + std::to_string(t) + " differs after round trip");
      scripts += back == path;
    }
    c.notes << systems << "/100 systems, " << scripts << "/100 scripts";
  });

  std::printf("%s: %d criteria failed\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
