#include <doctest.h>

#include "cubeplan/catalogue.hpp"
#include "cubeplan/complex.hpp"
#include "cubeplan/error.hpp"
#include "cubeplan/path.hpp"

using namespace cubeplan;

namespace {

// Moves along the two grid paths: token 0 on vertices 0..L-1, token 1 on L..2L-1.
std::vector<Action> grid_moves(const System& sys, State s, const std::vector<int>& tokens) {
  std::vector<Action> out;
  for (int which : tokens) {
    for (const auto& a : admissible_actions(s, sys)) {
      auto t = apply_unchecked(s, a, sys);
      const auto& cells = s.cells();
      const auto& next = t.cells();
      bool moved = (cells[which].x != next[which].x) && next[which].x > cells[which].x;
      if (moved) {
        out.push_back(a);
        s = t;
        break;
      }
    }
  }
  return out;
}

}  // namespace

TEST_CASE("a move and its inverse cancel") {
  auto sys = arm_system(3);
  State s = sys->seeds()[0];
  auto acts = admissible_actions(s, *sys);
  REQUIRE(!acts.empty());
  std::vector<Action> moves{acts[0], acts[0].reversed()};
  auto path = from_edge_path(*sys, s, moves);
  CHECK(path.length() == 2);
  auto out = time_geodesic(*sys, path, OptimizeMode::normalize);
  CHECK(out.steps.empty());
  CHECK(out.start == s);
}

TEST_CASE("an L-shaped grid path becomes a diagonal") {
  auto sys = agv_grid_system(6);
  State s = sys->seeds()[0];
  auto moves = grid_moves(*sys, s, {0, 0, 0, 1, 1, 1});
  REQUIRE(moves.size() == 6);
  auto path = from_edge_path(*sys, s, moves);
  GeodesicStats stats;
  auto out = time_geodesic(*sys, path, OptimizeMode::normalize, &stats);
  CHECK(out.length() == 3);
  for (const auto& step : out.steps) CHECK(step.size() == 2);
  CHECK(path_end(*sys, out) == path_end(*sys, path));
  CHECK(is_normal(*sys, out));
  CHECK(out.potential() == 12);
  CHECK(stats.shrink_calls >= 1);
}

TEST_CASE("potential counts weighted dimensions") {
  CubePath p;
  p.steps = {Step(2), Step(1), Step(3)};
  CHECK(p.potential() == 1 * 2 + 2 * 1 + 3 * 3);
}

TEST_CASE("validation reports the first bad step") {
  auto sys = arm_system(3);
  State s = sys->seeds()[0];
  auto acts = admissible_actions(s, *sys);
  CubePath p{s, {{acts[0]}, {}}};
  auto r = validate(*sys, p);
  CHECK_FALSE(r.ok);
  CHECK(r.index == 2);
  CubePath bad{s, {{acts[0].reversed()}}};
  r = validate(*sys, bad);
  CHECK_FALSE(r.ok);
  CHECK(r.index == 1);
  CHECK_THROWS_WITH_AS(shrink_cube_path(*sys, bad), doctest::Contains("InvalidPath"), Error);
  CubePath back{s, {{acts[0]}, {acts[0].reversed()}}};
  r = validate(*sys, back);
  CHECK(r.ok);
  CHECK_FALSE(r.reduced);
  CHECK(r.shared_index == 1);
}

TEST_CASE("cube paths respect the global constraint") {
  auto fix = curvature_fixture();
  auto sys = curvature_system(true);
  std::vector<Action> triple = fix.actions;
  std::sort(triple.begin(), triple.end());
  CubePath p{fix.state, {triple}};
  CHECK_FALSE(validate(*sys, p).ok);
  auto path = from_edge_path(*sys, fix.state, std::vector<Action>{fix.actions[0], fix.actions[1]});
  auto out = time_geodesic(*sys, path, OptimizeMode::normalize);
  CHECK(out.length() == 1);
  CHECK(validate(*sys, out).ok);
}

TEST_CASE("oracle distances") {
  auto sys = agv_grid_system(5);
  auto c = build_complex(sys, sys->seeds());
  State s = sys->seeds()[0];
  auto moves = grid_moves(*sys, s, {0, 0, 0, 0, 1, 1});
  auto end = path_end(*sys, from_edge_path(*sys, s, moves));
  CHECK(oracle_shortest(c, s, end) == 4);
  CHECK(oracle_shortest(c, s, s) == 0);
  CHECK_THROWS_AS(oracle_shortest(c, s, State({{0, 0, 0}})), Error);
  auto p3 = graph_agv_system(disjoint_paths({2, 2}), 1);
  auto c3 = build_complex(p3, {State({{0, 0, 0}}), State({{2, 0, 0}})});
  CHECK_THROWS_WITH_AS(oracle_shortest(c3, State({{0, 0, 0}}), State({{2, 0, 0}})),
                       doctest::Contains("Disconnected"), Error);
}

TEST_CASE("normal forms are fixed points and random paths are seeded") {
  auto sys = arm_system(4);
  State s = sys->seeds()[0];
  CHECK(random_edge_path(*sys, s, 30, 11) == random_edge_path(*sys, s, 30, 11));
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    auto path = from_edge_path(*sys, s, random_edge_path(*sys, s, 25, seed));
    auto once = time_geodesic(*sys, path, OptimizeMode::normalize);
    CHECK(is_normal(*sys, once));
    CHECK(time_geodesic(*sys, once, OptimizeMode::normalize) == once);
    CHECK(path_end(*sys, once) == path_end(*sys, path));
    CHECK(once.length() <= path.length());
  }
}

TEST_CASE("non-admissible edge paths are rejected") {
  auto sys = arm_system(2);
  State s = sys->seeds()[0];
  auto acts = admissible_actions(s, *sys);
  CHECK_THROWS_WITH_AS(from_edge_path(*sys, s, std::vector<Action>{acts[0], acts[0]}),
                       doctest::Contains("move 2"), Error);
}
