#include <doctest.h>

#include "cubeplan/catalogue.hpp"
#include "cubeplan/error.hpp"
#include "cubeplan/topology.hpp"

using namespace cubeplan;
using V = std::vector<std::size_t>;

TEST_CASE("arm complexes match the word model") {
  const std::vector<V> expected{{2, 1}, {4, 3}, {8, 8, 1}, {16, 20, 5}, {32, 48, 18, 1}, {64, 112, 56, 7}};
  for (int n = 1; n <= 6; ++n) {
    auto sys = arm_system(n);
    auto c = build_complex(sys, sys->seeds());
    CHECK(f_vector(c) == expected[n - 1]);
    auto words = arm_word_complex(n);
    CHECK(f_vector(words.cells) == expected[n - 1]);
    CHECK(arm_isomorphic(c, words));
    CHECK(collapses_to_point(c.cells()));
    CHECK(check_link_condition(c).ok);
  }
}

TEST_CASE("arm words round trip") {
  for (const char* w : {"x", "yy", "xyx", "yxxy", "xxxxx"}) CHECK(arm_word(arm_state(w)) == w);
  CHECK(arm_state("xy").size() == 2);
  CHECK_THROWS_AS(arm_state("xz"), Error);
}

TEST_CASE("sliding squares around an obstacle block") {
  auto one = sliding_obstacle_system(1, 1);
  auto c1 = build_complex(one, one->seeds());
  CHECK(f_vector(c1) == V{12, 12});
  CHECK(betti_mod2(c1) == V{1, 1});
  auto big = sliding_obstacle_system(2, 3);
  auto c2 = build_complex(big, big->seeds());
  CHECK(f_vector(c2) == V{38, 46, 8});
  CHECK(betti_mod2(c2) == V{1, 1, 0});
  CHECK(check_link_condition(c2).ok);
}

TEST_CASE("two tokens on two paths give a grid") {
  for (int n : {2, 3, 6}) {
    auto sys = agv_grid_system(n);
    auto c = build_complex(sys, sys->seeds());
    const std::size_t un = static_cast<std::size_t>(n);
    CHECK(f_vector(c) == V{un * un, 2 * un * (un - 1), (un - 1) * (un - 1)});
    CHECK(collapses_to_point(c.cells()));
  }
}

TEST_CASE("hex pivot catalogue") {
  for (auto v : {HexVariant::topologyPreserving, HexVariant::topologyChanging}) {
    auto gens = hex_pivot_generators(v);
    CHECK(gens.size() == 6);
    CHECK(hex_variant_from_string(to_string(v)) == v);
  }
  CHECK_THROWS_AS(hex_variant_from_string("other"), Error);
  CHECK(hex_region(1).size() == 7);
  CHECK(hex_region(4).size() == 61);
  CHECK(hex_line(3).size() == 3);
  auto sys = builtin_system("hex", {});
  CHECK(f_vector(build_complex(sys, sys->seeds())) == V{267, 540, 183});
}

TEST_CASE("builtins") {
  for (const auto& name : builtin_names()) {
    auto sys = builtin_system(name, {});
    CHECK(!sys->seeds().empty());
    CHECK(!sys->catalogue().empty());
  }
  CHECK_THROWS_WITH_AS(builtin_system("nope", {}), doctest::Contains("UnknownBuiltin"), Error);
  BuiltinParams p;
  p.n = 4;
  CHECK(builtin_system("arm", p)->seeds()[0].size() == 4);
  p.variant = "sideways";
  CHECK_THROWS_AS(builtin_system("hex", p), Error);
}
