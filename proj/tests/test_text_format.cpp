#include <doctest.h>

#include "cubeplan/catalogue.hpp"
#include "cubeplan/error.hpp"
#include "cubeplan/text_format.hpp"

using namespace cubeplan;

TEST_CASE("cells by lattice") {
  CHECK(parse_cell("(3,-2)", Lattice::hex()) == Cell{3, -2, 0});
  CHECK(parse_cell("( 1 , 2 , 1 )", Lattice::square_edge()) == Cell{1, 2, 1});
  CHECK(parse_cell("(4)", complete_graph(5)) == Cell{4, 0, 0});
  CHECK_THROWS_AS(parse_cell("(1,2)", Lattice::square_edge()), Error);
  CHECK_THROWS_AS(parse_cell("(9)", complete_graph(5)), Error);
  CHECK_THROWS_AS(parse_cell("1,2", Lattice::square()), Error);
  State s({{0, 0, 0}, {2, -1, 0}});
  CHECK(parse_state(format_state(s, Lattice::hex()), Lattice::hex()) == s);
}

TEST_CASE("catalogue systems round trip") {
  for (const auto& name : builtin_names()) {
    auto sys = builtin_system(name, {});
    auto text = serialize_system(*sys);
    auto back = parse_system(text);
    CHECK(*back == *sys);
    CHECK(serialize_system(*back) == text);
  }
}

TEST_CASE("a hand-written system") {
  auto sys = parse_system(R"(# one square sliding on a floor
lattice square
workspace box 0 0 3 1
obstacle (0,0) occupied
obstacle (1,0) occupied
constraint connected
generator slide
  support (0,0) (1,0) (0,-1) (1,-1)
  trace (0,0) (1,0)
  u0 1011
  u1 0111
end
seed (0,0) (1,0) (0,1)
)");
  CHECK(sys->catalogue().size() == 1);
  CHECK(sys->catalogue()[0].trace == std::vector<std::uint8_t>{1, 1, 0, 0});
  CHECK(sys->constraint()->name == "connected");
  CHECK(sys->workspace().obstacles().size() == 2);
  CHECK(admissible_actions(sys->seeds()[0], *sys).size() == 1);
}

TEST_CASE("syntax errors name line and column") {
  CHECK_THROWS_WITH_AS(parse_system("lattice square\nworkspace box 0 0 1\n"),
                       doctest::Contains("line 2, column 1"), Error);
  CHECK_THROWS_WITH_AS(parse_system("lattice square\nworkspace box 0 0 1 1\nseed (0,0) (0;1)\n"),
                       doctest::Contains("line 3, column 12"), Error);
  CHECK_THROWS_WITH_AS(parse_system("lattice cubic\n"), doctest::Contains("ParseError"), Error);
  CHECK_THROWS_WITH_AS(parse_system("workspace infinite\n"), doctest::Contains("line 1"), Error);
  CHECK_THROWS_WITH_AS(parse_system("lattice square\nworkspace infinite\nfrobnicate\n"),
                       doctest::Contains("unknown keyword"), Error);
}

TEST_CASE("generator errors keep their kind") {
  const std::string head = "lattice square\nworkspace box 0 0 2 2\n";
  CHECK_THROWS_WITH_AS(parse_system(head + "generator g\n support (0,0)\n trace (1,0)\n u0 0\n u1 1\nend\n"),
                       doctest::Contains("InvalidGenerator: line 5"), Error);
  CHECK_THROWS_WITH_AS(parse_system(head + "generator g\n support (0,0) (1,0)\n trace (0,0)\n u0 00\n u1 00\nend\n"),
                       doctest::Contains("line 3"), Error);
  CHECK_THROWS_WITH_AS(parse_system(head + "generator g\n support (0,0)\n"), doctest::Contains("missing 'end'"), Error);
}

TEST_CASE("move scripts") {
  auto sys = arm_system(3);
  State s = sys->seeds()[0];
  auto acts = admissible_actions(s, *sys);
  CubePath p{s, {{acts[0]}, {acts[0].reversed()}}};
  auto text = serialize_move_script(p, *sys);
  CHECK(text.rfind("start: ", 0) == 0);
  CHECK(parse_move_script(text, *sys) == p);
  auto no_start = text.substr(text.find('\n') + 1);
  CHECK(parse_move_script(no_start, *sys) == p);
  CHECK_THROWS_WITH_AS(parse_move_script("step 1: (nope, 0, 0, fwd)\n", *sys), doctest::Contains("UnknownGenerator"),
                       Error);
  CHECK_THROWS_WITH_AS(parse_move_script("step 2: (flip, 0, 0, fwd)\n", *sys), doctest::Contains("line 1"), Error);
  CHECK_THROWS_WITH_AS(parse_move_script("step 1: (flip, 0, 0, up)\n", *sys), doctest::Contains("fwd or bwd"), Error);
}
