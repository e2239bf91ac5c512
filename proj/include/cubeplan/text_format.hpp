#pragma once

#include <memory>
#include <string>
#include <string_view>

#include "cubeplan/path.hpp"
#include "cubeplan/system.hpp"

namespace cubeplan {

// Cells as "(x,y)", "(x,y,o)" or "(v)" depending on the lattice.
Cell parse_cell(std::string_view text, const Lattice& lattice);
std::string format_state(const State& state, const Lattice& lattice);
// Whitespace-separated cells; '#' starts a comment.
State parse_state(std::string_view text, const Lattice& lattice);

// Line-oriented system description; see docs/formats.md. Syntax errors
// throw Error("ParseError") with line and column, invariant violations keep
// their own kind and gain the line of the offending block.
std::shared_ptr<const System> parse_system(std::string_view text);
std::string serialize_system(const System& system);

// Move scripts:
//   start: (x,y) (x,y) ...
//   step 1: (gen, tx, ty, fwd); (gen, tx, ty, bwd)
CubePath parse_move_script(std::string_view text, const System& system);
std::string serialize_move_script(const CubePath& path, const System& system);

}  // namespace cubeplan
