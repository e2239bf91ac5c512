#include "cubeplan/text_format.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <sstream>
#include <vector>

#include "cubeplan/error.hpp"

namespace cubeplan {

namespace {

[[noreturn]] void syntax(std::size_t line, std::size_t col, const std::string& msg) {
  throw Error("ParseError", "line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + msg);
}

// A tokenized line. Parenthesised groups stay one token even with spaces.
struct Token {
  std::string text;
  std::size_t col;
};

std::vector<Token> tokenize(std::string_view line, std::size_t lineno) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    char c = line[i];
    if (c == '#') break;
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    Token t{"", i + 1};
    if (c == '(') {
      std::size_t j = line.find(')', i);
      if (j == std::string_view::npos) syntax(lineno, i + 1, "unterminated '('");
      for (std::size_t k = i; k <= j; ++k)
        if (!std::isspace(static_cast<unsigned char>(line[k]))) t.text += line[k];
      i = j + 1;
    } else {
      while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])) && line[i] != '#' &&
             line[i] != '(')
        t.text += line[i++];
    }
    out.push_back(std::move(t));
  }
  return out;
}

bool parse_int(std::string_view s, int& out) {
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && p == s.data() + s.size();
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    out.push_back(line);
    if (end == text.size()) break;
    start = end + 1;
  }
  return out;
}

}  // namespace

Cell parse_cell(std::string_view text, const Lattice& lattice) {
  if (text.size() < 2 || text.front() != '(' || text.back() != ')')
    throw Error("ParseError", "malformed cell '" + std::string(text) + "'");
  std::vector<int> v;
  std::string_view body = text.substr(1, text.size() - 2);
  std::size_t start = 0;
  while (true) {
    std::size_t comma = body.find(',', start);
    std::string_view part = body.substr(start, comma == std::string_view::npos ? body.size() - start : comma - start);
    while (!part.empty() && std::isspace(static_cast<unsigned char>(part.front()))) part.remove_prefix(1);
    while (!part.empty() && std::isspace(static_cast<unsigned char>(part.back()))) part.remove_suffix(1);
    int x = 0;
    if (!parse_int(part, x)) throw Error("ParseError", "malformed cell '" + std::string(text) + "'");
    v.push_back(x);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (static_cast<int>(v.size()) != lattice.arity())
    throw Error("ParseError", "cell '" + std::string(text) + "' needs " + std::to_string(lattice.arity()) +
                                  " coordinates on a " + to_string(lattice.kind()) + " lattice");
  Cell c{v[0], v.size() > 1 ? v[1] : 0, v.size() > 2 ? v[2] : 0};
  if (!lattice.in_domain(c)) throw Error("ParseError", "cell '" + std::string(text) + "' outside the lattice");
  return c;
}

std::string format_state(const State& state, const Lattice& lattice) {
  std::string out;
  for (Cell c : state.cells()) {
    if (!out.empty()) out += ' ';
    out += format_cell(c, lattice);
  }
  return out;
}

State parse_state(std::string_view text, const Lattice& lattice) {
  std::vector<Cell> cells;
  auto lines = split_lines(text);
  for (std::size_t l = 0; l < lines.size(); ++l)
    for (const auto& t : tokenize(lines[l], l + 1)) {
      try {
        cells.push_back(parse_cell(t.text, lattice));
      } catch (const Error& e) {
        syntax(l + 1, t.col, e.message());
      }
    }
  return State(std::move(cells));
}

std::shared_ptr<const System> parse_system(std::string_view text) {
  std::optional<Lattice> lattice;
  std::string lattice_name;
  int graph_vertices = -1;
  std::vector<std::pair<int, int>> graph_edges;
  enum class WsKind { none, box, cells, infinite } ws_kind = WsKind::none;
  Box box;
  std::vector<Cell> ws_cells, excluded;
  std::vector<std::pair<Cell, bool>> obstacles;
  std::vector<Generator> gens;
  std::vector<std::size_t> gen_lines;
  std::vector<State> seeds;
  std::string constraint_name;
  std::optional<Generator> open;
  std::vector<Cell> open_trace;
  bool have_trace = false;
  std::size_t trace_line = 0;

  auto lines = split_lines(text);
  auto need_lattice = [&](std::size_t l, std::size_t col) -> const Lattice& {
    if (!lattice) {
      if (lattice_name == "graph" && graph_vertices >= 0) {
        lattice = Lattice::graph(graph_vertices, graph_edges);
      } else {
        syntax(l, col, "lattice must be declared first (graphs also need graph-vertices)");
      }
    }
    return *lattice;
  };
  auto cells_from = [&](const std::vector<Token>& toks, std::size_t from, std::size_t l) {
    std::vector<Cell> out;
    const Lattice& lat = need_lattice(l, toks[0].col);
    for (std::size_t i = from; i < toks.size(); ++i) {
      try {
        out.push_back(parse_cell(toks[i].text, lat));
      } catch (const Error& e) {
        syntax(l, toks[i].col, e.message());
      }
    }
    return out;
  };
  auto bits_from = [&](const Token& t, std::size_t l) {
    std::vector<std::uint8_t> out;
    for (char c : t.text) {
      if (c != '0' && c != '1') syntax(l, t.col, "expected a 0/1 string");
      out.push_back(static_cast<std::uint8_t>(c - '0'));
    }
    return out;
  };

  for (std::size_t idx = 0; idx < lines.size(); ++idx) {
    const std::size_t l = idx + 1;
    auto toks = tokenize(lines[idx], l);
    if (toks.empty()) continue;
    const std::string& kw = toks[0].text;
    auto arity = [&](std::size_t n) {
      if (toks.size() != n) syntax(l, toks[0].col, "'" + kw + "' takes " + std::to_string(n - 1) + " argument(s)");
    };

    if (open) {
      if (kw == "support") {
        open->support = cells_from(toks, 1, l);
      } else if (kw == "trace") {
        open_trace = cells_from(toks, 1, l);
        have_trace = true;
        trace_line = l;
      } else if (kw == "u0" || kw == "u1") {
        arity(2);
        (kw == "u0" ? open->u0 : open->u1) = bits_from(toks[1], l);
      } else if (kw == "end") {
        arity(1);
        if (!have_trace) syntax(l, toks[0].col, "generator '" + open->id + "' has no trace");
        open->trace.assign(open->support.size(), 0);
        for (Cell c : open_trace) {
          auto it = std::find(open->support.begin(), open->support.end(), c);
          if (it == open->support.end())
            throw Error("InvalidGenerator", "line " + std::to_string(trace_line) + ": generator '" + open->id +
                                                "': trace cell " + format_cell(c, *lattice) + " not in support");
          open->trace[static_cast<std::size_t>(it - open->support.begin())] = 1;
        }
        try {
          validate_generator(*open, *lattice);
        } catch (const Error& e) {
          throw Error(e.kind(), "line " + std::to_string(gen_lines.back()) + ": " + e.message());
        }
        gens.push_back(std::move(*open));
        open.reset();
      } else {
        syntax(l, toks[0].col, "unexpected '" + kw + "' inside generator block");
      }
      continue;
    }

    if (kw == "lattice") {
      arity(2);
      if (!lattice_name.empty()) syntax(l, toks[0].col, "lattice declared twice");
      lattice_name = toks[1].text;
      try {
        auto kind = lattice_kind_from_string(lattice_name);
        if (kind == LatticeKind::square2d) lattice = Lattice::square();
        else if (kind == LatticeKind::hexAxial2d) lattice = Lattice::hex();
        else if (kind == LatticeKind::squareEdge2d) lattice = Lattice::square_edge();
      } catch (const Error& e) {
        syntax(l, toks[1].col, e.message());
      }
    } else if (kw == "graph-vertices") {
      arity(2);
      if (lattice_name != "graph" || lattice) syntax(l, toks[0].col, "graph-vertices needs 'lattice graph' first");
      if (!parse_int(toks[1].text, graph_vertices) || graph_vertices < 0)
        syntax(l, toks[1].col, "expected a vertex count");
    } else if (kw == "graph-edge") {
      arity(3);
      if (lattice_name != "graph" || lattice) syntax(l, toks[0].col, "graph-edge must precede other declarations");
      int a = 0, b = 0;
      if (!parse_int(toks[1].text, a) || !parse_int(toks[2].text, b)) syntax(l, toks[1].col, "expected two vertex ids");
      graph_edges.emplace_back(a, b);
    } else if (kw == "workspace") {
      if (toks.size() < 2) syntax(l, toks[0].col, "workspace needs a kind");
      if (ws_kind != WsKind::none) syntax(l, toks[0].col, "workspace declared twice");
      need_lattice(l, toks[0].col);
      const std::string& k = toks[1].text;
      if (k == "box") {
        arity(6);
        int v[4];
        for (int i = 0; i < 4; ++i)
          if (!parse_int(toks[2 + i].text, v[i])) syntax(l, toks[2 + i].col, "expected an integer");
        box = {v[0], v[1], v[2], v[3]};
        ws_kind = WsKind::box;
      } else if (k == "cells") {
        ws_cells = cells_from(toks, 2, l);
        ws_kind = WsKind::cells;
      } else if (k == "infinite") {
        arity(2);
        ws_kind = WsKind::infinite;
      } else {
        syntax(l, toks[1].col, "workspace kind must be box, cells or infinite");
      }
    } else if (kw == "exclude") {
      auto more = cells_from(toks, 1, l);
      excluded.insert(excluded.end(), more.begin(), more.end());
    } else if (kw == "obstacle") {
      arity(3);
      auto c = cells_from({toks[0], toks[1]}, 1, l);
      bool occ = false;
      if (toks[2].text == "occupied") occ = true;
      else if (toks[2].text != "empty") syntax(l, toks[2].col, "obstacle state must be occupied or empty");
      obstacles.emplace_back(c.at(0), occ);
    } else if (kw == "constraint") {
      arity(2);
      need_lattice(l, toks[0].col);
      if (!constraint_by_name(toks[1].text, *lattice)) syntax(l, toks[1].col, "unknown constraint '" + toks[1].text + "'");
      constraint_name = toks[1].text;
    } else if (kw == "generator") {
      arity(2);
      need_lattice(l, toks[0].col);
      open = Generator{};
      open->id = toks[1].text;
      open_trace.clear();
      have_trace = false;
      gen_lines.push_back(l);
    } else if (kw == "seed") {
      seeds.emplace_back(cells_from(toks, 1, l));
    } else {
      syntax(l, toks[0].col, "unknown keyword '" + kw + "'");
    }
  }
  if (open) syntax(lines.size(), 1, "generator '" + open->id + "' is missing 'end'");
  if (!lattice) {
    if (lattice_name == "graph" && graph_vertices >= 0) lattice = Lattice::graph(graph_vertices, graph_edges);
    else syntax(lines.size(), 1, "no lattice declared");
  }
  if (!excluded.empty() && ws_kind != WsKind::infinite)
    throw Error("ParseError", "exclude is only valid with 'workspace infinite'");
  Workspace ws = [&] {
    switch (ws_kind) {
      case WsKind::box: return Workspace::box(*lattice, box, obstacles);
      case WsKind::cells: return Workspace::finite(*lattice, ws_cells, obstacles);
      case WsKind::infinite: return Workspace::unbounded(*lattice, excluded, obstacles);
      case WsKind::none: break;
    }
    if (lattice->kind() == LatticeKind::finiteGraph) return Workspace::box(*lattice, {}, obstacles);
    throw Error("ParseError", "no workspace declared");
  }();
  std::optional<GlobalConstraint> constraint;
  if (!constraint_name.empty()) constraint = constraint_by_name(constraint_name, *lattice);
  return std::make_shared<const System>(std::move(ws), std::move(gens), std::move(constraint), std::move(seeds));
}

std::string serialize_system(const System& system) {
  const Lattice& lat = system.lattice();
  const Workspace& ws = system.workspace();
  std::ostringstream os;
  os << "lattice " << to_string(lat.kind()) << '\n';
  if (lat.kind() == LatticeKind::finiteGraph) {
    os << "graph-vertices " << lat.vertex_count() << '\n';
    for (auto [a, b] : lat.edges()) os << "graph-edge " << a << ' ' << b << '\n';
  }
  if (!ws.is_finite()) {
    os << "workspace infinite\n";
    if (!ws.cells().empty()) os << "exclude " << format_state(State(ws.cells()), lat) << '\n';
  } else if (ws.bounds()) {
    const Box& b = *ws.bounds();
    os << "workspace box " << b.xmin << ' ' << b.ymin << ' ' << b.xmax << ' ' << b.ymax << '\n';
  } else {
    os << "workspace cells " << format_state(State(ws.cells()), lat) << '\n';
  }
  for (const auto& [c, occ] : ws.obstacles())
    os << "obstacle " << format_cell(c, lat) << ' ' << (occ ? "occupied" : "empty") << '\n';
  if (system.constraint()) os << "constraint " << system.constraint()->name << '\n';
  for (const auto& g : system.catalogue()) {
    os << "generator " << g.id << '\n';
    os << "  support";
    for (Cell c : g.support) os << ' ' << format_cell(c, lat);
    os << "\n  trace";
    for (std::size_t i = 0; i < g.support.size(); ++i)
      if (g.trace[i]) os << ' ' << format_cell(g.support[i], lat);
    os << "\n  u0 ";
    for (auto b : g.u0) os << static_cast<int>(b);
    os << "\n  u1 ";
    for (auto b : g.u1) os << static_cast<int>(b);
    os << "\nend\n";
  }
  for (const auto& s : system.seeds()) {
    os << "seed";
    if (!s.empty()) os << ' ' << format_state(s, lat);
    os << '\n';
  }
  return os.str();
}

namespace {

Action parse_action(std::string_view text, const System& system, std::size_t line) {
  std::string body(text);
  if (body.size() < 2 || body.front() != '(' || body.back() != ')') syntax(line, 1, "malformed action '" + body + "'");
  body = body.substr(1, body.size() - 2);
  std::vector<std::string> parts;
  std::stringstream ss(body);
  std::string part;
  while (std::getline(ss, part, ',')) {
    part.erase(std::remove_if(part.begin(), part.end(), [](unsigned char c) { return std::isspace(c); }), part.end());
    parts.push_back(part);
  }
  if (parts.size() != 4) syntax(line, 1, "action needs (generator, tx, ty, fwd|bwd)");
  auto gen = system.generator_index(parts[0]);
  if (!gen) throw Error("UnknownGenerator", "line " + std::to_string(line) + ": no generator '" + parts[0] + "'");
  int tx = 0, ty = 0;
  if (!parse_int(parts[1], tx) || !parse_int(parts[2], ty)) syntax(line, 1, "action offsets must be integers");
  Direction dir;
  if (parts[3] == "fwd") dir = Direction::forward;
  else if (parts[3] == "bwd") dir = Direction::backward;
  else syntax(line, 1, "direction must be fwd or bwd");
  return {{*gen, tx, ty}, dir};
}

}  // namespace

CubePath parse_move_script(std::string_view text, const System& system) {
  CubePath path;
  bool have_start = false;
  auto lines = split_lines(text);
  for (std::size_t idx = 0; idx < lines.size(); ++idx) {
    const std::size_t l = idx + 1;
    std::string_view line = lines[idx];
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    std::size_t first = line.find_first_not_of(" \t");
    if (first == std::string_view::npos) continue;
    line = line.substr(first);
    std::size_t colon = line.find(':');
    if (colon == std::string_view::npos) syntax(l, first + 1, "expected 'start:' or 'step k:'");
    std::string head(line.substr(0, colon));
    std::string_view rest = line.substr(colon + 1);
    if (head == "start") {
      if (have_start || !path.steps.empty()) syntax(l, first + 1, "start must come first and only once");
      path.start = parse_state(rest, system.lattice());
      have_start = true;
      continue;
    }
    int k = 0;
    if (head.rfind("step ", 0) != 0 || !parse_int(head.substr(5), k))
      syntax(l, first + 1, "expected 'start:' or 'step k:'");
    if (k != static_cast<int>(path.steps.size()) + 1)
      syntax(l, first + 1, "step numbers must run 1, 2, 3, ...");
    Step step;
    std::size_t pos = 0;
    std::string r(rest);
    while (pos < r.size()) {
      std::size_t semi = r.find(';', pos);
      std::string item = r.substr(pos, semi == std::string::npos ? std::string::npos : semi - pos);
      item.erase(std::remove_if(item.begin(), item.end(), [](unsigned char c) { return std::isspace(c); }), item.end());
      if (!item.empty()) step.push_back(parse_action(item, system, l));
      if (semi == std::string::npos) break;
      pos = semi + 1;
    }
    if (step.empty()) syntax(l, first + 1, "empty step");
    std::sort(step.begin(), step.end());
    path.steps.push_back(std::move(step));
  }
  if (!have_start) {
    if (system.seeds().empty()) throw Error("ParseError", "move script has no start and the system no seed");
    path.start = system.seeds().front();
  }
  return path;
}

std::string serialize_move_script(const CubePath& path, const System& system) {
  std::ostringstream os;
  os << "start: " << format_state(path.start, system.lattice()) << '\n';
  for (std::size_t i = 0; i < path.steps.size(); ++i) {
    os << "step " << i + 1 << ':';
    const char* sep = " ";
    for (const auto& a : path.steps[i]) {
      os << sep << format_action(a, system);
      sep = "; ";
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace cubeplan
