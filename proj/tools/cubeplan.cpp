#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "cubeplan/catalogue.hpp"
#include "cubeplan/complex.hpp"
#include "cubeplan/error.hpp"
#include "cubeplan/path.hpp"
#include "cubeplan/shape.hpp"
#include "cubeplan/text_format.hpp"
#include "cubeplan/topology.hpp"

using namespace cubeplan;

namespace {

struct Options {
  std::string system_file;
  std::string builtin;
  BuiltinParams params;
  std::string seed_file;
  std::size_t cap = BuildOptions{}.max_vertices;
  std::string out;
  std::string format = "text";
  std::string in;
  std::uint64_t rng_seed = 1;
  std::size_t length = 20;
  int threads = 1;
  std::vector<int> base;
  bool shape = false;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("IOError", "cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::shared_ptr<const System> load_system(const Options& o) {
  if (o.system_file.empty() == o.builtin.empty())
    throw UsageError("give exactly one of --system FILE or --builtin NAME");
  if (!o.builtin.empty()) return builtin_system(o.builtin, o.params);
  return parse_system(read_file(o.system_file));
}

std::vector<State> seeds_of(const Options& o, const System& sys) {
  if (!o.seed_file.empty()) return {parse_state(read_file(o.seed_file), sys.lattice())};
  if (sys.seeds().empty()) throw UsageError("the system has no seed; pass --seed STATEFILE");
  return sys.seeds();
}

StateComplex build(const Options& o, const std::shared_ptr<const System>& sys) {
  BuildOptions bo;
  bo.max_vertices = o.cap;
  bo.threads = o.threads;
  if (o.shape) {
    std::vector<State> shapes;
    for (const auto& s : seeds_of(o, *sys)) shapes.push_back(canonicalize(s, sys->lattice()).first);
    return build_shape_complex(*sys, shapes, bo);
  }
  return build_complex(sys, seeds_of(o, *sys), bo);
}

std::string fvec_line(const StateComplex& c) {
  std::string s = "fvec:";
  for (auto n : c.cells().counts) s += ' ' + std::to_string(n);
  return s;
}

void emit(const Options& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(o.out);
  if (!f) throw Error("IOError", "cannot write '" + o.out + "'");
  f << text;
}

int cmd_build(const Options& o) {
  auto sys = load_system(o);
  auto c = build(o, sys);
  std::ostringstream os;
  os << fvec_line(c) << '\n';
  if (o.format == "text") {
    os << "vertices: " << c.vertex_count() << '\n'
       << "dimension: " << c.dimension() << '\n'
       << "truncated: " << (c.truncated() ? 1 : 0) << '\n';
  }
  std::cout << os.str();
  if (!o.out.empty()) emit(o, export_complex(c));
  return 0;
}

int cmd_stats(const Options& o) {
  auto sys = load_system(o);
  auto c = build(o, sys);
  std::cout << fvec_line(c) << '\n';
  if (o.format == "text") {
    std::cout << "vertices: " << c.vertex_count() << '\n' << "truncated: " << (c.truncated() ? 1 : 0) << '\n';
    if (!c.truncated()) std::cout << "chi: " << euler_characteristic(c) << '\n';
  }
  return 0;
}

int cmd_export(const Options& o) {
  auto sys = load_system(o);
  auto c = build(o, sys);
  emit(o, o.format == "counts" ? fvec_line(c) + '\n' : export_complex(c));
  return 0;
}

int cmd_check_npc(const Options& o) {
  auto sys = load_system(o);
  auto c = build(o, sys);
  auto report = check_link_condition(c, o.threads);
  std::ostringstream os;
  if (report.ok) {
    os << "OK\n";
  } else {
    for (const auto& v : report.violations) {
      os << "violation: vertex " << v.vertex << " [" << format_state(c.vertex(v.vertex), sys->lattice()) << "] "
         << (v.kind == LinkViolation::Kind::missing ? "missing" : "duplicated") << " {";
      for (std::size_t i = 0; i < v.actions.size(); ++i)
        os << (i ? "; " : "") << format_action(v.actions[i], c.system());
      os << "}\n";
    }
    os << "violations: " << report.violations.size() << '\n';
  }
  emit(o, os.str());
  return 0;
}

int cmd_homology(const Options& o) {
  auto sys = load_system(o);
  auto c = build(o, sys);
  auto betti = betti_mod2(c, o.threads);
  std::ostringstream os;
  os << "betti:";
  for (auto b : betti) os << ' ' << b;
  os << "\nchi: " << euler_characteristic(c) << '\n';
  emit(o, os.str());
  return 0;
}

int cmd_optimize(const Options& o, OptimizeMode mode) {
  if (o.in.empty()) throw UsageError("--in MOVESCRIPT is required");
  auto sys = load_system(o);
  auto path = parse_move_script(read_file(o.in), *sys);
  const auto before_len = path.length();
  const auto before_f = path.potential();
  GeodesicStats stats;
  auto out = time_geodesic(*sys, path, mode, &stats);
  std::ostringstream os;
  os << serialize_move_script(out, *sys);
  os << "# length: " << before_len << " -> " << out.length() << '\n';
  os << "# potential: " << before_f << " -> " << out.potential() << '\n';
  if (mode == OptimizeMode::normalize) os << "# normal: " << (is_normal(*sys, out) ? "yes" : "no") << '\n';
  emit(o, os.str());
  return 0;
}

int cmd_lift(const Options& o) {
  if (o.in.empty()) throw UsageError("--in SHAPEPATH is required");
  if (o.base.size() != 2) throw UsageError("--base takes two integers");
  auto sys = load_system(o);
  auto h = homogeneous_system(*sys);
  auto script = parse_move_script(read_file(o.in), *h);
  ShapePath sp{canonicalize(script.start, sys->lattice()).first, script.steps};
  auto res = lift_path(sp, {o.base[0], o.base[1]}, *sys);
  if (!res.ok()) {
    std::cout << "lift failed at step " << res.failure->step << ": " << to_string(res.failure->reason) << '\n';
    return 1;
  }
  emit(o, serialize_move_script(*res.path, *sys));
  return 0;
}

int cmd_random_path(const Options& o) {
  auto sys = load_system(o);
  State start = seeds_of(o, *sys).front();
  auto moves = random_edge_path(*sys, start, o.length, o.rng_seed);
  emit(o, serialize_move_script(from_edge_path(*sys, start, moves), *sys));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cubeplan: state complexes of reconfigurable systems"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--system", o.system_file, "System description file");
    sub->add_option("--builtin", o.builtin, "Built-in system")
        ->check(CLI::IsMember(builtin_names()));
    sub->add_option("--n", o.params.n, "Size parameter (tokens, arm length, cells)");
    sub->add_option("--variant", o.params.variant, "Hex catalogue: preserving|changing");
    sub->add_option("--constraint", o.params.constraint, "Global constraint (connected|none)");
    sub->add_option("--p", o.params.p, "Obstacle width");
    sub->add_option("--q", o.params.q, "Obstacle height");
    sub->add_option("--m", o.params.m, "Path length for agv-grid");
    sub->add_option("--radius", o.params.radius, "Hex workspace radius");
    sub->add_option("--seed", o.seed_file, "State file replacing the system's seeds");
    sub->add_option("--cap", o.cap, "Vertex cap for complex builds");
    sub->add_option("--out", o.out, "Write output to FILE");
    sub->add_option("--format", o.format, "text|counts")->check(CLI::IsMember({"text", "counts"}));
    sub->add_option("--threads", o.threads, "OpenMP threads for builds")->check(CLI::PositiveNumber);
  };

  std::map<std::string, std::function<int()>> handlers;
  auto sub = [&](const std::string& name, const std::string& help, std::function<int()> fn) {
    CLI::App* s = app.add_subcommand(name, help);
    add_common(s);
    handlers[name] = std::move(fn);
    return s;
  };
  for (auto* s : {sub("build", "Build the complex; fvec summary, export to --out", [&] { return cmd_build(o); }),
                  sub("stats", "Cell counts", [&] { return cmd_stats(o); }),
                  sub("check-npc", "Link condition", [&] { return cmd_check_npc(o); }),
                  sub("homology", "Mod-2 Betti numbers and Euler characteristic", [&] { return cmd_homology(o); }),
                  sub("export", "Full complex export", [&] { return cmd_export(o); })})
    s->add_flag("--shape", o.shape, "Use the shape complex (translation quotient)");
  sub("optimize", "Shorten a move script", [&] { return cmd_optimize(o, OptimizeMode::stopOnLength); })
      ->add_option("--in", o.in, "Move script");
  sub("normalize", "Normal form of a move script", [&] { return cmd_optimize(o, OptimizeMode::normalize); })
      ->add_option("--in", o.in, "Move script");
  auto* lift = sub("lift", "Place a shape path in the workspace", [&] { return cmd_lift(o); });
  lift->add_option("--in", o.in, "Shape path as a move script");
  lift->add_option("--base", o.base, "Base translation tx ty")->expected(2);
  auto* rp = sub("random-path", "Seeded random edge path", [&] { return cmd_random_path(o); });
  rp->add_option("--rng-seed", o.rng_seed, "Random seed");
  rp->add_option("--length", o.length, "Number of moves");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  try {
    for (auto* s : app.get_subcommands()) return handlers.at(s->get_name())();
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
