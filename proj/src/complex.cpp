#include "cubeplan/complex.hpp"

#include <omp.h>

#include <algorithm>
#include <exception>
#include <map>
#include <mutex>
#include <sstream>

#include "cubeplan/error.hpp"
#include "cubeplan/shape.hpp"

namespace cubeplan {

namespace {

Placement shifted(Placement p, Offset t) { return {p.gen, p.tx + t.dx, p.ty + t.dy}; }

}  // namespace

class ComplexBuilder {
 public:
  ComplexBuilder(std::shared_ptr<const System> system, bool quotient, BuildOptions options, bool parallel)
      : sys_(std::move(system)), quotient_(quotient), options_(options), parallel_(parallel) {}

  StateComplex run(std::vector<State> seeds) {
    if (!quotient_ && !sys_->workspace().is_finite())
      throw Error("WorkspaceNotFinite", "state complexes need a finite workspace");
    if (quotient_) {
      for (const auto& g : sys_->catalogue())
        if (std::find(g.u0.begin(), g.u0.end(), 1) == g.u0.end() ||
            std::find(g.u1.begin(), g.u1.end(), 1) == g.u1.end())
          throw Error("WorkspaceNotFinite",
                      "generator '" + g.id + "' has an empty local state; unbounded placements");
    }
    out_.system_ = sys_;
    out_.quotient_ = quotient_;
    out_.cap_ = options_.max_vertices;
    for (auto& s : seeds) {
      if (!sys_->workspace().admits(s))
        throw Error("InvalidState", "seed state not admitted by the workspace");
      if (sys_->constraint() && !sys_->constraint()->test(s))
        throw Error("InvalidState", "seed violates global constraint '" + sys_->constraint()->name + "'");
      insert(canon(s).first);
    }
    if (parallel_) explore_levels(); else explore_fifo();
    collect_cubes();
    link_facets();
    build_cofacets();
    return std::move(out_);
  }

 private:
  struct Candidate {
    std::uint32_t base;
    std::vector<Placement> placements;
    std::vector<std::uint32_t> corners;
    std::vector<Offset> offsets;
  };

  std::pair<State, Offset> canon(const State& s) const {
    if (!quotient_ || s.empty()) return {s, {}};
    return canonicalize(s, sys_->lattice());
  }

  void insert(State s) {
    if (out_.vertex_index_.count(s)) return;
    if (out_.vertices_.size() >= options_.max_vertices) {
      out_.truncated_ = true;
      return;
    }
    out_.vertex_index_.emplace(s, static_cast<std::uint32_t>(out_.vertices_.size()));
    out_.vertices_.push_back(std::move(s));
  }

  void expand(std::uint32_t v, std::vector<Action>& acts, std::vector<State>& succ) const {
    const State& s = out_.vertices_[v];
    acts = admissible_actions(s, *sys_);
    succ.clear();
    for (const auto& a : acts) succ.push_back(canon(apply_unchecked(s, a, *sys_)).first);
  }

  void explore_fifo() {
    std::vector<State> succ;
    for (std::size_t i = 0; i < out_.vertices_.size(); ++i) {
      actions_.emplace_back();
      expand(static_cast<std::uint32_t>(i), actions_.back(), succ);
      for (auto& s : succ) insert(std::move(s));
    }
  }

  // Level-synchronous search; successors are merged in (vertex, action)
  // order, which reproduces the FIFO numbering exactly.
  void explore_levels() {
    std::size_t begin = 0;
    while (begin < out_.vertices_.size()) {
      const std::size_t end = out_.vertices_.size();
      const std::int64_t n = static_cast<std::int64_t>(end - begin);
      std::vector<std::vector<Action>> acts(n);
      std::vector<std::vector<State>> succ(n);
      std::exception_ptr failure;
      std::mutex failure_mutex;
#pragma omp parallel for schedule(dynamic, 16) num_threads(options_.threads)
      for (std::int64_t i = 0; i < n; ++i) {
        try {
          expand(static_cast<std::uint32_t>(begin + i), acts[i], succ[i]);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
      if (failure) std::rethrow_exception(failure);
      for (std::int64_t i = 0; i < n; ++i) {
        actions_.push_back(std::move(acts[i]));
        for (auto& s : succ[i]) insert(std::move(s));
      }
      begin = end;
    }
  }

  // Cubes based at v: cliques of pairwise-commuting forward actions whose
  // corners are all vertices of the complex.
  std::vector<Candidate> cubes_at(std::uint32_t v) const {
    std::vector<Action> fwd;
    for (const auto& a : actions_[v])
      if (a.dir == Direction::forward) fwd.push_back(a);
    const std::size_t n = fwd.size();
    std::vector<std::uint8_t> compat(n * n, 0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        compat[i * n + j] = compat[j * n + i] = commute(fwd[i], fwd[j], *sys_);

    std::vector<Candidate> out;
    std::vector<std::size_t> clique;
    std::vector<State> states{out_.vertices_[v]};
    std::vector<std::uint32_t> ids{v};
    std::vector<Offset> offs{Offset{}};

    auto dfs = [&](auto&& self, std::size_t start) -> void {
      for (std::size_t j = start; j < n; ++j) {
        bool ok = true;
        for (std::size_t c : clique)
          if (!compat[c * n + j]) { ok = false; break; }
        if (!ok) continue;
        const std::size_t half = states.size();
        bool present = true;
        for (std::size_t m = 0; m < half && present; ++m) {
          State next = apply_unchecked(states[m], fwd[j], *sys_);
          auto [cs, off] = canon(next);
          auto it = out_.vertex_index_.find(cs);
          if (it == out_.vertex_index_.end()) { present = false; break; }
          states.push_back(std::move(next));
          ids.push_back(it->second);
          offs.push_back(off);
        }
        if (present) {
          clique.push_back(j);
          Candidate cand{v, {}, ids, offs};
          for (std::size_t c : clique) cand.placements.push_back(fwd[c].at);
          out.push_back(std::move(cand));
          self(self, j + 1);
          clique.pop_back();
        }
        states.resize(half);
        ids.resize(half);
        offs.resize(half);
      }
    };
    dfs(dfs, 0);
    return out;
  }

  void collect_cubes() {
    const std::size_t nv = out_.vertices_.size();
    std::vector<std::vector<Candidate>> per_vertex(nv);
    if (parallel_) {
      std::exception_ptr failure;
      std::mutex failure_mutex;
#pragma omp parallel for schedule(dynamic, 16) num_threads(options_.threads)
      for (std::int64_t v = 0; v < static_cast<std::int64_t>(nv); ++v) {
        try {
          per_vertex[v] = cubes_at(static_cast<std::uint32_t>(v));
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
      if (failure) std::rethrow_exception(failure);
    } else {
      for (std::size_t v = 0; v < nv; ++v) per_vertex[v] = cubes_at(static_cast<std::uint32_t>(v));
    }

    auto& cells = out_.cells_;
    cells.counts.assign(1, nv);
    cells.facets.assign(1, {});
    auto grow = [&](std::size_t dim) {
      if (cells.counts.size() > dim) return;
      cells.counts.resize(dim + 1, 0);
      cells.facets.resize(dim + 1);
      out_.bases_.resize(dim + 1);
      out_.placements_.resize(dim + 1);
      out_.corners_.resize(dim + 1);
      out_.corner_offsets_.resize(dim + 1);
      out_.key_index_.resize(dim + 1);
    };
    grow(0);
    for (auto& list : per_vertex) {
      for (auto& c : list) {
        const std::size_t k = c.placements.size();
        grow(k);
        auto id = static_cast<std::uint32_t>(cells.counts[k]++);
        out_.bases_[k].push_back(c.base);
        out_.key_index_[k].emplace(CubeKey{c.base, c.placements}, id);
        out_.placements_[k].insert(out_.placements_[k].end(), c.placements.begin(), c.placements.end());
        out_.corners_[k].insert(out_.corners_[k].end(), c.corners.begin(), c.corners.end());
        if (quotient_)
          out_.corner_offsets_[k].insert(out_.corner_offsets_[k].end(), c.offsets.begin(), c.offsets.end());
      }
      list.clear();
      list.shrink_to_fit();
    }
  }

  void link_facets() {
    auto& cells = out_.cells_;
    for (std::size_t k = 1; k < cells.counts.size(); ++k) {
      const std::int64_t n = static_cast<std::int64_t>(cells.counts[k]);
      cells.facets[k].assign(static_cast<std::size_t>(n) * 2 * k, 0);
      std::exception_ptr failure;
      std::mutex failure_mutex;
#pragma omp parallel for schedule(static) num_threads(parallel_ ? options_.threads : 1)
      for (std::int64_t id = 0; id < n; ++id) {
        try {
          fill_facets(k, static_cast<std::uint32_t>(id));
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
      if (failure) std::rethrow_exception(failure);
    }
  }

  void fill_facets(std::size_t k, std::uint32_t id) {
    auto corners = out_.corners(k, id);
    std::uint32_t* dst = out_.cells_.facets[k].data() + static_cast<std::size_t>(id) * 2 * k;
    if (k == 1) {
      dst[0] = corners[0];
      dst[1] = corners[1];
      return;
    }
    auto pl = out_.placements(k, id);
    for (std::size_t i = 0; i < k; ++i) {
      CubeKey lower{corners[0], {}};
      for (std::size_t j = 0; j < k; ++j)
        if (j != i) lower.placements.push_back(pl[j]);
      const std::uint32_t mask = 1u << i;
      CubeKey upper{corners[mask], lower.placements};
      Offset off = out_.corner_offset(k, id, mask);
      for (auto& p : upper.placements) p = shifted(p, off);
      auto lo = out_.find_key(k - 1, lower);
      auto hi = out_.find_key(k - 1, upper);
      if (!lo || !hi) throw Error("InternalError", "facet of a stored cube is missing");
      dst[2 * i] = *lo;
      dst[2 * i + 1] = *hi;
    }
  }

  void build_cofacets() {
    auto& cells = out_.cells_;
    const std::size_t top = cells.counts.size();
    out_.cofacet_start_.assign(top, {});
    out_.cofacet_data_.assign(top, {});
    for (std::size_t k = 0; k < top; ++k) {
      out_.cofacet_start_[k].assign(cells.counts[k] + 1, 0);
      if (k + 1 >= top) continue;
      std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
      for (std::uint32_t id = 0; id < cells.counts[k + 1]; ++id)
        for (auto f : cells.facets_of(k + 1, id)) pairs.emplace_back(f, id);
      std::sort(pairs.begin(), pairs.end());
      pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
      for (auto& [f, c] : pairs) {
        ++out_.cofacet_start_[k][f + 1];
        out_.cofacet_data_[k].push_back(c);
      }
      for (std::size_t i = 1; i < out_.cofacet_start_[k].size(); ++i)
        out_.cofacet_start_[k][i] += out_.cofacet_start_[k][i - 1];
    }
  }

  std::shared_ptr<const System> sys_;
  bool quotient_;
  BuildOptions options_;
  bool parallel_;
  StateComplex out_;
  std::vector<std::vector<Action>> actions_;
};

StateComplex build_complex(std::shared_ptr<const System> system, std::vector<State> seeds, BuildOptions options) {
  return ComplexBuilder(std::move(system), false, options, true).run(std::move(seeds));
}

StateComplex build_complex_serial(std::shared_ptr<const System> system, std::vector<State> seeds,
                                  BuildOptions options) {
  return ComplexBuilder(std::move(system), false, options, false).run(std::move(seeds));
}

StateComplex build_quotient_complex(std::shared_ptr<const System> system, std::vector<State> seeds,
                                    BuildOptions options) {
  return ComplexBuilder(std::move(system), true, options, true).run(std::move(seeds));
}

std::optional<std::uint32_t> StateComplex::find_vertex(const State& s) const {
  State key = s;
  if (quotient_ && !s.empty()) key = canonicalize(s, system_->lattice()).first;
  auto it = vertex_index_.find(key);
  if (it == vertex_index_.end()) return std::nullopt;
  return it->second;
}

std::uint32_t StateComplex::base(std::size_t dim, std::uint32_t id) const {
  return dim == 0 ? id : bases_.at(dim).at(id);
}

std::span<const Placement> StateComplex::placements(std::size_t dim, std::uint32_t id) const {
  if (dim == 0) return {};
  return {placements_.at(dim).data() + static_cast<std::size_t>(id) * dim, dim};
}

std::span<const std::uint32_t> StateComplex::cofacets(std::size_t dim, std::uint32_t id) const {
  if (dim >= cofacet_start_.size()) return {};
  const auto& start = cofacet_start_[dim];
  return {cofacet_data_[dim].data() + start[id], start[id + 1] - start[id]};
}

std::span<const std::uint32_t> StateComplex::corners(std::size_t dim, std::uint32_t id) const {
  if (dim == 0) return {};
  const std::size_t n = std::size_t{1} << dim;
  return {corners_.at(dim).data() + id * n, n};
}

Offset StateComplex::corner_offset(std::size_t dim, std::uint32_t id, std::uint32_t mask) const {
  if (!quotient_ || dim == 0) return {};
  return corner_offsets_.at(dim).at((static_cast<std::size_t>(id) << dim) + mask);
}

Cube StateComplex::cube(std::size_t dim, std::uint32_t id) const {
  Cube c{vertex(base(dim, id)), {}};
  for (const auto& p : placements(dim, id)) c.actions.push_back({p, Direction::forward});
  return c;
}

std::optional<std::uint32_t> StateComplex::find_key(std::size_t dim, const CubeKey& key) const {
  if (dim == 0) return key.base < vertices_.size() ? std::optional(key.base) : std::nullopt;
  if (dim >= key_index_.size()) return std::nullopt;
  auto it = key_index_[dim].find(key);
  if (it == key_index_[dim].end()) return std::nullopt;
  return it->second;
}

std::optional<CellRef> StateComplex::find_cube(const Cube& c) const {
  State fwd_base = c.base;
  for (const auto& a : c.actions)
    if (a.dir == Direction::backward) fwd_base = apply_unchecked(fwd_base, a, *system_);
  Offset off{};
  if (quotient_ && !fwd_base.empty()) std::tie(fwd_base, off) = canonicalize(fwd_base, system_->lattice());
  auto it = vertex_index_.find(fwd_base);
  if (it == vertex_index_.end()) return std::nullopt;
  if (c.actions.empty()) return CellRef{0, it->second};
  CubeKey key{it->second, {}};
  for (const auto& a : c.actions) key.placements.push_back(shifted(a.at, off));
  std::sort(key.placements.begin(), key.placements.end());
  auto id = find_key(c.dim(), key);
  if (!id) return std::nullopt;
  return CellRef{c.dim(), *id};
}

std::vector<CellRef> StateComplex::upward_closure(CellRef cell) const {
  std::vector<CellRef> out{cell};
  std::vector<std::uint32_t> level{cell.id};
  for (std::size_t k = cell.dim; !level.empty() && k + 1 < cells_.counts.size(); ++k) {
    std::vector<std::uint32_t> next;
    for (auto id : level)
      for (auto c : cofacets(k, id)) next.push_back(c);
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    for (auto id : next) out.push_back({k + 1, id});
    level = std::move(next);
  }
  return out;
}

bool identical(const StateComplex& a, const StateComplex& b) {
  if (a.vertex_count() != b.vertex_count() || a.cells().counts != b.cells().counts ||
      a.truncated() != b.truncated())
    return false;
  for (std::uint32_t v = 0; v < a.vertex_count(); ++v)
    if (a.vertex(v) != b.vertex(v)) return false;
  for (std::size_t k = 1; k < a.cells().counts.size(); ++k) {
    if (a.cells().facets[k] != b.cells().facets[k]) return false;
    for (std::uint32_t id = 0; id < a.count(k); ++id) {
      if (a.base(k, id) != b.base(k, id)) return false;
      auto pa = a.placements(k, id), pb = b.placements(k, id);
      if (!std::equal(pa.begin(), pa.end(), pb.begin(), pb.end())) return false;
    }
  }
  return true;
}

std::vector<Cube> boundary(const Cube& cube, const System& system) {
  std::vector<Cube> out;
  for (std::size_t i = 0; i < cube.actions.size(); ++i) {
    Cube lower{cube.base, {}};
    for (std::size_t j = 0; j < cube.actions.size(); ++j)
      if (j != i) lower.actions.push_back(cube.actions[j]);
    Cube upper{apply_unchecked(cube.base, cube.actions[i], system), lower.actions};
    out.push_back(std::move(lower));
    out.push_back(std::move(upper));
  }
  return out;
}

LinkComplex link(const StateComplex& complex, const State& state) {
  auto v = complex.find_vertex(state);
  if (!v) throw Error("UnknownVertex", "state is not a vertex of the complex");
  return link(complex, *v);
}

LinkComplex link(const StateComplex& complex, std::uint32_t v) {
  if (v >= complex.vertex_count()) throw Error("UnknownVertex", "vertex id out of range");
  LinkComplex out;
  out.vertex = v;
  auto closure = complex.upward_closure({0, v});
  // Actions of a cube as seen from one of its corners.
  auto corner_actions = [&](const CellRef& c, std::uint32_t mask) {
    std::vector<Action> acts;
    Offset off = complex.corner_offset(c.dim, c.id, mask);
    auto pl = complex.placements(c.dim, c.id);
    for (std::size_t i = 0; i < pl.size(); ++i)
      acts.push_back({Placement{pl[i].gen, pl[i].tx + off.dx, pl[i].ty + off.dy},
                      (mask >> i) & 1 ? Direction::backward : Direction::forward});
    return acts;
  };
  std::vector<std::pair<CellRef, std::uint32_t>> incidences;
  for (const auto& c : closure) {
    if (c.dim == 0) continue;
    auto corners = complex.corners(c.dim, c.id);
    for (std::uint32_t m = 0; m < corners.size(); ++m)
      if (corners[m] == v) incidences.emplace_back(c, m);
  }
  for (auto& [c, m] : incidences)
    if (c.dim == 1) {
      auto a = corner_actions(c, m);
      out.vertices.push_back(a[0]);
    }
  std::sort(out.vertices.begin(), out.vertices.end());
  out.vertices.erase(std::unique(out.vertices.begin(), out.vertices.end()), out.vertices.end());
  for (auto& [c, m] : incidences) {
    std::vector<std::uint32_t> simplex;
    for (const auto& a : corner_actions(c, m)) {
      auto it = std::lower_bound(out.vertices.begin(), out.vertices.end(), a);
      if (it == out.vertices.end() || *it != a) throw Error("InternalError", "link simplex without vertex");
      simplex.push_back(static_cast<std::uint32_t>(it - out.vertices.begin()));
    }
    std::sort(simplex.begin(), simplex.end());
    out.simplices.push_back(std::move(simplex));
  }
  std::sort(out.simplices.begin(), out.simplices.end());
  return out;
}

namespace {

std::vector<LinkViolation> violations_at(const StateComplex& complex, std::uint32_t v) {
  LinkComplex lk = link(complex, v);
  const std::size_t n = lk.vertices.size();
  std::map<std::vector<std::uint32_t>, int> count;
  std::vector<std::uint8_t> adj(n * n, 0);
  for (const auto& s : lk.simplices) {
    ++count[s];
    if (s.size() == 2) adj[s[0] * n + s[1]] = adj[s[1] * n + s[0]] = 1;
  }
  // Simplices whose vertex count exceeds 2 but whose edges are missing are
  // impossible in a cube complex; every clique is checked below.
  std::vector<LinkViolation> out;
  std::vector<std::uint32_t> clique;
  auto dfs = [&](auto&& self, std::uint32_t start) -> void {
    for (std::uint32_t j = start; j < n; ++j) {
      bool ok = true;
      for (auto c : clique)
        if (!adj[c * n + j]) { ok = false; break; }
      if (!ok) continue;
      clique.push_back(j);
      auto it = count.find(clique);
      int k = it == count.end() ? 0 : it->second;
      if (k != 1) {
        LinkViolation viol{v, {}, k == 0 ? LinkViolation::Kind::missing : LinkViolation::Kind::duplicated};
        for (auto c : clique) viol.actions.push_back(lk.vertices[c]);
        out.push_back(std::move(viol));
      }
      self(self, j + 1);
      clique.pop_back();
    }
  };
  dfs(dfs, 0);
  return out;
}

void require_complete(const StateComplex& complex) {
  if (complex.truncated())
    throw Error("TruncatedComplex", "complex was truncated at " + std::to_string(complex.cap()) + " vertices");
}

}  // namespace

LinkReport check_link_condition(const StateComplex& complex, int threads) {
  require_complete(complex);
  const std::int64_t nv = static_cast<std::int64_t>(complex.vertex_count());
  std::vector<std::vector<LinkViolation>> found(nv);
  std::exception_ptr failure;
  std::mutex failure_mutex;
#pragma omp parallel for schedule(dynamic, 32) num_threads(threads)
  for (std::int64_t v = 0; v < nv; ++v) {
    try {
      found[v] = violations_at(complex, static_cast<std::uint32_t>(v));
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  LinkReport report;
  for (auto& list : found)
    for (auto& viol : list) report.violations.push_back(std::move(viol));
  report.ok = report.violations.empty();
  return report;
}

LinkReport check_link_condition_serial(const StateComplex& complex) {
  require_complete(complex);
  LinkReport report;
  for (std::uint32_t v = 0; v < complex.vertex_count(); ++v)
    for (auto& viol : violations_at(complex, v)) report.violations.push_back(std::move(viol));
  report.ok = report.violations.empty();
  return report;
}

std::vector<Cube> star(const StateComplex& complex, const Cube& cube) {
  auto ref = complex.find_cube(cube);
  if (!ref) throw Error("UnknownCube", "cube is not a cell of the complex");
  std::vector<Cube> out;
  for (const auto& c : complex.upward_closure(*ref)) out.push_back(complex.cube(c.dim, c.id));
  return out;
}

std::string export_complex(const StateComplex& complex) {
  const auto& sys = complex.system();
  std::ostringstream os;
  os << "fvec:";
  for (auto n : complex.cells().counts) os << ' ' << n;
  os << '\n';
  os << "truncated: " << (complex.truncated() ? 1 : 0) << '\n';
  os << "quotient: " << (complex.is_quotient() ? 1 : 0) << '\n';
  os << "dim 0\n";
  for (std::uint32_t v = 0; v < complex.vertex_count(); ++v) {
    os << "v " << v << ':';
    for (Cell c : complex.vertex(v).cells()) os << ' ' << format_cell(c, sys.lattice());
    os << '\n';
  }
  for (std::size_t k = 1; k < complex.cells().counts.size(); ++k) {
    os << "dim " << k << '\n';
    for (std::uint32_t id = 0; id < complex.count(k); ++id) {
      os << "c " << id << ": base " << complex.base(k, id) << " acts";
      const char* sep = " ";
      for (const auto& p : complex.placements(k, id)) {
        os << sep << format_action({p, Direction::forward}, sys);
        sep = "; ";
      }
      os << " facets";
      for (auto f : complex.facets(k, id)) os << ' ' << f;
      os << '\n';
    }
  }
  return os.str();
}

}  // namespace cubeplan
