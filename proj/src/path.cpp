#include "cubeplan/path.hpp"

#include <algorithm>
#include <deque>
#include <random>
#include <set>

#include "cubeplan/complex.hpp"
#include "cubeplan/error.hpp"

namespace cubeplan {

std::int64_t CubePath::potential() const {
  std::int64_t f = 0;
  for (std::size_t i = 0; i < steps.size(); ++i) f += static_cast<std::int64_t>(i + 1) * steps[i].size();
  return f;
}

CubePath from_edge_path(const System& system, State start, std::span<const Action> moves) {
  CubePath out{start, {}};
  State s = std::move(start);
  for (std::size_t i = 0; i < moves.size(); ++i) {
    if (!is_admissible(s, moves[i], system))
      throw Error("NotAdmissible",
                  "move " + std::to_string(i + 1) + " " + format_action(moves[i], system) + " is not admissible");
    s = apply_unchecked(s, moves[i], system);
    out.steps.push_back({moves[i]});
  }
  return out;
}

std::vector<State> path_vertices(const System& system, const CubePath& path) {
  std::vector<State> out{path.start};
  for (const auto& step : path.steps) out.push_back(apply_all(out.back(), step, system));
  return out;
}

State path_end(const System& system, const CubePath& path) { return path_vertices(system, path).back(); }

Step commute_sub(const System& system, const Step& cur, const Step& next) {
  Step out;
  for (const auto& b : next) {
    bool ok = true;
    for (const auto& a : cur)
      if (!commute(a, b, system)) { ok = false; break; }
    if (ok) out.push_back(b);
  }
  return out;
}

std::pair<Step, Step> common_edge(const Step& prev, const Step& cur) {
  std::set<Placement> in_prev, shared;
  for (const auto& a : prev) in_prev.insert(a.at);
  for (const auto& a : cur)
    if (in_prev.count(a.at)) shared.insert(a.at);
  Step p, c;
  for (const auto& a : prev)
    if (!shared.count(a.at)) p.push_back(a);
  for (const auto& a : cur)
    if (!shared.count(a.at)) c.push_back(a);
  return {p, c};
}

namespace {

// All corners of the cube spanned by `step` at `base` satisfy the global
// constraint. Always true for local systems.
bool corners_valid(const System& system, const State& base, const Step& step) {
  if (!system.constraint()) return true;
  const auto& test = system.constraint()->test;
  for (std::uint32_t m = 1; m < (1u << step.size()); ++m) {
    State s = base;
    for (std::size_t j = 0; j < step.size(); ++j)
      if ((m >> j) & 1) s = apply_unchecked(s, step[j], system);
    if (!test(s)) return false;
  }
  return true;
}

Step merged(Step a, const Step& b) {
  a.insert(a.end(), b.begin(), b.end());
  std::sort(a.begin(), a.end());
  return a;
}

// The part of `next` that can move back into `cur` at `base`. With a global
// constraint the enlarged cube must stay inside the complex, so actions are
// admitted one at a time.
Step movable(const System& system, const State& base, const Step& cur, const Step& next) {
  Step x = commute_sub(system, cur, next);
  if (x.empty() || !system.constraint() || corners_valid(system, base, merged(cur, x))) return x;
  Step kept;
  for (const auto& b : x) {
    Step trial = kept;
    trial.push_back(b);
    if (corners_valid(system, base, merged(cur, trial))) kept = std::move(trial);
  }
  return kept;
}

Step without(const Step& s, const Step& remove) {
  Step out;
  for (const auto& a : s)
    if (!std::binary_search(remove.begin(), remove.end(), a)) out.push_back(a);
  return out;
}

}  // namespace

CubePath shrink_cube_path(const System& system, CubePath path, ShrinkStats* stats) {
  auto report = validate(system, path);
  if (!report.ok)
    throw Error("InvalidPath", "step " + std::to_string(report.index.value_or(0)) + ": " + report.reason);
  auto& C = path.steps;
  std::vector<State> v = path_vertices(system, path);  // v[j]: state before step j
  std::size_t iterations = 0;
  std::ptrdiff_t i = 0;
  while (i < static_cast<std::ptrdiff_t>(C.size())) {
    ++iterations;
    const std::size_t u = static_cast<std::size_t>(i);
    Step x;
    if (u + 1 < C.size()) {
      x = movable(system, v[u], C[u], C[u + 1]);
      if (!x.empty()) {
        C[u] = merged(C[u], x);
        C[u + 1] = without(C[u + 1], x);
        v[u + 1] = apply_all(v[u], C[u], system);
        if (C[u + 1].empty()) {
          C.erase(C.begin() + i + 1);
          v.erase(v.begin() + i + 2);
        }
      }
    }
    std::ptrdiff_t excised = 0;
    if (u > 0) {
      auto [p, q] = common_edge(C[u - 1], C[u]);
      if (p.size() != C[u - 1].size()) {
        C[u - 1] = std::move(p);
        C[u] = std::move(q);
        v[u] = apply_all(v[u - 1], C[u - 1], system);
        if (C[u].empty()) {
          C.erase(C.begin() + i);
          v.erase(v.begin() + i + 1);
          ++excised;
        }
        if (C[u - 1].empty()) {
          C.erase(C.begin() + i - 1);
          v.erase(v.begin() + i);
          ++excised;
        }
      }
    }
    if (excised > 0)
      i = std::max<std::ptrdiff_t>(i - excised, 0);
    else if (x.empty())
      ++i;
  }
  if (stats) stats->iterations += iterations;
  return path;
}

CubePath time_geodesic(const System& system, CubePath path, OptimizeMode mode, GeodesicStats* stats) {
  GeodesicStats local;
  for (;;) {
    ShrinkStats s;
    CubePath next = shrink_cube_path(system, path, &s);
    ++local.shrink_calls;
    local.iterations += s.iterations;
    const bool done = mode == OptimizeMode::stopOnLength ? next.length() >= path.length() : next == path;
    path = std::move(next);
    if (done) break;
  }
  if (stats) {
    stats->shrink_calls += local.shrink_calls;
    stats->iterations += local.iterations;
  }
  return path;
}

bool is_normal(const System& system, const CubePath& path) {
  if (!validate(system, path).reduced) return false;
  auto v = path_vertices(system, path);
  for (std::size_t i = 0; i + 1 < path.steps.size(); ++i)
    if (!movable(system, v[i], path.steps[i], path.steps[i + 1]).empty()) return false;
  return true;
}

PathReport validate(const System& system, const CubePath& path) {
  PathReport r;
  auto bad = [&](std::size_t i, std::string why) {
    r.ok = false;
    r.index = i + 1;
    r.reason = std::move(why);
    return r;
  };
  auto bad_start = [&](std::string why) {
    r.ok = false;
    r.index = 0;
    r.reason = std::move(why);
    return r;
  };
  if (!system.workspace().admits(path.start)) return bad_start("start state not admitted by the workspace");
  if (system.constraint() && !system.constraint()->test(path.start))
    return bad_start("start state violates the global constraint");
  State s = path.start;
  for (std::size_t i = 0; i < path.steps.size(); ++i) {
    const Step& step = path.steps[i];
    if (step.empty()) return bad(i, "empty step");
    if (!std::is_sorted(step.begin(), step.end())) return bad(i, "step not sorted");
    for (std::size_t j = 0; j + 1 < step.size(); ++j)
      if (step[j].at == step[j + 1].at) return bad(i, "placement repeated within a step");
    if (!commute(step, system)) return bad(i, "actions in a step do not commute");
    for (const auto& a : step)
      if (!is_admissible(s, a, system)) return bad(i, "action " + format_action(a, system) + " not admissible");
    if (!corners_valid(system, s, step)) return bad(i, "cube leaves the global constraint");
    s = apply_all(s, step, system);
  }
  for (std::size_t i = 0; i + 1 < path.steps.size(); ++i) {
    auto [p, q] = common_edge(path.steps[i], path.steps[i + 1]);
    if (p.size() != path.steps[i].size()) {
      r.reduced = false;
      r.shared_index = i + 1;
      break;
    }
  }
  return r;
}

std::size_t oracle_shortest(const StateComplex& complex, const State& u, const State& v) {
  auto su = complex.find_vertex(u), sv = complex.find_vertex(v);
  if (!su || !sv) throw Error("UnknownVertex", "endpoint is not a vertex of the complex");
  std::vector<std::int64_t> dist(complex.vertex_count(), -1);
  std::deque<std::uint32_t> queue{*su};
  dist[*su] = 0;
  while (!queue.empty()) {
    auto x = queue.front();
    queue.pop_front();
    if (x == *sv) return static_cast<std::size_t>(dist[x]);
    for (const auto& c : complex.upward_closure({0, x})) {
      if (c.dim == 0) continue;
      auto corners = complex.corners(c.dim, c.id);
      const std::uint32_t full = static_cast<std::uint32_t>(corners.size() - 1);
      for (std::uint32_t m = 0; m < corners.size(); ++m) {
        if (corners[m] != x) continue;
        auto y = corners[m ^ full];
        if (dist[y] < 0) {
          dist[y] = dist[x] + 1;
          queue.push_back(y);
        }
      }
    }
  }
  throw Error("Disconnected", "no path between the given states");
}

std::vector<Action> random_edge_path(const System& system, const State& start, std::size_t length,
                                     std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Action> out;
  State s = start;
  for (std::size_t i = 0; i < length; ++i) {
    auto acts = admissible_actions(s, system);
    if (acts.empty()) break;
    std::uniform_int_distribution<std::size_t> pick(0, acts.size() - 1);
    const Action a = acts[pick(rng)];
    s = apply_unchecked(s, a, system);
    out.push_back(a);
  }
  return out;
}

}  // namespace cubeplan
