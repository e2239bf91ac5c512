#include <doctest.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <string>
#include <sys/wait.h>

namespace {

struct Run {
  int code;
  std::string out;
};

Run run(const std::string& args) {
  std::string cmd = std::string(CUBEPLAN_EXE) + " " + args + " 2>&1";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::string out;
  std::array<char, 4096> buf;
  while (std::size_t n = fread(buf.data(), 1, buf.size(), p)) out.append(buf.data(), n);
  int status = pclose(p);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string temp_path(const std::string& name) { return "/tmp/cubeplan_cli_" + name; }

}  // namespace

TEST_CASE("stats and homology") {
  auto r = run("homology --builtin agv-k5 --n 2");
  CHECK(r.code == 0);
  CHECK(r.out.find("betti: 1 7 1") != std::string::npos);
  CHECK(r.out.find("chi: -5") != std::string::npos);
  r = run("stats --builtin arm --n 4");
  CHECK(r.code == 0);
  CHECK(r.out.find("16 20 5") != std::string::npos);
  r = run("stats --builtin hex --n 3 --shape");
  CHECK(r.code == 0);
  CHECK(r.out.find("11 24 9") != std::string::npos);
}

TEST_CASE("link checks") {
  auto ok = run("check-npc --builtin arm --n 4");
  CHECK(ok.code == 0);
  auto bad = run("check-npc --builtin hex-curved");
  CHECK(bad.code == 0);
  CHECK(bad.out.find("missing") != std::string::npos);
}

TEST_CASE("system files, export and optimisation") {
  auto sysfile = temp_path("slide.sys");
  std::ofstream(sysfile) << "lattice square\nworkspace box 0 0 3 1\n"
                            "obstacle (0,0) occupied\nobstacle (1,0) occupied\n"
                            "obstacle (2,0) occupied\nobstacle (3,0) occupied\n"
                            "generator slide\n  support (0,0) (1,0) (0,-1) (1,-1)\n  trace (0,0) (1,0)\n"
                            "  u0 1011\n  u1 0111\nend\n"
                            "seed (0,0) (1,0) (2,0) (3,0) (0,1)\n";
  auto r = run("export --system " + sysfile);
  CHECK(r.code == 0);
  CHECK(r.out.rfind("fvec: 4 3", 0) == 0);
  r = run("build --system " + sysfile);
  CHECK(r.code == 0);
  CHECK(r.out.find("4 3") != std::string::npos);

  auto script = temp_path("walk.txt");
  r = run("random-path --builtin arm --n 3 --rng-seed 5 --length 12 --out " + script);
  REQUIRE(r.code == 0);
  r = run("normalize --builtin arm --n 3 --in " + script);
  CHECK(r.code == 0);
  CHECK(r.out.find("# normal: yes") != std::string::npos);
  r = run("optimize --builtin arm --n 3 --in " + script);
  CHECK(r.code == 0);
  CHECK(r.out.find("# length: 12 -> ") != std::string::npos);
}

TEST_CASE("errors") {
  CHECK(run("").code == 2);
  CHECK(run("stats").code == 2);
  CHECK(run("stats --builtin arm --system x").code == 2);
  CHECK(run("stats --builtin nope").code == 2);
  CHECK(run("stats --builtin hex --variant sideways").code == 1);
  CHECK(run("stats --system /nonexistent/file").code == 1);
  auto bad = temp_path("bad.sys");
  std::ofstream(bad) << "lattice square\nworkspace box 0 0 1\n";
  auto r = run("stats --system " + bad);
  CHECK(r.code == 1);
  CHECK(r.out.find("line 2") != std::string::npos);
}
