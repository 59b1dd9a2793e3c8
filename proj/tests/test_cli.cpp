#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "json.hpp"

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

// Spawns the real binary (path injected by the build) and checks the
// documented output lines and the exit-code contract.

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct RunResult {
  int code = -1;
  std::string out;  // stdout (plus stderr when the command redirects it)
};

RunResult run_shell(const std::string& cmd) {
  RunResult res;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf;
  size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) res.out.append(buf.data(), got);
  int status = pclose(pipe);
  res.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return res;
}

RunResult run_cli(const std::string& args) {
  return run_shell(std::string(SRT_BIN) + " " + args);
}

fs::path write_temp(const std::string& name, const std::string& text) {
  fs::path p = fs::temp_directory_path() / name;
  std::ofstream(p) << text;
  return p;
}

const std::string kSingleEdge = "agents: a b\nprefs a: b\nprefs b: a\n";
const std::string kPathTie = "agents: a b c\nprefs a: b\nprefs b: (a c)\nprefs c: b\n";
const std::string kTriangle = "agents: a b c\nprefs a: b c\nprefs b: c a\nprefs c: a b\n";
const std::string kNoBranchK4 =
    "agents: a0 a1 a2 a3\n"
    "prefs a0: (a1 a2) a3\n"
    "prefs a1: (a2 a3) a0\n"
    "prefs a2: a3 (a0 a1)\n"
    "prefs a3: a0 (a1 a2)\n";

}  // namespace

TEST_CASE("solve: yes with matching") {
  auto p = write_temp("srt_one.txt", kSingleEdge);
  RunResult r = run_cli("solve " + p.string());
  CHECK(r.code == 0);
  CHECK(r.out == "result: yes\nmatching: a-b\niterations: 0\n");
}

TEST_CASE("solve: no via empty polytope, with reason line") {
  auto p = write_temp("srt_tie.txt", kPathTie);
  RunResult r = run_cli("solve " + p.string());
  CHECK(r.code == 0);
  CHECK(r.out == "result: no\nreason: polytope-empty\niterations: 0\n");
}

TEST_CASE("solve: cyclic triangle is no") {
  auto p = write_temp("srt_tri.txt", kTriangle);
  RunResult r = run_cli("solve " + p.string());
  CHECK(r.code == 0);
  CHECK(r.out.substr(0, 10) == "result: no");
}

TEST_CASE("solve: trace and certificate output") {
  auto p = write_temp("srt_nobranch.txt", kNoBranchK4);
  RunResult r = run_cli("solve " + p.string() + " --trace");
  CHECK(r.code == 0);
  CHECK(r.out.find("t=1 f=a0-a1 v=a0 g=a0-a3 branch=no |T|=4\n") != std::string::npos);

  auto one = write_temp("srt_one.txt", kSingleEdge);
  r = run_cli("solve " + one.string() + " --certificate");
  CHECK(r.out.find("a-b=1\n") != std::string::npos);
}

TEST_CASE("solve: json carries the same decision as plain output") {
  for (const auto& [name, text] :
       {std::pair<std::string, std::string>{"srt_j1.txt", kSingleEdge},
        {"srt_j2.txt", kPathTie},
        {"srt_j3.txt", kNoBranchK4}}) {
    auto p = write_temp(name, text);
    RunResult plain = run_cli("solve " + p.string());
    RunResult as_json = run_cli("solve " + p.string() + " --json");
    REQUIRE(plain.code == 0);
    REQUIRE(as_json.code == 0);
    json doc = json::parse(as_json.out);
    // result
    std::string result_line = plain.out.substr(0, plain.out.find('\n'));
    CHECK(result_line == "result: " + doc["result"].get<std::string>());
    // iterations
    std::string iter_token = "iterations: " + std::to_string(doc["iterations"].get<int>());
    CHECK(plain.out.find(iter_token) != std::string::npos);
    // matching
    if (doc.contains("matching")) {
      std::string joined;
      for (const auto& m : doc["matching"]) {
        joined += (joined.empty() ? "" : " ") + m.get<std::string>();
      }
      CHECK(plain.out.find("matching: " + joined + "\n") != std::string::npos);
    }
    // reason
    if (doc.contains("reason")) {
      CHECK(plain.out.find("reason: " + doc["reason"].get<std::string>() + "\n") !=
            std::string::npos);
    }
  }
}

TEST_CASE("verify command") {
  auto strict = write_temp("srt_strict.txt", "agents: a b c\nprefs a: b\nprefs b: a c\nprefs c: b\n");
  RunResult r = run_cli("verify " + strict.string() + " a-b");
  CHECK(r.code == 0);
  CHECK(r.out == "strongly-stable: true\n");

  auto tie = write_temp("srt_tie.txt", kPathTie);
  r = run_cli("verify " + tie.string() + " a-b");
  CHECK(r.code == 0);
  CHECK(r.out == "strongly-stable: false blocking-edge: b-c\n");

  r = run_cli("verify " + tie.string() + " a-b b-c 2>/dev/null");
  CHECK(r.code == 2);  // overlapping pairs are not a matching

  r = run_cli("verify " + tie.string() + " a-c 2>/dev/null");
  CHECK(r.code == 2);  // not an edge

  auto mf = write_temp("srt_matching.txt", "a-b\n");
  r = run_cli("verify " + tie.string() + " --matching-file " + mf.string() + " --json");
  CHECK(r.code == 0);
  json doc = json::parse(r.out);
  CHECK(doc["strongly_stable"] == false);
  CHECK(doc["blocking_edge"] == "b-c");
}

TEST_CASE("oracle command and its cap") {
  auto tri = write_temp("srt_tri.txt", kTriangle);
  RunResult r = run_cli("oracle " + tri.string());
  CHECK(r.code == 0);
  CHECK(r.out == "result: no\nmethod: brute-force\n");

  auto one = write_temp("srt_one.txt", kSingleEdge);
  r = run_cli("oracle " + one.string());
  CHECK(r.out == "result: yes\nmatching: a-b\nmethod: brute-force\n");

  r = run_cli("oracle " + tri.string() + " --limit-edges 1 2>/dev/null");
  CHECK(r.code == 3);
}

TEST_CASE("gen determinism and round trip through solve") {
  RunResult a = run_cli("gen --n 5 --edge 2/3 --tie 1/2 --seed 7");
  RunResult b = run_cli("gen --n 5 --edge 2/3 --tie 1/2 --seed 7");
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  auto p = write_temp("srt_gen.txt", a.out);
  CHECK(run_cli("solve " + p.string()).code == 0);
}

TEST_CASE("crosscheck summary") {
  RunResult r = run_cli("crosscheck --n 4 --count 6 --seed 3");
  CHECK(r.code == 0);
  CHECK(r.out.find("instances: 6\n") != std::string::npos);
  CHECK(r.out.find("result: agreement\n") != std::string::npos);
}

TEST_CASE("solve with exhaustive and cross-checked separation modes") {
  auto tri = write_temp("srt_tri.txt", kTriangle);
  for (const char* mode : {"exhaustive", "both"}) {
    RunResult r = run_cli("solve " + tri.string() + " --separation " + mode);
    CHECK(r.code == 0);
    CHECK(r.out.substr(0, 10) == "result: no");
  }
}

TEST_CASE("cut log appears under SR_LOG=debug") {
  auto tri = write_temp("srt_tri.txt", kTriangle);
  RunResult quiet = run_cli("solve " + tri.string() + " 2>&1 1>/dev/null");
  CHECK(quiet.out.find("cut:") == std::string::npos);
  RunResult debug = run_shell("SR_LOG=debug " + std::string(SRT_BIN) + " solve " + tri.string() +
                              " 2>&1 1>/dev/null");
  CHECK(debug.code == 0);
  CHECK(debug.out.find("cut: {a b c} lhs=3/2 rhs=1") != std::string::npos);
}

TEST_CASE("exit code 2 on input errors") {
  CHECK(run_cli("solve /nonexistent-file 2>/dev/null").code == 2);
  auto bad = write_temp("srt_bad.txt", "agents: a b\nprefs a: b\nprefs b:\n");
  CHECK(run_cli("solve " + bad.string() + " 2>/dev/null").code == 2);
  CHECK(run_cli("gen --n 3 --edge nonsense 2>/dev/null").code == 2);
  CHECK(run_cli("nosuchcommand 2>/dev/null").code == 2);
}

TEST_CASE("exit code 3 on limit errors") {
  auto tri = write_temp("srt_tri.txt", kTriangle);
  CHECK(run_cli("solve " + tri.string() + " --limit-pivots 1 2>/dev/null").code == 3);
}
