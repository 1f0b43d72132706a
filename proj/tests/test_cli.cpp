#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "crhs/catalog.hpp"
#include "crhs/cli.hpp"

using namespace crhs;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

// Runs the crhs binary through the shell; stderr is merged when `merge` is set.
Run run_bin(const std::string& args, bool merge = false, const std::string& env = "") {
  std::string cmd = env + (env.empty() ? "" : " ") + std::string(CRHS_BIN) + " " + args + (merge ? " 2>&1" : " 2>/dev/null");
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  int st = pclose(p);
  r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

bool has(const std::string& s, const std::string& sub) { return s.find(sub) != std::string::npos; }

std::string tmp(const std::string& name) { return (std::filesystem::temp_directory_path() / name).string(); }

}  // namespace

TEST_CASE("levi on the definite quadric") {
  auto r = run_bin("levi --surface \"v - abs2(z1) - abs2(z2)\" --at 0,0,0");
  CHECK(r.code == 0);
  CHECK(has(r.out, "Definite"));
  CHECK_FALSE(has(r.out, "Indefinite"));

  auto j = run_bin("levi --surface \"v - abs2(z1) - abs2(z2)\" --at 0,0,0 --json");
  CHECK(j.code == 0);
  auto doc = nlohmann::json::parse(j.out);
  CHECK(doc["levi"] == "Definite");
}

TEST_CASE("catalog verify of one entry") {
  auto r = run_bin("catalog verify --entry II.2.2 --points 50 --tol 1e-8");
  CHECK(r.code == 0);
  CHECK(has(r.out, "II.2.2"));
  CHECK(has(r.out, "PASS"));
  CHECK(has(r.out, "0 failed"));
}

TEST_CASE("jacobi parameter constraint is a usage error") {
  auto r = run_bin("jacobi --algebra g5_19 --beta 0", true);
  CHECK(r.code == 2);
  CHECK(has(r.out, "beta"));
  CHECK(run_bin("jacobi --algebra g5_19 --beta 1").code == 0);
}

TEST_CASE("exit codes") {
  CHECK(run_bin("parse \"z1*conj(z2)\"").code == 0);
  auto bad = run_bin("parse \"z1^^\"", true);
  CHECK(bad.code == 2);
  CHECK(has(bad.out, "offset 3"));
  CHECK(run_bin("bogus").code == 2);
  CHECK(run_bin("tangency --surface \"v - abs2(z1) - abs2(z2)\" --field \"0;0;1\"").code == 2);

  auto fail = run_bin("tangency --surface \"v - abs2(z1) - abs2(z2)\" --field \"1;0;0\" --at 1,0,0,0,0,1");
  CHECK(fail.code == 1);
  CHECK(has(fail.out, "FAIL"));
  CHECK(run_bin("tangency --surface \"v - abs2(z1) - abs2(z2)\" --field \"0;0;1\" --at 1,0,0,0,0,1").code == 0);

  auto internal = run_bin("catalog export --out /nonexistent/dir/catalog.json", true);
  CHECK(internal.code == 3);
  CHECK(has(internal.out, "cannot write"));
  CHECK(run_bin("--help").code == 0);
}

TEST_CASE("catalog file override") {
  auto good = tmp("crhs_cli_good.json");
  auto bad = tmp("crhs_cli_bad.json");
  auto e = *find_entry(builtin_catalog(), "II.2.2");
  save({e}, good);
  e.equation = "(v - x2*y1)^2 + y1^2*y2^2 = 2*y1";
  e.base_point[2][1] = "2";
  save({e}, bad);

  auto ok = run_bin("catalog verify", false, "CRHS_CATALOG=" + good);
  CHECK(ok.code == 0);
  CHECK(has(ok.out, "1 entries, 0 failed"));
  auto ko = run_bin("catalog verify", false, "CRHS_CATALOG=" + bad);
  CHECK(ko.code == 1);
  CHECK(has(ko.out, "FAIL"));
  CHECK(run_bin("catalog verify", false, "CRHS_CATALOG=/nonexistent.json").code == 2);
  std::filesystem::remove(good);
  std::filesystem::remove(bad);
}

TEST_CASE("catalog export round trips") {
  auto path = tmp("crhs_cli_export.json");
  CHECK(run_bin("catalog export --out " + path).code == 0);
  CHECK(load(path) == builtin_catalog());
  std::filesystem::remove(path);
  auto list = run_bin("catalog list");
  CHECK(list.code == 0);
  CHECK(std::count(list.out.begin(), list.out.end(), '\n') == 48);
  CHECK(has(list.out, "47 entries"));
}

TEST_CASE("catalog verify json is byte-identical across runs") {
  auto a = run_bin("catalog verify --json --seed 7");
  auto b = run_bin("catalog verify --json --seed 7");
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.size() > 1000);
  auto doc = nlohmann::json::parse(a.out);
  CHECK(doc["entries"].size() == 47);
}

TEST_CASE("in-process runner matches the binary") {
  std::ostringstream out, err;
  int code = run_cli({"levi", "--surface", "v - abs2(z1) - abs2(z2)", "--at", "0,0,0"}, out, err);
  CHECK(code == kExitOk);
  CHECK(out.str() == run_bin("levi --surface \"v - abs2(z1) - abs2(z2)\" --at 0,0,0").out);
}
