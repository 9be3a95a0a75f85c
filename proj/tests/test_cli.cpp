#include <doctest.h>
#include <json.hpp>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

const fs::path& work() {
  static const fs::path dir = [] {
    const fs::path d = fs::temp_directory_path() / "stratlab_test_cli";
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

// Runs the CLI with stdout captured in `out` (relative to the work dir).
int cli(const std::string& args, const std::string& out = "stdout.txt") {
  const std::string cmd = "cd '" + work().string() + "' && '" STRATLAB_CLI "' " + args + " > '" + out + "' 2> stderr.txt";
  const int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream is(work() / p, std::ios::binary);
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("usage errors exit with 1") {
  CHECK(cli("run --preset no-such-preset") == 1);
  CHECK(cli("run") == 1);
  CHECK(cli("run --preset null --set n1=7") == 1);
  CHECK(cli("run --preset null --set colour=red") == 1);
  CHECK(cli("frobnicate") == 1);
  CHECK(cli("--kernels sse9 presets") == 1);
}

TEST_CASE("presets lists the catalogue") {
  REQUIRE(cli("presets", "presets.json") == 0);
  const auto j = nlohmann::json::parse(slurp("presets.json"));
  CHECK(j.is_array());
  CHECK(j.size() >= 5);
  CHECK(j[0]["name"] == "ipm-baseline");
}

TEST_CASE("null run") {
  REQUIRE(cli("run --preset null --out null --snapshots-every 50") == 0);
  const auto s = nlohmann::json::parse(slurp("null/summary.json"));
  CHECK(s["status"] == "completed");
  CHECK(s["passed"] == true);
  CHECK(s["properties"]["steady"] == true);
  CHECK(fs::exists(work() / "null/diagnostics.csv"));
  CHECK(fs::exists(work() / "null/snap_000000.bin"));
  CHECK(fs::exists(work() / "null/snap_000100.bin"));
}

TEST_CASE("runs are independent of the thread count") {
  REQUIRE(cli("--threads 1 run --preset ipm-smoke --set t_end=0.5 --out t1") == 0);
  REQUIRE(cli("--threads 3 run --preset ipm-smoke --set t_end=0.5 --out t3") == 0);
  const std::string a = slurp("t1/diagnostics.csv");
  CHECK(a.size() > 1000);
  CHECK(a == slurp("t3/diagnostics.csv"));
}

TEST_CASE("config file and overrides") {
  std::ofstream(work() / "cfg.txt") << "preset = ipm-smoke\nt_end = 0.2\n";
  REQUIRE(cli("run --config cfg.txt --set sample_dt=0.05 --out cfg") == 0);
  const std::string csv = slurp("cfg/diagnostics.csv");
  CHECK(csv.find("# config.t_end=0.20000000000000001") != std::string::npos);
  CHECK(csv.find("# config.sample_dt=0.050000000000000003") != std::string::npos);
  std::ofstream(work() / "bad.txt") << "preset = ipm-smoke\nt_end 0.2\n";
  CHECK(cli("run --config bad.txt --out bad") == 1);
}

TEST_CASE("guard trip exits with 2") {
  CHECK(cli("run --preset ipm-smoke --set guards.max_linf=1e-6 --out guard") == 2);
  const auto s = nlohmann::json::parse(slurp("guard/summary.json"));
  CHECK(s["status"] == "guard_stop");
}

TEST_CASE("manufactured convergence table") {
  CHECK(cli("manufactured --model stokes --levels 3", "man.txt") == 0);
  CHECK(slurp("man.txt").find("orders ok") != std::string::npos);
  CHECK(cli("manufactured --model euler") == 1);
}

TEST_CASE("report, lemmas and rearrange on run outputs") {
  REQUIRE(cli("run --preset ipm-smoke --out smoke --snapshots-every 100") == 0);
  REQUIRE(cli("report smoke/diagnostics.csv --series E,K --out long.csv") == 0);
  const std::string lng = slurp("long.csv");
  CHECK(lng.find("t,series,value\n") != std::string::npos);
  CHECK(lng.find(",E,") != std::string::npos);
  CHECK(lng.find(",u2_l2sq,") == std::string::npos);

  REQUIRE(cli("lemmas --diagnostics smoke/diagnostics.csv --t-min 0.5 --n 1", "cascade.json") == 0);
  const auto c = nlohmann::json::parse(slurp("cascade.json"));
  CHECK(c["g"] == "holds");
  CHECK(c["h"] == "holds");

  std::ofstream ser(work() / "f.csv");
  ser << "t,f\n";
  for (int k = 0; k <= 200; ++k) ser << 0.1 * k << ',' << 1.0 / (1.0 + 0.1 * k) << '\n';
  ser.close();
  REQUIRE(cli("lemmas --series f.csv --lemma 21 --n 2", "l21.json") == 0);
  CHECK(nlohmann::json::parse(slurp("l21.json"))["verdict"] == "holds");
  CHECK(cli("lemmas --series f.csv --lemma 21 --n 1.5", "l21b.json") == 3);
  CHECK(cli("lemmas --series f.csv --lemma 22 --n 2") == 1);

  REQUIRE(cli("rearrange smoke/snap_000100.bin --out re", "re.json") == 0);
  const auto r = nlohmann::json::parse(slurp("re.json"));
  CHECK(r["levels_valid"] == true);
  CHECK(r["gap"].get<double>() >= 0.0);
  CHECK(fs::exists(work() / "re/rearrangement.csv"));
  CHECK(fs::exists(work() / "re/levels.csv"));
}
