#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

namespace fs = std::filesystem;

struct Result {
  int code = -1;
  std::string out;
};

Result run(const std::string& args) {
  const fs::path capture = fs::temp_directory_path() / "fieldflow_cli_out.txt";
  const std::string cmd = std::string("\"") + FIELDFLOW_CLI + "\" " + args + " > \"" + capture.string() + "\" 2>&1";
  const int status = std::system(cmd.c_str());
  Result r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream f(capture);
  std::ostringstream s;
  s << f.rdbuf();
  r.out = s.str();
  return r;
}

std::string scenario(const std::string& name) { return std::string(FIELDFLOW_SCENARIOS) + "/" + name; }

}  // namespace

TEST_CASE("usage errors exit with 1") {
  CHECK(run("").code == 1);
  CHECK(run("frobnicate").code == 1);
  CHECK(run("simulate /nonexistent.ini").code == 1);
  CHECK(run("micro --T -1").code == 1);
}

TEST_CASE("simulate writes CSV and JSON") {
  const fs::path dir = fs::temp_directory_path() / "fieldflow_cli_sim";
  fs::create_directories(dir);
  const auto csv = (dir / "rest.csv").string(), json = (dir / "rest.json").string();
  const auto r = run("simulate " + scenario("rest.ini") + " --csv " + csv + " --json " + json);
  CHECK(r.code == 0);
  std::ifstream f(csv);
  std::string header;
  std::getline(f, header);
  CHECK(header.rfind("t,norm_el_residual,norm_noether,norm_dVy,energy_total", 0) == 0);
  CHECK(fs::exists(json));
  fs::remove_all(dir);
}

TEST_CASE("config errors and invariant violations map to exit codes") {
  const fs::path bad = fs::temp_directory_path() / "fieldflow_bad.ini";
  {
    std::ofstream f(bad);
    f << "[grid]\n[eos]\nkind = polytrope\ngamma = 0.5\n[initial]\n[run]\n";
  }
  const auto r = run("simulate " + bad.string() + " --csv " + (bad.string() + ".csv") + " --json " +
                     (bad.string() + ".json"));
  CHECK(r.code == 1);
  CHECK(r.out.find("[eos] gamma = 0.5 is out of range: must be > 1") != std::string::npos);
  fs::remove(bad);
  fs::remove(bad.string() + ".csv");

  const fs::path out = fs::temp_directory_path() / "fieldflow_fold";
  CHECK(run("simulate " + scenario("fold.ini") + " --csv " + out.string() + ".csv --json " + out.string() + ".json")
            .code == 2);
  fs::remove(out.string() + ".csv");
  fs::remove(out.string() + ".json");
}

TEST_CASE("identity suites") {
  for (const char* picture : {"lagrange", "euler", "thermo", "complete-lagrange"}) {
    const auto r = run(std::string("identities --picture ") + picture + " --n 128 --states 4");
    CHECK(r.code == 0);
    CHECK(r.out.find("name,value,threshold,passed") != std::string::npos);
  }
  CHECK(run("identities --picture sideways").code == 1);
}

TEST_CASE("bracket suite prints the audit table") {
  const auto r = run("brackets --seed 3");
  CHECK(r.code == 0);
  CHECK(r.out.find("pair,canonical_value,reduced_form_value,abs_diff,rel_diff") != std::string::npos);
  CHECK(r.out.find("{P_phi,P_psi} assembled 4p/rho") != std::string::npos);
}

TEST_CASE("micro is deterministic for a fixed seed") {
  const auto a = run("micro --T 1 --c 10 --N 5000 --seed 9");
  const auto b = run("micro --T 1 --c 10 --N 5000 --seed 9");
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.rfind("T_in,rate,T_hat,rel_err,lifetime_factor", 0) == 0);
  CHECK(run("micro --T 50 --c 10 --N 10").code == 2);
}

TEST_CASE("eos-check") {
  CHECK(run("eos-check").code == 0);
  CHECK(run("eos-check --config " + scenario("polytrope_wave.ini")).code == 0);
  CHECK(run("eos-check --config " + scenario("entropy_form.ini")).code == 0);
}
