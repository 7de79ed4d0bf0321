#include <doctest.h>

#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

namespace fs = std::filesystem;

int run_cli(const std::string& args) {
  const std::string cmd = std::string(QSS_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path tmp_file(const std::string& name) {
  return fs::temp_directory_path() / ("qss_cli_test_" + name);
}

}  // namespace

TEST_CASE("run: exit codes and transcript output") {
  const fs::path out = tmp_file("run.json");
  CHECK(run_cli("run --d 5 --t 2 --n 3 --secret 4 --seed 42 --out " + out.string()) == 0);
  const auto j = nlohmann::json::parse(slurp(out));
  CHECK(j["secret_S"] == 4);
  CHECK(j["recovered"]["1"] == 4);
  CHECK(j["aborted"].is_null());
  fs::remove(out);

  CHECK(run_cli("run --d 4 --t 2 --n 3") == 2);
  CHECK(run_cli("run --d 5 --t 6 --n 3") == 2);
  CHECK(run_cli("run --d 5 --t 2 --n 3 --out /nonexistent-dir/x.json") == 3);
}

TEST_CASE("mub-verify exit codes") {
  CHECK(run_cli("mub-verify --d 7 --tol 1e-9") == 0);
  CHECK(run_cli("mub-verify --d 4") == 2);
  CHECK(run_cli("mub-verify --d 3") == 0);
}

TEST_CASE("attack: completes and emits stats JSON") {
  const fs::path out = tmp_file("attack.json");
  CHECK(run_cli("attack --type dishonest --d 5 --t 3 --trials 100 --seed 3 --out " + out.string()) == 0);
  auto j = nlohmann::json::parse(slurp(out));
  CHECK(j["kind"] == "dishonest");
  CHECK(j["detection_rate"] == 1.0);
  CHECK(j["cheater_identified_rate"] == 1.0);
  fs::remove(out);

  CHECK(run_cli("attack --type collusion --d 3 --t 2 --seed 1 --out " + out.string()) == 0);
  j = nlohmann::json::parse(slurp(out));
  CHECK(j["posterior"].size() == 3);
  fs::remove(out);

  CHECK(run_cli("attack --type bogus --d 5 --t 3") == 2);
}

TEST_CASE("sweep: header and validation") {
  const fs::path out = tmp_file("sweep.csv");
  CHECK(run_cli("sweep --d 3 5 --t 2 --attacks dishonest --trials 50 --seed 9 --out " +
                out.string()) == 0);
  const std::string csv = slurp(out);
  CHECK(csv.rfind("d,t,attack,metric,value,ci3sigma,trials,seed\n", 0) == 0);
  CHECK(csv.find("3,2,dishonest,detection_rate,1,") != std::string::npos);
  fs::remove(out);

  CHECK(run_cli("sweep --t 2") == 2);  // empty d list
}

TEST_CASE("identical invocations produce byte-identical outputs") {
  const fs::path a = tmp_file("det_a.json");
  const fs::path b = tmp_file("det_b.json");
  const std::string args = "run --d 7 --t 3 --n 4 --secret 2 --seed 123 --out ";
  CHECK(run_cli(args + a.string()) == 0);
  CHECK(run_cli(args + b.string()) == 0);
  CHECK(slurp(a) == slurp(b));
  fs::remove(a);
  fs::remove(b);
}

TEST_CASE("QSS_SEED env var is the fallback seed") {
  const fs::path a = tmp_file("env_a.json");
  const fs::path b = tmp_file("env_b.json");
  const std::string cmd = "QSS_SEED=55 " + std::string(QSS_CLI_PATH) +
                          " run --d 5 --t 2 --n 2 --secret 1 --out ";
  CHECK(WEXITSTATUS(std::system((cmd + a.string() + " > /dev/null 2>&1").c_str())) == 0);
  CHECK(WEXITSTATUS(std::system((cmd + b.string() + " > /dev/null 2>&1").c_str())) == 0);
  CHECK(slurp(a) == slurp(b));
  const auto j = nlohmann::json::parse(slurp(a));
  CHECK(j["seed"] == 55);
  fs::remove(a);
  fs::remove(b);
}
