#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"

namespace {

int run(const std::string& command) {
  const int status = std::system(command.c_str());
  return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

const std::string kCli = QCKA_CLI_PATH;

}  // namespace

TEST_CASE("rate emits the pinned CSV schema") {
  CHECK(run(kCli + " rate --n 3 --distance 50 --lambda 0.1 > cli_rate.csv") == 0);
  const std::string csv = slurp("cli_rate.csv");
  CHECK(csv.rfind("L_km,n,lambda,p_z,q_z,e_pair,e_x_n,phi_z,rate,baseline_rate",
                  0) == 0);
}

TEST_CASE("config errors exit 1 and name the line") {
  {
    std::ofstream cfg("cli_bad.cfg");
    cfg << "n = 3\nnot_a_key = 1\n";
  }
  CHECK(run(kCli + " rate --config cli_bad.cfg 2> cli_bad.err") == 1);
  const std::string err = slurp("cli_bad.err");
  CHECK(err.find("cli_bad.cfg:2") != std::string::npos);
}

TEST_CASE("validation errors exit 1") {
  CHECK(run(kCli + " rate --n 2 --distance 10 2> /dev/null") == 1);
}

TEST_CASE("verify-ghz passes for small registers") {
  CHECK(run(kCli + " verify-ghz --nmin 3 --nmax 4 > /dev/null") == 0);
}

TEST_CASE("simulate consistency checks gate the exit code") {
  const std::string base =
      " simulate --fidelity bit --sim-pulses 200000 --n 3 --distance 50 "
      "--gain 0.1 --qber 0.05 --seed 11 --check";
  CHECK(run(kCli + base + " > /dev/null") == 0);
  CHECK(run(kCli + base + " --inject-mismatch > /dev/null 2>&1") == 2);
}

TEST_CASE("identical seeds give byte-identical CSV exports") {
  const std::string base =
      " simulate --fidelity click --sim-pulses 100000 --n 3 --distance 25 "
      "--seed 99 --out ";
  CHECK(run(kCli + base + "cli_a.csv > /dev/null") == 0);
  CHECK(run(kCli + base + "cli_b.csv > /dev/null") == 0);
  const std::string a = slurp("cli_a.csv");
  CHECK_FALSE(a.empty());
  CHECK(a == slurp("cli_b.csv"));
}

TEST_CASE("finite subcommand reports the sampling columns") {
  CHECK(run(kCli +
            " finite --n 3 --distance 30 --pulses 1e11 --lambda 0.03 --pz 0.8 "
            "> cli_finite.csv") == 0);
  const std::string csv = slurp("cli_finite.csv");
  // p_z cell populated on finite rows
  CHECK(csv.find(",0.8,") != std::string::npos);
}
