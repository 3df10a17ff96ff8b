#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace {

struct RunResult {
  int exit_code;
  std::string output;
};

RunResult run(const std::string& args) {
  std::string cmd = std::string(CONECERT_BIN) + " " + args + " 2>&1";
  std::array<char, 4096> buf{};
  std::string out;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  while (fgets(buf.data(), buf.size(), pipe)) out += buf.data();
  int status = pclose(pipe);
  int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return {code, out};
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("certify exit codes") {
  CHECK(run("certify --type A2 --delta a1 --threshold 2").exit_code == 0);
  CHECK(run("certify --type A2 --delta a1 --threshold 2 --mode symbolic").exit_code == 0);
  // blank reference cell: symbolic route alone is inconclusive
  CHECK(run("certify --type A2 --delta a1 --mult 1 --mode symbolic").exit_code == 2);
  // numeric route on the same instance finds J > 1 for this retraction
  auto failed = run("certify --type A2 --delta a1 --mult 1 --mode numeric");
  CHECK(failed.exit_code == 3);
  CHECK(failed.output.find("max J") != std::string::npos);
  // usage errors
  CHECK(run("certify --mode bogus").exit_code == 64);
  CHECK(run("bogus-subcommand").exit_code == 64);
}

TEST_CASE("broken ansatz files surface their diagnosis with exit 70") {
  {
    std::ofstream f("/tmp/conecert_bad.ansatz");
    f << "system = A2\ndelta = a1\n"
      << "coeffs = [0, 1], exponent = 1\n";
  }
  auto res = run("certify --ansatz /tmp/conecert_bad.ansatz");
  CHECK(res.exit_code == 70);
  CHECK(res.output.find("FACE_LEAK") != std::string::npos);
}

TEST_CASE("ansatz files drive the full pipeline") {
  {
    std::ofstream f("/tmp/conecert_b2.ansatz");
    f << "# the B2 construction over the first face\n"
      << "system = B2\n"
      << "delta = a1\n"
      << "threshold = m2 >= 2\n"
      << "coeffs = [1, 0], exponent = 1/2\n"
      << "coeffs = [1, 2], exponent = 1/2\n";
  }
  auto res = run("certify --ansatz /tmp/conecert_b2.ansatz --mode symbolic");
  CHECK(res.exit_code == 0);
  CHECK(res.output.find("CERTIFIED") != std::string::npos);

  // concrete multiplicities in the file, threshold over class names
  {
    std::ofstream f("/tmp/conecert_bc2.ansatz");
    f << "system = BC2\ndelta = a2\n"
      << "mult = m1 = 4, m2 = 4, m3 = 1\n"
      << "threshold = m2 + m3 >= 2\n"
      << "coeffs = [0, 1], exponent = 2/3\n"
      << "coeffs = [3/2, 1], exponent = 1/3\n";
  }
  auto bc2 = run("certify --ansatz /tmp/conecert_bc2.ansatz --mult m1=4,m2=4,m3=1 --mode both");
  CHECK(bc2.exit_code == 0);
  CHECK(bc2.output.find("CERTIFIED") != std::string::npos);
  CHECK(bc2.output.find("14") != std::string::npos);  // the SO(10) row's orbit dimension
}

TEST_CASE("table output is deterministic and flags the known discrepancy") {
  auto first = run("table");
  auto second = run("table");
  CHECK(first.exit_code == 0);
  CHECK(first.output == second.output);
  CHECK(first.output.find("DISCREPANCY") != std::string::npos);
  CHECK(first.output.find("MISMATCH") == std::string::npos);
  auto json = run("table --json");
  CHECK(json.output.find("\"dims\": \"DISCREPANCY\"") != std::string::npos);
}

TEST_CASE("reports are byte-identical across runs") {
  REQUIRE(run("certify --type G2 --delta a2 --mult 2 --out /tmp/conecert_g2_a.json").exit_code == 0);
  REQUIRE(run("certify --type G2 --delta a2 --mult 2 --out /tmp/conecert_g2_b.json").exit_code == 0);
  CHECK(slurp("/tmp/conecert_g2_a.json") == slurp("/tmp/conecert_g2_b.json"));
}

TEST_CASE("results are independent of the thread cap") {
  setenv("CONE_CERT_THREADS", "1", 1);
  auto one = run("certify --type B2 --delta a1 --mult 1,2 --mode numeric --out /tmp/conecert_t1.json");
  setenv("CONE_CERT_THREADS", "4", 1);
  auto four = run("certify --type B2 --delta a1 --mult 1,2 --mode numeric --out /tmp/conecert_t4.json");
  unsetenv("CONE_CERT_THREADS");
  REQUIRE(one.exit_code == 0);
  REQUIRE(four.exit_code == 0);
  CHECK(slurp("/tmp/conecert_t1.json") == slurp("/tmp/conecert_t4.json"));
}

TEST_CASE("product pipeline end to end") {
  REQUIRE(run("certify --type A2 --delta a1 --mult 2 --mode symbolic --out /tmp/conecert_a2.json")
              .exit_code == 0);
  auto prod = run("product /tmp/conecert_a2.json /tmp/conecert_a2.json --grid 24 "
                  "--out /tmp/conecert_prod.json");
  CHECK(prod.exit_code == 0);
  CHECK(prod.output.find("CERTIFIED") != std::string::npos);
  // iterated composition consumes its own output
  auto triple = run("product /tmp/conecert_prod.json /tmp/conecert_a2.json --skip-numeric");
  CHECK(triple.exit_code == 0);

  // a rank-one factor is rejected with exit 3
  REQUIRE(run("certify --type A1 --delta a1 --mult 1 --mode symbolic --out /tmp/conecert_a1.json")
              .exit_code == 0);
  auto low = run("product /tmp/conecert_a1.json /tmp/conecert_a2.json --skip-numeric");
  CHECK(low.exit_code == 3);
  CHECK(low.output.find("DIM_TOO_SMALL") != std::string::npos);
}

TEST_CASE("minimal-orbit subcommand prints the base point") {
  auto res = run("minimal-orbit --type B2 --delta a2");
  CHECK(res.exit_code == 0);
  CHECK(res.output.find("0.707106") != std::string::npos);
  auto a3 = run("minimal-orbit --type A3 --delta a1,a3");
  CHECK(a3.exit_code == 0);
  CHECK(a3.output.find("(exact)") != std::string::npos);
}
