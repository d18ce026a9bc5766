#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <filesystem>
#include <sstream>
#include <string>

#include "json.hpp"

namespace {

namespace fs = std::filesystem;

struct RunResult {
  int exit_code = -1;
  std::string output;  // stdout + stderr
};

RunResult run_cli(const std::string& args) {
  std::string cmd = std::string(HGEO_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.output.append(buf, n);
  int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

fs::path write_temp(const std::string& name, const std::string& text) {
  fs::path p = fs::temp_directory_path() / name;
  std::ofstream(p, std::ios::binary) << text;
  return p;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path disk_file() {
  return write_temp("cli_disk.json",
                    R"({"kind":"ellipse","center":[0,0],"axes":[1,1],"angle":0})");
}

fs::path square_file() {
  return write_temp(
      "cli_square.json",
      R"({"kind":"polygon","vertices":[[-1,-1],[1,-1],[1,1],[-1,1]]})");
}

}  // namespace

TEST_CASE("validate accepts good bodies and names bad fields") {
  RunResult ok = run_cli("validate --body " + disk_file().string());
  CHECK(ok.exit_code == 0);
  CHECK(ok.output == "ok\n");

  fs::path bad = write_temp(
      "cli_bad.json", R"({"kind":"polygon","vertices":[[0,0],[1,0],[2,0]]})");
  RunResult r = run_cli("validate --body " + bad.string());
  CHECK(r.exit_code == 1);
  CHECK(r.output.find("vertices") != std::string::npos);

  RunResult missing = run_cli("validate --body /nonexistent/file.json");
  CHECK(missing.exit_code == 1);
}

TEST_CASE("dist prints the seven-digit distance") {
  RunResult r = run_cli("dist --body " + disk_file().string() +
                        " --p 0,0 --q 0.5,0");
  CHECK(r.exit_code == 0);
  CHECK(r.output == "0.5493061\n");
}

TEST_CASE("norm and zeta answer on the square") {
  fs::path sq = square_file();
  RunResult n = run_cli("norm --body " + sq.string() + " --p 0,0 --q 1,0");
  CHECK(n.exit_code == 0);
  CHECK(std::stod(n.output) == doctest::Approx(1.0).epsilon(1e-6));
  RunResult z = run_cli("zeta --body " + disk_file().string() + " --p 0,0 --q 1,0");
  CHECK(z.exit_code == 0);
  CHECK(std::stod(z.output) == doctest::Approx(1.0).epsilon(1e-5));
}

TEST_CASE("bad usage exits with one") {
  CHECK(run_cli("frobnicate").exit_code == 1);
  CHECK(run_cli("dist --body " + disk_file().string() + " --p 0,0").exit_code == 1);
  CHECK(run_cli("dist --body " + disk_file().string() +
                " --p 0,0 --q not-a-point")
            .exit_code == 1);
  CHECK(run_cli("").exit_code == 1);
}

TEST_CASE("ball-volume emits the pinned CSV header and sane rows") {
  RunResult r = run_cli("ball-volume --body " + disk_file().string() +
                        " --R 0.5,1");
  CHECK(r.exit_code == 0);
  std::istringstream lines(r.output);
  std::string line;
  REQUIRE(std::getline(lines, line));
  CHECK(line == "R,volume,abs_error,C1,C2");
  int rows = 0;
  while (std::getline(lines, line)) {
    if (!line.empty()) ++rows;
  }
  CHECK(rows == 2);
  CHECK(r.output.find("3.412276265284") != std::string::npos);
}

TEST_CASE("ball-volume json is parseable and carries the same numbers") {
  RunResult r = run_cli("ball-volume --body " + disk_file().string() +
                        " --R 1 --format json");
  CHECK(r.exit_code == 0);
  nlohmann::json j = nlohmann::json::parse(r.output);
  REQUIRE(j.is_array());
  REQUIRE(j.size() == 1);
  CHECK(j[0]["R"].get<double>() == doctest::Approx(1.0));
  CHECK(j[0]["volume"].get<double>() == doctest::Approx(3.412276265284902));
  CHECK(j[0]["C1"].get<double>() <= j[0]["volume"].get<double>());
  CHECK(j[0]["C2"].get<double>() >= j[0]["volume"].get<double>());
}

TEST_CASE("cheeger and delta and coarea emit their pinned headers") {
  RunResult c = run_cli("cheeger --body " + disk_file().string() + " --R 1,2");
  CHECK(c.exit_code == 0);
  CHECK(c.output.rfind("center_x,center_y,R,mu,nu_plain,nu_zeta,q_plain,q_zeta\n",
                       0) == 0);

  RunResult d = run_cli("delta --body " + disk_file().string() +
                        " --scale 2 --samples 2000 --seed 3");
  CHECK(d.exit_code == 0);
  CHECK(d.output.rfind("scale,samples,delta,method,seed\n", 0) == 0);
  CHECK(d.output.find("four-point") != std::string::npos);
  CHECK(d.output.find(",2000,") != std::string::npos);

  RunResult a = run_cli("coarea --body " + disk_file().string() +
                        " --R 0.5,1 --samples 5 --eps 0.02");
  CHECK(a.exit_code == 0);
  CHECK(a.output.rfind("t,level_measure\n", 0) == 0);
}

TEST_CASE("coarea json reports both sides of the identity") {
  RunResult a = run_cli("coarea --body " + disk_file().string() +
                        " --R 0.5,1 --samples 5 --eps 0.02 --format json");
  CHECK(a.exit_code == 0);
  nlohmann::json j = nlohmann::json::parse(a.output);
  CHECK(j["lhs"].get<double>() > 0.0);
  CHECK(j["rhs"].get<double>() == doctest::Approx(2.6103786758855576).epsilon(0.03));
  CHECK(j["rel_gap"].get<double>() < 0.05);
  CHECK(j["levels"].size() == 5);
}

TEST_CASE("lambda1 runs a small exhaustion") {
  RunResult r = run_cli("lambda1 --body " + disk_file().string() +
                        " --alphas 0.5,0.7 --h 0.35");
  CHECK(r.exit_code == 0);
  std::istringstream lines(r.output);
  std::string header;
  REQUIRE(std::getline(lines, header));
  CHECK(header == "alpha,h,lambda,converged,restarts_used");
  std::string row1, row2;
  REQUIRE(std::getline(lines, row1));
  REQUIRE(std::getline(lines, row2));
  CHECK(row1.rfind("0.5,", 0) == 0);
  CHECK(row2.rfind("0.7,", 0) == 0);
  double l1 = std::stod(row1.substr(row1.find(',', 4) + 1));
  double l2 = std::stod(row2.substr(row2.find(',', 4) + 1));
  CHECK(l2 <= l1 + 1e-8);
}

TEST_CASE("outputs land in --out files exactly as on stdout") {
  fs::path out = fs::temp_directory_path() / "cli_out.csv";
  std::error_code ec;
  fs::remove(out, ec);
  RunResult r = run_cli("ball-volume --body " + disk_file().string() +
                        " --R 1 --out " + out.string());
  CHECK(r.exit_code == 0);
  CHECK(r.output.empty());
  RunResult direct = run_cli("ball-volume --body " + disk_file().string() + " --R 1");
  CHECK(read_file(out) == direct.output);
}

TEST_CASE("report is byte-identical across runs with the same seed") {
  fs::path f1 = fs::temp_directory_path() / "cli_rep1.json";
  fs::path f2 = fs::temp_directory_path() / "cli_rep2.json";
  std::string small =
      " --alphas 0.5,0.7 --h 0.35 --R 1,2 --scale 4 --samples 4000 --seed 0";
  RunResult r1 = run_cli("report --body " + square_file().string() + small +
                         " --out " + f1.string());
  RunResult r2 = run_cli("report --body " + square_file().string() + small +
                         " --out " + f2.string());
  CHECK(r1.exit_code == 0);
  CHECK(r2.exit_code == 0);
  std::string a = read_file(f1), b = read_file(f2);
  REQUIRE(!a.empty());
  CHECK(a == b);

  nlohmann::json j = nlohmann::json::parse(a);
  CHECK(j["seed"].get<std::uint64_t>() == 0);
  CHECK(j["lambda1"]["stages"].size() == 2);
  CHECK(j["delta"]["scales"].size() == 4);
  CHECK(j["dichotomy"].contains("consistent"));
}
