#include <doctest.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "magictrap/cli.hpp"

using namespace magictrap;

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run cli(std::vector<std::string> args) {
  args.insert(args.begin(), "magictrap_cli");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  Run r;
  r.code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

int spawn(const std::string& args) {
  const std::string cmd = std::string(MAGICTRAP_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_CASE("magic emits the documented JSON keys") {
  const Run r = cli({"magic"});
  REQUIRE(r.code == kExitOk);
  const auto j = nlohmann::json::parse(r.out);
  const std::vector<std::string> keys{"schema_version", "species", "pair", "excited", "lambda_nm", "delta_nu0_ghz",
                                      "i0_gw_m2", "u_t_uk", "k_nu_hz_inv", "k_i_fhz_m4_w2", "gamma_1p_hz",
                                      "gamma_2p_hz", "converged", "iterations"};
  std::vector<std::string> got;
  for (auto it = j.begin(); it != j.end(); ++it) got.push_back(it.key());
  std::sort(got.begin(), got.end());
  std::vector<std::string> want = keys;
  std::sort(want.begin(), want.end());
  CHECK(got == want);
  CHECK(j["converged"] == true);
  CHECK(j["pair"] == nlohmann::json::array({0, 0}));
  CHECK(j["lambda_nm"].get<double>() == doctest::Approx(1079.0).epsilon(1e-3));
}

TEST_CASE("repeated runs are byte-identical") {
  for (const std::vector<std::string>& args :
       {std::vector<std::string>{"magic", "--pair=-1,1"}, {"lines"}, {"zeeman", "--species", "rb85", "--pair", "-1,1"},
        {"landscape", "--nu-steps", "5", "--i-steps", "3"}, {"coherence", "--temperatures-uk", "0.2,0.4"},
        {"magic", "--format", "csv", "--excited", "5D3_2"}}) {
    const Run a = cli(args);
    const Run b = cli(args);
    CHECK(a.code == kExitOk);
    CHECK(a.out == b.out);
    CHECK(!a.out.empty());
  }
}

TEST_CASE("landscape CSV shape") {
  const Run r = cli({"landscape", "--nu-steps", "4", "--i-steps", "2"});
  REQUIRE(r.code == kExitOk);
  std::istringstream in(r.out);
  std::string line;
  std::vector<std::string> lines;
  while (std::getline(in, line)) lines.push_back(line);
  REQUIRE(lines.size() == 2 + 8);
  CHECK(lines[0] == "# schema=1");
  CHECK(lines[1] == "nu_hz,i_w_m2,dls_hz");
}

TEST_CASE("landscape accepts a beam power and waist") {
  const Run r = cli({"landscape", "--nu-steps", "3", "--power-mw", "1.4", "--waist-um", "2.5"});
  REQUIRE(r.code == kExitOk);
  // 2 P / (pi w^2) = 1.426e8 W/m^2 on every row.
  CHECK(r.out.find(",1.42602829e+08,") != std::string::npos);
}

TEST_CASE("zeeman output") {
  const Run r = cli({"zeeman", "--pair", "-1,1"});
  REQUIRE(r.code == kExitOk);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["b0_gauss"].get<double>() == doctest::Approx(1.39).epsilon(0.02));
  CHECK(j["k_m_hz_gauss2"].get<double>() > 0);
}

TEST_CASE("lines output") {
  const Run r = cli({"lines"});
  REQUIRE(r.code == kExitOk);
  const auto j = nlohmann::json::parse(r.out);
  REQUIRE(j["lines"].size() == 2);
  CHECK(j["separations_ghz"][0].get<double>() == doctest::Approx(3.5045).epsilon(1e-4));
}

TEST_CASE("coherence CSV declares its conventions") {
  const Run r = cli({"coherence", "--temperatures-uk", "0.2", "--density", "published", "--dnu-mhz", "10"});
  REQUIRE(r.code == kExitOk);
  CHECK(r.out.find("# density=published") != std::string::npos);
  CHECK(r.out.find("# phase=2*pi*x*t") != std::string::npos);
  CHECK(r.out.find("temperature_uk,k_e_hz_uk2,t2_s") != std::string::npos);
  CHECK(r.out.find("# sensitivity") != std::string::npos);
}

TEST_CASE("output can go to a file") {
  const auto path = std::filesystem::temp_directory_path() / ("magictrap_cli_" + std::to_string(::getpid()) + ".json");
  const Run r = cli({"lines", "--out", path.string()});
  REQUIRE(r.code == kExitOk);
  CHECK(r.out.empty());
  std::ifstream in(path);
  std::stringstream s;
  s << in.rdbuf();
  CHECK(s.str() == cli({"lines"}).out);
  std::filesystem::remove(path);
}

TEST_CASE("usage errors exit with 2") {
  CHECK(cli({}).code == kExitUsage);
  CHECK(cli({"bogus"}).code == kExitUsage);
  CHECK(cli({"magic", "--species", "xx"}).code == kExitUsage);
  CHECK(cli({"magic", "--excited", "9Z1_2"}).code == kExitUsage);
  CHECK(cli({"magic", "--pair", "0"}).code == kExitUsage);
  CHECK(cli({"magic", "--pair", "5,0"}).code == kExitUsage);
  CHECK(cli({"coherence"}).code == kExitUsage);
  CHECK(cli({"table", "--preset", "table9"}).code == kExitUsage);
  CHECK(cli({"landscape", "--i-min-gw", "-1"}).code == kExitUsage);
  const Run r = cli({"coherence", "--temperatures-uk", "0.2", "--density", "flat"});
  CHECK(r.code == kExitUsage);
  CHECK(!r.err.empty());
}

TEST_CASE("a missing data directory exits with 4") {
  const Run r = cli({"--data-dir", "/nonexistent/magictrap", "magic"});
  CHECK(r.code == kExitDataset);
  CHECK(!r.err.empty());
}

TEST_CASE("a resonant grid exits with 3 and names the point") {
  const Run lines = cli({"lines"});
  const auto j = nlohmann::json::parse(lines.out);
  const double rel = j["lines"][0]["relative_ghz"].get<double>();
  char lo[64], hi[64];
  std::snprintf(lo, sizeof lo, "%.9f", rel - 1.0);
  std::snprintf(hi, sizeof hi, "%.9f", rel + 1.0);
  const Run r = cli({"landscape", "--nu-min-ghz", lo, "--nu-max-ghz", hi, "--nu-steps", "3", "--i-steps", "1"});
  CHECK(r.code == kExitNumerical);
  CHECK(r.err.find("grid point") != std::string::npos);
}

TEST_CASE("the installed binary reports the same exit codes") {
  CHECK(spawn("lines") == kExitOk);
  CHECK(spawn("magic --species xx") == kExitUsage);
  CHECK(spawn("--data-dir /nonexistent/magictrap lines") == kExitDataset);
}
