#include <sys/wait.h>
#include <unistd.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "commands.hpp"
#include "doctest.h"
#include "json.hpp"

using namespace qho;
using namespace qho::cli;
namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    static int counter = 0;
    path = fs::temp_directory_path() /
           ("qho_cli_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::vector<double>> read_csv(const fs::path& p, std::string* header) {
  std::ifstream in(p);
  std::string line;
  std::getline(in, line);
  if (header) *header = line;
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
    rows.push_back(row);
  }
  return rows;
}

RunConfig config(const std::string& command, const fs::path& out) {
  RunConfig c;
  c.command = command;
  c.out = out.string();
  return c;
}

int run_binary(const std::string& args) {
  const std::string cmd = std::string(QHO_BINARY) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_CASE("parse_n_list") {
  CHECK(parse_n_list("3") == std::vector<int>{3});
  CHECK(parse_n_list("0..3") == std::vector<int>{0, 1, 2, 3});
  CHECK(parse_n_list("0,2,5") == std::vector<int>{0, 2, 5});
  CHECK(parse_n_list("0..2,7") == std::vector<int>{0, 1, 2, 7});
  for (const char* bad : {"", "a", "3..1", "1,,2", "1.5", "2..x"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(parse_n_list(bad), UsageError);
  }
}

TEST_CASE("parse_range") {
  CHECK(parse_range("-4:4") == std::pair<double, double>{-4.0, 4.0});
  CHECK(parse_range("-4.5:-1") == std::pair<double, double>{-4.5, -1.0});
  for (const char* bad : {"4:-4", "abc", "1:1", "1:x", "nan:1", ":3"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(parse_range(bad), UsageError);
  }
}

TEST_CASE("format_number keeps 17 significant digits") {
  CHECK(format_number(0.1) == "0.10000000000000001");
  CHECK(format_number(1.0) == "1");
  CHECK(format_number(1.0 / 3.0) == "0.33333333333333331");
  CHECK(std::stod(format_number(-2.5e-300)) == -2.5e-300);
  CHECK(std::stod(format_number(M_PI)) == M_PI);
}

TEST_CASE("write_atomic") {
  TempDir dir;
  const auto target = dir.path / "nested" / "out.txt";
  write_atomic(target.string(), "first\n");
  CHECK(slurp(target) == "first\n");
  write_atomic(target.string(), "second\n");
  CHECK(slurp(target) == "second\n");
  CHECK_FALSE(fs::exists(target.string() + ".tmp"));

  const auto blocker = dir.path / "plain_file";
  write_atomic(blocker.string(), "x");
  CHECK_THROWS_AS(write_atomic((blocker / "child.txt").string(), "y"), IoError);
}

TEST_CASE("profile: files, columns and pole metadata") {
  TempDir dir;
  auto c = config("profile", dir.path);
  c.n_list = {0, 1, 2, 3};
  c.range_lo = -4;
  c.range_hi = 4;
  c.samples = 801;
  REQUIRE(run_command(c) == kPass);

  const std::vector<std::vector<double>> poles = {
      {}, {0.0}, {-1.0, 1.0}, {-std::sqrt(3.0), 0.0, std::sqrt(3.0)}};
  for (int n = 0; n <= 3; ++n) {
    const auto stem = dir.path / ("profile_n" + std::to_string(n) + "_x");
    REQUIRE(fs::exists(stem.string() + ".csv"));
    const auto meta = json::parse(slurp(stem.string() + ".json"));
    CHECK(meta["n"] == n);
    CHECK(meta["csv"] == "profile_n" + std::to_string(n) + "_x.csv");
    const auto got = meta["poles"].get<std::vector<double>>();
    REQUIRE(got.size() == poles[n].size());
    for (std::size_t i = 0; i < got.size(); ++i) CHECK(got[i] == doctest::Approx(poles[n][i]).epsilon(1e-15));
    CHECK(meta["samples_requested"] == 801);
    // Grid points within the guard band of a pole are dropped: x = 0 for n = 1, x = +-1 for n = 2.
    const int dropped[] = {0, 1, 2, 1};
    CHECK(meta["samples_written"].get<int>() == 801 - dropped[n]);
  }

  std::string header;
  const auto rows0 = read_csv(dir.path / "profile_n0_x.csv", &header);
  CHECK(header == "x,energy,wigner_slice_v0,marginal");
  REQUIRE(rows0.size() == 801);
  for (const auto& r : rows0) CHECK(r[1] == doctest::Approx(0.5 + 0.5 * r[0] * r[0]).epsilon(1e-15));

  const auto rows1 = read_csv(dir.path / "profile_n1_x.csv", nullptr);
  for (const auto& r : rows1) {
    if (std::abs(std::abs(r[0]) - 1.0) < 1e-12) continue;
    CHECK((r[2] < 0.0) == (std::abs(r[0]) < 1.0));
  }
}

TEST_CASE("profile: velocity axis in physical units") {
  TempDir dir;
  auto c = config("profile", dir.path);
  c.n_list = {2};
  c.axis = Axis::velocity;
  c.mode = UnitMode::physical;
  c.m = 1.0;
  c.omega = 4.0;
  c.hbar = 1.0;
  c.samples = 11;
  REQUIRE(run_command(c) == kPass);
  std::string header;
  const auto rows = read_csv(dir.path / "profile_n2_v.csv", &header);
  CHECK(header == "v,energy,wigner_slice_x0,marginal");
  const double sigma_v = std::sqrt(1.0 * 4.0 / 2.0);
  CHECK(rows.front()[0] == doctest::Approx(-4.0 * sigma_v));
  const auto meta = json::parse(slurp(dir.path / "profile_n2_v.json"));
  CHECK(meta["poles"][1].get<double>() == doctest::Approx(sigma_v).epsilon(1e-15));
}

TEST_CASE("coeffs, moments and residual outputs") {
  TempDir dir;
  auto c = config("coeffs", dir.path / "coeffs.json");
  c.n_list = {4};
  REQUIRE(run_command(c) == kPass);
  const auto doc = json::parse(slurp(dir.path / "coeffs.json"));
  CHECK(doc["n"] == 4);
  CHECK(doc["C"][1]["num"] == "-3");
  CHECK(doc["C"][1]["den"] == "2");
  CHECK(doc["Cbar"][4]["num"] == "3");
  CHECK(doc["Cbar"][4]["den"] == "16");
  CHECK(doc["J_over_sqrt_pi"][0]["num"] == "1");

  auto m = config("moments", dir.path / "moments.csv");
  m.format = Format::csv;
  m.n_list = {0, 3};
  REQUIRE(run_command(m) == kPass);
  std::string header;
  const auto rows = read_csv(dir.path / "moments.csv", &header);
  CHECK(header.rfind("n,vv,xx,energy,sigma_eps", 0) == 0);
  REQUIRE(rows.size() == 2);
  CHECK(rows[1][1] == 7.0);
  CHECK(rows[1][5] == doctest::Approx(7.0).epsilon(1e-12));

  auto r = config("residual", dir.path / "residual.json");
  r.n_list = {3};
  r.range_lo = -6;
  r.range_hi = 6;
  r.samples = 101;
  REQUIRE(run_command(r) == kPass);
  const auto res = json::parse(slurp(dir.path / "residual.json"));
  const auto& row = res["residuals"][0];
  CHECK(row["max_abs_residual"].get<double>() <= 1e-10 * row["gradient_scale"].get<double>());
}

TEST_CASE("verify: report schema, determinism and tampered tolerance") {
  TempDir dir;
  auto c = config("verify", dir.path / "a.json");
  c.n_max = 3;
  c.seed = 42;
  REQUIRE(run_command(c) == kPass);
  c.out = (dir.path / "b.json").string();
  REQUIRE(run_command(c) == kPass);
  CHECK(slurp(dir.path / "a.json") == slurp(dir.path / "b.json"));

  const auto doc = json::parse(slurp(dir.path / "a.json"));
  CHECK(doc.contains("version"));
  CHECK(doc["seed"] == 42);
  CHECK(doc["config"]["n_max"] == 3);
  CHECK(doc["pass"] == true);
  REQUIRE(doc["checks"].size() > 10);
  for (const auto& chk : doc["checks"]) {
    for (const char* key : {"name", "paper_ref", "max_err", "tol", "pass"}) CHECK(chk.contains(key));
  }

  c.seed = 43;
  c.out = (dir.path / "c.json").string();
  REQUIRE(run_command(c) == kPass);
  CHECK(slurp(dir.path / "a.json") != slurp(dir.path / "c.json"));

  c.tol = 1e-30;
  c.out = (dir.path / "d.json").string();
  CHECK(run_command(c) == kVerifyFailed);
  const auto failed = json::parse(slurp(dir.path / "d.json"));
  CHECK(failed["pass"] == false);
  int failures = 0;
  for (const auto& chk : failed["checks"]) failures += chk["pass"] == false ? 1 : 0;
  CHECK(failures > 0);
}

TEST_CASE("exit codes from run_command") {
  TempDir dir;
  auto c = config("profile", dir.path);
  c.n_list = {65};
  CHECK(run_command(c) == kUsage);
  c.n_list = {1};
  c.samples = 1;
  CHECK(run_command(c) == kUsage);
  c.samples = 5;
  c.mode = UnitMode::physical;
  c.m = -1.0;
  CHECK(run_command(c) == kUsage);
  CHECK(run_command(config("bogus", dir.path)) == kUsage);

  const auto blocker = dir.path / "plain_file";
  write_atomic(blocker.string(), "x");
  auto io = config("profile", blocker / "sub");
  io.n_list = {0};
  io.samples = 5;
  CHECK(run_command(io) == kIo);
  auto v = config("verify", dir.path / "v.json");
  v.n_max = 65;
  CHECK(run_command(v) == kUsage);
}

TEST_CASE("exit codes from the executable") {
  TempDir dir;
  const std::string out = (dir.path / "o").string();
  CHECK(run_binary("coeffs --n 4 -o " + out + "/c.json") == kPass);
  CHECK(fs::exists(dir.path / "o" / "c.json"));
  CHECK(run_binary("--bogus") == kUsage);
  CHECK(run_binary("") == kUsage);
  CHECK(run_binary("profile --samples 1 -o " + out) == kUsage);
  CHECK(run_binary("profile --n 2..1 -o " + out) == kUsage);
  CHECK(run_binary("profile --range 4:-4 -o " + out) == kUsage);
  CHECK(run_binary("moments --format xml -o " + out + "/m.json") == kUsage);
  CHECK(run_binary("profile --mode physical --m 0 -o " + out) == kUsage);
  write_atomic((dir.path / "plain_file").string(), "x");
  CHECK(run_binary("profile --n 0 -o " + (dir.path / "plain_file" / "sub").string()) == kIo);
  CHECK(run_binary("verify --n-max 2 --tol 1e-30 -o " + out + "/v.json") == kVerifyFailed);
  CHECK(run_binary("verify --n-max 2 -o " + out + "/v.json") == kPass);
}
