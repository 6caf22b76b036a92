#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include "minent/io.hpp"
#include "minent/matrix.hpp"
#include "minent/state.hpp"

using namespace minent;

namespace {

struct CmdResult {
  int exit_code;
  std::string out;
};

CmdResult run_cli(const std::string& args) {
  const std::string cmd = std::string(MINENT_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  size_t got;
  while ((got = fread(buf, 1, sizeof(buf), pipe)) > 0) out.append(buf, got);
  const int rc = pclose(pipe);
  return {WIFEXITED(rc) ? WEXITSTATUS(rc) : -1, out};
}

std::filesystem::path work_dir() {
  auto p = std::filesystem::temp_directory_path() / "minent_cli_test";
  std::filesystem::create_directories(p);
  return p;
}

std::string write_bell(const std::filesystem::path& dir) {
  CVec bell = CVec::Zero(4);
  bell(0) = bell(3) = 1.0 / std::sqrt(2.0);
  const std::string path = (dir / "bell.json").string();
  write_text_file(path, matrix_to_json(outer(bell), {2, 2}));
  return path;
}

std::string write_diag(const std::filesystem::path& dir, const std::string& name,
                       const std::vector<double>& vals,
                       const std::vector<int>& dims) {
  CMat m = CMat::Zero(static_cast<long>(vals.size()), static_cast<long>(vals.size()));
  for (size_t i = 0; i < vals.size(); ++i) m(i, i) = vals[i];
  const std::string path = (dir / name).string();
  write_text_file(path, matrix_to_json(m, dims));
  return path;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::stringstream ss(text);
  std::string line;
  while (std::getline(ss, line)) lines.push_back(line);
  return lines;
}

}  // namespace

TEST_CASE("conditional entropy of the maximally entangled state") {
  const auto dir = work_dir();
  const std::string bell = write_bell(dir);
  CmdResult r = run_cli("compute --state " + bell +
                        " --measure vn --split A:B --conditional");
  CHECK(r.exit_code == 0);
  CHECK(std::stod(r.out) == doctest::Approx(-1.0).epsilon(1e-9));
}

TEST_CASE("unconditional measures and renyi options") {
  const auto dir = work_dir();
  const std::string skew = write_diag(dir, "skew.json", {0.75, 0.25}, {2});
  CHECK(std::stod(run_cli("compute --state " + skew + " --measure vn").out) ==
        doctest::Approx(0.8112781244591328).epsilon(1e-9));
  CHECK(std::stod(run_cli("compute --state " + skew +
                          " --measure renyi --alpha 2").out) ==
        doctest::Approx(0.6780719051126378).epsilon(1e-9));
  CHECK(std::stod(run_cli("compute --state " + skew + " --measure hmin").out) ==
        doctest::Approx(0.4150374992788438).epsilon(1e-9));
  CHECK(std::stod(run_cli("compute --state " + skew + " --measure h0").out) ==
        doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("distance output formats") {
  const auto dir = work_dir();
  const std::string a = write_diag(dir, "da.json", {0.7, 0.3}, {2});
  const std::string b = write_diag(dir, "db.json", {0.4, 0.6}, {2});
  CmdResult all = run_cli("distance --state " + a + " --sigma " + b);
  CHECK(all.exit_code == 0);
  std::vector<std::string> lines = lines_of(all.out);
  REQUIRE(lines.size() == 3);
  CHECK(lines[0].rfind("trace = ", 0) == 0);
  CHECK(lines[1].rfind("fidelity = ", 0) == 0);
  CHECK(lines[2].rfind("purified = ", 0) == 0);
  CHECK(std::stod(lines[0].substr(8)) == doctest::Approx(0.3).epsilon(1e-9));

  CmdResult one = run_cli("distance --state " + a + " --sigma " + b +
                          " --metric trace");
  CHECK(std::stod(one.out) == doctest::Approx(0.3).epsilon(1e-9));
}

TEST_CASE("conditional min-entropy with a witness file") {
  const auto dir = work_dir();
  const std::string mixed =
      write_diag(dir, "mixed4.json", {0.25, 0.25, 0.25, 0.25}, {2, 2});
  const std::string wpath = (dir / "witness.json").string();
  CmdResult r = run_cli("hmin --state " + mixed + " --split A:B --witness " + wpath);
  CHECK(r.exit_code == 0);
  CHECK(std::stod(r.out) == doctest::Approx(1.0).epsilon(1e-6));

  const std::string wtext = read_text_file(wpath);
  CHECK(wtext.find("\"value\"") != std::string::npos);
  CHECK(wtext.find("\"sigma_b\"") != std::string::npos);
  CHECK(wtext.find("\"status\": \"optimal\"") != std::string::npos);
}

TEST_CASE("smoothing commands") {
  const auto dir = work_dir();
  const std::string skew = write_diag(dir, "skew2.json", {0.75, 0.25}, {2});
  CmdResult hm = run_cli("smooth --state " + skew + " --epsilon 0.6 --measure hmin");
  CHECK(hm.exit_code == 0);
  CHECK(std::stod(hm.out) == doctest::Approx(-std::log2(0.55)).epsilon(1e-9));

  const std::string peaked =
      write_diag(dir, "peaked.json", {0.98, 0.01, 0.01}, {3});
  CmdResult hz = run_cli("smooth --state " + peaked + " --epsilon 0.05 --measure h0");
  CHECK(std::stod(hz.out) == doctest::Approx(0.0));

  const std::string bell = write_bell(dir);
  CmdResult cond = run_cli("smooth --state " + bell +
                           " --epsilon 0.1 --measure hmin --conditional --split A:B");
  CHECK(cond.exit_code == 0);
  std::vector<std::string> lines = lines_of(cond.out);
  REQUIRE(lines.size() == 3);
  CHECK(lines[0].rfind("lower = ", 0) == 0);
  CHECK(lines[1].rfind("upper = ", 0) == 0);
  CHECK(lines[2].rfind("exact0 = ", 0) == 0);
  CHECK(std::stod(lines[2].substr(9)) == doctest::Approx(-1.0).epsilon(1e-6));
}

TEST_CASE("random states round-trip bit-identically") {
  const auto dir = work_dir();
  const std::string path = (dir / "rand.json").string();
  CmdResult gen = run_cli("random --dims 2x2 --seed 7 --out " + path);
  CHECK(gen.exit_code == 0);

  // rewriting the parsed state reproduces the file byte for byte
  const std::string text = read_text_file(path);
  StateFile sf = matrix_from_json(text);
  CHECK(matrix_to_json(sf.matrix, sf.dims) == text);

  // identical seeds give identical files, different seeds differ
  const std::string path2 = (dir / "rand2.json").string();
  run_cli("random --dims 2x2 --seed 7 --out " + path2);
  CHECK(read_text_file(path2) == text);
  run_cli("random --dims 2x2 --seed 8 --out " + path2);
  CHECK(read_text_file(path2) != text);

  // downstream computations are reproducible
  CmdResult v1 = run_cli("compute --state " + path + " --measure vn");
  CmdResult v2 = run_cli("compute --state " + path + " --measure vn");
  CHECK(v1.out == v2.out);
}

TEST_CASE("tensor-power rate table") {
  const auto dir = work_dir();
  const std::string csv_path = (dir / "rates.csv").string();
  CmdResult r = run_cli(
      "qaep --spectrum 0.75,0.25 --epsilon 0.05 --n-max 2000 --step 50 --out " +
      csv_path);
  CHECK(r.exit_code == 0);

  std::vector<std::string> lines = lines_of(read_text_file(csv_path));
  REQUIRE(lines.size() == 41);
  CHECK(lines[0] == "n,epsilon,hmin_rate,h0_rate,vn_target,gap");

  const std::string& last = lines.back();
  std::vector<double> cols;
  std::stringstream ss(last);
  std::string cell;
  while (std::getline(ss, cell, ',')) cols.push_back(std::stod(cell));
  REQUIRE(cols.size() == 6);
  const double h = 0.8112781244591328;
  CHECK(cols[0] == 2000);
  CHECK(cols[1] == doctest::Approx(0.05));
  CHECK(std::abs(cols[2] - h) <= 0.05);
  CHECK(std::abs(cols[3] - h) <= 0.05);
  CHECK(cols[4] == doctest::Approx(h).epsilon(1e-9));
  CHECK(cols[5] == doctest::Approx(cols[3] - cols[2]).epsilon(1e-6));
}

TEST_CASE("verification subcommand exit codes") {
  const auto dir = work_dir();
  CmdResult ok = run_cli("verify --check pd_triangle --trials 25 --out " +
                         (dir / "vok").string());
  CHECK(ok.exit_code == 0);
  CHECK(ok.out.find("pd_triangle: rows=25 failures=0") != std::string::npos);
  CHECK(read_text_file((dir / "vok" / "report.csv").string()).size() > 0);

  CmdResult bad = run_cli("verify --check renyi_h0_bound --trials 10 --out " +
                          (dir / "vbad").string());
  CHECK(bad.exit_code == 1);
  CHECK(bad.out.find("[bound mode]") != std::string::npos);
  const std::string summary =
      read_text_file((dir / "vbad" / "summary.json").string());
  CHECK(summary.find("\"exit_code\": 1") != std::string::npos);
}

TEST_CASE("usage and input errors exit with 2") {
  const auto dir = work_dir();
  CHECK(run_cli("compute --state /nonexistent.json --measure vn").exit_code == 2);
  CHECK(run_cli("compute --measure vn").exit_code == 2);
  CHECK(run_cli("nonsense").exit_code == 2);
  CHECK(run_cli("qaep --spectrum 0.75,0.3 --epsilon 0.05 --n-max 100").exit_code == 2);
  CHECK(run_cli("smooth --state /nonexistent.json --epsilon 2 --measure hmin")
            .exit_code == 2);

  const std::string bad_cfg = (dir / "bad.json").string();
  write_text_file(bad_cfg, "not json");
  CHECK(run_cli("verify --config " + bad_cfg + " --out " + (dir / "vx").string())
            .exit_code == 2);
  CHECK(run_cli("--help").exit_code == 0);
}
