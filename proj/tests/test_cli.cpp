#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"

namespace {

namespace fs = std::filesystem;

const fs::path kWork = fs::temp_directory_path() / "djcm_cli_test";

int run_cli(const std::string& args, const std::string& stdout_file = "/dev/null") {
  const std::string cmd = std::string(DJCM_CLI_PATH) + " " + args + " > " + stdout_file + " 2> " +
                          (kWork / "stderr.txt").string();
  const int status = std::system(cmd.c_str());
  REQUIRE(WIFEXITED(status));
  return WEXITSTATUS(status);
}

std::vector<std::string> read_lines(const fs::path& p) {
  std::ifstream in(p);
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line)) out.push_back(line);
  return out;
}

std::string write_file(const std::string& name, const std::string& text) {
  const fs::path p = kWork / name;
  std::ofstream(p) << text;
  return p.string();
}

struct Workdir {
  Workdir() { fs::create_directories(kWork); }
  ~Workdir() { fs::remove_all(kWork); }
};

}  // namespace

TEST_CASE_FIXTURE(Workdir, "list-presets") {
  const std::string out = (kWork / "list.txt").string();
  CHECK(run_cli("list-presets", out) == 0);
  const auto lines = read_lines(out);
  REQUIRE(lines.size() == 25);
  CHECK(lines.front().rfind("fig1\t", 0) == 0);
  CHECK(lines.back().rfind("fig25\t", 0) == 0);
}

TEST_CASE_FIXTURE(Workdir, "simulate a preset to a file") {
  const fs::path out = kWork / "fig13.csv";
  CHECK(run_cli("simulate --preset fig13 --tmax 2 --points 3 --quiet --out " + out.string()) == 0);
  const auto lines = read_lines(out);
  REQUIRE(lines.size() == 4);
  CHECK(lines[0] == "gt,sweep_name,sweep_value,C_AB,N_Aa,N_Ab,N_ab,trace_err,leakage");
  CHECK(lines[1].rfind("0,none,0,", 0) == 0);
  CHECK(lines[3].rfind("2,none,0,", 0) == 0);
}

TEST_CASE_FIXTURE(Workdir, "simulate writes CSV to stdout by default") {
  const std::string out = (kWork / "stdout.csv").string();
  CHECK(run_cli("simulate --preset fig18 --tmax 1 --points 2 --quiet", out) == 0);
  CHECK(read_lines(out).size() == 1 + 3 * 2);
}

TEST_CASE_FIXTURE(Workdir, "simulate a config file") {
  const std::string cfg = write_file("run.cfg", "preset = fig11\nt_max = 3\npoints = 4\nsweep_values = 0.2\n");
  const std::string out = (kWork / "cfg.csv").string();
  CHECK(run_cli("simulate --quiet --config " + cfg, out) == 0);
  const auto lines = read_lines(out);
  REQUIRE(lines.size() == 5);
  CHECK(lines[1].rfind("0,J_z,0.2,", 0) == 0);
}

TEST_CASE_FIXTURE(Workdir, "configuration errors exit with 2") {
  CHECK(run_cli("simulate --preset fig99") == 2);
  CHECK(run_cli("simulate") == 2);
  CHECK(run_cli("simulate --preset fig1 --config x.cfg") == 2);
  CHECK(run_cli("simulate --preset fig1 --points 1") == 2);
  CHECK(run_cli("simulate --preset fig1 --tmax -3") == 2);
  CHECK(run_cli("simulate --preset fig1 --cutoff 1") == 2);
  CHECK(run_cli("simulate --preset fig1 --bogus") == 2);
  CHECK(run_cli("frobnicate") == 2);
  CHECK(run_cli("") == 2);
  CHECK(run_cli("simulate --config " + (kWork / "missing.cfg").string()) == 2);
  CHECK(run_cli("simulate --config " + write_file("bad.cfg", "colour = red\n")) == 2);
  CHECK(run_cli("simulate --preset fig13 --tmax 1 --points 2 --out /nonexistent-dir/x.csv") == 2);
}

TEST_CASE_FIXTURE(Workdir, "numerical contract failures exit with 3") {
  // n_s = 0.5 does not fit in 16 Fock levels.
  CHECK(run_cli("simulate --preset fig1 --cutoff 16 --tmax 1 --points 2") == 3);
  std::ifstream err(kWork / "stderr.txt");
  std::stringstream text;
  text << err.rdbuf();
  CHECK(text.str().find("cutoff") != std::string::npos);
}
