#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "qsalloc/experiments.hpp"

namespace fs = std::filesystem;

namespace {

std::string cli_path() {
  const char* path = std::getenv("QSALLOC_CLI");
  REQUIRE_MESSAGE(path != nullptr, "QSALLOC_CLI must point at the built binary");
  return path;
}

struct RunResult {
  int exit_code;
  std::string output;  // stdout + stderr
};

RunResult run_cli(const std::string& args) {
  const std::string command = cli_path() + " " + args + " 2>&1";
  FILE* pipe = popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string output;
  std::array<char, 4096> buffer;
  while (std::size_t n = fread(buffer.data(), 1, buffer.size(), pipe)) {
    output.append(buffer.data(), n);
  }
  const int status = pclose(pipe);
  return RunResult{WIFEXITED(status) ? WEXITSTATUS(status) : -1, output};
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

struct TempDir {
  TempDir() {
    std::string tmpl = (fs::temp_directory_path() / "qsalloc_cli_XXXXXX").string();
    REQUIRE(mkdtemp(tmpl.data()) != nullptr);
    path = tmpl;
  }
  ~TempDir() { fs::remove_all(path); }
  fs::path path;
};

}  // namespace

TEST_CASE("eval prints exact and decimal values") {
  const auto res = run_cli("eval --n 30 --m 2 --fixed-r 5 --alpha 1 --mu 1");
  CHECK(res.exit_code == 0);
  CHECK(res.output.find("mu_s = 1/3") != std::string::npos);
  CHECK(res.output.find("0.333333333333") != std::string::npos);
  CHECK(res.output.find("P_s = 9/29") != std::string::npos);
  CHECK(res.output.find("closed_form = 1/3") != std::string::npos);

  const auto prob = run_cli("eval --n 30 --m 2 --prob-p 0.5 --alpha 2 --mu 1");
  CHECK(prob.exit_code == 0);
  CHECK(prob.output.find("mu_s = 23/35") != std::string::npos);
  CHECK(prob.output.find("upper_bound = 1/1") != std::string::npos);
}

TEST_CASE("invalid input exits with code 2 and names the problem") {
  const auto res = run_cli("eval --n 30 --m 2 --fixed-r 5 --alpha 6");
  CHECK(res.exit_code == 2);
  CHECK(res.output.find("alpha") != std::string::npos);
  CHECK(res.output.find("r = 5") != std::string::npos);

  CHECK(run_cli("eval --n 30 --m 2 --alpha 1").exit_code == 2);            // no access model
  CHECK(run_cli("eval --n 30 --m 40 --fixed-r 5 --alpha 1").exit_code == 2);  // m > n
  CHECK(run_cli("nonsense").exit_code == 2);
  CHECK(run_cli("eval --n 30 --m 2 --fixed-r 5 --prob-p 0.5 --alpha 1").exit_code == 2);
  CHECK(run_cli("--help").exit_code == 0);
}

TEST_CASE("oracle subcommand cross-checks and reports MATCH") {
  const auto res = run_cli("oracle --n 6 --m 2 --fixed-r 3 --alpha 1 --mu 1");
  CHECK(res.exit_code == 0);
  CHECK(res.output.find("MATCH") != std::string::npos);
  CHECK(res.output.find("1/1") != std::string::npos);

  const auto prob = run_cli("oracle --n 6 --m 2 --prob-p 0.5 --alpha 2");
  CHECK(prob.exit_code == 0);
  CHECK(prob.output.find("23/35") != std::string::npos);

  const auto guarded = run_cli("oracle --n 25 --m 2 --fixed-r 3 --alpha 1");
  CHECK(guarded.exit_code == 2);
  CHECK(guarded.output.find("guard") != std::string::npos);
}

TEST_CASE("optimal subcommand reports the argmax") {
  const auto res = run_cli("optimal --n 30 --m 2 --fixed-r 5");
  CHECK(res.exit_code == 0);
  CHECK(res.output.find("optimal alpha = 1") != std::string::npos);
  CHECK(res.output.find("warning") == std::string::npos);

  const auto prob = run_cli("optimal --n 30 --m 2 --prob-p 0.3");
  CHECK(prob.exit_code == 0);
  CHECK(prob.output.find("optimal alpha = 1") != std::string::npos);
}

TEST_CASE("simulate subcommand: exit codes and deterministic CSV") {
  TempDir dir;
  const std::string out = (dir.path / "sim.csv").string();
  const std::string base =
      "simulate --n 30 --m 2 --fixed-r 5 --alpha 1 --mu 1 --trials 50000 --seed 42 --out " + out;

  const auto res = run_cli(base);
  CHECK(res.exit_code == 0);
  CHECK(res.output.find("combined_rate") != std::string::npos);
  const std::string first = slurp(out);
  CHECK(first.find("k,count,empirical_pk,analytic_pk,mean_time,sd_time,analytic_time\n") == 0);
  CHECK(first.find("analytic_mu_s=1/3") != std::string::npos);

  CHECK(run_cli(base).exit_code == 0);
  CHECK(slurp(out) == first);

  CHECK(run_cli(base + " --workers 4").exit_code == 0);
  CHECK(slurp(out) == first);

  CHECK(run_cli("simulate --n 30 --m 2 --fixed-r 5 --alpha 1 --trials 0 --seed 1 --out " + out)
            .exit_code == 2);

  // impossible stratum threshold: reported and exit 3
  const auto starved = run_cli(
      "simulate --n 30 --m 2 --fixed-r 5 --alpha 2 --trials 200 --seed 1 "
      "--min-stratum-count 100000 --out " +
      out);
  CHECK(starved.exit_code == 3);
  CHECK(starved.output.find("insufficient data") != std::string::npos);
}

TEST_CASE("sweep subcommand writes the requested CSV") {
  TempDir dir;
  const std::string out = (dir.path / "sweep.csv").string();
  const auto res = run_cli(
      "sweep --n 30 --mu 1 --m 1 --fixed-r 5 --sweep-var m --sweep-values 1,2,3,4,5,6 --out " +
      out);
  CHECK(res.exit_code == 0);
  const std::string csv = slurp(out);
  CHECK(csv.find("sweep_var,alpha,beta,m,N,r_or_p,mu,P_s_exact,P_s_float,mu_s_exact,"
                 "mu_s_float,bound_float\n") == 0);
  CHECK(csv.find("budget_m,1,2,2,30,5,1/1,9/29,0.310344827586,1/3,0.333333333333,"
                 "0.333333333333\n") != std::string::npos);

  CHECK(run_cli("sweep --n 30 --m 2 --fixed-r 5 --sweep-var p --sweep-values 0.5 --out " + out)
            .exit_code == 2);
}

TEST_CASE("reproduce presets match the library output byte for byte") {
  TempDir dir;
  for (const std::string figure : {"fig2", "fig3", "fig4", "fig5"}) {
    const std::string out = (dir.path / (figure + ".csv")).string();
    const auto res = run_cli("reproduce " + figure + " --out " + out);
    CHECK(res.exit_code == 0);
    std::ostringstream expected;
    qsalloc::write_figure_csv(expected, figure.back() - '0');
    CHECK(slurp(out) == expected.str());
  }
  CHECK(run_cli("reproduce fig9").exit_code == 2);
}

TEST_CASE("default output paths are per subcommand") {
  TempDir dir;
  const std::string in_dir = "cd " + dir.path.string() + " && " + cli_path() + " ";
  CHECK(std::system((in_dir + "reproduce fig2 > /dev/null").c_str()) == 0);
  CHECK(fs::exists(dir.path / "fig2.csv"));
  CHECK(std::system((in_dir + "simulate --n 6 --m 2 --fixed-r 3 --alpha 1 --trials 5000 "
                              "--seed 1 > /dev/null")
                        .c_str()) == 0);
  CHECK(fs::exists(dir.path / "simulate.csv"));
  CHECK(std::system(
            (in_dir + "sweep --n 6 --m 2 --fixed-r 3 --sweep-var alpha --sweep-values 1 "
                      "> /dev/null")
                .c_str()) == 0);
  CHECK(fs::exists(dir.path / "sweep.csv"));
}

TEST_CASE("config file fills unset options; flags override") {
  TempDir dir;
  const fs::path cfg = dir.path / "run.cfg";
  std::ofstream(cfg) << "# cluster under test\n"
                     << "n = 30\n"
                     << "m = 2\n"
                     << "mu = 1\n"
                     << "access = fixed\n"
                     << "r = 5\n";

  const auto res = run_cli("eval --config " + cfg.string() + " --alpha 1");
  CHECK(res.exit_code == 0);
  CHECK(res.output.find("mu_s = 1/3") != std::string::npos);

  // flag overrides the file's m = 2
  const auto overridden = run_cli("eval --config " + cfg.string() + " --m 3 --alpha 1");
  CHECK(overridden.exit_code == 0);
  CHECK(overridden.output.find("mu_s = 1/2") != std::string::npos);

  // probabilistic spelling of the file
  const fs::path prob_cfg = dir.path / "prob.cfg";
  std::ofstream(prob_cfg) << "n = 30\nm = 2\naccess = prob\np = 0.5\n";
  const auto prob = run_cli("eval --config " + prob_cfg.string() + " --alpha 2");
  CHECK(prob.exit_code == 0);
  CHECK(prob.output.find("mu_s = 23/35") != std::string::npos);

  const fs::path bad_cfg = dir.path / "bad.cfg";
  std::ofstream(bad_cfg) << "volume = 11\n";
  CHECK(run_cli("eval --config " + bad_cfg.string() + " --alpha 1").exit_code == 2);
  CHECK(run_cli("eval --config " + (dir.path / "absent.cfg").string() + " --alpha 1").exit_code ==
        2);
}
