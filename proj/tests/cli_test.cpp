#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace {

int run(const std::string& args) {
  const std::string cmd = std::string(CLI_BINARY) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("help and usage errors") {
  CHECK(run("--help") == 0);
  CHECK(run("spectrum --help") == 0);
  CHECK(run("") == 2);                                   // missing subcommand
  CHECK(run("spectrum --points 1") == 2);                // rejected by validation
  CHECK(run("motion --protocol bogus") == 2);            // unknown protocol
  CHECK(run("resonance --ensemble gaussian:2 --points 4") == 2);
  CHECK(run("iswap") == 2);                              // mode required
}

TEST_CASE("runtime failure exits with 1") {
  CHECK(run("spectrum --points 3 --truncation 8 -o /nonexistent_dir/x.csv") == 1);
}

TEST_CASE("spectrum output is self-describing and reproducible") {
  CHECK(run("spectrum --j0 10 --g-range -1.5:0 --points 5 --truncation 31 --analytic "
            "-o /tmp/mt_spec_a.csv") == 0);
  CHECK(run("spectrum --j0 10 --g-range -1.5:0 --points 5 --truncation 31 --analytic "
            "-o /tmp/mt_spec_b.csv") == 0);
  const std::string a = slurp("/tmp/mt_spec_a.csv");
  CHECK(a == slurp("/tmp/mt_spec_b.csv"));  // byte-identical reruns
  CHECK(a.find("# ") == 0);
  CHECK(a.find("parameter_value,level_index,branch,energy") != std::string::npos);
  CHECK(a.find(",num,") != std::string::npos);
  CHECK(a.find(",+,") != std::string::npos);
  CHECK(a.find(",-,") != std::string::npos);
}

TEST_CASE("analytic-only levels at g = 0 are n*w +- j0") {
  CHECK(run("spectrum --j0 3 --g-range 0:0 --points 2 --truncation 21 --levels 4 --analytic "
            "-o /tmp/mt_spec_g0.csv") == 0);
  const std::string text = slurp("/tmp/mt_spec_g0.csv");
  // ground analytic level at -3
  CHECK(text.find("0,0,+,-3") != std::string::npos);
}

TEST_CASE("resonance minimal run emits a valid table and minima file") {
  CHECK(run("resonance --ensemble fock:1 --omega-range 1.0:1.1 --points 2 --fock-cutoff 11 "
            "-o /tmp/mt_res.csv") == 0);
  const std::string text = slurp("/tmp/mt_res.csv");
  CHECK(text.find("omega_z_over_j0,fidelity") != std::string::npos);
  auto j = nlohmann::json::parse(slurp("/tmp/mt_res.csv.minima.json"));
  CHECK(j.contains("minima"));
  CHECK(j["minima"].is_array());
}

TEST_CASE("one-pulse iswap run reports a high-fidelity gate") {
  CHECK(run("iswap one-pulse --omega-mu 0.641 --j0 0.37 -o /tmp/mt_iswap.json") == 0);
  auto j = nlohmann::json::parse(slurp("/tmp/mt_iswap.json"));
  CHECK(j["fidelity"].get<double>() >= 0.9999);
  CHECK(j["per_input"].size() == 4);
}

TEST_CASE("qb-gate auto calibration") {
  CHECK(run("qb-gate --phi pi --j-ratio 11.832 --theta auto --trace -o /tmp/mt_qb.json") == 0);
  auto j = nlohmann::json::parse(slurp("/tmp/mt_qb.json"));
  CHECK(j["theta_over_pi"].get<double>() == doctest::Approx(-0.04196).epsilon(2e-3));
  CHECK(j["fidelity"].get<double>() >= 0.9999);
  CHECK(j["pair_echo_population"].get<double>() >= 1.0 - 1e-6);
  const std::string trace = slurp("/tmp/mt_qb.json.trace.csv");
  CHECK(trace.find("time_ms,basis_label,population,phase_rad") != std::string::npos);
  CHECK(trace.find(",uu,") != std::string::npos);
}

TEST_CASE("motion subcommand minimal run") {
  CHECK(run("motion --protocol one-pulse-iswap --ell-range 0:0.05 --points 2 --nbar-list 2 "
            "--fock-cutoff 15 -o /tmp/mt_motion.csv") == 0);
  const std::string text = slurp("/tmp/mt_motion.csv");
  CHECK(text.find("ell_x_over_L,nbar,fidelity,infidelity,log10_infidelity") !=
        std::string::npos);
  CHECK(text.find("# eps_norm = rms") != std::string::npos);
}
