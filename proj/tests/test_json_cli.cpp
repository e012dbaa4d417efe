// Copyright 2026 The causalis developers.
// Licensed under the Apache License, Version 2.0; see LICENSE for details.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include <sys/wait.h>

#include "causalis/io.hpp"
#include "causalis/qswitch.hpp"
#include "causalis/random.hpp"

using namespace causalis;

namespace {

std::filesystem::path work_dir() {
  auto dir = std::filesystem::temp_directory_path() / "causalis_cli_test";
  std::filesystem::create_directories(dir);
  return dir;
}

std::string cli_path() {
  if (const char* p = std::getenv("CAUSALIS_CLI_PATH")) return p;
#ifdef CAUSALIS_CLI_PATH
  return CAUSALIS_CLI_PATH;
#else
  FAIL("CAUSALIS_CLI_PATH must point at the CLI binary");
  return "";
#endif
}

int run(const std::string& args) {
  std::string cmd = "\"" + cli_path() + "\" " + args + " > /dev/null 2>&1";
  int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  return std::string(std::istreambuf_iterator<char>(in),
                     std::istreambuf_iterator<char>());
}

}  // namespace

TEST_CASE("labeled operators survive the JSON round trip") {
  SystemId a{"A", 2}, b{"B", 3}, c{"C", 6};
  LabeledOperator op({a, b}, {c}, random_unitary_matrix(6, 11));
  LabeledOperator back = operator_from_json(operator_to_json(op));
  CHECK(back.rows() == op.rows());
  CHECK(back.cols() == op.cols());
  CHECK(max_abs(back.matrix() - op.matrix()) < 1e-14);
}

TEST_CASE("Choi payloads honor the convention field") {
  SystemId in{"A_I", 2}, out{"A_O", 2};
  ChoiOperator choi = random_cptp({in}, {out}, 2, 21);

  ChoiOperator t_back = choi_from_json(choi_to_json(choi, false));
  CHECK(max_abs(t_back.op.matrix() - choi.op.matrix()) < 1e-14);

  Json std_json = choi_to_json(choi, true);
  CHECK(std_json.at("convention") == "standard");
  ChoiOperator s_back = choi_from_json(std_json);
  CHECK(max_abs(s_back.op.matrix() - choi.op.matrix()) < 1e-14);

  // The standard payload stores the transposed matrix.
  Json t_json = choi_to_json(choi, false);
  auto re_t = t_json.at("operator").at("re");
  auto re_s = std_json.at("operator").at("re");
  for (std::size_t i = 0; i < re_t.size(); ++i)
    for (std::size_t j = 0; j < re_t.size(); ++j)
      CHECK(double(re_s[i][j]) == doctest::Approx(double(re_t[j][i])));
}

TEST_CASE("process matrices and instruments survive the JSON round trip") {
  ProcessMatrix w = switch_process_matrix(SwitchConfig{}, false);
  ProcessMatrix back = process_from_json(process_to_json(w));
  REQUIRE(back.layout.parties.size() == w.layout.parties.size());
  for (std::size_t i = 0; i < w.layout.parties.size(); ++i) {
    CHECK(back.layout.parties[i].name == w.layout.parties[i].name);
    CHECK(back.layout.parties[i].in.has_value() == w.layout.parties[i].in.has_value());
    CHECK(back.layout.parties[i].out.has_value() == w.layout.parties[i].out.has_value());
  }
  CHECK(max_abs_diff(back.w, w.w) < 1e-14);

  Instrument ins = random_instrument("A", {SystemId{"A_I", 2}}, {SystemId{"A_O", 2}}, 3, 33);
  Instrument ins_back = instrument_from_json(instrument_to_json(ins));
  CHECK(ins_back.party == ins.party);
  REQUIRE(ins_back.outcomes.size() == ins.outcomes.size());
  for (std::size_t k = 0; k < ins.outcomes.size(); ++k) {
    CHECK(ins_back.outcomes[k].first == ins.outcomes[k].first);
    CHECK(max_abs_diff(ins_back.outcomes[k].second.op, ins.outcomes[k].second.op) < 1e-14);
  }
}

TEST_CASE("encoder pairs survive the JSON round trip") {
  SubsystemEncoderPair enc = extract_delocalized_subsystems(switch_process_channel(2));
  SubsystemEncoderPair back = encoders_from_json(encoders_to_json(enc));
  CHECK(back.a_tilde_in.name == enc.a_tilde_in.name);
  CHECK(back.a_tilde_out.dim == enc.a_tilde_out.dim);
  CHECK(back.a_bar.dim == enc.a_bar.dim);
  CHECK(max_abs_diff(back.w_in, enc.w_in) < 1e-14);
  CHECK(max_abs_diff(back.w_out, enc.w_out) < 1e-14);
}

TEST_CASE("build, validate and certify chain through the CLI") {
  auto dir = work_dir();
  auto w4 = (dir / "w4.json").string();
  auto w3 = (dir / "w3.json").string();
  auto report = dir / "report.json";

  CHECK(run("build-switch --d 2 --four-party --out " + w4) == 0);
  CHECK(run("validate " + w4 + " --out " + report.string()) == 0);
  Json j = load_json_file(report.string());
  CHECK(j.at("status") == "pass");
  CHECK(j.at("validation").at("psd") == true);

  CHECK(run("build-switch --d 2 --tripartite --out " + w3) == 0);
  CHECK(run("certify " + w3 + " --out " + report.string()) == 0);
  Json cert = load_json_file(report.string());
  CHECK(cert.at("certificate").at("certified") == true);
}

TEST_CASE("the CLI rejects invalid processes with exit code 1") {
  auto dir = work_dir();
  // Output-output correlations violate the process term rule.
  SystemId ai{"A_I", 2}, ao{"A_O", 2}, bi{"B_I", 2}, bo{"B_O", 2};
  Eigen::MatrixXcd z(2, 2);
  z << 1, 0, 0, -1;
  LabeledOperator bad =
      0.25 * (LabeledOperator::identity({ai, ao, bi, bo}) +
              tensor(tensor(LabeledOperator::identity({ai}), LabeledOperator({ao}, {ao}, z)),
                     tensor(LabeledOperator::identity({bi}), LabeledOperator({bo}, {bo}, z))));
  PartyLayout layout;
  layout.parties = {Party{"A", ai, ao}, Party{"B", bi, bo}};
  auto bad_path = dir / "bad.json";
  save_json_file(bad_path.string(), process_to_json(ProcessMatrix{layout, bad}));

  auto report = dir / "bad_report.json";
  CHECK(run("validate " + bad_path.string() + " --out " + report.string()) == 1);
  Json j = load_json_file(report.string());
  CHECK(j.at("status") == "fail");
  CHECK(!j.at("validation").at("forbidden_terms").empty());
}

TEST_CASE("malformed input and bad usage exit with code 2") {
  auto dir = work_dir();
  auto garbled = dir / "garbled.json";
  std::ofstream(garbled) << "{ not json";
  CHECK(run("validate " + garbled.string()) == 2);
  CHECK(run("no-such-command") == 2);
}

TEST_CASE("reports are deterministic for a fixed seed") {
  auto dir = work_dir();
  auto w3 = (dir / "w3d.json").string();
  CHECK(run("build-switch --d 2 --tripartite --out " + w3) == 0);
  auto r1 = dir / "det1.json";
  auto r2 = dir / "det2.json";
  CHECK(run("--seed 5 certify " + w3 + " --out " + r1.string()) == 0);
  CHECK(run("--seed 5 certify " + w3 + " --out " + r2.string()) == 0);
  CHECK(slurp(r1) == slurp(r2));
  Json j = load_json_file(r1.string());
  CHECK(j.at("seed") == 5);
}

TEST_CASE("the seed falls back to the environment variable") {
  auto dir = work_dir();
  auto w4 = (dir / "w4e.json").string();
  CHECK(run("build-switch --d 2 --four-party --out " + w4) == 0);
  auto report = dir / "env_report.json";
  std::string cmd = "CAUSALIS_SEED=42 \"" + cli_path() + "\" validate " + w4 +
                    " --out " + report.string() + " > /dev/null 2>&1";
  int status = std::system(cmd.c_str());
  CHECK(WEXITSTATUS(status) == 0);
  Json j = load_json_file(report.string());
  CHECK(j.at("seed") == 42);
}
