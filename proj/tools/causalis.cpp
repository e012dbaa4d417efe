// Copyright 2026 The causalis developers.
// Licensed under the Apache License, Version 2.0; see LICENSE for details.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "causalis/io.hpp"
#include "causalis/qswitch.hpp"
#include "causalis/random.hpp"
#include "causalis/tomography.hpp"

namespace {

constexpr const char* kVersion = "causalis 0.1.0";

std::uint64_t default_seed() {
  if (const char* env = std::getenv("CAUSALIS_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw std::runtime_error("CAUSALIS_SEED is not an unsigned integer");
    }
  }
  return 0;
}

/// Pure-state vector from "re[,im];re[,im];..." component syntax.
Eigen::VectorXcd parse_state(const std::string& text) {
  std::vector<causalis::Complex> comps;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ';')) {
    double re = 0.0, im = 0.0;
    std::stringstream ps(part);
    std::string num;
    if (!std::getline(ps, num, ',')) throw std::runtime_error("empty state component");
    re = std::stod(num);
    if (std::getline(ps, num, ',')) im = std::stod(num);
    comps.emplace_back(re, im);
  }
  Eigen::VectorXcd v(comps.size());
  for (std::size_t i = 0; i < comps.size(); ++i) v(i) = comps[i];
  if (v.norm() < 1e-12) throw std::runtime_error("state vector has zero norm");
  return v;
}

/// Accepts both a bare process JSON and a build-switch report wrapping it.
causalis::ProcessMatrix load_process(const std::string& path) {
  causalis::Json j = causalis::load_json_file(path);
  if (j.contains("process")) return causalis::process_from_json(j.at("process"));
  return causalis::process_from_json(j);
}

void emit(const causalis::Json& report, const std::string& out_path) {
  if (out_path.empty())
    std::cout << report.dump(2) << "\n";
  else
    causalis::save_json_file(out_path, report);
}

int finish(causalis::Json report, const std::string& command, bool pass,
           std::uint64_t seed, const std::string& out_path) {
  report["command"] = command;
  report["status"] = pass ? "pass" : "fail";
  report["seed"] = seed;
  report["version"] = kVersion;
  emit(report, out_path);
  return pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace causalis;

  CLI::App app{"Process-matrix and time-delocalized-subsystem toolkit"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  std::uint64_t seed = 0;
  bool seed_given = false;
  std::string out_path;
  app.add_option("--seed", seed, "Seed for all randomized checks")
      ->each([&](const std::string&) { seed_given = true; });
  app.add_option("--out", out_path, "Write the JSON report to this path");

  auto* cmd_validate = app.add_subcommand("validate", "Check process-matrix validity");
  std::string validate_path;
  cmd_validate->add_option("process", validate_path, "Process JSON file")->required();

  auto* cmd_build = app.add_subcommand("build-switch", "Emit the controlled-order process");
  Eigen::Index build_d = 2;
  bool four_party = false, tripartite = false;
  std::string psi_text;
  cmd_build->add_option("--d", build_d, "Target dimension");
  auto* opt_four = cmd_build->add_flag("--four-party", four_party, "Four-party form");
  cmd_build->add_flag("--tripartite", tripartite, "Tripartite form (fixed preparation)")
      ->excludes(opt_four);
  cmd_build->add_option("--psi", psi_text, "Target preparation, components 're[,im];...'");

  auto* cmd_verify = app.add_subcommand(
      "verify-switch", "Check the encoder identity and comb factorization");
  int verify_samples = 50;
  cmd_verify->add_option("--samples", verify_samples, "Random unitaries per setting");

  auto* cmd_factorize =
      app.add_subcommand("factorize", "Delocalized-subsystem factorization pipeline");
  std::string factorize_path;
  cmd_factorize->add_option("process", factorize_path, "Process JSON file")->required();

  auto* cmd_tomo = app.add_subcommand("tomography", "Tomograph a delocalized operation");
  std::string comb_path, encoders_path;
  std::uint64_t shots = 0;
  cmd_tomo->add_option("comb", comb_path, "Circuit operator JSON file")->required();
  cmd_tomo->add_option("encoders", encoders_path, "Encoder-pair JSON file")->required();
  cmd_tomo->add_option("--shots", shots, "Shots per setting (0 = exact)");

  auto* cmd_signaling = app.add_subcommand("signaling", "Signaling diagnostics");
  std::string signaling_path, from_party, to_party;
  cmd_signaling->add_option("process", signaling_path, "Process JSON file")->required();
  cmd_signaling->add_option("--from", from_party, "Sending party")->required();
  cmd_signaling->add_option("--to", to_party, "Receiving party")->required();

  auto* cmd_certify = app.add_subcommand("certify", "Causal-nonseparability certificate");
  std::string certify_path;
  cmd_certify->add_option("process", certify_path, "Process JSON file")->required();

  for (auto* sub : app.get_subcommands({})) sub->fallthrough(true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (!seed_given) seed = default_seed();

    if (*cmd_validate) {
      ProcessMatrix w = load_process(validate_path);
      ProcessValidationReport r = validate_process_matrix(w, 50, seed);
      Json report{{"validation", validation_report_to_json(r)}};
      return finish(std::move(report), "validate", r.valid(), seed, out_path);
    }

    if (*cmd_build) {
      SwitchConfig cfg;
      cfg.d = build_d;
      if (!psi_text.empty()) cfg.psi = parse_state(psi_text);
      ProcessMatrix w = switch_process_matrix(cfg, !tripartite);
      Json report{{"process", process_to_json(w)}};
      return finish(std::move(report), "build-switch", true, seed, out_path);
    }

    if (*cmd_verify) {
      double worst_identity = 0.0, worst_gates = 0.0;
      for (int k = 0; k < verify_samples; ++k) {
        for (Eigen::Index d : {Eigen::Index(2), Eigen::Index(3)}) {
          SwitchConfig cfg;
          cfg.d = d;
          if (d == 2) cfg.anc_a_in = cfg.anc_a_out = 2;
          Eigen::MatrixXcd u_a =
              random_unitary_matrix(cfg.anc_a_in * cfg.d, seed + 1000 * d + k);
          worst_identity =
              std::max(worst_identity, verify_delocalized_factorization(u_a, cfg));
          worst_gates = std::max(
              worst_gates, max_abs_diff(switch_comb_from_gates(u_a, cfg),
                                        switch_comb_unitary(u_a, cfg)));
        }
      }
      bool pass = worst_identity <= 1e-10 && worst_gates <= 1e-10;
      Json report{{"residuals",
                   {{"encoder_identity", worst_identity},
                    {"gate_product", worst_gates}}},
                  {"samples", verify_samples}};
      return finish(std::move(report), "verify-switch", pass, seed, out_path);
    }

    if (*cmd_factorize) {
      ProcessMatrix w = load_process(factorize_path);
      FourPartyProcessChannel channel = channel_of_process(w);
      SubsystemEncoderPair enc = extract_delocalized_subsystems(channel);
      double residual = verify_theorem_factorization(channel, enc, 20, 1, seed);
      Theorem2Report t2 = check_theorem2_form(channel);
      bool pass = residual <= 1e-9 && t2.satisfies;
      Json report{{"encoders", encoders_to_json(enc)},
                  {"factorization_residual", residual},
                  {"theorem2", theorem2_report_to_json(t2)}};
      return finish(std::move(report), "factorize", pass, seed, out_path);
    }

    if (*cmd_tomo) {
      LabeledOperator circuit = operator_from_json(load_json_file(comb_path));
      SubsystemEncoderPair enc = encoders_from_json(load_json_file(encoders_path));
      Eigen::MatrixXcd env =
          Eigen::MatrixXcd::Identity(enc.a_bar.dim, enc.a_bar.dim) /
          static_cast<double>(enc.a_bar.dim);
      TomographyReport r = tomograph_delocalized_operation(circuit, enc, env, shots, seed);
      const double tol = shots > 0 ? 0.05 : 1e-8;
      bool pass = r.reconstructed.tp_residual() <= tol &&
                  r.min_projection_weight >= 1.0 - tol;
      Json report{{"tomography", tomography_report_to_json(r)}};
      return finish(std::move(report), "tomography", pass, seed, out_path);
    }

    if (*cmd_signaling) {
      ProcessMatrix w = load_process(signaling_path);
      SignalingResult r = signaling_test(w, from_party, to_party, 64, seed);
      Json report{{"signaling", signaling_result_to_json(r)}};
      return finish(std::move(report), "signaling", true, seed, out_path);
    }

    if (*cmd_certify) {
      ProcessMatrix w = load_process(certify_path);
      NonseparabilityCertificate c = nonseparability_certificate(w, 0.01, seed);
      Json report{{"certificate", certificate_to_json(c)}};
      return finish(std::move(report), "certify", c.certified, seed, out_path);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
