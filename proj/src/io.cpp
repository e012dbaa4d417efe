// Copyright 2026 The causalis developers.
// Licensed under the Apache License, Version 2.0; see LICENSE for details.

#include "causalis/io.hpp"

#include <fstream>
#include <stdexcept>

namespace causalis {

namespace {

SystemList systems_from_json(const Json& j) {
  SystemList out;
  for (const auto& e : j) out.push_back(system_from_json(e));
  return out;
}

Json systems_to_json(const SystemList& systems) {
  Json out = Json::array();
  for (const auto& s : systems) out.push_back(system_to_json(s));
  return out;
}

}  // namespace

Json system_to_json(const SystemId& s) {
  return Json{{"name", s.name}, {"dim", s.dim}};
}

SystemId system_from_json(const Json& j) {
  SystemId s{j.at("name").get<std::string>(), j.at("dim").get<Eigen::Index>()};
  if (s.dim < 1) throw std::invalid_argument("system dimension must be positive");
  return s;
}

Json operator_to_json(const LabeledOperator& op) {
  const Eigen::MatrixXcd& m = op.matrix();
  Json re = Json::array(), im = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json rr = Json::array(), ri = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      rr.push_back(m(r, c).real());
      ri.push_back(m(r, c).imag());
    }
    re.push_back(std::move(rr));
    im.push_back(std::move(ri));
  }
  return Json{{"rows", systems_to_json(op.rows())},
              {"cols", systems_to_json(op.cols())},
              {"re", std::move(re)},
              {"im", std::move(im)}};
}

LabeledOperator operator_from_json(const Json& j) {
  SystemList rows = systems_from_json(j.at("rows"));
  SystemList cols = systems_from_json(j.at("cols"));
  const Json& re = j.at("re");
  const Json& im = j.at("im");
  const Eigen::Index nr = total_dim(rows), nc = total_dim(cols);
  if (static_cast<Eigen::Index>(re.size()) != nr ||
      static_cast<Eigen::Index>(im.size()) != nr)
    throw std::invalid_argument("operator matrix rows do not match system dims");
  Eigen::MatrixXcd m(nr, nc);
  for (Eigen::Index r = 0; r < nr; ++r) {
    const Json& rr = re.at(r);
    const Json& ri = im.at(r);
    if (static_cast<Eigen::Index>(rr.size()) != nc ||
        static_cast<Eigen::Index>(ri.size()) != nc)
      throw std::invalid_argument("operator matrix cols do not match system dims");
    for (Eigen::Index c = 0; c < nc; ++c)
      m(r, c) = Complex(rr.at(c).get<double>(), ri.at(c).get<double>());
  }
  return LabeledOperator(std::move(rows), std::move(cols), std::move(m));
}

Json choi_to_json(const ChoiOperator& c, bool standard_convention) {
  LabeledOperator op = standard_convention ? c.op.transpose_square() : c.op;
  return Json{{"in", systems_to_json(c.in_systems)},
              {"out", systems_to_json(c.out_systems)},
              {"convention", standard_convention ? "standard" : "transposed"},
              {"operator", operator_to_json(op)}};
}

ChoiOperator choi_from_json(const Json& j) {
  LabeledOperator op = operator_from_json(j.at("operator"));
  if (j.value("convention", "transposed") == std::string("standard"))
    op = op.transpose_square();
  return ChoiOperator{systems_from_json(j.at("in")), systems_from_json(j.at("out")),
                      std::move(op)};
}

Json process_to_json(const ProcessMatrix& w) {
  Json parties = Json::array();
  for (const auto& p : w.layout.parties) {
    Json e{{"name", p.name}};
    e["in"] = p.in ? system_to_json(*p.in) : Json(nullptr);
    e["out"] = p.out ? system_to_json(*p.out) : Json(nullptr);
    parties.push_back(std::move(e));
  }
  return Json{{"parties", std::move(parties)}, {"operator", operator_to_json(w.w)}};
}

ProcessMatrix process_from_json(const Json& j) {
  PartyLayout layout;
  for (const auto& e : j.at("parties")) {
    Party p;
    p.name = e.at("name").get<std::string>();
    if (e.contains("in") && !e.at("in").is_null()) p.in = system_from_json(e.at("in"));
    if (e.contains("out") && !e.at("out").is_null()) p.out = system_from_json(e.at("out"));
    layout.parties.push_back(std::move(p));
  }
  return ProcessMatrix{std::move(layout), operator_from_json(j.at("operator"))};
}

Json instrument_to_json(const Instrument& ins) {
  Json outcomes = Json::array();
  for (const auto& [label, choi] : ins.outcomes)
    outcomes.push_back(Json{{"label", label}, {"choi", choi_to_json(choi)}});
  return Json{{"party", ins.party}, {"outcomes", std::move(outcomes)}};
}

Instrument instrument_from_json(const Json& j) {
  Instrument ins;
  ins.party = j.at("party").get<std::string>();
  for (const auto& e : j.at("outcomes"))
    ins.outcomes.emplace_back(e.at("label").get<std::string>(),
                              choi_from_json(e.at("choi")));
  return ins;
}

Json encoders_to_json(const SubsystemEncoderPair& enc) {
  return Json{{"w_in", operator_to_json(enc.w_in)},
              {"w_out", operator_to_json(enc.w_out)},
              {"a_tilde_in", system_to_json(enc.a_tilde_in)},
              {"a_tilde_out", system_to_json(enc.a_tilde_out)},
              {"a_bar", system_to_json(enc.a_bar)}};
}

SubsystemEncoderPair encoders_from_json(const Json& j) {
  SubsystemEncoderPair enc;
  enc.w_in = operator_from_json(j.at("w_in"));
  enc.w_out = operator_from_json(j.at("w_out"));
  enc.a_tilde_in = system_from_json(j.at("a_tilde_in"));
  enc.a_tilde_out = system_from_json(j.at("a_tilde_out"));
  enc.a_bar = system_from_json(j.at("a_bar"));
  return enc;
}

Json validation_report_to_json(const ProcessValidationReport& r) {
  return Json{{"hermitian", r.hermitian},
              {"psd", r.psd},
              {"min_eigenvalue", r.min_eigenvalue},
              {"identity_weight", r.identity_weight},
              {"identity_weight_expected", r.identity_weight_expected},
              {"identity_weight_ok", r.identity_weight_ok},
              {"forbidden_terms", r.forbidden_terms},
              {"max_normalization_error", r.max_normalization_error},
              {"normalization_ok", r.normalization_ok},
              {"valid", r.valid()}};
}

Json signaling_result_to_json(const SignalingResult& r) {
  return Json{{"structural_residual", r.structural_residual},
              {"structural_no_signaling", r.structural_no_signaling},
              {"operational_gap", r.operational_gap}};
}

Json certificate_to_json(const NonseparabilityCertificate& c) {
  return Json{{"certified", c.certified},
              {"rank", c.rank},
              {"gap_ab", c.gap_ab},
              {"gap_ba", c.gap_ba}};
}

Json one_comb_to_json(const OneComb& c) {
  return Json{{"v1", operator_to_json(c.v1)},
              {"v2", operator_to_json(c.v2)},
              {"memory", system_to_json(c.x)},
              {"reconstruction_residual", c.reconstruction_residual},
              {"probe_gap", c.probe_gap}};
}

Json theorem2_report_to_json(const Theorem2Report& r) {
  return Json{{"satisfies", r.satisfies},
              {"probe_gap", r.probe_gap},
              {"choi_rank", r.choi_rank},
              {"k_dim", r.k_dim}};
}

Json tomography_report_to_json(const TomographyReport& r) {
  return Json{{"reconstructed", choi_to_json(r.reconstructed)},
              {"probabilities", r.probabilities},
              {"min_projection_weight", r.min_projection_weight},
              {"shots", r.shots},
              {"seed", r.seed}};
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return Json::parse(in);
}

void save_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << j.dump(2) << "\n";
}

}  // namespace causalis
