// Copyright 2026 The causalis developers.
// Licensed under the Apache License, Version 2.0; see LICENSE for details.

#include "causalis/qswitch.hpp"

#include <cmath>
#include <stdexcept>

namespace causalis {

namespace {

LabeledOperator endo(const SystemId& sys, const Eigen::MatrixXcd& m) {
  return LabeledOperator({sys}, {sys}, m);
}

Eigen::MatrixXcd qubit_proj(int k) {
  Eigen::MatrixXcd p = Eigen::MatrixXcd::Zero(2, 2);
  p(k, k) = 1.0;
  return p;
}

/// |k><k| as a map from one qubit wire to its renamed successor.
LabeledOperator control_proj(const SystemId& to, const SystemId& from, int k) {
  return LabeledOperator({to}, {from}, qubit_proj(k));
}

void check_square(const Eigen::MatrixXcd& u, Eigen::Index d, const char* what) {
  if (u.rows() != d || u.cols() != d)
    throw std::invalid_argument(std::string(what) + ": dimension mismatch");
}

Eigen::VectorXcd normalized_or_default(const std::optional<Eigen::VectorXcd>& v,
                                       Eigen::Index d, const char* what) {
  if (!v) {
    Eigen::VectorXcd e = Eigen::VectorXcd::Zero(d);
    e(0) = 1.0;
    return e;
  }
  if (v->size() != d) throw std::invalid_argument(std::string(what) + ": wrong size");
  if (std::abs(v->norm() - 1.0) > 1e-10)
    throw std::invalid_argument(std::string(what) + ": not normalized");
  return *v;
}

}  // namespace

LabeledOperator max_entangled_ket(const SystemId& a, const SystemId& b) {
  if (a.dim != b.dim)
    throw std::invalid_argument("max_entangled_ket: dimension mismatch");
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(a.dim * b.dim);
  for (Eigen::Index i = 0; i < a.dim; ++i) v(i * b.dim + i) = 1.0;
  return LabeledOperator::ket({a, b}, v);
}

LabeledOperator controlled_swap(const SystemId& control, const SystemId& t1,
                                const SystemId& t2) {
  if (control.dim != 2) throw std::invalid_argument("controlled_swap: control must be a qubit");
  if (t1.dim != t2.dim) throw std::invalid_argument("controlled_swap: target dims differ");
  const Eigen::Index d = t1.dim;
  Eigen::MatrixXcd swap = Eigen::MatrixXcd::Zero(d * d, d * d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) swap(i * d + j, j * d + i) = 1.0;
  LabeledOperator targets({t1, t2}, {t1, t2}, swap);
  return tensor(endo(control, qubit_proj(0)), LabeledOperator::identity({t1, t2})) +
         tensor(endo(control, qubit_proj(1)), targets);
}

LabeledOperator switch_unitary(const Eigen::MatrixXcd& u_a, const Eigen::MatrixXcd& u_b,
                               const SwitchConfig& cfg) {
  if (cfg.anc_a_in != cfg.anc_a_out || cfg.anc_b_in != cfg.anc_b_out)
    throw std::invalid_argument("switch_unitary: unitary slots need equal ancilla dims");
  const Eigen::Index d = cfg.d;
  check_square(u_a, cfg.anc_a_in * d, "switch_unitary: U_A");
  check_square(u_b, cfg.anc_b_in * d, "switch_unitary: U_B");
  SystemId ai{"a_I", cfg.anc_a_in}, ao{"a_O", cfg.anc_a_out};
  SystemId bi{"b_I", cfg.anc_b_in}, bo{"b_O", cfg.anc_b_out};
  SystemId q{"Q", 2}, qp{"Q'", 2}, s{"S", d}, sp{"S'", d}, x{"X", d};

  LabeledOperator a0({ao, x}, {ai, s}, u_a);
  LabeledOperator b0({bo, sp}, {bi, x}, u_b);
  LabeledOperator term0 = tensor(compose(b0, a0), control_proj(qp, q, 0));

  LabeledOperator b1({bo, x}, {bi, s}, u_b);
  LabeledOperator a1({ao, sp}, {ai, x}, u_a);
  LabeledOperator term1 = tensor(compose(a1, b1), control_proj(qp, q, 1));

  std::vector<std::string> rows{"a_O", "b_O", "Q'", "S'"};
  std::vector<std::string> cols{"a_I", "b_I", "Q", "S"};
  return permute_systems(term0, rows, cols) + permute_systems(term1, rows, cols);
}

LabeledOperator switch_comb_unitary(const Eigen::MatrixXcd& u_a, const SwitchConfig& cfg) {
  if (cfg.anc_a_in * cfg.d != cfg.anc_a_out * cfg.d ||
      static_cast<Eigen::Index>(u_a.rows()) != cfg.anc_a_out * cfg.d ||
      static_cast<Eigen::Index>(u_a.cols()) != cfg.anc_a_in * cfg.d)
    throw std::invalid_argument("switch_comb_unitary: U_A dimension mismatch");
  const Eigen::Index d = cfg.d;
  SystemId ai{"a_I", cfg.anc_a_in}, ao{"a_O", cfg.anc_a_out};
  SystemId q{"Q", 2}, qp{"Q'", 2}, s{"S", d}, sp{"S'", d};
  SystemId bi{"B_I", d}, bo{"B_O", d};

  LabeledOperator term0 =
      tensor(tensor(LabeledOperator({ao, bi}, {ai, s}, u_a), control_proj(qp, q, 0)),
             LabeledOperator::wire(bo, sp));
  LabeledOperator term1 =
      tensor(tensor(LabeledOperator({ao, sp}, {ai, bo}, u_a), control_proj(qp, q, 1)),
             LabeledOperator::wire(s, bi));

  std::vector<std::string> rows{"a_O", "Q'", "S'", "B_I"};
  std::vector<std::string> cols{"a_I", "Q", "S", "B_O"};
  return permute_systems(term0, rows, cols) + permute_systems(term1, rows, cols);
}

LabeledOperator switch_comb_from_gates(const Eigen::MatrixXcd& u_a,
                                       const SwitchConfig& cfg) {
  if (cfg.anc_a_in != cfg.anc_a_out)
    throw std::invalid_argument(
        "switch_comb_from_gates: the routed ancilla wire needs equal in/out dims");
  const Eigen::Index d = cfg.d;
  SystemId ai{"a_I", cfg.anc_a_in}, am{"a_m", cfg.anc_a_out}, ao{"a_O", cfg.anc_a_out};
  SystemId q{"Q", 2}, qm{"Q_m", 2}, qp{"Q'", 2};
  SystemId s{"S", d}, sp{"S'", d}, bi{"B_I", d}, bo{"B_O", d};

  LabeledOperator g1 =
      tensor(control_proj(qm, q, 0), LabeledOperator({am, bi}, {ai, s}, u_a)) +
      tensor(tensor(control_proj(qm, q, 1), LabeledOperator::wire(ai, am)),
             LabeledOperator::wire(s, bi));
  LabeledOperator g2 =
      tensor(tensor(control_proj(qp, qm, 0), LabeledOperator::wire(am, ao)),
             LabeledOperator::wire(bo, sp)) +
      tensor(control_proj(qp, qm, 1), LabeledOperator({ao, sp}, {am, bo}, u_a));

  return permute_systems(compose(g2, g1), {"a_O", "Q'", "S'", "B_I"},
                         {"a_I", "Q", "S", "B_O"});
}

std::pair<LabeledOperator, LabeledOperator> cswap_encoders(const SwitchConfig& cfg) {
  const Eigen::Index d = cfg.d;
  LabeledOperator e_in =
      controlled_swap({"Q", 2}, {"S", d}, {"B_O", d});
  LabeledOperator e_out =
      controlled_swap({"Q'", 2}, {"S'", d}, {"B_I", d});
  return {e_in, e_out};
}

LabeledOperator embed_via_encoder(const LabeledOperator& encoder,
                                  const LabeledOperator& op) {
  SystemList rest = drop(encoder.rows(), names_of(op.rows()));
  LabeledOperator ext =
      rest.empty() ? op : tensor(op, LabeledOperator::identity(rest));
  ext = permute_like(ext, encoder);
  return LabeledOperator(encoder.rows(), encoder.cols(),
                         encoder.matrix() * ext.matrix() * encoder.matrix().adjoint());
}

LabeledOperator switch_input_algebra_op(const Eigen::MatrixXcd& o, const SwitchConfig& cfg) {
  const Eigen::Index d = cfg.d;
  check_square(o, d, "switch_input_algebra_op");
  SystemId q{"Q", 2}, s{"S", d}, bo{"B_O", d};
  return tensor(tensor(endo(q, qubit_proj(0)), endo(s, o)),
                LabeledOperator::identity({bo})) +
         tensor(tensor(endo(q, qubit_proj(1)), LabeledOperator::identity({s})),
                endo(bo, o));
}

LabeledOperator switch_output_algebra_op(const Eigen::MatrixXcd& o, const SwitchConfig& cfg) {
  const Eigen::Index d = cfg.d;
  check_square(o, d, "switch_output_algebra_op");
  SystemId qp{"Q'", 2}, sp{"S'", d}, bi{"B_I", d};
  return tensor(tensor(endo(qp, qubit_proj(0)), LabeledOperator::identity({sp})),
                endo(bi, o)) +
         tensor(tensor(endo(qp, qubit_proj(1)), endo(sp, o)),
                LabeledOperator::identity({bi}));
}

double verify_delocalized_factorization(const Eigen::MatrixXcd& u_a,
                                        const SwitchConfig& cfg) {
  const Eigen::Index d = cfg.d;
  SystemId ai{"a_I", cfg.anc_a_in}, ao{"a_O", cfg.anc_a_out};
  SystemId q{"Q", 2}, qp{"Q'", 2}, s{"S", d}, sp{"S'", d};
  SystemId bi{"B_I", d}, bo{"B_O", d};
  auto [e_in, e_out] = cswap_encoders(cfg);
  LabeledOperator mid =
      tensor(tensor(LabeledOperator({ao, bi}, {ai, s}, u_a), LabeledOperator::wire(q, qp)),
             LabeledOperator::wire(bo, sp));
  LabeledOperator factored = compose(e_out, compose(mid, e_in));
  return max_abs_diff(factored, switch_comb_unitary(u_a, cfg));
}

ProcessMatrix switch_process_matrix(const SwitchConfig& cfg, bool four_party) {
  const Eigen::Index d = cfg.d;
  SystemId q{"Q", 2}, qp{"Q'", 2}, s{"S", d}, sp{"S'", d};
  SystemId a_i{"A_I", d}, a_o{"A_O", d}, b_i{"B_I", d}, b_o{"B_O", d};

  LabeledOperator v = LabeledOperator::zero({}, {});
  std::vector<std::string> order;
  if (four_party) {
    order = {"Q", "S", "A_I", "A_O", "B_I", "B_O", "Q'", "S'"};
    LabeledOperator branch0 = tensor(
        tensor(tensor(LabeledOperator::basis_ket(qp, 0), LabeledOperator::basis_ket(q, 0)),
               tensor(max_entangled_ket(a_i, s), max_entangled_ket(a_o, b_i))),
        max_entangled_ket(b_o, sp));
    LabeledOperator branch1 = tensor(
        tensor(tensor(LabeledOperator::basis_ket(qp, 1), LabeledOperator::basis_ket(q, 1)),
               tensor(max_entangled_ket(b_i, s), max_entangled_ket(b_o, a_i))),
        max_entangled_ket(a_o, sp));
    v = permute_systems(branch0, order, {}) + permute_systems(branch1, order, {});
  } else {
    order = {"A_I", "A_O", "B_I", "B_O", "Q'", "S'"};
    Eigen::VectorXcd psi = normalized_or_default(cfg.psi, d, "psi");
    Eigen::VectorXcd ctrl(2);
    if (cfg.control_state) {
      ctrl = normalized_or_default(cfg.control_state, 2, "control_state");
    } else {
      ctrl << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
    }
    LabeledOperator branch0 = tensor(
        tensor(LabeledOperator::ket({a_i}, psi), max_entangled_ket(a_o, b_i)),
        tensor(max_entangled_ket(b_o, sp), LabeledOperator::basis_ket(qp, 0)));
    LabeledOperator branch1 = tensor(
        tensor(LabeledOperator::ket({b_i}, psi), max_entangled_ket(b_o, a_i)),
        tensor(max_entangled_ket(a_o, sp), LabeledOperator::basis_ket(qp, 1)));
    v = ctrl(0) * permute_systems(branch0, order, {}) +
        ctrl(1) * permute_systems(branch1, order, {});
  }

  LabeledOperator w(v.rows(), v.rows(), v.matrix() * v.matrix().adjoint());
  w = merge_systems(w, {"Q'", "S'"}, "C_I");
  PartyLayout layout;
  if (four_party) {
    w = merge_systems(w, {"Q", "S"}, "D_O");
    layout.parties = {Party{"D", std::nullopt, SystemId{"D_O", 2 * d}},
                      Party{"A", a_i, a_o},
                      Party{"B", b_i, b_o},
                      Party{"C", SystemId{"C_I", 2 * d}, std::nullopt}};
  } else {
    layout.parties = {Party{"A", a_i, a_o},
                      Party{"B", b_i, b_o},
                      Party{"C", SystemId{"C_I", 2 * d}, std::nullopt}};
  }
  return ProcessMatrix{layout, permute_systems(w, names_of(layout.all_systems()))};
}

SymmetricCircuit symmetric_circuit(const Eigen::MatrixXcd& u_a,
                                   const Eigen::MatrixXcd& u_b,
                                   const SwitchConfig& cfg) {
  const Eigen::Index d = cfg.d;
  check_square(u_a, d, "symmetric_circuit: U_A");
  check_square(u_b, d, "symmetric_circuit: U_B");
  SystemId q{"Q", 2}, qp{"Q'", 2};
  SystemId s{"S", d}, sp{"S'", d}, f{"F", d}, fp{"F'", d}, m{"M", d};

  LabeledOperator g1 =
      tensor(tensor(endo(q, qubit_proj(0)), LabeledOperator({m}, {s}, u_a)),
             LabeledOperator::identity({f})) +
      tensor(tensor(endo(q, qubit_proj(1)), LabeledOperator({m}, {s}, u_b)),
             LabeledOperator::identity({f}));
  LabeledOperator g2 =
      tensor(tensor(control_proj(qp, q, 0), LabeledOperator::wire(m, fp)),
             LabeledOperator({sp}, {f}, u_b)) +
      tensor(tensor(control_proj(qp, q, 1), LabeledOperator::wire(m, fp)),
             LabeledOperator({sp}, {f}, u_a));

  SymmetricCircuit result{
      permute_systems(compose(g2, g1), {"Q'", "F'", "S'"}, {"Q", "S", "F"}),
      controlled_swap(q, s, f),
      controlled_swap(qp, fp, sp),
      g1,
      g2};
  return result;
}

LabeledOperator symmetric_algebra_op(const Eigen::MatrixXcd& o, const SwitchConfig& cfg,
                                     const std::string& party, bool input) {
  const Eigen::Index d = cfg.d;
  check_square(o, d, "symmetric_algebra_op");
  const bool is_a = party == "A";
  if (!is_a && party != "B")
    throw std::invalid_argument("symmetric_algebra_op: party must be A or B");
  if (input) {
    SystemId q{"Q", 2}, s{"S", d}, f{"F", d};
    LabeledOperator on_s =
        tensor(tensor(endo(q, qubit_proj(is_a ? 0 : 1)), endo(s, o)),
               LabeledOperator::identity({f}));
    LabeledOperator on_f =
        tensor(tensor(endo(q, qubit_proj(is_a ? 1 : 0)), LabeledOperator::identity({s})),
               endo(f, o));
    return on_s + on_f;
  }
  SystemId qp{"Q'", 2}, fp{"F'", d}, sp{"S'", d};
  LabeledOperator on_f =
      tensor(tensor(endo(qp, qubit_proj(is_a ? 0 : 1)), endo(fp, o)),
             LabeledOperator::identity({sp}));
  LabeledOperator on_s =
      tensor(tensor(endo(qp, qubit_proj(is_a ? 1 : 0)), LabeledOperator::identity({fp})),
             endo(sp, o));
  return on_f + on_s;
}

double ControlObservable::validate(double tol) const {
  if (projectors.empty())
    throw std::invalid_argument("control observable with no projectors");
  const Eigen::Index d = control.dim;
  double residual = 0.0;
  Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(d, d);
  for (std::size_t i = 0; i < projectors.size(); ++i) {
    const Eigen::MatrixXcd& pi = projectors[i];
    if (pi.rows() != d || pi.cols() != d)
      throw std::invalid_argument("projector dimension mismatch");
    residual = std::max(residual, max_abs(pi - pi.adjoint()));
    sum += pi;
    for (std::size_t j = 0; j < projectors.size(); ++j) {
      Eigen::MatrixXcd target = (i == j) ? pi : Eigen::MatrixXcd::Zero(d, d);
      residual = std::max(residual, max_abs(pi * projectors[j] - target));
    }
  }
  residual = std::max(residual, max_abs(sum - Eigen::MatrixXcd::Identity(d, d)));
  if (residual > tol)
    throw std::invalid_argument("projectors are not a complete orthogonal set");
  return residual;
}

LabeledOperator GeneralizedEncoders::embed_input(const Eigen::MatrixXcd& o) const {
  LabeledOperator result = LabeledOperator::zero(concat({control.control}, in_slots),
                                                 concat({control.control}, in_slots));
  for (std::size_t i = 0; i < control.projectors.size(); ++i) {
    LabeledOperator term = endo(control.control, control.projectors[i]);
    for (std::size_t j = 0; j < in_slots.size(); ++j)
      term = tensor(term, j == i ? LabeledOperator({in_slots[j]}, {in_slots[j]}, o)
                                 : LabeledOperator::identity({in_slots[j]}));
    result = result + term;
  }
  return result;
}

LabeledOperator GeneralizedEncoders::embed_output(const Eigen::MatrixXcd& o) const {
  LabeledOperator result = LabeledOperator::zero(concat({control_out}, out_slots),
                                                 concat({control_out}, out_slots));
  for (std::size_t i = 0; i < control.projectors.size(); ++i) {
    LabeledOperator term = endo(control_out, control.projectors[i]);
    for (std::size_t j = 0; j < out_slots.size(); ++j)
      term = tensor(term, j == i ? LabeledOperator({out_slots[j]}, {out_slots[j]}, o)
                                 : LabeledOperator::identity({out_slots[j]}));
    result = result + term;
  }
  return result;
}

GeneralizedEncoders generalized_encoders(const ControlObservable& control,
                                         Eigen::Index slot_dim) {
  control.validate();
  const std::size_t n = control.projectors.size();
  GeneralizedEncoders enc;
  enc.control = control;
  enc.control_out = SystemId{control.control.name + "'", control.control.dim};
  for (std::size_t i = 0; i < n; ++i) {
    enc.in_slots.push_back(SystemId{"S" + std::to_string(2 * i + 1), slot_dim});
    enc.out_slots.push_back(SystemId{"S" + std::to_string(2 * i + 2), slot_dim});
  }
  return enc;
}

}  // namespace causalis
