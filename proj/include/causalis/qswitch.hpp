// Copyright 2026 The causalis developers.
// Licensed under the Apache License, Version 2.0; see LICENSE for details.

#ifndef CAUSALIS_QSWITCH_HPP
#define CAUSALIS_QSWITCH_HPP

#include <optional>
#include <utility>

#include "causalis/process.hpp"

namespace causalis {

/// Configuration of the coherently controlled two-slot circuit: target
/// dimension d, ancilla dimensions for each party, and optional pure
/// states for the target (psi, on S) and the control qubit.
struct SwitchConfig {
  Eigen::Index d = 2;
  Eigen::Index anc_a_in = 1;
  Eigen::Index anc_a_out = 1;
  Eigen::Index anc_b_in = 1;
  Eigen::Index anc_b_out = 1;
  std::optional<Eigen::VectorXcd> psi;
  std::optional<Eigen::VectorXcd> control_state;
};

/// Unnormalized maximally entangled ket sum_i |i>|i> on two systems of
/// equal dimension.
LabeledOperator max_entangled_ket(const SystemId& a, const SystemId& b);

/// Controlled-SWAP on [control, t1, t2]: swaps t1 and t2 when the
/// (qubit) control is in |1>. Hermitian and self-inverse.
LabeledOperator controlled_swap(const SystemId& control, const SystemId& t1,
                                const SystemId& t2);

/// Result channel of the order-controlled composition of U_A and U_B:
/// a unitary from [a_I, b_I, Q, S] to [a_O, b_O, Q', S'] acting as
/// U_B.U_A on the target for control |0> and U_A.U_B for control |1>.
LabeledOperator switch_unitary(const Eigen::MatrixXcd& u_a, const Eigen::MatrixXcd& u_b,
                               const SwitchConfig& cfg);

/// Temporal one-slot comb with Bob's slot open: a unitary from
/// [a_I, Q, S, B_O] to [a_O, Q', S', B_I] in closed form.
LabeledOperator switch_comb_unitary(const Eigen::MatrixXcd& u_a, const SwitchConfig& cfg);

/// Same comb assembled as the product of the two controlled-U_A time
/// steps with fixed routing; requires anc_a_in == anc_a_out.
LabeledOperator switch_comb_from_gates(const Eigen::MatrixXcd& u_a,
                                       const SwitchConfig& cfg);

/// Controlled-SWAP encoders (E_in on [Q, S, B_O], E_out on [Q', S', B_I])
/// that delocalize Alice's slot.
std::pair<LabeledOperator, LabeledOperator> cswap_encoders(const SwitchConfig& cfg);

/// Conjugation of op (an endomorphism on a subset of the encoder's
/// systems, extended by identity) by the encoder: enc (op x I) enc†.
LabeledOperator embed_via_encoder(const LabeledOperator& encoder,
                                  const LabeledOperator& op);

/// Direct construction of the delocalized input-algebra element
/// |0><0|^Q x O^S x I^{B_O} + |1><1|^Q x I^S x O^{B_O}.
LabeledOperator switch_input_algebra_op(const Eigen::MatrixXcd& o, const SwitchConfig& cfg);
/// Output counterpart on [Q', S', B_I]:
/// |0><0| x I^{S'} x O^{B_I} + |1><1| x O^{S'} x I^{B_I}.
LabeledOperator switch_output_algebra_op(const Eigen::MatrixXcd& o, const SwitchConfig& cfg);

/// Max-norm residual between the comb and its factorized form
/// E_out (U_A x wires) E_in; small for every unitary U_A.
double verify_delocalized_factorization(const Eigen::MatrixXcd& u_a,
                                        const SwitchConfig& cfg);

/// Process matrix of the controlled-order composition. Four-party form
/// adds David (output D_O = control x target) and Charlie (input C_I);
/// the tripartite form fixes David's preparation to psi and the control
/// state (default |+>).
ProcessMatrix switch_process_matrix(const SwitchConfig& cfg, bool four_party);

/// Symmetric two-time-step realization: both parties' slots are
/// delocalized over the wires S (first time), F (second time) and their
/// primed output counterparts.
struct SymmetricCircuit {
  LabeledOperator circuit;  // [Q, S, F] -> [Q', F', S']
  LabeledOperator e_in;     // C-SWAP on [Q, S, F]
  LabeledOperator e_out;    // C-SWAP on [Q', F', S']
  LabeledOperator g1;       // first time step
  LabeledOperator g2;       // second time step
};
SymmetricCircuit symmetric_circuit(const Eigen::MatrixXcd& u_a,
                                   const Eigen::MatrixXcd& u_b,
                                   const SwitchConfig& cfg);

/// Symmetric-implementation algebra elements, built directly.
LabeledOperator symmetric_algebra_op(const Eigen::MatrixXcd& o, const SwitchConfig& cfg,
                                     const std::string& party, bool input);

/// Logical observable on a control system: a complete set of orthogonal
/// projectors.
struct ControlObservable {
  SystemId control;
  std::vector<Eigen::MatrixXcd> projectors;

  /// Max residual over completeness and orthogonality; throws above tol.
  double validate(double tol = 1e-12) const;
};

/// N-slot delocalized input/output embeddings for a general control
/// observable: embed_input(O) = sum_i P_i^Q x O^{S_{2i-1}} x I^{rest},
/// and analogously on the primed output side. Both maps are unital
/// algebra homomorphisms.
struct GeneralizedEncoders {
  ControlObservable control;
  SystemId control_out;
  SystemList in_slots;   // S1, S3, ..., S_{2N-1}
  SystemList out_slots;  // S2, S4, ..., S_{2N}

  LabeledOperator embed_input(const Eigen::MatrixXcd& o) const;
  LabeledOperator embed_output(const Eigen::MatrixXcd& o) const;
};
GeneralizedEncoders generalized_encoders(const ControlObservable& control,
                                         Eigen::Index slot_dim);

}  // namespace causalis

#endif
