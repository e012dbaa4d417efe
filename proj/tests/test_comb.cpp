// Copyright 2026 The causalis developers.
// Licensed under the Apache License, Version 2.0; see LICENSE for details.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "causalis/comb.hpp"
#include "causalis/hs_basis.hpp"
#include "causalis/predicates.hpp"
#include "causalis/qswitch.hpp"
#include "causalis/random.hpp"

using namespace causalis;

namespace {

/// Deterministic-order process channel: target S to Alice, Alice to Bob,
/// Bob to S', control carried straight through to Charlie.
FourPartyProcessChannel fixed_order_channel(bool alice_first) {
  SystemId q{"Q", 2}, qp{"Q'", 2}, s{"S", 2}, sp{"S'", 2};
  SystemId a_i{"A_I", 2}, a_o{"A_O", 2}, b_i{"B_I", 2}, b_o{"B_O", 2};
  const SystemId& fi = alice_first ? a_i : b_i;
  const SystemId& fo = alice_first ? a_o : b_o;
  const SystemId& si = alice_first ? b_i : a_i;
  const SystemId& so = alice_first ? b_o : a_o;
  LabeledOperator v = tensor(
      tensor(LabeledOperator::wire(s, fi), LabeledOperator::wire(fo, si)),
      tensor(LabeledOperator::wire(so, sp), LabeledOperator::wire(q, qp)));
  v = permute_systems(v, {"A_I", "B_I", "Q'", "S'"}, {"Q", "S", "A_O", "B_O"});
  v = merge_systems(v, {"Q'", "S'"}, "C_I");
  v = merge_systems(v, {"Q", "S"}, "D_O");
  v = permute_systems(v, {"A_I", "B_I", "C_I"}, {"D_O", "A_O", "B_O"});
  return FourPartyProcessChannel{std::move(v)};
}

/// Conjugates the channel by local unitaries on David's and Charlie's
/// systems; the result is a valid unitary process again.
FourPartyProcessChannel dressed_switch(std::uint64_t seed) {
  FourPartyProcessChannel base = switch_process_channel(2);
  LabeledOperator u_d = random_unitary({find_system(base.v.cols(), "D_O")},
                                       {find_system(base.v.cols(), "D_O")}, seed);
  LabeledOperator u_c = random_unitary({find_system(base.v.rows(), "C_I")},
                                       {find_system(base.v.rows(), "C_I")}, seed + 1);
  return FourPartyProcessChannel{compose(u_c, compose(base.v, u_d))};
}

/// Fixed-order circuit with a genuinely noisy channel in front of Alice,
/// purified by shipping the dilating environment to Charlie. The first
/// slot boundary then carries no exact subsystem identification.
FourPartyProcessChannel noisy_fixed_order_purification() {
  SystemId q{"Q", 2}, qp{"Q'", 2}, s{"S", 2}, sp{"S'", 2}, e{"E", 2};
  SystemId a_i{"A_I", 2}, a_o{"A_O", 2}, b_i{"B_I", 2}, b_o{"B_O", 2};
  // Amplitude damping at p = 1/2: two independent Kraus operators.
  const double r = std::sqrt(0.5);
  Eigen::MatrixXcd stine = Eigen::MatrixXcd::Zero(4, 2);  // rows (a_i, e)
  stine(0, 0) = 1.0;   // K0 |0> = |0>, e=0
  stine(2, 1) = r;     // K0 |1> = r |1>, e=0
  stine(1, 1) = r;     // K1 |1> = r |0>, e=1
  LabeledOperator v = tensor(
      tensor(LabeledOperator({a_i, e}, {s}, stine), LabeledOperator::wire(q, qp)),
      tensor(LabeledOperator::wire(a_o, b_i), LabeledOperator::wire(b_o, sp)));
  v = permute_systems(v, {"A_I", "B_I", "Q'", "S'", "E"}, {"Q", "S", "A_O", "B_O"});
  v = merge_systems(v, {"Q'", "S'", "E"}, "C_I");
  v = merge_systems(v, {"Q", "S"}, "D_O");
  v = permute_systems(v, {"A_I", "B_I", "C_I"}, {"D_O", "A_O", "B_O"});
  return FourPartyProcessChannel{std::move(v)};
}

LabeledOperator extended_unitary(Eigen::Index anc, Eigen::Index d, std::uint64_t seed) {
  SystemId a_i{"a_I", anc}, a_o{"a_O", anc};
  SystemId chan_i{"A_I", d}, chan_o{"A_O", d};
  return LabeledOperator({a_o, chan_o}, {a_i, chan_i},
                         random_unitary_matrix(anc * d, seed));
}

std::vector<Eigen::MatrixXcd> embedded_span(
    const LabeledOperator& w_enc, const SystemId& sys, const SystemId& spectator,
    const std::vector<std::string>& order) {
  HilbertSchmidtBasis basis = HilbertSchmidtBasis::standard(sys);
  std::vector<Eigen::MatrixXcd> out;
  for (const auto& o : basis.elements) {
    LabeledOperator inner = tensor(LabeledOperator({sys}, {sys}, o),
                                   LabeledOperator::identity({spectator}));
    LabeledOperator emb = compose(w_enc, compose(inner, w_enc.adjoint()));
    out.push_back(permute_systems(emb, order, order).matrix());
  }
  return out;
}

}  // namespace

TEST_CASE("switch process channel is unitary and dual to the process matrix") {
  FourPartyProcessChannel ch = switch_process_channel(2);
  CHECK(matrix_predicates(ch.v).unitary);
  ProcessMatrix from_channel = process_of(ch);
  ProcessMatrix direct = switch_process_matrix(SwitchConfig{}, true);
  CHECK(max_abs_diff(from_channel.w, direct.w) < 1e-10);
  ProcessValidationReport r = validate_process_matrix(from_channel, 30, 5);
  CHECK(r.valid());
}

TEST_CASE("channel extraction from a unitary process round-trips") {
  FourPartyProcessChannel ch = switch_process_channel(2);
  FourPartyProcessChannel back = channel_of_process(process_of(ch));
  // The recovered isometry may differ by a global phase; compare the Choi.
  CHECK(max_abs_diff(choi_from_map({back.v}).op, choi_from_map({ch.v}).op) < 1e-9);
  // Non-unitary processes are rejected.
  ProcessMatrix mixed = process_of(ch);
  mixed.w = 0.5 * mixed.w + 0.5 * permute_like(process_of(fixed_order_channel(true)).w,
                                               mixed.w);
  CHECK_THROWS(channel_of_process(mixed));
}

TEST_CASE("closing the loop on the first operation reproduces the temporal comb") {
  FourPartyProcessChannel ch = switch_process_channel(2);
  SwitchConfig cfg;
  Eigen::MatrixXcd id2 = Eigen::MatrixXcd::Identity(2, 2);
  LabeledOperator u_a({SystemId{"a_O", 1}, SystemId{"A_O", 2}},
                      {SystemId{"a_I", 1}, SystemId{"A_I", 2}}, id2);
  LabeledOperator g = compose_with_alice(ch, u_a);

  LabeledOperator comb = switch_comb_unitary(id2, cfg);
  comb = merge_systems(comb, {"Q'", "S'"}, "C_I");
  comb = merge_systems(comb, {"Q", "S"}, "D_O");
  CHECK(max_abs_diff(g, comb) < 1e-12);

  for (int k = 0; k < 10; ++k)
    CHECK(matrix_predicates(compose_with_alice(ch, extended_unitary(2, 2, 60 + k)))
              .unitary);
}

TEST_CASE("factorization of disjoint wires needs no memory") {
  SystemId p{"P", 2}, pp{"P'", 2}, r{"R", 3}, rp{"R'", 3};
  LabeledOperator g = tensor(random_unitary({pp}, {p}, 91), random_unitary({rp}, {r}, 92));
  OneComb comb = comb_factorize(g, CombCut{{"P"}, {"P'"}, {"R"}, {"R'"}});
  CHECK(comb.x.dim == 1);
  CHECK(comb.reconstruction_residual < 1e-10);
  CHECK(comb.probe_gap < 1e-12);
}

TEST_CASE("factorization of the composed comb yields isometric teeth") {
  FourPartyProcessChannel ch = switch_process_channel(2);
  LabeledOperator g = compose_with_alice(ch, extended_unitary(2, 2, 95));
  CombCut cut{{"a_I", "D_O"}, {"B_I"}, {"B_O"}, {"a_O", "C_I"}};
  OneComb comb = comb_factorize(g, cut);
  CHECK(comb.reconstruction_residual < 1e-9);
  CHECK(matrix_predicates(comb.v1).isometry);
  CHECK(matrix_predicates(comb.v2).isometry);
  // Memory never exceeds the full first-slot input dimension.
  CHECK(comb.x.dim <= 2 * 4);
}

TEST_CASE("back-signaling across the cut is detected") {
  SystemId p{"P", 2}, pp{"P'", 2}, r{"R", 2}, rp{"R'", 2};
  // Crossed wires: the first output is the second input.
  LabeledOperator g =
      tensor(LabeledOperator::wire(p, rp), LabeledOperator::wire(r, pp));
  CHECK_THROWS_AS(comb_factorize(g, CombCut{{"P"}, {"P'"}, {"R"}, {"R'"}}),
                  std::runtime_error);
}

TEST_CASE("delocalized-subsystem pipeline verifies on the switch and variants") {
  FourPartyProcessChannel sw = switch_process_channel(2);
  SubsystemEncoderPair enc = extract_delocalized_subsystems(sw);
  CHECK(matrix_predicates(enc.w_in).unitary);
  CHECK(matrix_predicates(enc.w_out).unitary);
  CHECK(verify_theorem_factorization(sw, enc, 25, 1, 200) < 1e-9);
  CHECK(verify_theorem_factorization(sw, enc, 25, 2, 300) < 1e-9);

  for (FourPartyProcessChannel ch :
       {fixed_order_channel(true), fixed_order_channel(false), dressed_switch(400)}) {
    ProcessValidationReport r = validate_process_matrix(process_of(ch), 20, 6);
    CHECK(r.valid());
    SubsystemEncoderPair e = extract_delocalized_subsystems(ch);
    CHECK(verify_theorem_factorization(ch, e, 25, 2, 500) < 1e-9);
  }
}

TEST_CASE("recovered subsystem algebras match the controlled-SWAP algebras") {
  SwitchConfig cfg;
  FourPartyProcessChannel sw = switch_process_channel(2);
  SubsystemEncoderPair enc = extract_delocalized_subsystems(sw);

  std::vector<Eigen::MatrixXcd> in_recovered =
      embedded_span(enc.w_in, enc.a_tilde_in, enc.a_bar, {"D_O", "B_O"});
  std::vector<Eigen::MatrixXcd> out_recovered =
      embedded_span(enc.w_out, enc.a_tilde_out, enc.a_bar, {"B_I", "C_I"});

  HilbertSchmidtBasis basis = HilbertSchmidtBasis::standard({"S", 2});
  std::vector<Eigen::MatrixXcd> in_direct, out_direct;
  for (const auto& o : basis.elements) {
    LabeledOperator in_op = permute_systems(switch_input_algebra_op(o, cfg),
                                            {"Q", "S", "B_O"}, {"Q", "S", "B_O"});
    in_op = merge_systems(in_op, {"Q", "S"}, "D_O");
    in_direct.push_back(permute_systems(in_op, {"D_O", "B_O"}, {"D_O", "B_O"}).matrix());
    LabeledOperator out_op = permute_systems(switch_output_algebra_op(o, cfg),
                                             {"Q'", "S'", "B_I"}, {"Q'", "S'", "B_I"});
    out_op = merge_systems(out_op, {"Q'", "S'"}, "C_I");
    out_direct.push_back(permute_systems(out_op, {"B_I", "C_I"}, {"B_I", "C_I"}).matrix());
  }
  CHECK(span_projector_distance(in_recovered, in_direct) < 1e-9);
  CHECK(span_projector_distance(out_recovered, out_direct) < 1e-9);
}

TEST_CASE("span projector distance separates distinct spans") {
  Eigen::MatrixXcd z = Eigen::MatrixXcd::Zero(2, 2);
  Eigen::MatrixXcd e00 = z, e11 = z, e01 = z;
  e00(0, 0) = 1;
  e11(1, 1) = 1;
  e01(0, 1) = 1;
  // Same span in different bases.
  Eigen::MatrixXcd sum = e00 + e11, diff = e00 - e11;
  CHECK(span_projector_distance({e00, e11}, {sum, diff}) < 1e-12);
  CHECK(span_projector_distance({e00}, {e01}) > 0.9);
}

TEST_CASE("square first tooth certifies the exact subsystem form") {
  Theorem2Report unitary_case = check_theorem2_form(switch_process_channel(2));
  CHECK(unitary_case.satisfies);
  CHECK(unitary_case.k_dim == 0);
  CHECK(unitary_case.choi_rank == 4);

  // Padding Charlie's input with an isometric embedding keeps the form but
  // leaves a nontrivial complement subspace.
  FourPartyProcessChannel sw = switch_process_channel(2);
  SystemId c_small = find_system(sw.v.rows(), "C_I");
  SystemId c_big{"C_I", 8};
  Eigen::MatrixXcd embed = Eigen::MatrixXcd::Zero(8, 4);
  embed.topLeftCorner(4, 4) = random_unitary_matrix(4, 71).topRows(4);
  FourPartyProcessChannel padded{
      compose(LabeledOperator({c_big}, {c_small}, embed), sw.v)};
  CHECK(matrix_predicates(padded.v).isometry);
  Theorem2Report padded_case = check_theorem2_form(padded);
  CHECK(padded_case.satisfies);
  CHECK(padded_case.k_dim > 0);
  SubsystemEncoderPair enc = extract_delocalized_subsystems(padded);
  CHECK(matrix_predicates(enc.w_out).isometry);
  CHECK(verify_theorem_factorization(padded, enc, 20, 2, 600) < 1e-9);

  // The purified noisy circuit is a valid isometric process but does not
  // have the subsystem form: its first-tooth marginal is too mixed.
  FourPartyProcessChannel purified = noisy_fixed_order_purification();
  CHECK(matrix_predicates(purified.v).isometry);
  CHECK(validate_process_matrix(process_of(purified), 20, 7).valid());
  Theorem2Report purified_case = check_theorem2_form(purified);
  CHECK(!purified_case.satisfies);
}
