// Copyright 2026 The causalis developers.
// Licensed under the Apache License, Version 2.0; see LICENSE for details.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "causalis/predicates.hpp"
#include "causalis/random.hpp"
#include "causalis/tomography.hpp"

using namespace causalis;

namespace {

LabeledOperator wrap_slot_unitary(const Eigen::MatrixXcd& u) {
  SystemId a_i{"a_I", 1}, a_o{"a_O", 1};
  SystemId chan_i{"A_I", 2}, chan_o{"A_O", 2};
  return LabeledOperator({a_o, chan_o}, {a_i, chan_i}, u);
}

ChoiOperator expected_choi(const SubsystemEncoderPair& enc, const Eigen::MatrixXcd& u) {
  return choi_from_map({LabeledOperator({enc.a_tilde_out}, {enc.a_tilde_in}, u)});
}

Eigen::MatrixXcd pauli_x() {
  Eigen::MatrixXcd m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

}  // namespace

TEST_CASE("the standard frames are informationally complete") {
  for (Eigen::Index d : {2, 3, 4}) {
    auto [sf, mf] = ic_frames(d);
    CHECK(static_cast<Eigen::Index>(sf.states.size()) == d * d);
    CHECK(frame_gram_rank(sf.states) == d * d);
    CHECK(frame_gram_rank(mf.effects) == d * d);
    CHECK(mf.completeness_residual() < 1e-12);
    for (const auto& e : mf.effects)
      CHECK(matrix_predicates(LabeledOperator({SystemId{"X", d}}, {SystemId{"X", d}}, e))
                .psd);
  }
  // The qubit frame starts with the basis states then the two
  // superposition states.
  auto [sf2, mf2] = ic_frames(2);
  CHECK(sf2.states[0](0, 0).real() == doctest::Approx(1.0));
  CHECK(sf2.states[1](1, 1).real() == doctest::Approx(1.0));
  CHECK(sf2.states[2](0, 1).real() == doctest::Approx(0.5));
  CHECK(sf2.states[3](0, 1).imag() == doctest::Approx(-0.5));
  CHECK_THROWS(ic_frames(1));
}

TEST_CASE("exact tomography recovers the delocalized unitary") {
  FourPartyProcessChannel sw = switch_process_channel(2);
  SubsystemEncoderPair enc = extract_delocalized_subsystems(sw);
  Eigen::MatrixXcd env =
      Eigen::MatrixXcd::Identity(enc.a_bar.dim, enc.a_bar.dim) / double(enc.a_bar.dim);

  std::vector<Eigen::MatrixXcd> gates{Eigen::MatrixXcd::Identity(2, 2), pauli_x()};
  for (int k = 0; k < 8; ++k) gates.push_back(random_unitary_matrix(2, 800 + k));
  for (const auto& u : gates) {
    LabeledOperator circuit = compose_with_alice(sw, wrap_slot_unitary(u));
    TomographyReport rep = tomograph_delocalized_operation(circuit, enc, env);
    CHECK(rep.min_projection_weight == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(rep.reconstructed.tp_residual() < 1e-8);
    ChannelComparison cmp = compare_channels(rep.reconstructed, expected_choi(enc, u));
    CHECK(cmp.choi_max_residual < 1e-8);
    CHECK(cmp.max_trace_distance < 1e-8);
  }
}

TEST_CASE("the reconstruction does not depend on the environment state") {
  FourPartyProcessChannel sw = switch_process_channel(2);
  SubsystemEncoderPair enc = extract_delocalized_subsystems(sw);
  Eigen::MatrixXcd u = random_unitary_matrix(2, 17);
  LabeledOperator circuit = compose_with_alice(sw, wrap_slot_unitary(u));

  TomographyReport base = tomograph_delocalized_operation(
      circuit, enc,
      Eigen::MatrixXcd::Identity(enc.a_bar.dim, enc.a_bar.dim) / double(enc.a_bar.dim));
  for (int k = 0; k < 5; ++k) {
    Eigen::MatrixXcd env = random_density_matrix(enc.a_bar.dim, 900 + k);
    env /= env.trace();
    TomographyReport rep = tomograph_delocalized_operation(circuit, enc, env);
    CHECK(max_abs(rep.reconstructed.op.matrix() - base.reconstructed.op.matrix()) < 1e-8);
  }
}

TEST_CASE("shot noise shrinks with the sample size and is reproducible") {
  FourPartyProcessChannel sw = switch_process_channel(2);
  SubsystemEncoderPair enc = extract_delocalized_subsystems(sw);
  Eigen::MatrixXcd env =
      Eigen::MatrixXcd::Identity(enc.a_bar.dim, enc.a_bar.dim) / double(enc.a_bar.dim);
  LabeledOperator circuit =
      compose_with_alice(sw, wrap_slot_unitary(random_unitary_matrix(2, 23)));

  TomographyReport exact = tomograph_delocalized_operation(circuit, enc, env);
  TomographyReport coarse = tomograph_delocalized_operation(circuit, enc, env, 1000, 7);
  TomographyReport fine = tomograph_delocalized_operation(circuit, enc, env, 100000, 7);
  double err_coarse =
      max_abs(coarse.reconstructed.op.matrix() - exact.reconstructed.op.matrix());
  double err_fine =
      max_abs(fine.reconstructed.op.matrix() - exact.reconstructed.op.matrix());
  CHECK(err_fine < 0.03);
  CHECK(err_coarse > err_fine);
  // Error should scale roughly like shots^(-1/2): a factor 10 nominally.
  CHECK(err_coarse / err_fine > 3.0);
  CHECK(err_coarse / err_fine < 34.0);

  TomographyReport again = tomograph_delocalized_operation(circuit, enc, env, 1000, 7);
  for (std::size_t m = 0; m < again.probabilities.size(); ++m)
    for (std::size_t e = 0; e < again.probabilities[m].size(); ++e)
      CHECK(again.probabilities[m][e] == coarse.probabilities[m][e]);
}

TEST_CASE("channel comparison separates distinct unitaries") {
  SystemId in{"I", 2}, out{"O", 2};
  ChoiOperator id = choi_from_map(
      {LabeledOperator({out}, {in}, Eigen::MatrixXcd::Identity(2, 2))});
  ChoiOperator flip = choi_from_map({LabeledOperator({out}, {in}, pauli_x())});
  ChannelComparison same = compare_channels(id, id);
  CHECK(same.max_trace_distance < 1e-14);
  CHECK(same.choi_max_residual < 1e-14);
  ChannelComparison diff = compare_channels(id, flip);
  CHECK(diff.max_trace_distance == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("a circuit coupling slot and environment is detected as such") {
  FourPartyProcessChannel sw = switch_process_channel(2);
  SubsystemEncoderPair enc = extract_delocalized_subsystems(sw);
  // Replace the slot-times-environment form with a joint unitary on both
  // factors: the reconstruction must now depend on the environment state.
  SystemId mid_in = enc.a_tilde_in, mid_out = enc.a_tilde_out;
  LabeledOperator joint = random_unitary({mid_out, enc.a_bar}, {mid_in, enc.a_bar}, 31);
  LabeledOperator circuit = compose(enc.w_out, compose(joint, enc.w_in.adjoint()));

  Eigen::MatrixXcd ground = Eigen::MatrixXcd::Zero(enc.a_bar.dim, enc.a_bar.dim);
  ground(0, 0) = 1.0;
  TomographyReport a = tomograph_delocalized_operation(
      circuit, enc,
      Eigen::MatrixXcd::Identity(enc.a_bar.dim, enc.a_bar.dim) / double(enc.a_bar.dim));
  TomographyReport b = tomograph_delocalized_operation(circuit, enc, ground);
  ChannelComparison cmp = compare_channels(a.reconstructed, b.reconstructed);
  CHECK(cmp.max_trace_distance > 0.01);
}
