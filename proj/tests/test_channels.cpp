// Copyright 2026 The causalis developers.
// Licensed under the Apache License, Version 2.0; see LICENSE for details.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "causalis/channels.hpp"
#include "causalis/random.hpp"

using namespace causalis;

namespace {

const SystemId kIn{"A_I", 2};
const SystemId kOut{"A_O", 2};

Eigen::MatrixXcd pauli(int k) {
  Eigen::MatrixXcd m(2, 2);
  switch (k) {
    case 0: m << 1, 0, 0, 1; break;
    case 1: m << 0, 1, 1, 0; break;
    case 2: m << 0, Complex(0, -1), Complex(0, 1), 0; break;
    default: m << 1, 0, 0, -1; break;
  }
  return m;
}

ChoiOperator unitary_choi(const Eigen::MatrixXcd& u, const SystemId& in,
                          const SystemId& out) {
  return choi_from_map({LabeledOperator({out}, {in}, u)});
}

}  // namespace

TEST_CASE("identity channel Choi is the entangled-pair projector") {
  ChoiOperator c = unitary_choi(Eigen::MatrixXcd::Identity(2, 2), kIn, kOut);
  Eigen::MatrixXcd phi = Eigen::MatrixXcd::Zero(4, 4);
  phi(0, 0) = phi(0, 3) = phi(3, 0) = phi(3, 3) = 1.0;  // |00>+|11> projector
  CHECK(max_abs(c.op.matrix() - phi) < 1e-14);
  CHECK(std::abs(c.op.trace() - Complex(2.0, 0.0)) < 1e-14);
  CHECK(c.is_cp());
  CHECK(c.is_tp());
  CHECK(max_abs_diff(c.op, identity_choi({kIn}, {kOut}).op) < 1e-14);
}

TEST_CASE("apply_via_choi reproduces unitary conjugation") {
  for (int k = 0; k < 10; ++k) {
    Eigen::MatrixXcd u = random_unitary_matrix(2, 200 + k);
    Eigen::MatrixXcd rho = random_density_matrix(2, 300 + k);
    ChoiOperator c = unitary_choi(u, kIn, kOut);
    LabeledOperator out = apply_via_choi(c, LabeledOperator({kIn}, {kIn}, rho));
    CHECK(max_abs(out.matrix() - u * rho * u.adjoint()) < 1e-10);
  }
  // Bit flip on |0><0| gives |1><1|.
  ChoiOperator flip = unitary_choi(pauli(1), kIn, kOut);
  Eigen::MatrixXcd zero = Eigen::MatrixXcd::Zero(2, 2);
  zero(0, 0) = 1.0;
  Eigen::MatrixXcd one = apply_via_choi(flip, LabeledOperator({kIn}, {kIn}, zero)).matrix();
  CHECK(one(1, 1).real() == doctest::Approx(1.0));
  CHECK(std::abs(one(0, 0)) < 1e-14);
}

TEST_CASE("completely depolarizing channel from the Pauli Kraus set") {
  std::vector<LabeledOperator> kraus;
  for (int k = 0; k < 4; ++k)
    kraus.push_back(LabeledOperator({kOut}, {kIn}, pauli(k) / 2.0));
  ChoiOperator c = choi_from_map(kraus);
  CHECK(c.is_cp());
  CHECK(c.is_tp());
  // Average over conjugations of any pure state is maximally mixed.
  Eigen::MatrixXcd psi = random_density_matrix(2, 9);
  psi = psi / psi.trace();
  LabeledOperator out = apply_via_choi(c, LabeledOperator({kIn}, {kIn}, psi));
  CHECK(max_abs(out.matrix() - Eigen::MatrixXcd::Identity(2, 2) / 2.0) < 1e-10);
  // Choi is I/2 on the product space.
  CHECK(max_abs(c.op.matrix() - Eigen::MatrixXcd::Identity(4, 4) / 2.0) < 1e-12);
}

TEST_CASE("choi_from_map rejects super-normalized Kraus sets") {
  CHECK_THROWS(choi_from_map(
      {LabeledOperator({kOut}, {kIn}, 1.5 * Eigen::MatrixXcd::Identity(2, 2))}));
}

TEST_CASE("link composition matches the matrix-product oracle") {
  SystemId mid{"M", 2}, fin{"F", 2};
  for (int k = 0; k < 10; ++k) {
    Eigen::MatrixXcd ua = random_unitary_matrix(2, 400 + k);
    Eigen::MatrixXcd ub = random_unitary_matrix(2, 500 + k);
    ChoiOperator ca = unitary_choi(ua, kIn, mid);
    ChoiOperator cb = unitary_choi(ub, mid, fin);
    ChoiOperator linked = link_compose(ca, cb, {"M"});
    ChoiOperator oracle = unitary_choi(ub * ua, kIn, fin);
    CHECK(max_abs_diff(linked.op, oracle.op) < 1e-10);
  }
  // Inverse pair collapses to the identity channel.
  Eigen::MatrixXcd u = random_unitary_matrix(2, 77);
  ChoiOperator round = link_compose(unitary_choi(u, kIn, mid),
                                    unitary_choi(u.adjoint(), mid, fin), {"M"});
  CHECK(max_abs_diff(round.op, identity_choi({kIn}, {fin}).op) < 1e-10);
}

TEST_CASE("link composition is associative on chains of three") {
  SystemId m1{"M1", 2}, m2{"M2", 2}, fin{"F", 2};
  ChoiOperator c1 = random_cptp({kIn}, {m1}, 2, 601);
  ChoiOperator c2 = random_cptp({m1}, {m2}, 2, 602);
  ChoiOperator c3 = random_cptp({m2}, {fin}, 2, 603);
  ChoiOperator left = link_compose(link_compose(c1, c2, {"M1"}), c3, {"M2"});
  ChoiOperator right = link_compose(c1, link_compose(c2, c3, {"M2"}), {"M1"});
  CHECK(max_abs_diff(left.op, right.op) < 1e-10);
}

TEST_CASE("random CPTP channels are CP and TP across dims and seeds") {
  for (Eigen::Index din = 1; din <= 4; ++din)
    for (Eigen::Index dout = 1; dout <= 4; ++dout)
      for (int k = 0; k < 7; ++k) {
        ChoiOperator c = random_cptp({SystemId{"I", din}}, {SystemId{"O", dout}},
                                     2, 700 + 13 * din + 7 * dout + k);
        CHECK(c.is_cp());
        CHECK(c.tp_residual() < 1e-10);
      }
  // env_dim 1 with equal dims is a unitary channel: rank-one Choi.
  ChoiOperator u = random_cptp({kIn}, {kOut}, 1, 44);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(u.op.matrix());
  int significant = 0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
    if (es.eigenvalues()(i) > 1e-9) ++significant;
  CHECK(significant == 1);
}

TEST_CASE("random instruments have CP outcomes summing to a TP map") {
  for (int k = 0; k < 10; ++k) {
    Instrument ins = random_instrument("A", {kIn}, {kOut}, 3, 900 + k);
    REQUIRE(ins.outcomes.size() == 3);
    for (const auto& [label, choi] : ins.outcomes) CHECK(choi.is_cp());
    CHECK(ins.total().is_tp());
  }
}

TEST_CASE("preparation and measurement Choi operators") {
  // Preparation: no input systems; Choi is the prepared state itself.
  Eigen::VectorXcd psi = random_pure_state(2, 31);
  LabeledOperator prep_kraus({kIn}, {}, psi);
  ChoiOperator prep = choi_from_map({prep_kraus});
  CHECK(max_abs(prep.op.matrix() - (psi * psi.adjoint()).conjugate()) < 1e-14);
  // Effect: no output systems; Choi of Kraus <phi| is |phi><phi|.
  LabeledOperator effect_kraus({}, {kOut}, psi.adjoint());
  ChoiOperator effect = choi_from_map({effect_kraus});
  CHECK(max_abs(effect.op.matrix() - psi * psi.adjoint()) < 1e-14);
}
