// Copyright 2026 The causalis developers.
// Licensed under the Apache License, Version 2.0; see LICENSE for details.

#include "causalis/channels.hpp"

#include <stdexcept>

#include "causalis/predicates.hpp"
#include "causalis/random.hpp"

namespace causalis {

namespace {

SystemList choi_space(const SystemList& in, const SystemList& out) {
  return concat(in, out);
}

}  // namespace

double ChoiOperator::tp_residual() const {
  LabeledOperator marginal = partial_trace(op, names_of(out_systems));
  Eigen::Index d = marginal.row_dim();
  return max_abs(marginal.matrix() - Eigen::MatrixXcd::Identity(d, d));
}

bool ChoiOperator::is_cp(double tol) const {
  return matrix_predicates(op, tol).psd;
}

ChoiOperator choi_from_map(const std::vector<LabeledOperator>& kraus) {
  if (kraus.empty()) throw std::invalid_argument("choi_from_map: empty Kraus list");
  const SystemList out = kraus.front().rows();
  const SystemList in = kraus.front().cols();
  const Eigen::Index din = total_dim(in);
  const Eigen::Index dout = total_dim(out);
  Eigen::MatrixXcd sum_kk = Eigen::MatrixXcd::Zero(din, din);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(din * dout, din * dout);
  for (const auto& k : kraus) {
    if (k.rows() != out || k.cols() != in)
      throw std::invalid_argument("choi_from_map: Kraus shapes differ");
    sum_kk += k.matrix().adjoint() * k.matrix();
    Eigen::VectorXcd v(din * dout);
    for (Eigen::Index i = 0; i < din; ++i)
      for (Eigen::Index o = 0; o < dout; ++o)
        v(i * dout + o) = std::conj(k.matrix()(o, i));
    m += v * v.adjoint();
  }
  HermitianEig eig = sorted_hermitian_eig(sum_kk);
  if (eig.values(0) > 1.0 + 1e-9)
    throw std::invalid_argument("choi_from_map: Kraus operators exceed trace-nonincreasing bound");
  return ChoiOperator{in, out, LabeledOperator(choi_space(in, out), choi_space(in, out),
                                               std::move(m))};
}

ChoiOperator identity_choi(const SystemList& in, const SystemList& out) {
  return choi_from_map({LabeledOperator::wires(in, out)});
}

LabeledOperator apply_via_choi(const ChoiOperator& c, const LabeledOperator& rho) {
  LabeledOperator rho_p = permute_systems(rho, names_of(c.in_systems));
  LabeledOperator lifted = tensor(rho_p, LabeledOperator::identity(c.out_systems));
  lifted = permute_like(lifted, c.op);
  LabeledOperator prod(c.op.rows(), c.op.cols(), c.op.matrix() * lifted.matrix());
  return partial_trace(prod, names_of(c.in_systems)).transpose_square();
}

ChoiOperator link_compose(const ChoiOperator& a, const ChoiOperator& b,
                          const std::vector<std::string>& shared) {
  SystemList a_sys = concat(a.in_systems, a.out_systems);
  SystemList b_sys = concat(b.in_systems, b.out_systems);
  for (const auto& n : shared) {
    if (!contains(a_sys, n) || !contains(b_sys, n))
      throw std::invalid_argument("link_compose: dangling shared label " + n);
    if (find_system(a_sys, n).dim != find_system(b_sys, n).dim)
      throw std::invalid_argument("link_compose: shared dimension mismatch on " + n);
  }
  SystemList b_only = drop(b_sys, names_of(a_sys));
  SystemList a_only = drop(a_sys, names_of(b_sys));
  LabeledOperator a_ext =
      b_only.empty() ? a.op : tensor(a.op, LabeledOperator::identity(b_only));
  LabeledOperator b_ext =
      a_only.empty() ? b.op : tensor(b.op, LabeledOperator::identity(a_only));
  b_ext = permute_like(b_ext, a_ext);
  LabeledOperator a_t = partial_transpose(a_ext, shared);
  LabeledOperator prod(a_ext.rows(), a_ext.cols(), a_t.matrix() * b_ext.matrix());
  LabeledOperator reduced = shared.empty() ? prod : partial_trace(prod, shared);
  SystemList in = concat(drop(a.in_systems, shared), drop(b.in_systems, shared));
  SystemList out = concat(drop(a.out_systems, shared), drop(b.out_systems, shared));
  std::vector<std::string> order = names_of(choi_space(in, out));
  return ChoiOperator{in, out, permute_systems(reduced, order)};
}

ChoiOperator random_cptp(const SystemList& in, const SystemList& out,
                         Eigen::Index env_dim, std::uint64_t seed) {
  if (env_dim < 1) throw std::invalid_argument("random_cptp: env_dim must be >= 1");
  const Eigen::Index din = total_dim(in);
  const Eigen::Index dout = total_dim(out);
  Eigen::Index env = env_dim;
  while (dout * env < din) ++env;  // isometry needs dout*env >= din
  Eigen::MatrixXcd u = random_unitary_matrix(dout * env, seed);
  Eigen::MatrixXcd v = u.leftCols(din);
  std::vector<LabeledOperator> kraus;
  for (Eigen::Index k = 0; k < env; ++k) {
    Eigen::MatrixXcd a(dout, din);
    for (Eigen::Index o = 0; o < dout; ++o) a.row(o) = v.row(o * env + k);
    kraus.emplace_back(out, in, std::move(a));
  }
  return choi_from_map(kraus);
}

ChoiOperator Instrument::total() const {
  if (outcomes.empty()) throw std::invalid_argument("instrument with no outcomes");
  ChoiOperator sum = outcomes.front().second;
  for (std::size_t i = 1; i < outcomes.size(); ++i)
    sum.op = sum.op + outcomes[i].second.op;
  return sum;
}

Instrument random_instrument(const std::string& party, const SystemList& in,
                             const SystemList& out, int n_outcomes,
                             std::uint64_t seed) {
  if (n_outcomes < 1) throw std::invalid_argument("instrument needs >= 1 outcome");
  const Eigen::Index din = total_dim(in);
  const Eigen::Index dout = total_dim(out);
  Eigen::Index env = n_outcomes;
  while (dout * env < din) ++env;
  Eigen::MatrixXcd u = random_unitary_matrix(dout * env, seed);
  Eigen::MatrixXcd v = u.leftCols(din);
  std::vector<std::vector<LabeledOperator>> groups(n_outcomes);
  for (Eigen::Index k = 0; k < env; ++k) {
    Eigen::MatrixXcd a(dout, din);
    for (Eigen::Index o = 0; o < dout; ++o) a.row(o) = v.row(o * env + k);
    groups[k % n_outcomes].emplace_back(out, in, std::move(a));
  }
  Instrument inst{party, {}};
  for (int i = 0; i < n_outcomes; ++i)
    inst.outcomes.emplace_back(std::to_string(i), choi_from_map(groups[i]));
  return inst;
}

}  // namespace causalis
