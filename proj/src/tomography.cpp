// Copyright 2026 The causalis developers.
// Licensed under the Apache License, Version 2.0; see LICENSE for details.

#include "causalis/tomography.hpp"

#include <random>
#include <stdexcept>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include "causalis/predicates.hpp"

namespace causalis {

namespace {

Eigen::VectorXcd vec_of(const Eigen::MatrixXcd& m) {
  return Eigen::Map<const Eigen::VectorXcd>(m.data(), m.size());
}

/// Canonical dual frame: sum_m Tr[F_m† X] D_m = X for X in the span.
std::vector<Eigen::MatrixXcd> dual_frame(const std::vector<Eigen::MatrixXcd>& frame) {
  const Eigen::Index d = frame.front().rows();
  Eigen::MatrixXcd a(d * d, frame.size());
  for (std::size_t m = 0; m < frame.size(); ++m) a.col(m) = vec_of(frame[m]);
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXcd> cod(a.adjoint());
  Eigen::MatrixXcd duals = cod.pseudoInverse();  // (d*d) x n
  std::vector<Eigen::MatrixXcd> out(frame.size());
  for (std::size_t m = 0; m < frame.size(); ++m)
    out[m] = Eigen::Map<const Eigen::MatrixXcd>(duals.col(m).data(), d, d);
  return out;
}

Eigen::MatrixXcd inverse_sqrt(const Eigen::MatrixXcd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(m);
  Eigen::VectorXd vals = eig.eigenvalues();
  for (Eigen::Index i = 0; i < vals.size(); ++i) {
    if (vals(i) <= 0.0)
      throw std::runtime_error("inverse_sqrt: matrix is not positive definite");
    vals(i) = 1.0 / std::sqrt(vals(i));
  }
  return eig.eigenvectors() * vals.asDiagonal() * eig.eigenvectors().adjoint();
}

double trace_distance(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(a - b);
  return 0.5 * eig.eigenvalues().cwiseAbs().sum();
}

std::uint64_t mix(std::uint64_t seed, std::uint64_t salt) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

double MeasurementFrame::completeness_residual() const {
  Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(d, d);
  for (const auto& e : effects) sum += e;
  return (sum - Eigen::MatrixXcd::Identity(d, d)).cwiseAbs().maxCoeff();
}

std::pair<StateFrame, MeasurementFrame> ic_frames(Eigen::Index d) {
  if (d < 2) throw std::invalid_argument("ic_frames: need d >= 2");
  StateFrame sf;
  sf.d = d;
  auto pure = [&](const Eigen::VectorXcd& v) {
    Eigen::VectorXcd n = v / v.norm();
    return Eigen::MatrixXcd(n * n.adjoint());
  };
  for (Eigen::Index j = 0; j < d; ++j)
    sf.states.push_back(pure(Eigen::VectorXcd::Unit(d, j)));
  for (Eigen::Index j = 0; j < d; ++j)
    for (Eigen::Index k = j + 1; k < d; ++k) {
      sf.states.push_back(pure(Eigen::VectorXcd::Unit(d, j) + Eigen::VectorXcd::Unit(d, k)));
      sf.states.push_back(pure(Eigen::VectorXcd::Unit(d, j) +
                               Complex(0.0, 1.0) * Eigen::VectorXcd::Unit(d, k)));
    }

  Eigen::MatrixXcd total = Eigen::MatrixXcd::Zero(d, d);
  for (const auto& s : sf.states) total += s;
  Eigen::MatrixXcd t = inverse_sqrt(total);
  MeasurementFrame mf;
  mf.d = d;
  for (const auto& s : sf.states) mf.effects.push_back(t * s * t);
  return {std::move(sf), std::move(mf)};
}

Eigen::Index frame_gram_rank(const std::vector<Eigen::MatrixXcd>& frame) {
  Eigen::MatrixXcd gram(frame.size(), frame.size());
  for (std::size_t m = 0; m < frame.size(); ++m)
    for (std::size_t n = 0; n < frame.size(); ++n)
      gram(m, n) = (frame[m].adjoint() * frame[n]).trace();
  return numerical_rank(gram, 1e-10);
}

TomographyReport tomograph_delocalized_operation(const LabeledOperator& circuit,
                                                 const SubsystemEncoderPair& encoders,
                                                 const Eigen::MatrixXcd& env_prep,
                                                 std::uint64_t shots, std::uint64_t seed) {
  const Eigen::Index d_in = encoders.a_tilde_in.dim;
  const Eigen::Index d_out = encoders.a_tilde_out.dim;
  if (env_prep.rows() != encoders.a_bar.dim || env_prep.cols() != encoders.a_bar.dim)
    throw std::invalid_argument("tomography: environment state has the wrong dimension");

  auto [sf, mf_in_unused] = ic_frames(d_in);
  auto [sf_out_unused, mf] = ic_frames(d_out);
  (void)mf_in_unused;
  (void)sf_out_unused;

  LabeledOperator env({encoders.a_bar}, {encoders.a_bar}, env_prep);
  const std::string in_name = encoders.a_tilde_in.name;
  const std::string out_name = encoders.a_tilde_out.name;

  TomographyReport report;
  report.shots = shots;
  report.seed = seed;
  std::vector<Eigen::MatrixXcd> effect_duals = dual_frame(mf.effects);
  std::vector<Eigen::MatrixXcd> outputs;  // reconstructed Lambda(rho_m)

  for (std::size_t m = 0; m < sf.states.size(); ++m) {
    LabeledOperator rho({encoders.a_tilde_in}, {encoders.a_tilde_in}, sf.states[m]);
    LabeledOperator prepared =
        compose(compose(encoders.w_in, tensor(rho, env)), encoders.w_in.adjoint());
    LabeledOperator evolved = compose(compose(circuit, prepared), circuit.adjoint());
    LabeledOperator decoded =
        compose(compose(encoders.w_out.adjoint(), evolved), encoders.w_out);
    double weight = decoded.trace().real();
    if (m == 0 || weight < report.min_projection_weight)
      report.min_projection_weight = weight;
    Eigen::MatrixXcd mu = partial_trace(decoded, {encoders.a_bar.name}).matrix();

    std::vector<double> p(mf.effects.size());
    for (std::size_t e = 0; e < mf.effects.size(); ++e)
      p[e] = std::max(0.0, (mf.effects[e] * mu).trace().real());
    if (shots > 0) {
      double total = 0.0;
      for (double v : p) total += v;
      std::mt19937_64 rng(mix(seed, m));
      std::discrete_distribution<std::size_t> dist(p.begin(), p.end());
      std::vector<std::uint64_t> counts(p.size(), 0);
      for (std::uint64_t s = 0; s < shots; ++s) ++counts[dist(rng)];
      for (std::size_t e = 0; e < p.size(); ++e)
        p[e] = total * static_cast<double>(counts[e]) / static_cast<double>(shots);
    }

    Eigen::MatrixXcd lambda = Eigen::MatrixXcd::Zero(d_out, d_out);
    for (std::size_t e = 0; e < p.size(); ++e) lambda += p[e] * effect_duals[e];
    outputs.push_back(std::move(lambda));
    report.probabilities.push_back(std::move(p));
  }

  std::vector<Eigen::MatrixXcd> state_duals = dual_frame(sf.states);
  Eigen::MatrixXcd choi = Eigen::MatrixXcd::Zero(d_in * d_out, d_in * d_out);
  for (std::size_t m = 0; m < outputs.size(); ++m) {
    Eigen::MatrixXcd lt = outputs[m].transpose();
    for (Eigen::Index i = 0; i < d_in; ++i)
      for (Eigen::Index j = 0; j < d_in; ++j)
        choi.block(i * d_out, j * d_out, d_out, d_out) += state_duals[m](i, j) * lt;
  }
  SystemId in_sys{in_name, d_in}, out_sys{out_name, d_out};
  report.reconstructed =
      ChoiOperator{{in_sys}, {out_sys},
                   LabeledOperator({in_sys, out_sys}, {in_sys, out_sys}, std::move(choi))};
  return report;
}

ChannelComparison compare_channels(const ChoiOperator& a, const ChoiOperator& b) {
  if (total_dim(a.in_systems) != total_dim(b.in_systems) ||
      total_dim(a.out_systems) != total_dim(b.out_systems))
    throw std::invalid_argument("compare_channels: shape mismatch");
  ChannelComparison cmp;
  cmp.choi_max_residual = max_abs(a.op.matrix() - b.op.matrix());
  auto [sf, mf] = ic_frames(total_dim(a.in_systems));
  (void)mf;
  for (const auto& s : sf.states) {
    LabeledOperator rho_a(a.in_systems, a.in_systems, s);
    LabeledOperator rho_b(b.in_systems, b.in_systems, s);
    cmp.max_trace_distance =
        std::max(cmp.max_trace_distance,
                 trace_distance(apply_via_choi(a, rho_a).matrix(),
                                apply_via_choi(b, rho_b).matrix()));
  }
  return cmp;
}

}  // namespace causalis
