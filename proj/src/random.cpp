// Copyright 2026 The causalis developers.
// Licensed under the Apache License, Version 2.0; see LICENSE for details.

#include "causalis/random.hpp"

#include <random>
#include <stdexcept>

#include <Eigen/QR>

namespace causalis {

namespace {

Eigen::MatrixXcd ginibre(Eigen::Index rows, Eigen::Index cols, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::MatrixXcd g(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) {
      double re = normal(gen);
      double im = normal(gen);
      g(i, j) = Complex(re, im);
    }
  return g;
}

}  // namespace

Eigen::MatrixXcd random_unitary_matrix(Eigen::Index d, std::uint64_t seed) {
  if (d < 1) throw std::invalid_argument("random_unitary: dimension must be >= 1");
  Eigen::MatrixXcd g = ginibre(d, d, seed);
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  Eigen::MatrixXcd q = qr.householderQ();
  Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < d; ++j) {
    Complex rjj = r(j, j);
    double a = std::abs(rjj);
    q.col(j) *= (a > 0) ? rjj / a : Complex(1, 0);
  }
  return q;
}

LabeledOperator random_unitary(const SystemList& out, const SystemList& in,
                               std::uint64_t seed) {
  Eigen::Index d = total_dim(in);
  if (d != total_dim(out))
    throw std::invalid_argument("random_unitary: in/out dimensions differ");
  return LabeledOperator(out, in, random_unitary_matrix(d, seed));
}

Eigen::VectorXcd random_pure_state(Eigen::Index d, std::uint64_t seed) {
  Eigen::MatrixXcd g = ginibre(d, 1, seed);
  Eigen::VectorXcd v = g.col(0);
  return v / v.norm();
}

Eigen::MatrixXcd random_density_matrix(Eigen::Index d, std::uint64_t seed) {
  Eigen::MatrixXcd g = ginibre(d, d, seed);
  Eigen::MatrixXcd rho = g * g.adjoint();
  return rho / rho.trace().real();
}

}  // namespace causalis
