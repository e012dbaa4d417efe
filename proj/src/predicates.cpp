// Copyright 2026 The causalis developers.
// Licensed under the Apache License, Version 2.0; see LICENSE for details.

#include "causalis/predicates.hpp"

#include <algorithm>
#include <numeric>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace causalis {

HermitianEig sorted_hermitian_eig(const Eigen::MatrixXcd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m);
  Eigen::VectorXd vals = solver.eigenvalues();
  Eigen::MatrixXcd vecs = solver.eigenvectors();
  std::vector<Eigen::Index> order(vals.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index a, Eigen::Index b) { return vals(a) > vals(b); });
  HermitianEig out;
  out.values.resize(vals.size());
  out.vectors.resize(vecs.rows(), vecs.cols());
  for (Eigen::Index k = 0; k < vals.size(); ++k) {
    out.values(k) = vals(order[k]);
    Eigen::VectorXcd v = vecs.col(order[k]);
    // Phase convention: first component above threshold made real positive.
    double mx = v.cwiseAbs().maxCoeff();
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      if (std::abs(v(i)) > 1e-12 * mx && std::abs(v(i)) > 0) {
        v *= std::conj(v(i)) / std::abs(v(i));
        break;
      }
    }
    out.vectors.col(k) = v;
  }
  return out;
}

Eigen::Index numerical_rank(const Eigen::MatrixXcd& m, double tol) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0) return 0;
  double smax = sv(0);
  if (smax <= 0) return 0;
  Eigen::Index r = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > tol * smax) ++r;
  return r;
}

MatrixPredicates matrix_predicates(const LabeledOperator& op, double tol) {
  MatrixPredicates p;
  const Eigen::MatrixXcd& m = op.matrix();
  p.rank = numerical_rank(m, tol);
  if (m.rows() == m.cols()) {
    p.hermiticity_residual = max_abs(m - m.adjoint());
    p.hermitian = p.hermiticity_residual <= tol;
    if (p.hermitian) {
      HermitianEig eig = sorted_hermitian_eig(m);
      p.min_eigenvalue = eig.values(eig.values.size() - 1);
      p.psd = p.min_eigenvalue >= -tol;
    }
  }
  if (m.rows() >= m.cols()) {
    Eigen::MatrixXcd g = m.adjoint() * m;
    p.isometry_residual = max_abs(g - Eigen::MatrixXcd::Identity(g.rows(), g.cols()));
    p.isometry = p.isometry_residual <= tol;
    p.unitary = p.isometry && m.rows() == m.cols();
  }
  return p;
}

}  // namespace causalis
