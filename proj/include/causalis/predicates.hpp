// Copyright 2026 The causalis developers.
// Licensed under the Apache License, Version 2.0; see LICENSE for details.

#ifndef CAUSALIS_PREDICATES_HPP
#define CAUSALIS_PREDICATES_HPP

#include "causalis/labeled_operator.hpp"

namespace causalis {

struct MatrixPredicates {
  bool hermitian = false;
  bool psd = false;
  bool unitary = false;
  bool isometry = false;
  Eigen::Index rank = 0;
  double hermiticity_residual = 0.0;
  double min_eigenvalue = 0.0;
  double isometry_residual = 0.0;
};

/// Spectral predicates with tolerance `tol`. Predicates that do not apply
/// to the operator's shape report false; nothing throws.
MatrixPredicates matrix_predicates(const LabeledOperator& op, double tol = 1e-10);

/// Hermitian eigendecomposition with deterministic ordering: eigenvalues
/// descending, each eigenvector's first significant component made real
/// positive.
struct HermitianEig {
  Eigen::VectorXd values;
  Eigen::MatrixXcd vectors;  // columns
};
HermitianEig sorted_hermitian_eig(const Eigen::MatrixXcd& m);

Eigen::Index numerical_rank(const Eigen::MatrixXcd& m, double tol = 1e-10);

}  // namespace causalis

#endif
