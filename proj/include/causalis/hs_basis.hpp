// Copyright 2026 The causalis developers.
// Licensed under the Apache License, Version 2.0; see LICENSE for details.

#ifndef CAUSALIS_HS_BASIS_HPP
#define CAUSALIS_HS_BASIS_HPP

#include <vector>

#include "causalis/labeled_operator.hpp"

namespace causalis {

/// Hermitian operator basis {sigma_0 = I, sigma_1, ...} for one system,
/// normalized to Tr[sigma_mu sigma_nu] = d * delta_{mu nu}, with the
/// non-identity elements traceless. Built from the generalized Gell-Mann
/// matrices rescaled by sqrt(d/2).
struct HilbertSchmidtBasis {
  SystemId system;
  std::vector<Eigen::MatrixXcd> elements;

  static HilbertSchmidtBasis standard(const SystemId& system);
};

/// Real coefficient tensor of a Hermitian operator over per-system bases:
/// op = sum_mu w[mu_1,...,mu_k] sigma_{mu_1} x ... x sigma_{mu_k}.
struct HsDecomposition {
  SystemList systems;
  std::vector<double> coeffs;  // flat, mixed radix with radices d_i^2

  std::vector<Eigen::Index> radices() const;
  double coeff(const std::vector<Eigen::Index>& mu) const;
  double identity_coeff() const { return coeffs.empty() ? 0.0 : coeffs[0]; }
};

HsDecomposition hs_decompose(const LabeledOperator& op,
                             const std::vector<HilbertSchmidtBasis>& bases);

LabeledOperator hs_reconstruct(const HsDecomposition& dec,
                               const std::vector<HilbertSchmidtBasis>& bases);

/// Per-system bases for all row systems of a square operator.
std::vector<HilbertSchmidtBasis> standard_bases(const SystemList& systems);

}  // namespace causalis

#endif
