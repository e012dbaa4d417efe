// Copyright 2026 The causalis developers.
// Licensed under the Apache License, Version 2.0; see LICENSE for details.

#ifndef CAUSALIS_RANDOM_HPP
#define CAUSALIS_RANDOM_HPP

#include <cstdint>

#include "causalis/labeled_operator.hpp"

namespace causalis {

/// Haar-distributed unitary: QR of a complex Ginibre matrix with the
/// R-diagonal phase normalization. Deterministic for a fixed seed.
Eigen::MatrixXcd random_unitary_matrix(Eigen::Index d, std::uint64_t seed);

/// Labeled wrapper mapping `in` to `out` (equal dims required).
LabeledOperator random_unitary(const SystemList& out, const SystemList& in,
                               std::uint64_t seed);

/// Haar-random pure state vector.
Eigen::VectorXcd random_pure_state(Eigen::Index d, std::uint64_t seed);

/// Random full-rank density matrix (normalized Wishart).
Eigen::MatrixXcd random_density_matrix(Eigen::Index d, std::uint64_t seed);

}  // namespace causalis

#endif
