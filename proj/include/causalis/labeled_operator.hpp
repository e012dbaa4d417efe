// Copyright 2026 The causalis developers.
// Licensed under the Apache License, Version 2.0; see LICENSE for details.

#ifndef CAUSALIS_LABELED_OPERATOR_HPP
#define CAUSALIS_LABELED_OPERATOR_HPP

#include <complex>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "causalis/systems.hpp"

namespace causalis {

using Complex = std::complex<double>;

/// Dense complex operator whose row and column spaces are ordered tensor
/// products of named systems. Rows and columns may carry different labels,
/// in which case the operator is read as a map from the column systems to
/// the row systems.
class LabeledOperator {
 public:
  /// Scalar 1 on empty registries (the unit of tensor).
  LabeledOperator() : mat_(Eigen::MatrixXcd::Ones(1, 1)) {}
  LabeledOperator(SystemList rows, SystemList cols, Eigen::MatrixXcd mat);

  static LabeledOperator zero(SystemList rows, SystemList cols);
  /// Identity on a tensor product of systems (rows == cols).
  static LabeledOperator identity(const SystemList& systems);
  /// Identity map that only renames a wire; from.dim must equal to.dim.
  static LabeledOperator wire(const SystemId& from, const SystemId& to);
  /// Identity relabeling map between two equal-total-dimension registries.
  static LabeledOperator wires(const SystemList& from, const SystemList& to);
  /// Column vector |j> on a single system.
  static LabeledOperator basis_ket(const SystemId& sys, Eigen::Index j);
  /// Column vector from amplitudes.
  static LabeledOperator ket(const SystemList& systems, const Eigen::VectorXcd& amps);

  const SystemList& rows() const { return rows_; }
  const SystemList& cols() const { return cols_; }
  const Eigen::MatrixXcd& matrix() const { return mat_; }
  Eigen::MatrixXcd& matrix() { return mat_; }
  Eigen::Index row_dim() const { return mat_.rows(); }
  Eigen::Index col_dim() const { return mat_.cols(); }

  /// True when row and column registries are identical (names, dims, order).
  bool is_endomorphism() const { return rows_ == cols_; }

  /// Adjoint; swaps row and column labels.
  LabeledOperator adjoint() const;
  /// Entrywise conjugate, labels unchanged.
  LabeledOperator conjugate() const;
  /// Transpose of an endomorphism, labels unchanged.
  LabeledOperator transpose_square() const;

  LabeledOperator relabeled(const std::map<std::string, std::string>& renames) const;

  Complex trace() const;

 private:
  SystemList rows_;
  SystemList cols_;
  Eigen::MatrixXcd mat_;
};

/// Kronecker product with concatenated registries; labels must be disjoint
/// side by side.
LabeledOperator tensor(const LabeledOperator& a, const LabeledOperator& b);

LabeledOperator operator*(const Complex& c, const LabeledOperator& op);
LabeledOperator operator*(double c, const LabeledOperator& op);
/// Sum; b is permuted to a's registry order first.
LabeledOperator operator+(const LabeledOperator& a, const LabeledOperator& b);
LabeledOperator operator-(const LabeledOperator& a, const LabeledOperator& b);

/// Reorder tensor factors; row_order / col_order are permutations of the
/// existing labels. Semantics of the operator are unchanged.
LabeledOperator permute_systems(const LabeledOperator& op,
                                const std::vector<std::string>& row_order,
                                const std::vector<std::string>& col_order);
/// Endomorphism convenience: same order applied to rows and columns.
LabeledOperator permute_systems(const LabeledOperator& op,
                                const std::vector<std::string>& order);
/// Permute `op` so its registries equal those of `like` (same labels required).
LabeledOperator permute_like(const LabeledOperator& op, const LabeledOperator& like);

/// Standard partial trace over the named systems (which must appear in both
/// registries with equal dims).
LabeledOperator partial_trace(const LabeledOperator& op,
                              const std::vector<std::string>& traced);

/// Partial transpose on the named systems of an endomorphism-shaped block
/// (the named systems must appear in rows and cols with equal dims).
LabeledOperator partial_transpose(const LabeledOperator& op,
                                  const std::vector<std::string>& systems);

/// Circuit composition `later ∘ earlier`: wires shared between later's
/// columns and earlier's rows are contracted; the remaining wires pass
/// through. Result maps earlier.cols ∪ (later.cols \ shared) to
/// later.rows ∪ (earlier.rows \ shared).
LabeledOperator compose(const LabeledOperator& later, const LabeledOperator& earlier);

/// Merge consecutive systems (by the given names, in their current order)
/// into a single system; data is unchanged.
LabeledOperator merge_systems(const LabeledOperator& op,
                              const std::vector<std::string>& names,
                              const std::string& merged_name);

/// Max-norm of the difference, after aligning registries.
double max_abs_diff(const LabeledOperator& a, const LabeledOperator& b);

double max_abs(const Eigen::MatrixXcd& m);

}  // namespace causalis

#endif
