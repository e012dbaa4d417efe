// Copyright 2026 The causalis developers.
// Licensed under the Apache License, Version 2.0; see LICENSE for details.

#include "causalis/labeled_operator.hpp"

#include <algorithm>
#include <stdexcept>

namespace causalis {

namespace {

void check_finite(const Eigen::MatrixXcd& m) {
  if (!m.allFinite()) throw std::invalid_argument("operator entries must be finite");
}

// Maps each flat index of `target` ordering to the flat index in `source`
// ordering. `perm[i]` is the position in `source` of target system i.
std::vector<Eigen::Index> index_map(const SystemList& source, const SystemList& target) {
  std::vector<std::size_t> perm(target.size());
  for (std::size_t i = 0; i < target.size(); ++i) {
    perm[i] = index_of(source, target[i].name);
    if (source[perm[i]].dim != target[i].dim)
      throw std::invalid_argument("dimension mismatch for system " + target[i].name);
  }
  if (source.size() != target.size())
    throw std::invalid_argument("not a permutation of the system labels");
  auto src_strides = strides_of(source);
  auto tgt_strides = strides_of(target);
  Eigen::Index n = total_dim(source);
  std::vector<Eigen::Index> map(n);
  std::vector<Eigen::Index> digits;
  for (Eigen::Index t = 0; t < n; ++t) {
    unrank(t, tgt_strides, digits);
    Eigen::Index s = 0;
    for (std::size_t i = 0; i < digits.size(); ++i) s += digits[i] * src_strides[perm[i]];
    map[t] = s;
  }
  return map;
}

}  // namespace

LabeledOperator::LabeledOperator(SystemList rows, SystemList cols, Eigen::MatrixXcd mat)
    : rows_(std::move(rows)), cols_(std::move(cols)), mat_(std::move(mat)) {
  check_unique_names(rows_);
  check_unique_names(cols_);
  if (mat_.rows() != total_dim(rows_) || mat_.cols() != total_dim(cols_))
    throw std::invalid_argument("matrix shape does not match system dimensions");
  check_finite(mat_);
}

LabeledOperator LabeledOperator::zero(SystemList rows, SystemList cols) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(total_dim(rows), total_dim(cols));
  return LabeledOperator(std::move(rows), std::move(cols), std::move(m));
}

LabeledOperator LabeledOperator::identity(const SystemList& systems) {
  Eigen::Index d = total_dim(systems);
  return LabeledOperator(systems, systems, Eigen::MatrixXcd::Identity(d, d));
}

LabeledOperator LabeledOperator::wire(const SystemId& from, const SystemId& to) {
  if (from.dim != to.dim)
    throw std::invalid_argument("wire endpoints must have equal dimension");
  return LabeledOperator({to}, {from}, Eigen::MatrixXcd::Identity(to.dim, to.dim));
}

LabeledOperator LabeledOperator::wires(const SystemList& from, const SystemList& to) {
  Eigen::Index d = total_dim(from);
  if (d != total_dim(to))
    throw std::invalid_argument("wire registries must have equal total dimension");
  return LabeledOperator(to, from, Eigen::MatrixXcd::Identity(d, d));
}

LabeledOperator LabeledOperator::basis_ket(const SystemId& sys, Eigen::Index j) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(sys.dim);
  v(j) = 1.0;
  return LabeledOperator({sys}, {}, v);
}

LabeledOperator LabeledOperator::ket(const SystemList& systems, const Eigen::VectorXcd& amps) {
  return LabeledOperator(systems, {}, amps);
}

LabeledOperator LabeledOperator::adjoint() const {
  return LabeledOperator(cols_, rows_, mat_.adjoint());
}

LabeledOperator LabeledOperator::conjugate() const {
  return LabeledOperator(rows_, cols_, mat_.conjugate());
}

LabeledOperator LabeledOperator::transpose_square() const {
  if (mat_.rows() != mat_.cols())
    throw std::invalid_argument("transpose_square requires a square matrix");
  return LabeledOperator(rows_, cols_, mat_.transpose());
}

LabeledOperator LabeledOperator::relabeled(
    const std::map<std::string, std::string>& renames) const {
  auto apply = [&](SystemList systems) {
    for (auto& s : systems) {
      auto it = renames.find(s.name);
      if (it != renames.end()) s.name = it->second;
    }
    return systems;
  };
  return LabeledOperator(apply(rows_), apply(cols_), mat_);
}

Complex LabeledOperator::trace() const { return mat_.trace(); }

LabeledOperator tensor(const LabeledOperator& a, const LabeledOperator& b) {
  if (!disjoint(a.rows(), b.rows()) || !disjoint(a.cols(), b.cols()))
    throw std::invalid_argument("tensor: system label collision");
  Eigen::MatrixXcd m(a.row_dim() * b.row_dim(), a.col_dim() * b.col_dim());
  for (Eigen::Index i = 0; i < a.row_dim(); ++i)
    for (Eigen::Index j = 0; j < a.col_dim(); ++j)
      m.block(i * b.row_dim(), j * b.col_dim(), b.row_dim(), b.col_dim()) =
          a.matrix()(i, j) * b.matrix();
  return LabeledOperator(concat(a.rows(), b.rows()), concat(a.cols(), b.cols()),
                         std::move(m));
}

LabeledOperator operator*(const Complex& c, const LabeledOperator& op) {
  return LabeledOperator(op.rows(), op.cols(), c * op.matrix());
}

LabeledOperator operator*(double c, const LabeledOperator& op) {
  return Complex(c, 0.0) * op;
}

LabeledOperator operator+(const LabeledOperator& a, const LabeledOperator& b) {
  LabeledOperator bb = permute_like(b, a);
  return LabeledOperator(a.rows(), a.cols(), a.matrix() + bb.matrix());
}

LabeledOperator operator-(const LabeledOperator& a, const LabeledOperator& b) {
  return a + (-1.0 * b);
}

LabeledOperator permute_systems(const LabeledOperator& op,
                                const std::vector<std::string>& row_order,
                                const std::vector<std::string>& col_order) {
  SystemList new_rows, new_cols;
  for (const auto& n : row_order) new_rows.push_back(find_system(op.rows(), n));
  for (const auto& n : col_order) new_cols.push_back(find_system(op.cols(), n));
  auto rmap = index_map(op.rows(), new_rows);
  auto cmap = index_map(op.cols(), new_cols);
  Eigen::MatrixXcd m(op.row_dim(), op.col_dim());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = op.matrix()(rmap[i], cmap[j]);
  return LabeledOperator(std::move(new_rows), std::move(new_cols), std::move(m));
}

LabeledOperator permute_systems(const LabeledOperator& op,
                                const std::vector<std::string>& order) {
  return permute_systems(op, order, order);
}

LabeledOperator permute_like(const LabeledOperator& op, const LabeledOperator& like) {
  return permute_systems(op, names_of(like.rows()), names_of(like.cols()));
}

LabeledOperator partial_trace(const LabeledOperator& op,
                              const std::vector<std::string>& traced) {
  // Put traced systems last on both sides, then sum diagonal blocks.
  SystemList kept_rows = drop(op.rows(), traced);
  SystemList kept_cols = drop(op.cols(), traced);
  SystemList tr_rows = select(op.rows(), traced);
  SystemList tr_cols = select(op.cols(), traced);
  for (const auto& n : traced) {
    if (!contains(op.rows(), n) || !contains(op.cols(), n))
      throw std::invalid_argument("partial_trace: unknown label " + n);
  }
  // Align traced column order with traced row order.
  std::vector<std::string> tr_names = names_of(tr_rows);
  tr_cols = select(op.cols(), tr_names);
  std::vector<std::string> tc_sorted;
  for (const auto& n : tr_names) tc_sorted.push_back(n);
  if (total_dim(tr_rows) != total_dim(select(op.cols(), tc_sorted)))
    throw std::invalid_argument("partial_trace: traced factors not square");
  std::vector<std::string> row_order = names_of(kept_rows);
  row_order.insert(row_order.end(), tr_names.begin(), tr_names.end());
  std::vector<std::string> col_order = names_of(kept_cols);
  col_order.insert(col_order.end(), tr_names.begin(), tr_names.end());
  LabeledOperator p = permute_systems(op, row_order, col_order);
  Eigen::Index dt = total_dim(tr_rows);
  Eigen::Index dr = p.row_dim() / dt;
  Eigen::Index dc = p.col_dim() / dt;
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dr, dc);
  for (Eigen::Index i = 0; i < dr; ++i)
    for (Eigen::Index j = 0; j < dc; ++j)
      for (Eigen::Index t = 0; t < dt; ++t)
        m(i, j) += p.matrix()(i * dt + t, j * dt + t);
  return LabeledOperator(kept_rows, kept_cols, std::move(m));
}

LabeledOperator partial_transpose(const LabeledOperator& op,
                                  const std::vector<std::string>& systems) {
  SystemList kept_rows = drop(op.rows(), systems);
  SystemList kept_cols = drop(op.cols(), systems);
  SystemList t_rows = select(op.rows(), systems);
  std::vector<std::string> t_names = names_of(t_rows);
  if (t_names.size() != systems.size())
    throw std::invalid_argument("partial_transpose: unknown label");
  if (total_dim(t_rows) != total_dim(select(op.cols(), t_names)))
    throw std::invalid_argument("partial_transpose: factors not square");
  std::vector<std::string> row_order = names_of(kept_rows);
  row_order.insert(row_order.end(), t_names.begin(), t_names.end());
  std::vector<std::string> col_order = names_of(kept_cols);
  col_order.insert(col_order.end(), t_names.begin(), t_names.end());
  LabeledOperator p = permute_systems(op, row_order, col_order);
  Eigen::Index dt = total_dim(t_rows);
  Eigen::Index dr = p.row_dim() / dt;
  Eigen::Index dc = p.col_dim() / dt;
  Eigen::MatrixXcd m(p.row_dim(), p.col_dim());
  for (Eigen::Index i = 0; i < dr; ++i)
    for (Eigen::Index j = 0; j < dc; ++j)
      for (Eigen::Index s = 0; s < dt; ++s)
        for (Eigen::Index t = 0; t < dt; ++t)
          m(i * dt + s, j * dt + t) = p.matrix()(i * dt + t, j * dt + s);
  LabeledOperator out(p.rows(), p.cols(), std::move(m));
  return permute_like(out, op);
}

LabeledOperator compose(const LabeledOperator& later, const LabeledOperator& earlier) {
  std::vector<std::string> shared;
  for (const auto& s : later.cols())
    if (contains(earlier.rows(), s.name)) {
      if (find_system(earlier.rows(), s.name).dim != s.dim)
        throw std::invalid_argument("compose: wire dimension mismatch on " + s.name);
      shared.push_back(s.name);
    }
  SystemList pass_up = drop(earlier.rows(), shared);    // outputs passing through
  SystemList pass_down = drop(later.cols(), shared);    // inputs passing through
  LabeledOperator later_ext =
      pass_up.empty() ? later : tensor(later, LabeledOperator::identity(pass_up));
  LabeledOperator earlier_ext =
      pass_down.empty() ? earlier : tensor(earlier, LabeledOperator::identity(pass_down));
  earlier_ext = permute_systems(earlier_ext, names_of(later_ext.cols()),
                                names_of(earlier_ext.cols()));
  return LabeledOperator(later_ext.rows(), earlier_ext.cols(),
                         later_ext.matrix() * earlier_ext.matrix());
}

LabeledOperator merge_systems(const LabeledOperator& op,
                              const std::vector<std::string>& names,
                              const std::string& merged_name) {
  auto merge = [&](const SystemList& systems) {
    SystemList out;
    Eigen::Index dim = 1;
    std::size_t seen = 0;
    bool emitted = false;
    for (const auto& s : systems) {
      auto it = std::find(names.begin(), names.end(), s.name);
      if (it != names.end()) {
        if (emitted || names[seen] != s.name)
          throw std::invalid_argument("merge_systems: systems must be consecutive and ordered");
        dim *= s.dim;
        ++seen;
        if (seen == names.size()) {
          out.push_back({merged_name, dim});
          emitted = true;
        }
      } else {
        if (seen != 0 && !emitted)
          throw std::invalid_argument("merge_systems: systems must be consecutive");
        out.push_back(s);
      }
    }
    return out;
  };
  SystemList rows = contains(op.rows(), names.front()) ? merge(op.rows()) : op.rows();
  SystemList cols = contains(op.cols(), names.front()) ? merge(op.cols()) : op.cols();
  return LabeledOperator(std::move(rows), std::move(cols), op.matrix());
}

double max_abs(const Eigen::MatrixXcd& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

double max_abs_diff(const LabeledOperator& a, const LabeledOperator& b) {
  LabeledOperator bb = permute_like(b, a);
  return max_abs(a.matrix() - bb.matrix());
}

}  // namespace causalis
