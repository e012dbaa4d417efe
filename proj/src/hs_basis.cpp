// Copyright 2026 The causalis developers.
// Licensed under the Apache License, Version 2.0; see LICENSE for details.

#include "causalis/hs_basis.hpp"

#include <cmath>
#include <stdexcept>

namespace causalis {

HilbertSchmidtBasis HilbertSchmidtBasis::standard(const SystemId& system) {
  const Eigen::Index d = system.dim;
  HilbertSchmidtBasis basis{system, {}};
  basis.elements.reserve(d * d);
  basis.elements.push_back(Eigen::MatrixXcd::Identity(d, d));
  const double scale = std::sqrt(d / 2.0);
  // Symmetric off-diagonal.
  for (Eigen::Index j = 0; j < d; ++j)
    for (Eigen::Index k = j + 1; k < d; ++k) {
      Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d, d);
      m(j, k) = scale;
      m(k, j) = scale;
      basis.elements.push_back(m);
    }
  // Antisymmetric off-diagonal.
  for (Eigen::Index j = 0; j < d; ++j)
    for (Eigen::Index k = j + 1; k < d; ++k) {
      Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d, d);
      m(j, k) = Complex(0, -scale);
      m(k, j) = Complex(0, scale);
      basis.elements.push_back(m);
    }
  // Diagonal, l = 1..d-1.
  for (Eigen::Index l = 1; l < d; ++l) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d, d);
    double norm = std::sqrt(2.0 / (l * (l + 1.0)));
    for (Eigen::Index j = 0; j < l; ++j) m(j, j) = norm;
    m(l, l) = -norm * static_cast<double>(l);
    basis.elements.push_back(scale * m);
  }
  return basis;
}

std::vector<Eigen::Index> HsDecomposition::radices() const {
  std::vector<Eigen::Index> r;
  r.reserve(systems.size());
  for (const auto& s : systems) r.push_back(s.dim * s.dim);
  return r;
}

double HsDecomposition::coeff(const std::vector<Eigen::Index>& mu) const {
  auto r = radices();
  Eigen::Index idx = 0;
  for (std::size_t i = 0; i < r.size(); ++i) idx = idx * r[i] + mu[i];
  return coeffs[idx];
}

std::vector<HilbertSchmidtBasis> standard_bases(const SystemList& systems) {
  std::vector<HilbertSchmidtBasis> bases;
  bases.reserve(systems.size());
  for (const auto& s : systems) bases.push_back(HilbertSchmidtBasis::standard(s));
  return bases;
}

HsDecomposition hs_decompose(const LabeledOperator& op,
                             const std::vector<HilbertSchmidtBasis>& bases) {
  if (op.rows() != op.cols())
    throw std::invalid_argument("hs_decompose: operator must be square on its systems");
  if (bases.size() != op.rows().size())
    throw std::invalid_argument("hs_decompose: one basis per system required");
  for (std::size_t i = 0; i < bases.size(); ++i)
    if (!(bases[i].system == op.rows()[i]))
      throw std::invalid_argument("hs_decompose: basis/system mismatch");
  if (max_abs(op.matrix() - op.matrix().adjoint()) > 1e-9)
    throw std::invalid_argument("hs_decompose: operator must be Hermitian");

  // Contract one system at a time. Layout: data[(b, R, C)] where b indexes
  // the coefficient digits already produced, R and C the remaining
  // row/column composite indices.
  Eigen::Index total = op.row_dim();
  std::vector<Complex> data(op.matrix().data(), op.matrix().data() + total * total);
  // Eigen is column-major; copy row-major explicitly instead.
  for (Eigen::Index i = 0; i < total; ++i)
    for (Eigen::Index j = 0; j < total; ++j) data[i * total + j] = op.matrix()(i, j);

  Eigen::Index done = 1;      // number of coefficient blocks so far
  Eigen::Index rem = total;   // remaining row (= col) dimension
  for (const auto& basis : bases) {
    const Eigen::Index d = basis.system.dim;
    const Eigen::Index d2 = d * d;
    const Eigen::Index rem2 = rem / d;
    std::vector<Complex> next(static_cast<std::size_t>(done) * d2 * rem2 * rem2,
                              Complex(0, 0));
    for (Eigen::Index b = 0; b < done; ++b) {
      const Complex* blk = data.data() + b * rem * rem;
      for (Eigen::Index mu = 0; mu < d2; ++mu) {
        const Eigen::MatrixXcd& sig = basis.elements[mu];
        Complex* out = next.data() + ((b * d2 + mu) * rem2) * rem2;
        for (Eigen::Index r = 0; r < d; ++r)
          for (Eigen::Index c = 0; c < d; ++c) {
            Complex w = sig(c, r) / static_cast<double>(d);
            if (w == Complex(0, 0)) continue;
            const Complex* src = blk + (r * rem2) * rem + c * rem2;
            for (Eigen::Index R = 0; R < rem2; ++R)
              for (Eigen::Index C = 0; C < rem2; ++C)
                out[R * rem2 + C] += w * src[R * rem + C];
          }
      }
    }
    data.swap(next);
    done *= d2;
    rem = rem2;
  }
  HsDecomposition dec{op.rows(), {}};
  dec.coeffs.resize(done);
  for (Eigen::Index b = 0; b < done; ++b) dec.coeffs[b] = data[b].real();
  return dec;
}

LabeledOperator hs_reconstruct(const HsDecomposition& dec,
                               const std::vector<HilbertSchmidtBasis>& bases) {
  // Expand one system at a time, reversing hs_decompose.
  Eigen::Index done = static_cast<Eigen::Index>(dec.coeffs.size());
  std::vector<Complex> data(dec.coeffs.size());
  for (std::size_t i = 0; i < dec.coeffs.size(); ++i) data[i] = dec.coeffs[i];
  Eigen::Index rem = 1;
  for (std::size_t bi = bases.size(); bi-- > 0;) {
    const auto& basis = bases[bi];
    const Eigen::Index d = basis.system.dim;
    const Eigen::Index d2 = d * d;
    const Eigen::Index done2 = done / d2;
    const Eigen::Index rem2 = rem * d;
    std::vector<Complex> next(static_cast<std::size_t>(done2) * rem2 * rem2,
                              Complex(0, 0));
    for (Eigen::Index b = 0; b < done2; ++b) {
      Complex* out = next.data() + b * rem2 * rem2;
      for (Eigen::Index mu = 0; mu < d2; ++mu) {
        const Complex* blk = data.data() + (b * d2 + mu) * rem * rem;
        const Eigen::MatrixXcd& sig = basis.elements[mu];
        for (Eigen::Index r = 0; r < d; ++r)
          for (Eigen::Index c = 0; c < d; ++c) {
            Complex w = sig(r, c);
            if (w == Complex(0, 0)) continue;
            for (Eigen::Index R = 0; R < rem; ++R)
              for (Eigen::Index C = 0; C < rem; ++C)
                out[(r * rem + R) * rem2 + c * rem + C] += w * blk[R * rem + C];
          }
      }
    }
    data.swap(next);
    done = done2;
    rem = rem2;
  }
  Eigen::MatrixXcd m(rem, rem);
  for (Eigen::Index i = 0; i < rem; ++i)
    for (Eigen::Index j = 0; j < rem; ++j) m(i, j) = data[i * rem + j];
  return LabeledOperator(dec.systems, dec.systems, std::move(m));
}

}  // namespace causalis
