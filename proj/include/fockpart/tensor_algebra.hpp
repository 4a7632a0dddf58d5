// Copyright 2026 The fockpart Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <numeric>
#include <vector>

#include "fockpart/ntensor.hpp"

namespace fockpart {

namespace detail {

/// Tensor product without symmetry bookkeeping: T[i ++ j] = A[i] * B[j].
inline NTensor raw_otimes(const NTensor& a, const NTensor& b) {
  if (a.dim() != b.dim()) throw IncompatibleStates("tensor dims differ in product");
  NTensor::EntryMap m;
  for (const auto& [ka, va] : a.entries())
    for (const auto& [kb, vb] : b.entries()) {
      IndexTuple k(ka);
      k.insert(k.end(), kb.begin(), kb.end());
      m.emplace(std::move(k), va * vb);
    }
  return NTensor(a.order() + b.order(), a.dim(), Symmetry::None, std::move(m));
}

/// Applies the permutation sum with per-permutation weight sign(pi) when
/// `antisym`, computing each canonical value once and replicating it.
inline NTensor permutation_sum(const NTensor& t, bool antisym) {
  const int n = t.order();
  if (n <= 1) {
    return t.with_symmetry(antisym ? Symmetry::Antisymmetric : Symmetry::Symmetric);
  }
  // Collect the distinct sorted keys touched by any entry.
  std::map<IndexTuple, char> canon;
  for (const auto& [k, v] : t.entries()) {
    IndexTuple s(k);
    std::sort(s.begin(), s.end());
    canon.emplace(std::move(s), 0);
  }
  std::vector<int> slots(static_cast<std::size_t>(n));
  NTensor::EntryMap out;
  for (const auto& [s, unused] : canon) {
    if (antisym && has_repeats(s)) continue;
    // value at sorted key = sum over all slot permutations pi of
    // (sign(pi))? * T[s o pi].
    std::iota(slots.begin(), slots.end(), 0);
    Complex val(0.0, 0.0);
    IndexTuple permuted(static_cast<std::size_t>(n));
    do {
      for (int i = 0; i < n; ++i) permuted[i] = s[slots[i]];
      const Complex term = t.at(permuted);
      if (antisym)
        val += static_cast<double>(sort_parity(slots)) * term;
      else
        val += term;
    } while (std::next_permutation(slots.begin(), slots.end()));
    out.emplace(s, val);
  }
  return antisym ? NTensor::make_antisymmetric(n, t.dim(), out)
                 : NTensor::make_symmetric(n, t.dim(), out);
}

inline void require_product_input(const NTensor& t, Symmetry wanted, const char* op) {
  if (t.order() <= 1) return;
  if (t.symmetry() != wanted)
    throw SymmetryViolation(std::string(op) + " requires " + to_string(wanted) +
                            " inputs (or grade <= 1)");
}

}  // namespace detail

/// Standard tensor product of fixed-particle tensors.
inline NTensor otimes(const NTensor& a, const NTensor& b) { return detail::raw_otimes(a, b); }

/// Full permutation sum (no 1/n! averaging); result tagged Symmetric.
inline NTensor symmetrize(const NTensor& t) { return detail::permutation_sum(t, false); }

/// Signed permutation sum; result tagged Antisymmetric.
inline NTensor antisymmetrize(const NTensor& t) { return detail::permutation_sum(t, true); }

/// Symmetric tensor product. Normalized so that the n-ary product of
/// single-particle factors equals the plain permutation sum over all
/// factors, regardless of how the binary product is nested.
inline NTensor vee(const NTensor& a, const NTensor& b) {
  detail::require_product_input(a, Symmetry::Symmetric, "vee");
  detail::require_product_input(b, Symmetry::Symmetric, "vee");
  const double scale = 1.0 / (detail::factorial(a.order()) * detail::factorial(b.order()));
  return symmetrize(detail::raw_otimes(a, b)).scaled(scale);
}

/// Skew-symmetric tensor product with the same nesting convention as vee.
inline NTensor wedge(const NTensor& a, const NTensor& b) {
  detail::require_product_input(a, Symmetry::Antisymmetric, "wedge");
  detail::require_product_input(b, Symmetry::Antisymmetric, "wedge");
  const double scale = 1.0 / (detail::factorial(a.order()) * detail::factorial(b.order()));
  return antisymmetrize(detail::raw_otimes(a, b)).scaled(scale);
}

inline NTensor vee_all(const std::vector<SingleParticleVec>& factors) {
  if (factors.empty()) throw InvalidDimension("vee of zero factors");
  NTensor acc = NTensor::from_vector(factors.front(), Symmetry::Symmetric);
  for (std::size_t i = 1; i < factors.size(); ++i)
    acc = vee(acc, NTensor::from_vector(factors[i], Symmetry::Symmetric));
  return acc;
}

inline NTensor wedge_all(const std::vector<SingleParticleVec>& factors) {
  if (factors.empty()) throw InvalidDimension("wedge of zero factors");
  NTensor acc = NTensor::from_vector(factors.front(), Symmetry::Antisymmetric);
  for (std::size_t i = 1; i < factors.size(); ++i)
    acc = wedge(acc, NTensor::from_vector(factors[i], Symmetry::Antisymmetric));
  return acc;
}

inline NTensor otimes_all(const std::vector<SingleParticleVec>& factors) {
  if (factors.empty()) throw InvalidDimension("otimes of zero factors");
  NTensor acc = NTensor::from_vector(factors.front());
  for (std::size_t i = 1; i < factors.size(); ++i)
    acc = otimes(acc, NTensor::from_vector(factors[i]));
  return acc;
}

/// Matrix view of an n-particle tensor: the chosen slots index rows, the
/// remaining slots index columns, both row-major in ascending slot order.
struct Flattening {
  std::vector<int> row_slots;  // 0-based, sorted
  int order = 0;
  int dim = 0;
  Eigen::MatrixXcd matrix;
};

inline Flattening flatten(const NTensor& t, std::vector<int> row_slots) {
  std::sort(row_slots.begin(), row_slots.end());
  row_slots.erase(std::unique(row_slots.begin(), row_slots.end()), row_slots.end());
  const int n = t.order();
  if (row_slots.empty() || static_cast<int>(row_slots.size()) >= n)
    throw InvalidCut("row slots must be a nonempty proper subset");
  for (int s : row_slots)
    if (s < 0 || s >= n) throw InvalidCut("row slot out of range");

  std::vector<int> col_slots;
  for (int s = 0; s < n; ++s)
    if (!std::binary_search(row_slots.begin(), row_slots.end(), s)) col_slots.push_back(s);

  const auto pow_dim = [&](std::size_t k) {
    long p = 1;
    for (std::size_t i = 0; i < k; ++i) p *= t.dim();
    return p;
  };
  Flattening f;
  f.row_slots = row_slots;
  f.order = n;
  f.dim = t.dim();
  f.matrix = Eigen::MatrixXcd::Zero(pow_dim(row_slots.size()), pow_dim(col_slots.size()));
  for (const auto& [k, v] : t.entries()) {
    long r = 0, c = 0;
    for (int s : row_slots) r = r * t.dim() + k[s];
    for (int s : col_slots) c = c * t.dim() + k[s];
    f.matrix(r, c) = v;
  }
  return f;
}

/// Inverse of flatten on entries; the result carries no symmetry tag.
inline NTensor unflatten(const Flattening& f) {
  std::vector<int> col_slots;
  for (int s = 0; s < f.order; ++s)
    if (!std::binary_search(f.row_slots.begin(), f.row_slots.end(), s)) col_slots.push_back(s);
  NTensor::EntryMap m;
  for (long r = 0; r < f.matrix.rows(); ++r)
    for (long c = 0; c < f.matrix.cols(); ++c) {
      const Complex v = f.matrix(r, c);
      if (std::abs(v) < kZeroPrune) continue;
      IndexTuple k(static_cast<std::size_t>(f.order), 0);
      long rr = r;
      for (auto it = f.row_slots.rbegin(); it != f.row_slots.rend(); ++it) {
        k[*it] = static_cast<int>(rr % f.dim);
        rr /= f.dim;
      }
      long cc = c;
      for (auto it = col_slots.rbegin(); it != col_slots.rend(); ++it) {
        k[*it] = static_cast<int>(cc % f.dim);
        cc /= f.dim;
      }
      m.emplace(std::move(k), v);
    }
  return NTensor(f.order, f.dim, Symmetry::None, std::move(m));
}

/// Coefficient matrix of a 2-particle tensor, M(i, j) = T[(i, j)].
inline Eigen::MatrixXcd matrix_of(const NTensor& t) {
  if (t.order() != 2) throw InvalidDimension("matrix_of needs a 2-particle tensor");
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(t.dim(), t.dim());
  for (const auto& [k, v] : t.entries()) m(k[0], k[1]) = v;
  return m;
}

}  // namespace fockpart
