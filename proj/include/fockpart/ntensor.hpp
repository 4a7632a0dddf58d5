// Copyright 2026 The fockpart Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <utility>
#include <vector>

#include "fockpart/config.hpp"
#include "fockpart/errors.hpp"
#include "fockpart/single_particle.hpp"

namespace fockpart {

enum class Symmetry { None, Symmetric, Antisymmetric };

inline const char* to_string(Symmetry s) {
  switch (s) {
    case Symmetry::None: return "none";
    case Symmetry::Symmetric: return "symmetric";
    case Symmetry::Antisymmetric: return "antisymmetric";
  }
  return "?";
}

/// Multi-index of an n-particle tensor: one mode index per particle slot.
using IndexTuple = std::vector<int>;

namespace detail {

/// Parity of the permutation that sorts `t` ascending: +1 for even, -1 for
/// odd, 0 if an index repeats.
inline int sort_parity(const IndexTuple& t) {
  int sign = 1;
  for (std::size_t i = 0; i < t.size(); ++i)
    for (std::size_t j = i + 1; j < t.size(); ++j) {
      if (t[i] == t[j]) return 0;
      if (t[i] > t[j]) sign = -sign;
    }
  return sign;
}

inline bool has_repeats(const IndexTuple& t) {
  IndexTuple s(t);
  std::sort(s.begin(), s.end());
  return std::adjacent_find(s.begin(), s.end()) != s.end();
}

inline double factorial(int n) {
  double f = 1.0;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

}  // namespace detail

/// Sparse n-index complex tensor over `dim` modes with a symmetry tag.
/// Absent entries are zero. Values are immutable after construction; all
/// operations return new tensors.
class NTensor {
 public:
  using EntryMap = std::map<IndexTuple, Complex>;

  NTensor(int order, int dim, Symmetry sym = Symmetry::None)
      : order_(order), dim_(dim), sym_(sym) {
    check_shape();
  }

  /// Full constructor; validates index bounds and the symmetry tag.
  NTensor(int order, int dim, Symmetry sym, EntryMap entries)
      : order_(order), dim_(dim), sym_(sym), entries_(std::move(entries)) {
    check_shape();
    prune();
    validate_entries();
  }

  /// Grade-0 tensor holding one complex number.
  static NTensor scalar(Complex value, int dim, Symmetry sym = Symmetry::None) {
    EntryMap m;
    if (std::abs(value) >= kZeroPrune) m.emplace(IndexTuple{}, value);
    return NTensor(0, dim, sym, std::move(m));
  }

  static NTensor from_vector(const SingleParticleVec& v, Symmetry sym = Symmetry::None) {
    EntryMap m;
    for (int j = 0; j < v.dim(); ++j)
      if (std::abs(v[j]) >= kZeroPrune) m.emplace(IndexTuple{j}, v[j]);
    return NTensor(1, v.dim(), sym, std::move(m));
  }

  /// Builds a symmetric tensor from values given on sorted keys only; the
  /// value is replicated to every distinct arrangement, so the stored map is
  /// exactly permutation invariant.
  static NTensor make_symmetric(int order, int dim, const EntryMap& canonical) {
    EntryMap m;
    for (const auto& [key, value] : canonical) {
      if (std::abs(value) < kZeroPrune) continue;
      IndexTuple arr(key);
      std::sort(arr.begin(), arr.end());
      do {
        m[arr] = value;
      } while (std::next_permutation(arr.begin(), arr.end()));
    }
    return NTensor(order, dim, Symmetry::Symmetric, std::move(m));
  }

  /// Antisymmetric counterpart: the canonical value sits on the sorted key
  /// and every arrangement carries it times the permutation sign. Keys with
  /// repeated indices are dropped.
  static NTensor make_antisymmetric(int order, int dim, const EntryMap& canonical) {
    EntryMap m;
    for (const auto& [key, value] : canonical) {
      if (std::abs(value) < kZeroPrune || detail::has_repeats(key)) continue;
      IndexTuple arr(key);
      std::sort(arr.begin(), arr.end());
      do {
        m[arr] = value * static_cast<double>(detail::sort_parity(arr));
      } while (std::next_permutation(arr.begin(), arr.end()));
    }
    return NTensor(order, dim, Symmetry::Antisymmetric, std::move(m));
  }

  int order() const { return order_; }
  int dim() const { return dim_; }
  Symmetry symmetry() const { return sym_; }
  const EntryMap& entries() const { return entries_; }

  Complex at(const IndexTuple& idx) const {
    auto it = entries_.find(idx);
    return it == entries_.end() ? Complex(0.0, 0.0) : it->second;
  }

  double norm_sq() const {
    double s = 0.0;
    for (const auto& [k, v] : entries_) s += std::norm(v);
    return s;
  }
  double norm() const { return std::sqrt(norm_sq()); }
  bool is_zero(double tol = kZeroPrune) const { return norm() < tol; }

  /// <this|other> in the full tensor-space inner product, conjugate-linear
  /// in *this.
  Complex inner(const NTensor& other) const {
    if (other.dim_ != dim_ || other.order_ != order_)
      throw IncompatibleStates("tensor shapes differ in inner product");
    const NTensor& small = entries_.size() <= other.entries_.size() ? *this : other;
    Complex s(0.0, 0.0);
    if (&small == this) {
      for (const auto& [k, v] : entries_) s += std::conj(v) * other.at(k);
    } else {
      for (const auto& [k, v] : other.entries_) s += std::conj(at(k)) * v;
    }
    return s;
  }

  NTensor scaled(Complex c) const {
    EntryMap m;
    for (const auto& [k, v] : entries_) {
      Complex w = c * v;
      if (std::abs(w) >= kZeroPrune) m.emplace(k, w);
    }
    return NTensor(order_, dim_, sym_, std::move(m), NoValidate{});
  }

  NTensor plus(const NTensor& other) const {
    if (other.dim_ != dim_ || other.order_ != order_)
      throw IncompatibleStates("tensor shapes differ in sum");
    Symmetry sym = sym_ == other.sym_ ? sym_ : Symmetry::None;
    EntryMap m(entries_);
    for (const auto& [k, v] : other.entries_) m[k] += v;
    NTensor r(order_, dim_, sym, std::move(m), NoValidate{});
    r.prune();
    return r;
  }

  /// Re-tags the tensor after an external symmetry check, or when the grade
  /// makes the tag trivial (n <= 1 satisfies every symmetry).
  NTensor with_symmetry(Symmetry sym) const {
    NTensor r(order_, dim_, sym, EntryMap(entries_), NoValidate{});
    r.validate_entries();
    return r;
  }

  /// True when the stored entries are invariant (up to sign pattern) under
  /// slot permutations, within relative tolerance.
  bool check_symmetry(Symmetry sym, double rel_tol = 1e-9) const {
    if (order_ <= 1 || sym == Symmetry::None) return true;
    double maxabs = 0.0;
    for (const auto& [k, v] : entries_) maxabs = std::max(maxabs, std::abs(v));
    const double tol = std::max(rel_tol * maxabs, kZeroPrune);
    for (const auto& [k, v] : entries_) {
      IndexTuple s(k);
      std::sort(s.begin(), s.end());
      if (sym == Symmetry::Antisymmetric) {
        if (detail::has_repeats(k)) {
          if (std::abs(v) > tol) return false;
          continue;
        }
        const Complex ref = at(s) * static_cast<double>(detail::sort_parity(k));
        if (std::abs(v - ref) > tol) return false;
      } else {
        if (std::abs(v - at(s)) > tol) return false;
      }
    }
    // Completeness: each nonzero canonical value must appear on every
    // arrangement of its key.
    for (const auto& [k, v] : entries_) {
      IndexTuple arr(k);
      std::sort(arr.begin(), arr.end());
      do {
        if (entries_.find(arr) == entries_.end()) {
          if (std::abs(v) > tol) return false;
        }
      } while (std::next_permutation(arr.begin(), arr.end()));
    }
    return true;
  }

  friend NTensor operator+(const NTensor& a, const NTensor& b) { return a.plus(b); }
  friend NTensor operator*(Complex c, const NTensor& t) { return t.scaled(c); }

 private:
  struct NoValidate {};

  NTensor(int order, int dim, Symmetry sym, EntryMap entries, NoValidate)
      : order_(order), dim_(dim), sym_(sym), entries_(std::move(entries)) {
    check_shape();
  }

  void check_shape() const {
    if (dim_ <= 0) throw InvalidDimension("tensor dim must be positive");
    if (order_ < 0) throw InvalidDimension("tensor order must be nonnegative");
  }

  void prune() {
    for (auto it = entries_.begin(); it != entries_.end();) {
      if (std::abs(it->second) < kZeroPrune)
        it = entries_.erase(it);
      else
        ++it;
    }
  }

  void validate_entries() const {
    for (const auto& [k, v] : entries_) {
      if (static_cast<int>(k.size()) != order_)
        throw InvalidDimension("tensor key length differs from order");
      for (int idx : k)
        if (idx < 0 || idx >= dim_) throw InvalidDimension("tensor index out of range");
    }
    if (!check_symmetry(sym_))
      throw SymmetryViolation(std::string("entries violate the ") + to_string(sym_) + " tag");
  }

  int order_;
  int dim_;
  Symmetry sym_;
  EntryMap entries_;
};

}  // namespace fockpart
