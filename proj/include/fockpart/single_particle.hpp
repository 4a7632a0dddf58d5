// Copyright 2026 The fockpart Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <utility>
#include <vector>

#include "fockpart/config.hpp"
#include "fockpart/errors.hpp"

namespace fockpart {

/// A complex amplitude vector over the computational basis {|j>} of the
/// one-particle space. No normalization is applied implicitly.
class SingleParticleVec {
 public:
  explicit SingleParticleVec(std::vector<Complex> amps) : amps_(std::move(amps)) {
    if (amps_.empty()) throw InvalidDimension("single-particle vector needs at least one mode");
  }

  static SingleParticleVec basis(int j, int dim) {
    if (dim <= 0 || j < 0 || j >= dim) throw InvalidDimension("basis index out of range");
    std::vector<Complex> a(static_cast<std::size_t>(dim), Complex(0.0, 0.0));
    a[static_cast<std::size_t>(j)] = Complex(1.0, 0.0);
    return SingleParticleVec(std::move(a));
  }

  int dim() const { return static_cast<int>(amps_.size()); }
  const std::vector<Complex>& amps() const { return amps_; }
  Complex operator[](int j) const { return amps_[static_cast<std::size_t>(j)]; }

  double norm_sq() const {
    double s = 0.0;
    for (const auto& a : amps_) s += std::norm(a);
    return s;
  }
  double norm() const { return std::sqrt(norm_sq()); }

  bool is_zero(double tol = kZeroPrune) const { return norm() < tol; }

  /// <this|other>, conjugate-linear in *this.
  Complex inner(const SingleParticleVec& other) const {
    if (other.dim() != dim()) throw IncompatibleStates("single-particle dims differ");
    Complex s(0.0, 0.0);
    for (int j = 0; j < dim(); ++j) s += std::conj(amps_[j]) * other.amps_[j];
    return s;
  }

  SingleParticleVec normalized() const {
    const double n = norm();
    if (n < kZeroPrune) throw ZeroState("cannot normalize a zero vector");
    std::vector<Complex> a(amps_);
    for (auto& x : a) x /= n;
    return SingleParticleVec(std::move(a));
  }

  /// Embeds into a larger mode space; new modes carry zero amplitude.
  SingleParticleVec padded(int new_dim) const {
    if (new_dim < dim()) throw InvalidDimension("cannot shrink a single-particle vector");
    std::vector<Complex> a(amps_);
    a.resize(static_cast<std::size_t>(new_dim), Complex(0.0, 0.0));
    return SingleParticleVec(std::move(a));
  }

  friend SingleParticleVec operator+(const SingleParticleVec& a, const SingleParticleVec& b) {
    if (a.dim() != b.dim()) throw IncompatibleStates("single-particle dims differ");
    std::vector<Complex> r(a.amps_);
    for (int j = 0; j < b.dim(); ++j) r[j] += b.amps_[j];
    return SingleParticleVec(std::move(r));
  }

  friend SingleParticleVec operator-(const SingleParticleVec& a, const SingleParticleVec& b) {
    if (a.dim() != b.dim()) throw IncompatibleStates("single-particle dims differ");
    std::vector<Complex> r(a.amps_);
    for (int j = 0; j < b.dim(); ++j) r[j] -= b.amps_[j];
    return SingleParticleVec(std::move(r));
  }

  friend SingleParticleVec operator*(Complex c, const SingleParticleVec& v) {
    std::vector<Complex> r(v.amps_);
    for (auto& x : r) x *= c;
    return SingleParticleVec(std::move(r));
  }

 private:
  std::vector<Complex> amps_;
};

/// Constructs the vector with the given amplitudes, no normalization applied.
inline SingleParticleVec single_part(std::vector<Complex> amps) {
  return SingleParticleVec(std::move(amps));
}

}  // namespace fockpart
