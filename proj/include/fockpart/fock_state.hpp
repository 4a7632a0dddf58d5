// Copyright 2026 The fockpart Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "fockpart/ntensor.hpp"

namespace fockpart {

enum class Statistics { Distinguishable, Boson, Fermion };

inline const char* to_string(Statistics s) {
  switch (s) {
    case Statistics::Distinguishable: return "distinguishable";
    case Statistics::Boson: return "boson";
    case Statistics::Fermion: return "fermion";
  }
  return "?";
}

inline Symmetry natural_symmetry(Statistics s) {
  switch (s) {
    case Statistics::Boson: return Symmetry::Symmetric;
    case Statistics::Fermion: return Symmetry::Antisymmetric;
    default: return Symmetry::None;
  }
}

/// Per-mode particle counts (n_0, n_1, ..., n_{d-1}).
struct Occupation {
  std::vector<int> counts;

  int total() const { return std::accumulate(counts.begin(), counts.end(), 0); }
  int dim() const { return static_cast<int>(counts.size()); }

  bool operator==(const Occupation& o) const { return counts == o.counts; }
  bool operator<(const Occupation& o) const { return counts < o.counts; }

  std::string str() const {
    std::string s = "(";
    for (std::size_t i = 0; i < counts.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(counts[i]);
    }
    return s + ")";
  }
};

namespace detail {

inline void validate_occupation(const Occupation& occ, Statistics stats) {
  if (occ.counts.empty()) throw InvalidDimension("occupation needs at least one mode");
  for (int c : occ.counts) {
    if (c < 0) throw InvalidParameter("occupation counts must be nonnegative");
    if (stats == Statistics::Fermion && c > 1)
      throw PauliViolation("fermionic occupation " + occ.str() + " has a count above one");
  }
}

inline IndexTuple canonical_key(const Occupation& occ) {
  IndexTuple key;
  for (int j = 0; j < occ.dim(); ++j)
    for (int c = 0; c < occ.counts[j]; ++c) key.push_back(j);
  return key;
}

inline Occupation occupation_of_key(const IndexTuple& key, int dim) {
  Occupation occ{std::vector<int>(static_cast<std::size_t>(dim), 0)};
  for (int idx : key) ++occ.counts[static_cast<std::size_t>(idx)];
  return occ;
}

/// Unit-norm first-quantized tensor of one occupation-basis element. The
/// scaling makes the occupation basis orthonormal in the plain tensor-space
/// inner product.
inline NTensor occupation_tensor(const Occupation& occ, Statistics stats) {
  validate_occupation(occ, stats);
  const int dim = occ.dim();
  const int n = occ.total();
  if (n == 0) return NTensor::scalar(Complex(1.0, 0.0), dim, natural_symmetry(stats));
  const IndexTuple key = canonical_key(occ);
  switch (stats) {
    case Statistics::Distinguishable: {
      NTensor::EntryMap m;
      m.emplace(key, Complex(1.0, 0.0));
      return NTensor(n, dim, Symmetry::None, std::move(m));
    }
    case Statistics::Boson: {
      double prod_fact = 1.0;
      for (int c : occ.counts) prod_fact *= factorial(c);
      const double value = std::sqrt(prod_fact / factorial(n));
      NTensor::EntryMap canon;
      canon.emplace(key, Complex(value, 0.0));
      return NTensor::make_symmetric(n, dim, canon);
    }
    case Statistics::Fermion: {
      NTensor::EntryMap canon;
      canon.emplace(key, Complex(1.0 / std::sqrt(factorial(n)), 0.0));
      return NTensor::make_antisymmetric(n, dim, canon);
    }
  }
  throw Error("unreachable");
}

}  // namespace detail

/// A pure state of the multimode Fock space: a graded map from particle
/// number to its first-quantized tensor, a statistics tag, and a truncation
/// bound. Values are immutable; operations return new states.
class FockState {
 public:
  using ComponentMap = std::map<int, NTensor>;

  FockState(int dim, Statistics stats, ComponentMap components, int capacity = kDefaultNmax)
      : dim_(dim), stats_(stats), capacity_(capacity) {
    if (dim_ <= 0) throw InvalidDimension("mode count must be positive");
    for (auto& [n, t] : components) {
      if (t.dim() != dim_) throw IncompatibleStates("component dim differs from state dim");
      if (t.order() != n) throw IncompatibleStates("component order differs from its grade");
      if (t.is_zero()) continue;
      if (stats_ == Statistics::Fermion && n > dim_)
        throw PauliViolation("fermionic component with more particles than modes");
      if (n >= 2 && t.symmetry() != natural_symmetry(stats_))
        throw SymmetryViolation(std::string("component symmetry tag does not match ") +
                                to_string(stats_) + " statistics");
      NTensor stored = n <= 1 ? t.with_symmetry(natural_symmetry(stats_)) : t;
      components_.emplace(n, std::move(stored));
      capacity_ = std::max(capacity_, n);
    }
  }

  static FockState vacuum(int dim, Statistics stats, int capacity = kDefaultNmax) {
    ComponentMap m;
    m.emplace(0, NTensor::scalar(Complex(1.0, 0.0), dim, natural_symmetry(stats)));
    return FockState(dim, stats, std::move(m), capacity);
  }

  static FockState zero(int dim, Statistics stats, int capacity = kDefaultNmax) {
    return FockState(dim, stats, ComponentMap{}, capacity);
  }

  int dim() const { return dim_; }
  Statistics statistics() const { return stats_; }

  /// Truncation bound: the largest grade this state may carry.
  int capacity() const { return capacity_; }

  const ComponentMap& components() const { return components_; }

  /// Largest grade with a nonzero component, or -1 for the zero state.
  int top() const { return components_.empty() ? -1 : components_.rbegin()->first; }

  NTensor n_component(int n) const {
    auto it = components_.find(n);
    if (it != components_.end()) return it->second;
    return NTensor(n, dim_, natural_symmetry(stats_));
  }

  double norm_sq() const {
    double s = 0.0;
    for (const auto& [n, t] : components_) s += t.norm_sq();
    return s;
  }
  double norm() const { return std::sqrt(norm_sq()); }
  bool is_zero(double tol = kZeroPrune) const { return norm() < tol; }

  Complex inner(const FockState& other) const {
    if (other.dim_ != dim_ || other.stats_ != stats_)
      throw IncompatibleStates("states differ in dim or statistics");
    Complex s(0.0, 0.0);
    for (const auto& [n, t] : components_) {
      auto it = other.components_.find(n);
      if (it != other.components_.end()) s += t.inner(it->second);
    }
    return s;
  }

  FockState scaled(Complex c) const {
    ComponentMap m;
    for (const auto& [n, t] : components_) m.emplace(n, t.scaled(c));
    return FockState(dim_, stats_, std::move(m), capacity_);
  }

  FockState normalized() const {
    const double n = norm();
    if (n < kZeroPrune) throw ZeroState("cannot normalize the zero state");
    return scaled(Complex(1.0 / n, 0.0));
  }

  /// Embeds into a larger mode space; new modes stay empty.
  FockState padded(int new_dim) const {
    if (new_dim < dim_) throw InvalidDimension("cannot shrink a state's mode space");
    if (new_dim == dim_) return *this;
    ComponentMap m;
    for (const auto& [n, t] : components_)
      m.emplace(n, NTensor(n, new_dim, t.symmetry(), NTensor::EntryMap(t.entries())));
    return FockState(new_dim, stats_, std::move(m), capacity_);
  }

  FockState with_capacity(int capacity) const {
    FockState r(*this);
    r.capacity_ = std::max(capacity, top());
    return r;
  }

 private:
  int dim_;
  Statistics stats_;
  int capacity_;
  ComponentMap components_;
};

/// Unit-norm Fock basis state |n_0, n_1, ...> for the given statistics.
inline FockState occupation_state(const Occupation& occ, Statistics stats,
                                  int capacity = kDefaultNmax) {
  detail::validate_occupation(occ, stats);
  FockState::ComponentMap m;
  m.emplace(occ.total(), detail::occupation_tensor(occ, stats));
  return FockState(occ.dim(), stats, std::move(m), std::max(capacity, occ.total()));
}

/// Componentwise linear combination; zero components are pruned.
inline FockState superpose(const std::vector<std::pair<Complex, FockState>>& terms) {
  if (terms.empty()) throw InvalidParameter("superpose needs at least one term");
  const int dim = terms.front().second.dim();
  const Statistics stats = terms.front().second.statistics();
  int capacity = 0;
  std::map<int, NTensor::EntryMap> acc;
  for (const auto& [c, state] : terms) {
    if (state.dim() != dim || state.statistics() != stats)
      throw IncompatibleStates("superpose terms differ in dim or statistics");
    capacity = std::max(capacity, state.capacity());
    if (std::abs(c) < kZeroPrune) continue;
    for (const auto& [n, t] : state.components()) {
      auto& slot = acc[n];
      for (const auto& [k, v] : t.entries()) slot[k] += c * v;
    }
  }
  FockState::ComponentMap comps;
  for (auto& [n, entries] : acc)
    comps.emplace(n, NTensor(n, dim, natural_symmetry(stats), std::move(entries)));
  return FockState(dim, stats, std::move(comps), capacity);
}

inline NTensor n_component(const FockState& state, int n) { return state.n_component(n); }

inline Complex inner_product(const FockState& a, const FockState& b) { return a.inner(b); }

/// True iff a and b describe the same ray: |<a|b>| >= (1-tol) * |a| * |b|.
inline bool equal_up_to_phase(const FockState& a, const FockState& b, double tol) {
  if (tol <= 0) throw InvalidParameter("tolerance must be positive");
  const double na = a.norm(), nb = b.norm();
  if (na < kZeroPrune || nb < kZeroPrune) throw ZeroState("equal_up_to_phase on a zero state");
  return std::abs(a.inner(b)) >= (1.0 - tol) * na * nb;
}

/// Occupation-number amplitudes of the state in the orthonormal Fock basis.
/// For distinguishable statistics the state must lie in the canonically
/// ordered monomial subspace.
inline std::map<Occupation, Complex> occupation_amplitudes(const FockState& state) {
  std::map<Occupation, Complex> amps;
  for (const auto& [n, t] : state.components()) {
    if (n == 0) {
      Complex v = t.at(IndexTuple{});
      if (std::abs(v) >= kZeroPrune)
        amps.emplace(Occupation{std::vector<int>(state.dim(), 0)}, v);
      continue;
    }
    const double off_tol = std::max(kZeroPrune, 1e-12 * t.norm());
    for (const auto& [key, value] : t.entries()) {
      const bool sorted = std::is_sorted(key.begin(), key.end());
      if (!sorted) {
        if (state.statistics() == Statistics::Distinguishable && std::abs(value) > off_tol)
          throw NotModeOrdered(
              "distinguishable state lies outside the canonically ordered subspace");
        continue;
      }
      const Occupation occ = detail::occupation_of_key(key, state.dim());
      switch (state.statistics()) {
        case Statistics::Distinguishable:
          amps[occ] = value;
          break;
        case Statistics::Boson: {
          double prod_fact = 1.0;
          for (int c : occ.counts) prod_fact *= detail::factorial(c);
          amps[occ] = std::sqrt(detail::factorial(n) / prod_fact) * value;
          break;
        }
        case Statistics::Fermion:
          amps[occ] = std::sqrt(detail::factorial(n)) * value;
          break;
      }
    }
  }
  for (auto it = amps.begin(); it != amps.end();) {
    if (std::abs(it->second) < kZeroPrune)
      it = amps.erase(it);
    else
      ++it;
  }
  return amps;
}

/// Rebuilds a state from occupation-number amplitudes (inverse of
/// occupation_amplitudes; an isometry by construction).
inline FockState from_occupation_amplitudes(int dim, Statistics stats,
                                            const std::map<Occupation, Complex>& amps,
                                            int capacity = kDefaultNmax) {
  std::map<int, NTensor::EntryMap> acc;
  for (const auto& [occ, amp] : amps) {
    if (occ.dim() != dim) throw IncompatibleStates("occupation length differs from dim");
    if (std::abs(amp) < kZeroPrune) continue;
    const NTensor t = detail::occupation_tensor(occ, stats);
    auto& slot = acc[occ.total()];
    for (const auto& [k, v] : t.entries()) slot[k] += amp * v;
    capacity = std::max(capacity, occ.total());
  }
  FockState::ComponentMap comps;
  for (auto& [n, entries] : acc)
    comps.emplace(n, NTensor(n, dim, natural_symmetry(stats), std::move(entries)));
  return FockState(dim, stats, std::move(comps), capacity);
}

/// Tensor product of Fock spaces: modes of `b` are appended after the modes
/// of `a` and occupation amplitudes multiply.
inline FockState fock_product(const FockState& a, const FockState& b) {
  if (a.statistics() != b.statistics())
    throw IncompatibleStates("fock_product requires equal statistics");
  const auto amps_a = occupation_amplitudes(a);
  const auto amps_b = occupation_amplitudes(b);
  const int dim = a.dim() + b.dim();
  std::map<Occupation, Complex> amps;
  for (const auto& [oa, va] : amps_a)
    for (const auto& [ob, vb] : amps_b) {
      Occupation occ{oa.counts};
      occ.counts.insert(occ.counts.end(), ob.counts.begin(), ob.counts.end());
      amps.emplace(std::move(occ), va * vb);
    }
  return from_occupation_amplitudes(dim, a.statistics(), amps, a.capacity() + b.capacity());
}

}  // namespace fockpart
