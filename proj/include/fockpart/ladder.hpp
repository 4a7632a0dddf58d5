// Copyright 2026 The fockpart Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <functional>
#include <set>
#include <utility>
#include <vector>

#include "fockpart/fock_state.hpp"
#include "fockpart/tensor_algebra.hpp"

namespace fockpart {

namespace detail {

/// Insertion sum of phi into every slot of a symmetric tensor, evaluated on
/// canonical keys, then rescaled by 1/sqrt(n+1). On the orthonormal
/// occupation basis this acts as the usual sqrt(n_j + 1) mode creator.
inline NTensor boson_create_component(const SingleParticleVec& phi, const NTensor& t) {
  const int n = t.order();
  std::vector<int> support;
  for (int j = 0; j < phi.dim(); ++j)
    if (std::abs(phi[j]) >= kZeroPrune) support.push_back(j);

  std::set<IndexTuple> out_keys;
  for (const auto& [k, v] : t.entries()) {
    if (!std::is_sorted(k.begin(), k.end())) continue;
    for (int j : support) {
      IndexTuple merged(k);
      merged.insert(std::upper_bound(merged.begin(), merged.end(), j), j);
      out_keys.insert(std::move(merged));
    }
  }
  const double rescale = 1.0 / std::sqrt(static_cast<double>(n + 1));
  NTensor::EntryMap canon;
  for (const auto& key : out_keys) {
    Complex val(0.0, 0.0);
    for (int p = 0; p <= n; ++p) {
      int mult = 1;
      while (p + mult <= n && key[p + mult] == key[p]) ++mult;
      IndexTuple rest(key);
      rest.erase(rest.begin() + p);
      val += static_cast<double>(mult) * phi[key[p]] * t.at(rest);
      p += mult - 1;
    }
    canon.emplace(key, rescale * val);
  }
  return NTensor::make_symmetric(n + 1, t.dim(), canon);
}

/// Signed insertion sum for fermions with the same 1/sqrt(n+1) rescale; on
/// the occupation basis this is the exact isometric shift with the usual
/// ordering sign.
inline NTensor fermion_create_component(const SingleParticleVec& phi, const NTensor& t) {
  const int n = t.order();
  std::vector<int> support;
  for (int j = 0; j < phi.dim(); ++j)
    if (std::abs(phi[j]) >= kZeroPrune) support.push_back(j);

  std::set<IndexTuple> out_keys;
  for (const auto& [k, v] : t.entries()) {
    if (!std::is_sorted(k.begin(), k.end())) continue;
    for (int j : support) {
      if (std::binary_search(k.begin(), k.end(), j)) continue;  // would repeat
      IndexTuple merged(k);
      merged.insert(std::upper_bound(merged.begin(), merged.end(), j), j);
      out_keys.insert(std::move(merged));
    }
  }
  const double rescale = 1.0 / std::sqrt(static_cast<double>(n + 1));
  NTensor::EntryMap canon;
  for (const auto& key : out_keys) {
    Complex val(0.0, 0.0);
    double sign = 1.0;
    for (int p = 0; p <= n; ++p) {
      IndexTuple rest(key);
      rest.erase(rest.begin() + p);
      val += sign * phi[key[p]] * t.at(rest);
      sign = -sign;
    }
    canon.emplace(key, rescale * val);
  }
  return NTensor::make_antisymmetric(n + 1, t.dim(), canon);
}

}  // namespace detail

/// Adds one particle in the state phi: each n-particle component moves to
/// n+1 as phi (x) psi for distinguishable statistics, or the (anti)symmetric
/// insertion sum rescaled by 1/sqrt(n+1) for bosons and fermions.
inline FockState create(const SingleParticleVec& phi, const FockState& state) {
  if (phi.dim() != state.dim()) throw IncompatibleStates("mode counts differ in create");
  const int t = state.top();
  if (t >= 0 && t + 1 > state.capacity())
    throw TruncationExceeded("create would exceed the truncation bound " +
                             std::to_string(state.capacity()));
  FockState::ComponentMap out;
  const NTensor phi_t = NTensor::from_vector(phi);
  for (const auto& [n, comp] : state.components()) {
    NTensor next(0, state.dim());
    switch (state.statistics()) {
      case Statistics::Distinguishable:
        next = otimes(phi_t, comp);
        break;
      case Statistics::Boson:
        next = detail::boson_create_component(phi, comp);
        break;
      case Statistics::Fermion:
        next = detail::fermion_create_component(phi, comp);
        break;
    }
    if (!next.is_zero()) out.emplace(n + 1, std::move(next));
  }
  return FockState(state.dim(), state.statistics(), std::move(out), state.capacity());
}

/// The adjoint of create: the first slot is contracted against conj(phi),
/// scaled by sqrt(n) on the n-particle component for bosons and fermions.
/// Annihilating the vacuum gives the zero state.
inline FockState annihilate(const SingleParticleVec& phi, const FockState& state) {
  if (phi.dim() != state.dim()) throw IncompatibleStates("mode counts differ in annihilate");
  std::vector<int> support;
  for (int j = 0; j < phi.dim(); ++j)
    if (std::abs(phi[j]) >= kZeroPrune) support.push_back(j);

  FockState::ComponentMap out;
  for (const auto& [m, comp] : state.components()) {
    if (m == 0) continue;
    const int n = m - 1;
    const bool graded = state.statistics() != Statistics::Distinguishable;
    const double factor = graded ? std::sqrt(static_cast<double>(m)) : 1.0;
    if (state.statistics() == Statistics::Distinguishable) {
      NTensor::EntryMap entries;
      for (const auto& [k, v] : comp.entries()) {
        const Complex w = std::conj(phi[k[0]]) * v;
        if (std::abs(w) < kZeroPrune) continue;
        entries[IndexTuple(k.begin() + 1, k.end())] += w;
      }
      NTensor res(n, state.dim(), Symmetry::None, std::move(entries));
      if (!res.is_zero()) out.emplace(n, std::move(res));
    } else {
      std::set<IndexTuple> rest_keys;
      for (const auto& [k, v] : comp.entries()) {
        if (!std::is_sorted(k.begin(), k.end())) continue;
        for (std::size_t p = 0; p < k.size(); ++p) {
          if (p > 0 && k[p] == k[p - 1]) continue;
          if (!std::binary_search(support.begin(), support.end(), k[p])) continue;
          IndexTuple rest(k);
          rest.erase(rest.begin() + static_cast<long>(p));
          rest_keys.insert(std::move(rest));
        }
      }
      NTensor::EntryMap canon;
      for (const auto& rest : rest_keys) {
        Complex val(0.0, 0.0);
        for (int j : support) {
          IndexTuple full;
          full.reserve(rest.size() + 1);
          full.push_back(j);
          full.insert(full.end(), rest.begin(), rest.end());
          val += std::conj(phi[j]) * comp.at(full);
        }
        canon.emplace(rest, factor * val);
      }
      NTensor res = state.statistics() == Statistics::Boson
                        ? NTensor::make_symmetric(n, state.dim(), canon)
                        : NTensor::make_antisymmetric(n, state.dim(), canon);
      if (!res.is_zero()) out.emplace(n, std::move(res));
    }
  }
  return FockState(state.dim(), state.statistics(), std::move(out), state.capacity());
}

/// Builds the occupation basis state operationally through iterated create;
/// proportional to occupation_state(occ) by construction.
inline FockState mode_monomial(const Occupation& occ, Statistics stats,
                               int capacity = kDefaultNmax) {
  detail::validate_occupation(occ, stats);
  FockState state = FockState::vacuum(occ.dim(), stats, std::max(capacity, occ.total()));
  for (int j = occ.dim() - 1; j >= 0; --j)
    for (int c = 0; c < occ.counts[j]; ++c)
      state = create(SingleParticleVec::basis(j, occ.dim()), state);
  return state;
}

/// Truncated series over excitations of one mode: the n-particle component
/// is coeffs[n] * phi^{(x)n} (which is parallel to phi^{v n} for bosons).
inline FockState mode_series(const SingleParticleVec& phi, const std::vector<Complex>& coeffs,
                             int nmax, Statistics stats) {
  if (phi.is_zero()) throw ZeroState("mode_series needs a nonzero mode vector");
  if (nmax < 0) throw InvalidParameter("nmax must be nonnegative");
  const int n_top = std::min<int>(nmax, static_cast<int>(coeffs.size()) - 1);
  std::vector<int> support;
  for (int j = 0; j < phi.dim(); ++j)
    if (std::abs(phi[j]) >= kZeroPrune) support.push_back(j);

  FockState::ComponentMap comps;
  for (int n = 0; n <= n_top; ++n) {
    const Complex c = coeffs[static_cast<std::size_t>(n)];
    if (std::abs(c) < kZeroPrune) continue;
    if (stats == Statistics::Fermion && n > 1)
      throw PauliViolation("fermionic series cannot excite one mode more than once");
    if (n == 0) {
      comps.emplace(0, NTensor::scalar(c, phi.dim(), natural_symmetry(stats)));
      continue;
    }
    if (stats == Statistics::Distinguishable) {
      NTensor acc = NTensor::from_vector(phi).scaled(c);
      for (int k = 1; k < n; ++k) acc = otimes(acc, NTensor::from_vector(phi));
      comps.emplace(n, std::move(acc));
      continue;
    }
    // Exactly symmetric construction: one value per multiset of support
    // indices, replicated over arrangements.
    NTensor::EntryMap canon;
    IndexTuple key(static_cast<std::size_t>(n), 0);
    const std::function<void(int, int, Complex)> rec = [&](int pos, int min_sup, Complex acc) {
      if (pos == n) {
        canon[key] = c * acc;
        return;
      }
      for (std::size_t si = static_cast<std::size_t>(min_sup); si < support.size(); ++si) {
        key[static_cast<std::size_t>(pos)] = support[si];
        rec(pos + 1, static_cast<int>(si), acc * phi[support[si]]);
      }
    };
    rec(0, 0, Complex(1.0, 0.0));
    comps.emplace(n, NTensor::make_symmetric(n, phi.dim(), canon));
  }
  return FockState(phi.dim(), stats, std::move(comps), nmax);
}

}  // namespace fockpart
