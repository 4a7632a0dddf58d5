// Copyright 2026 The fockpart Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "fockpart/classify.hpp"
#include "fockpart/fock_state.hpp"
#include "fockpart/tensor_algebra.hpp"

namespace fockpart {

using GalleryParams = std::map<std::string, std::string>;

/// A catalog entry: the constructed parameters (defaults filled in) and the
/// expected status of every applicable verdict slot.
struct GallerySpec {
  std::string name;
  GalleryParams params;
  Statistics stats = Statistics::Distinguishable;
  std::map<std::string, Status> expected;
};

namespace detail {

inline double param_double(const GalleryParams& p, const std::string& key, double dflt) {
  auto it = p.find(key);
  if (it == p.end()) return dflt;
  std::size_t pos = 0;
  double v = 0;
  try {
    v = std::stod(it->second, &pos);
  } catch (const std::exception&) {
    throw InvalidParameter("parameter '" + key + "' is not a number: " + it->second);
  }
  if (pos != it->second.size())
    throw InvalidParameter("parameter '" + key + "' is not a number: " + it->second);
  return v;
}

inline int param_int(const GalleryParams& p, const std::string& key, int dflt) {
  const double v = param_double(p, key, static_cast<double>(dflt));
  const int i = static_cast<int>(v);
  if (static_cast<double>(i) != v)
    throw InvalidParameter("parameter '" + key + "' must be an integer");
  return i;
}

inline Statistics param_stats(const GalleryParams& p, const std::string& key, Statistics dflt) {
  auto it = p.find(key);
  if (it == p.end()) return dflt;
  const std::string& s = it->second;
  if (s == "distinguishable" || s == "dist") return Statistics::Distinguishable;
  if (s == "boson") return Statistics::Boson;
  if (s == "fermion") return Statistics::Fermion;
  throw InvalidParameter("unknown statistics: " + s);
}

inline void reject_unknown(const GalleryParams& p, std::initializer_list<const char*> known,
                           const std::string& name) {
  for (const auto& [k, v] : p) {
    bool ok = false;
    for (const char* w : known)
      if (k == w) ok = true;
    if (!ok) throw InvalidParameter("unknown parameter '" + k + "' for gallery state " + name);
  }
}

inline Complex checked_lambda(double lam) {
  if (!(std::abs(lam) > 0.0 && std::abs(lam) < 1.0))
    throw InvalidParameter("lambda must satisfy 0 < |lambda| < 1");
  return Complex(lam, 0.0);
}

inline std::string fmt_double(double v) {
  // short, locale-independent echo for parameter maps
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

}  // namespace detail

/// Two-mode squeezed-vacuum-like state: sum of lambda^n |n,n> up to nmax.
inline FockState tmsv_state(Complex lambda, int nmax) {
  std::vector<std::pair<Complex, FockState>> terms;
  Complex c(1.0, 0.0);
  for (int n = 0; n <= nmax; ++n) {
    terms.emplace_back(c, occupation_state(Occupation{{n, n}}, Statistics::Distinguishable));
    c *= lambda;
  }
  return superpose(terms);
}

/// Two-fold mode product of Phi = sum lambda^n |n>: occupation amplitudes
/// lambda^(n+m) for per-mode occupancies up to nmax each.
inline FockState phi_product_state(Complex lambda, int nmax) {
  std::map<Occupation, Complex> amps;
  for (int n = 0; n <= nmax; ++n)
    for (int m = 0; m <= nmax; ++m)
      amps[Occupation{{n, m}}] = std::pow(lambda, n) * std::pow(lambda, m);
  return from_occupation_amplitudes(2, Statistics::Distinguishable, amps);
}

/// NOON-like superposition: sum of lambda^N (|N,0> + |0,N>) up to nmax.
inline FockState noon_ghz_state(Complex lambda, int nmax) {
  std::map<Occupation, Complex> amps;
  for (int n = 0; n <= nmax; ++n) {
    amps[Occupation{{n, 0}}] += std::pow(lambda, n);
    amps[Occupation{{0, n}}] += std::pow(lambda, n);
  }
  return from_occupation_amplitudes(2, Statistics::Distinguishable, amps);
}

/// The two-boson state N(|0>(x)|1> + |1>(x)|0> + |2>(x)|2>) embedded at
/// grade two of a three-mode Fock space.
inline FockState chi_two_boson_state() {
  const double r = 1.0 / std::sqrt(3.0);
  NTensor::EntryMap canon;
  canon[IndexTuple{0, 1}] = Complex(r, 0.0);
  canon[IndexTuple{2, 2}] = Complex(r, 0.0);
  FockState::ComponentMap comps;
  comps.emplace(2, NTensor::make_symmetric(2, 3, canon));
  return FockState(3, Statistics::Boson, std::move(comps));
}

/// Generalized GHZ/W fermion state over L blocks of M modes each.
inline FockState fermion_ghz_w_state(int big_l, int big_m) {
  if (big_l < 1 || big_m < 1) throw InvalidParameter("L and M must be at least 1");
  const int dim = big_l * big_m;
  std::vector<std::pair<Complex, FockState>> terms;
  const double c = 1.0 / std::sqrt(static_cast<double>(big_l));
  for (int l = 0; l < big_l; ++l) {
    std::vector<int> counts(static_cast<std::size_t>(dim), 0);
    for (int m = 0; m < big_m; ++m) counts[static_cast<std::size_t>(l * big_m + m)] = 1;
    terms.emplace_back(Complex(c, 0.0), occupation_state(Occupation{counts}, Statistics::Fermion));
  }
  return superpose(terms);
}

/// N (|0>+|1>) wedge (|2>+|3>): a single Slater pair over four modes.
inline FockState fermion_bell_product_state() {
  const SingleParticleVec a = single_part({Complex(1, 0), Complex(1, 0), {}, {}});
  const SingleParticleVec b = single_part({{}, {}, Complex(1, 0), Complex(1, 0)});
  NTensor t = wedge_all({a, b});
  t = t.scaled(Complex(1.0 / t.norm(), 0.0));
  FockState::ComponentMap comps;
  comps.emplace(2, std::move(t));
  return FockState(4, Statistics::Fermion, std::move(comps));
}

/// k-fold Fock-space product of the single-mode state |0>_F + |1>_F.
inline FockState plus_state_power(Statistics stats, int k) {
  std::map<Occupation, Complex> amps;
  amps[Occupation{{0}}] = Complex(1.0, 0.0);
  amps[Occupation{{1}}] = Complex(1.0, 0.0);
  FockState plus = from_occupation_amplitudes(1, stats, amps);
  FockState acc = plus;
  for (int i = 1; i < k; ++i) acc = fock_product(acc, plus);
  return acc.normalized();
}

/// Builds a catalog state and its expected classification.
inline std::pair<FockState, GallerySpec> gallery_state(const std::string& name,
                                                       const GalleryParams& params = {}) {
  GallerySpec spec;
  spec.name = name;

  if (name == "fock_basis") {
    detail::reject_unknown(params, {"n0", "n1", "stats"}, name);
    const int n0 = detail::param_int(params, "n0", 2);
    const int n1 = detail::param_int(params, "n1", 1);
    if (n0 < 0 || n1 < 0) throw InvalidParameter("occupations must be nonnegative");
    const Statistics stats = detail::param_stats(params, "stats", Statistics::Distinguishable);
    spec.stats = stats;
    spec.params = {{"n0", std::to_string(n0)},
                   {"n1", std::to_string(n1)},
                   {"stats", to_string(stats)}};
    spec.expected["field"] = Status::Factorizable;
    switch (stats) {
      case Statistics::Distinguishable:
        spec.expected["particle_dist"] = Status::Factorizable;
        break;
      case Statistics::Boson:
        spec.expected["particle_indist_boson"] = Status::Factorizable;
        spec.expected["particle_identical_boson"] =
            (n0 == 0 || n1 == 0 || n0 + n1 <= 1) ? Status::Factorizable : Status::Entangled;
        break;
      case Statistics::Fermion:
        spec.expected["particle_fermion"] = Status::Factorizable;
        break;
    }
    return {occupation_state(Occupation{{n0, n1}}, stats), spec};
  }

  if (name == "tmsv") {
    detail::reject_unknown(params, {"lambda", "nmax"}, name);
    const double lam = detail::param_double(params, "lambda", 0.5);
    const int nmax = detail::param_int(params, "nmax", kDefaultNmax);
    if (nmax < 1) throw InvalidParameter("nmax must be at least 1");
    spec.stats = Statistics::Distinguishable;
    spec.params = {{"lambda", detail::fmt_double(lam)}, {"nmax", std::to_string(nmax)}};
    spec.expected["field"] = Status::Entangled;
    spec.expected["particle_dist"] = Status::Factorizable;
    return {tmsv_state(detail::checked_lambda(lam), nmax), spec};
  }

  if (name == "phi_product") {
    detail::reject_unknown(params, {"lambda", "nmax"}, name);
    const double lam = detail::param_double(params, "lambda", 0.5);
    const int nmax = detail::param_int(params, "nmax", 5);
    if (nmax < 2) throw InvalidParameter("nmax must be at least 2");
    spec.stats = Statistics::Distinguishable;
    spec.params = {{"lambda", detail::fmt_double(lam)}, {"nmax", std::to_string(nmax)}};
    spec.expected["field"] = Status::Factorizable;
    spec.expected["particle_dist"] = Status::Entangled;
    return {phi_product_state(detail::checked_lambda(lam), nmax), spec};
  }

  if (name == "noon_ghz") {
    detail::reject_unknown(params, {"lambda", "nmax"}, name);
    const double lam = detail::param_double(params, "lambda", 0.5);
    const int nmax = detail::param_int(params, "nmax", 5);
    if (nmax < 2) throw InvalidParameter("nmax must be at least 2");
    spec.stats = Statistics::Distinguishable;
    spec.params = {{"lambda", detail::fmt_double(lam)}, {"nmax", std::to_string(nmax)}};
    spec.expected["field"] = Status::Entangled;
    spec.expected["particle_dist"] = Status::Entangled;
    return {noon_ghz_state(detail::checked_lambda(lam), nmax), spec};
  }

  if (name == "boson_psi_prime") {
    detail::reject_unknown(params, {}, name);
    spec.stats = Statistics::Boson;
    spec.expected["field"] = Status::Entangled;
    spec.expected["particle_indist_boson"] = Status::Factorizable;
    spec.expected["particle_identical_boson"] = Status::Factorizable;
    FockState s = superpose(
        {{Complex(1, 0), occupation_state(Occupation{{2, 0}}, Statistics::Boson)},
         {Complex(3, 0), occupation_state(Occupation{{0, 3}}, Statistics::Boson)}});
    return {s.scaled(Complex(1.0 / std::sqrt(10.0), 0.0)), spec};
  }

  if (name == "boson_psi") {
    detail::reject_unknown(params, {}, name);
    spec.stats = Statistics::Boson;
    spec.expected["field"] = Status::Entangled;
    spec.expected["particle_indist_boson"] = Status::Factorizable;
    spec.expected["particle_identical_boson"] = Status::Entangled;
    FockState s = superpose(
        {{Complex(1, 0), occupation_state(Occupation{{1, 1}}, Statistics::Boson)},
         {Complex(3.0 * std::sqrt(2.0), 0), occupation_state(Occupation{{0, 3}}, Statistics::Boson)}});
    return {s.scaled(Complex(1.0 / std::sqrt(19.0), 0.0)), spec};
  }

  if (name == "boson_plus_cubed") {
    detail::reject_unknown(params, {}, name);
    spec.stats = Statistics::Boson;
    spec.expected["field"] = Status::Factorizable;
    spec.expected["particle_indist_boson"] = Status::Entangled;
    spec.expected["particle_identical_boson"] = Status::Entangled;
    return {plus_state_power(Statistics::Boson, 3), spec};
  }

  if (name == "chi_two_boson") {
    detail::reject_unknown(params, {}, name);
    spec.stats = Statistics::Boson;
    spec.expected["field"] = Status::Entangled;
    spec.expected["particle_indist_boson"] = Status::Entangled;
    spec.expected["particle_identical_boson"] = Status::Entangled;
    return {chi_two_boson_state(), spec};
  }

  if (name == "x_state") {
    detail::reject_unknown(params, {}, name);
    spec.stats = Statistics::Boson;
    spec.expected["field"] = Status::Entangled;
    spec.expected["particle_indist_boson"] = Status::Entangled;
    spec.expected["particle_identical_boson"] = Status::Entangled;
    FockState s = superpose(
        {{Complex(std::sqrt(2.0), 0), occupation_state(Occupation{{1, 1, 0}}, Statistics::Boson)},
         {Complex(1, 0), occupation_state(Occupation{{0, 0, 2}}, Statistics::Boson)}});
    return {s.scaled(Complex(1.0 / std::sqrt(3.0), 0.0)), spec};
  }

  if (name == "fermion_ghz_w") {
    detail::reject_unknown(params, {"L", "M"}, name);
    const int big_l = detail::param_int(params, "L", 2);
    const int big_m = detail::param_int(params, "M", 2);
    if (big_l < 1 || big_m < 1) throw InvalidParameter("L and M must be at least 1");
    spec.stats = Statistics::Fermion;
    spec.params = {{"L", std::to_string(big_l)}, {"M", std::to_string(big_m)}};
    spec.expected["field"] = big_l >= 2 ? Status::Entangled : Status::Factorizable;
    spec.expected["particle_fermion"] =
        (big_l >= 2 && big_m >= 2) ? Status::Entangled : Status::Factorizable;
    return {fermion_ghz_w_state(big_l, big_m), spec};
  }

  if (name == "fermion_bell_product") {
    detail::reject_unknown(params, {}, name);
    spec.stats = Statistics::Fermion;
    spec.expected["field"] = Status::Entangled;
    spec.expected["particle_fermion"] = Status::Factorizable;
    return {fermion_bell_product_state(), spec};
  }

  if (name == "fermion_plus_fourth") {
    detail::reject_unknown(params, {}, name);
    spec.stats = Statistics::Fermion;
    spec.expected["field"] = Status::Factorizable;
    spec.expected["particle_fermion"] = Status::Entangled;
    return {plus_state_power(Statistics::Fermion, 4), spec};
  }

  throw UnknownGalleryState("unknown gallery state: " + name);
}

inline const std::vector<std::string>& gallery_names() {
  static const std::vector<std::string> names = {
      "fock_basis",      "tmsv",           "phi_product",
      "noon_ghz",        "boson_psi_prime", "boson_psi",
      "boson_plus_cubed", "chi_two_boson",  "x_state",
      "fermion_ghz_w",   "fermion_bell_product", "fermion_plus_fourth"};
  return names;
}

/// The fixed instantiation list behind `--gallery all`, in catalog order.
/// fock_basis appears once per statistics flavor so the run covers the
/// whole quadrant table.
inline std::vector<std::pair<std::string, GalleryParams>> gallery_default_runs() {
  return {
      {"fock_basis", {{"n0", "2"}, {"n1", "1"}, {"stats", "distinguishable"}}},
      {"fock_basis", {{"n0", "2"}, {"n1", "0"}, {"stats", "boson"}}},
      {"fock_basis", {{"n0", "1"}, {"n1", "1"}, {"stats", "boson"}}},
      {"fock_basis", {{"n0", "1"}, {"n1", "1"}, {"stats", "fermion"}}},
      {"tmsv", {}},
      {"phi_product", {}},
      {"noon_ghz", {}},
      {"boson_psi_prime", {}},
      {"boson_psi", {}},
      {"boson_plus_cubed", {}},
      {"chi_two_boson", {}},
      {"x_state", {}},
      {"fermion_ghz_w", {}},
      {"fermion_bell_product", {}},
      {"fermion_plus_fourth", {}},
  };
}

}  // namespace fockpart
