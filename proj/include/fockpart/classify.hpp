// Copyright 2026 The fockpart Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "fockpart/decomp.hpp"
#include "fockpart/fock_state.hpp"
#include "fockpart/tensor_algebra.hpp"

namespace fockpart {

enum class Status { Factorizable, Entangled, Indeterminate, NotApplicable };

inline const char* to_string(Status s) {
  switch (s) {
    case Status::Factorizable: return "factorizable";
    case Status::Entangled: return "entangled";
    case Status::Indeterminate: return "indeterminate";
    case Status::NotApplicable: return "not_applicable";
  }
  return "?";
}

struct ClassifyConfig {
  RankPolicy rank;
  FitConfig fit;
  double fit_accept = kFitAccept;
  double fit_reject = kFitReject;
  double rdm_tol = 1e-8;
  long fit_dense_cap = 200000;
};

/// Evidence behind a verdict: the first certificate that decided it.
struct Certificate {
  std::string kind;  // "schmidt" | "takagi" | "slater" | "fit" | "rdm"
  int component = -1;
  int mode = -1;
  int rank = -1;
  double residual = -1.0;
};

struct Verdict {
  Status status = Status::NotApplicable;
  bool marginal = false;
  std::vector<int> mode_ranks;  // field verdict only: per-mode cut ranks
  std::optional<Certificate> witness;
};

/// Per-grade detail collected while deciding the particle verdicts.
struct ComponentReport {
  int n = 0;
  std::vector<int> slot_ranks;
  int takagi_rank = -1;
  int slater_rank = -1;
  double fit_residual = -1.0;
  std::vector<double> rdm_eigenvalues;
  Status dist = Status::NotApplicable;
  Status indist = Status::NotApplicable;
  Status identical = Status::NotApplicable;
  Status fermion = Status::NotApplicable;
  bool marginal = false;
};

struct Report {
  Statistics stats = Statistics::Distinguishable;
  int dim = 0;
  int nmax = 0;
  Verdict field;
  Verdict particle_dist;
  Verdict particle_indist_boson;
  Verdict particle_identical_boson;
  Verdict particle_fermion;
  std::vector<ComponentReport> per_component;
};

namespace detail {

inline ComponentReport& component_slot(std::vector<ComponentReport>& comps, int n) {
  for (auto& c : comps)
    if (c.n == n) return c;
  comps.push_back(ComponentReport{});
  comps.back().n = n;
  return comps.back();
}

/// Folds per-component statuses: any Entangled wins, then any Indeterminate,
/// otherwise Factorizable.
inline Status fold_status(Status acc, Status next) {
  if (acc == Status::Entangled || next == Status::Entangled) return Status::Entangled;
  if (acc == Status::Indeterminate || next == Status::Indeterminate)
    return Status::Indeterminate;
  return Status::Factorizable;
}

/// Schmidt ranks of all single-slot cuts of an n-particle tensor (n >= 2).
inline std::vector<int> slot_cut_ranks(const NTensor& t, const RankPolicy& pol,
                                       bool* marginal) {
  std::vector<int> ranks;
  for (int slot = 0; slot < t.order(); ++slot) {
    const Decomposition d = schmidt(flatten(t, {slot}).matrix, pol);
    ranks.push_back(d.rank);
    if (marginal && d.marginal) *marginal = true;
  }
  return ranks;
}

}  // namespace detail

/// Field (mode) factorizability: for every mode, the occupation-amplitude
/// tensor flattened as that mode against all others must have numerical
/// Schmidt rank one. Distinguishable states must be canonically mode
/// ordered.
inline Verdict field_factorizable(const FockState& state, const ClassifyConfig& cfg = {}) {
  const auto amps = occupation_amplitudes(state);  // may throw NotModeOrdered
  if (amps.empty()) throw ZeroState("cannot classify a zero state");
  Verdict v;
  v.status = Status::Factorizable;
  for (int mode = 0; mode < state.dim(); ++mode) {
    int max_occ = 0;
    std::map<std::vector<int>, int> rest_index;
    for (const auto& [occ, amp] : amps) {
      max_occ = std::max(max_occ, occ.counts[mode]);
      std::vector<int> rest(occ.counts);
      rest.erase(rest.begin() + mode);
      rest_index.emplace(std::move(rest), 0);
    }
    int col = 0;
    for (auto& [rest, idx] : rest_index) idx = col++;
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(max_occ + 1, col);
    for (const auto& [occ, amp] : amps) {
      std::vector<int> rest(occ.counts);
      rest.erase(rest.begin() + mode);
      m(occ.counts[mode], rest_index.at(rest)) = amp;
    }
    const Decomposition d = schmidt(m, cfg.rank);
    v.mode_ranks.push_back(d.rank);
    v.marginal = v.marginal || d.marginal;
    if (d.rank > 1 && v.status != Status::Entangled) {
      v.status = Status::Entangled;
      Certificate c;
      c.kind = "schmidt";
      c.mode = mode;
      c.rank = d.rank;
      v.witness = c;
    }
  }
  return v;
}

/// Particle factorizability for distinguishable statistics: every nonzero
/// n >= 2 component must have all single-slot cuts of Schmidt rank one.
inline Verdict particle_factorizable_dist(const FockState& state, const ClassifyConfig& cfg = {},
                                          std::vector<ComponentReport>* comps = nullptr) {
  Verdict v;
  if (state.statistics() != Statistics::Distinguishable) return v;
  if (state.is_zero()) throw ZeroState("cannot classify a zero state");
  v.status = Status::Factorizable;
  for (const auto& [n, t] : state.components()) {
    if (t.is_zero()) continue;
    Status cs = Status::Factorizable;
    bool cmarg = false;
    std::vector<int> ranks;
    if (n >= 2) {
      ranks = detail::slot_cut_ranks(t, cfg.rank, &cmarg);
      for (std::size_t k = 0; k < ranks.size(); ++k) {
        if (ranks[k] > 1) {
          cs = Status::Entangled;
          if (!v.witness) {
            Certificate c;
            c.kind = "schmidt";
            c.component = n;
            c.mode = static_cast<int>(k);
            c.rank = ranks[k];
            v.witness = c;
          }
          break;
        }
      }
    }
    if (comps) {
      auto& cr = detail::component_slot(*comps, n);
      cr.slot_ranks = ranks;
      cr.dist = cs;
      cr.marginal = cr.marginal || cmarg;
    }
    v.marginal = v.marginal || cmarg;
    v.status = detail::fold_status(v.status, cs);
  }
  return v;
}

/// Bosonic factorizability with possibly distinct factors: two-particle
/// components decide by Takagi rank <= 2 (exact), higher grades by a
/// symmetric rank-one fit (semidecision).
inline Verdict boson_factorizable_indist(const FockState& state, const ClassifyConfig& cfg = {},
                                         std::vector<ComponentReport>* comps = nullptr) {
  Verdict v;
  if (state.statistics() != Statistics::Boson) return v;
  if (state.is_zero()) throw ZeroState("cannot classify a zero state");
  v.status = Status::Factorizable;
  for (const auto& [n, t] : state.components()) {
    if (t.is_zero() || n <= 1) continue;
    Status cs = Status::Factorizable;
    bool cmarg = false;
    ComponentReport* cr = comps ? &detail::component_slot(*comps, n) : nullptr;
    if (n == 2) {
      const Decomposition d = takagi(matrix_of(t), cfg.rank);
      cmarg = d.marginal;
      if (cr) cr->takagi_rank = d.rank;
      if (d.rank > 2) {
        cs = Status::Entangled;
        if (!v.witness) {
          Certificate c;
          c.kind = "takagi";
          c.component = n;
          c.rank = d.rank;
          v.witness = c;
        }
      }
    } else {
      double residual = -1.0;
      if (detail::dense_size(t.dim(), n) > cfg.fit_dense_cap) {
        cs = Status::Indeterminate;
      } else {
        residual = rank_one_fit(t, cfg.fit).residual;
        if (residual < cfg.fit_accept) {
          cs = Status::Factorizable;
        } else if (residual >= cfg.fit_reject) {
          cs = Status::Entangled;
          if (!v.witness) {
            Certificate c;
            c.kind = "fit";
            c.component = n;
            c.residual = residual;
            v.witness = c;
          }
        } else {
          cs = Status::Indeterminate;
        }
      }
      if (cr) cr->fit_residual = residual;
    }
    if (cr) {
      cr->indist = cs;
      cr->marginal = cr->marginal || cmarg;
    }
    v.marginal = v.marginal || cmarg;
    v.status = detail::fold_status(v.status, cs);
  }
  return v;
}

/// Bosonic factorizability with all factors equal: Takagi rank one at n = 2;
/// for n >= 3 a symmetric tensor is an identical product exactly when every
/// single-slot cut has rank one.
inline Verdict boson_factorizable_identical(const FockState& state,
                                            const ClassifyConfig& cfg = {},
                                            std::vector<ComponentReport>* comps = nullptr) {
  Verdict v;
  if (state.statistics() != Statistics::Boson) return v;
  if (state.is_zero()) throw ZeroState("cannot classify a zero state");
  v.status = Status::Factorizable;
  for (const auto& [n, t] : state.components()) {
    if (t.is_zero() || n <= 1) continue;
    Status cs = Status::Factorizable;
    bool cmarg = false;
    ComponentReport* cr = comps ? &detail::component_slot(*comps, n) : nullptr;
    if (n == 2) {
      const Decomposition d = takagi(matrix_of(t), cfg.rank);
      cmarg = d.marginal;
      if (cr) cr->takagi_rank = d.rank;
      if (d.rank > 1) {
        cs = Status::Entangled;
        if (!v.witness) {
          Certificate c;
          c.kind = "takagi";
          c.component = n;
          c.rank = d.rank;
          v.witness = c;
        }
      }
    } else {
      std::vector<int> ranks = detail::slot_cut_ranks(t, cfg.rank, &cmarg);
      if (cr && cr->slot_ranks.empty()) cr->slot_ranks = ranks;
      for (std::size_t k = 0; k < ranks.size(); ++k) {
        if (ranks[k] > 1) {
          cs = Status::Entangled;
          if (!v.witness) {
            Certificate c;
            c.kind = "schmidt";
            c.component = n;
            c.mode = static_cast<int>(k);
            c.rank = ranks[k];
            v.witness = c;
          }
          break;
        }
      }
    }
    if (cr) {
      cr->identical = cs;
      cr->marginal = cr->marginal || cmarg;
    }
    v.marginal = v.marginal || cmarg;
    v.status = detail::fold_status(v.status, cs);
  }
  return v;
}

/// Fermionic factorizability under the wedge product: Slater rank one at
/// n = 2; for n >= 3 the state is a single Slater determinant exactly when
/// the one-particle reduced density matrix has n eigenvalues equal to 1/n.
inline Verdict fermion_factorizable(const FockState& state, const ClassifyConfig& cfg = {},
                                    std::vector<ComponentReport>* comps = nullptr) {
  Verdict v;
  if (state.statistics() != Statistics::Fermion) return v;
  if (state.is_zero()) throw ZeroState("cannot classify a zero state");
  v.status = Status::Factorizable;
  for (const auto& [n, t] : state.components()) {
    if (t.is_zero() || n <= 1) continue;
    Status cs = Status::Factorizable;
    bool cmarg = false;
    ComponentReport* cr = comps ? &detail::component_slot(*comps, n) : nullptr;
    if (n == 2) {
      const Decomposition d = slater(matrix_of(t), cfg.rank);
      cmarg = d.marginal;
      if (cr) cr->slater_rank = d.slater_rank;
      if (d.slater_rank > 1) {
        cs = Status::Entangled;
        if (!v.witness) {
          Certificate c;
          c.kind = "slater";
          c.component = n;
          c.rank = d.slater_rank;
          v.witness = c;
        }
      }
    } else {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(one_particle_rdm(t));
      std::vector<double> eig(es.eigenvalues().data(),
                              es.eigenvalues().data() + es.eigenvalues().size());
      std::sort(eig.begin(), eig.end(), std::greater<double>());
      if (cr) cr->rdm_eigenvalues = eig;
      int at_level = 0, elsewhere = 0;
      for (double l : eig) {
        if (std::abs(l - 1.0 / n) <= cfg.rdm_tol)
          ++at_level;
        else if (std::abs(l) > cfg.rdm_tol)
          ++elsewhere;
      }
      if (at_level != n || elsewhere != 0) {
        cs = Status::Entangled;
        if (!v.witness) {
          Certificate c;
          c.kind = "rdm";
          c.component = n;
          c.rank = at_level + elsewhere;
          v.witness = c;
        }
      }
    }
    if (cr) {
      cr->fermion = cs;
      cr->marginal = cr->marginal || cmarg;
    }
    v.marginal = v.marginal || cmarg;
    v.status = detail::fold_status(v.status, cs);
  }
  return v;
}

/// Full report: dispatches the field verdict plus every particle notion
/// applicable to the state's statistics, and enforces that identical-boson
/// factorizability implies indistinguishable-boson factorizability.
inline Report classify(const FockState& state, const ClassifyConfig& cfg = {}) {
  if (state.is_zero()) throw ZeroState("cannot classify a zero state");
  Report r;
  r.stats = state.statistics();
  r.dim = state.dim();
  r.nmax = state.capacity();
  r.field = field_factorizable(state, cfg);
  switch (state.statistics()) {
    case Statistics::Distinguishable:
      r.particle_dist = particle_factorizable_dist(state, cfg, &r.per_component);
      break;
    case Statistics::Boson:
      r.particle_indist_boson = boson_factorizable_indist(state, cfg, &r.per_component);
      r.particle_identical_boson = boson_factorizable_identical(state, cfg, &r.per_component);
      if (r.particle_identical_boson.status == Status::Factorizable &&
          r.particle_indist_boson.status != Status::Factorizable) {
        r.particle_indist_boson.status = Status::Factorizable;
        r.particle_indist_boson.witness.reset();
        for (auto& c : r.per_component)
          if (c.indist != Status::NotApplicable) c.indist = Status::Factorizable;
      }
      break;
    case Statistics::Fermion:
      r.particle_fermion = fermion_factorizable(state, cfg, &r.per_component);
      break;
  }
  std::sort(r.per_component.begin(), r.per_component.end(),
            [](const ComponentReport& a, const ComponentReport& b) { return a.n < b.n; });
  return r;
}

}  // namespace fockpart
