// Copyright 2026 The fockpart Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <utility>
#include <vector>

#include "fockpart/ntensor.hpp"
#include "fockpart/single_particle.hpp"

namespace fockpart {

enum class DecompKind { Schmidt, Takagi, Slater };

/// How numerical rank is read off a value sequence.
struct RankPolicy {
  double rel_tol = kRankRelTol;
  double abs_floor = kRankAbsFloor;
  double marginal_band = kMarginalBand;
};

/// Values plus factor matrices of a Schmidt/Takagi/Slater decomposition.
/// Schmidt stores U and V with M = U diag(values) V^dagger; Takagi stores a
/// single unitary with S = U diag(values) U^T; Slater stores the congruence
/// unitary with A = U J U^T where J is block diagonal with [[0, s], [-s, 0]]
/// blocks, and `values` lists every s twice.
struct Decomposition {
  DecompKind kind = DecompKind::Schmidt;
  std::vector<double> values;
  Eigen::MatrixXcd left;
  Eigen::MatrixXcd right;
  int rank = 0;
  int slater_rank = 0;
  double margin = 0.0;
  bool marginal = false;
};

namespace detail {

inline void apply_rank_policy(Decomposition& d, const RankPolicy& pol) {
  d.rank = 0;
  d.margin = 0.0;
  d.marginal = false;
  if (d.values.empty()) return;
  const double top = d.values.front();
  if (top < pol.abs_floor) {
    for (double v : d.values)
      if (v >= pol.abs_floor / pol.marginal_band) d.marginal = true;
    return;
  }
  const double cutoff = pol.rel_tol * top;
  for (double v : d.values) {
    if (v >= cutoff) ++d.rank;
    if (v >= cutoff / pol.marginal_band && v <= cutoff * pol.marginal_band) d.marginal = true;
  }
  const std::size_t r = static_cast<std::size_t>(d.rank);
  if (r > 0 && r < d.values.size() && d.values[r - 1] > 0.0)
    d.margin = d.values[r] / d.values[r - 1];
  if (d.kind == DecompKind::Slater) d.slater_rank = d.rank / 2;
}

/// Modified Gram-Schmidt pass followed by completion of any dropped or
/// missing columns from the standard basis.
inline void orthonormalize_columns(Eigen::MatrixXcd& u, long keep) {
  const long d = u.rows();
  for (long k = 0; k < keep; ++k) {
    for (long j = 0; j < k; ++j) u.col(k) -= u.col(j).dot(u.col(k)) * u.col(j);
    const double nrm = u.col(k).norm();
    if (nrm > 1e-8) {
      u.col(k) /= nrm;
    } else {
      u.col(k).setZero();  // refilled below
    }
  }
  long next_basis = 0;
  for (long k = 0; k < u.cols(); ++k) {
    bool ok = k < keep && std::abs(u.col(k).norm() - 1.0) < 1e-6;
    if (ok) continue;
    Eigen::VectorXcd cand;
    while (true) {
      cand = Eigen::VectorXcd::Zero(d);
      cand(next_basis % d) = Complex(1.0, 0.0);
      ++next_basis;
      for (long j = 0; j < u.cols(); ++j)
        if (j != k) cand -= u.col(j).dot(cand) * u.col(j);
      if (cand.norm() > 0.3) break;
    }
    // second pass for numerical cleanliness
    for (long j = 0; j < u.cols(); ++j)
      if (j != k) cand -= u.col(j).dot(cand) * u.col(j);
    u.col(k) = cand / cand.norm();
  }
}

}  // namespace detail

/// Singular value decomposition M = U diag(values) V^dagger.
inline Decomposition schmidt(const Eigen::MatrixXcd& m, const RankPolicy& pol = {}) {
  if (m.rows() == 0 || m.cols() == 0) throw InvalidDimension("schmidt of an empty matrix");
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  Decomposition d;
  d.kind = DecompKind::Schmidt;
  d.left = svd.matrixU();
  d.right = svd.matrixV();
  d.values.assign(svd.singularValues().data(),
                  svd.singularValues().data() + svd.singularValues().size());
  detail::apply_rank_policy(d, pol);
  return d;
}

/// Takagi factorization S = U diag(values) U^T of a complex symmetric
/// matrix, computed through the real symmetric embedding
/// [[Re S, Im S], [Im S, -Re S]], whose nonnegative eigenpairs yield the
/// Takagi vectors directly. The values equal the singular values of S.
inline Decomposition takagi(const Eigen::MatrixXcd& s_in, const RankPolicy& pol = {}) {
  if (s_in.rows() != s_in.cols()) throw SymmetryViolation("takagi needs a square matrix");
  const long d = s_in.rows();
  if (d == 0) throw InvalidDimension("takagi of an empty matrix");
  const double scale = s_in.norm();
  if ((s_in - s_in.transpose()).norm() > 1e-12 * std::max(scale, 1e-300))
    throw SymmetryViolation("takagi input is not complex symmetric");
  const Eigen::MatrixXcd s = 0.5 * (s_in + s_in.transpose());

  Eigen::MatrixXd b(2 * d, 2 * d);
  b.topLeftCorner(d, d) = s.real();
  b.topRightCorner(d, d) = s.imag();
  b.bottomLeftCorner(d, d) = s.imag();
  b.bottomRightCorner(d, d) = -s.real();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(b);
  if (es.info() != Eigen::Success) throw Error("takagi eigensolver failed");

  Decomposition out;
  out.kind = DecompKind::Takagi;
  out.left = Eigen::MatrixXcd(d, d);
  out.values.resize(static_cast<std::size_t>(d));
  const double sigma_max = std::max(std::abs(es.eigenvalues()(2 * d - 1)), 0.0);
  const double zero_tol = std::max(pol.abs_floor, 1e-12 * sigma_max);
  long keep = 0;
  for (long k = 0; k < d; ++k) {
    const long idx = 2 * d - 1 - k;  // descending eigenvalues
    const double sigma = std::max(es.eigenvalues()(idx), 0.0);
    out.values[static_cast<std::size_t>(k)] = sigma < zero_tol ? 0.0 : sigma;
    if (sigma >= zero_tol) {
      const Eigen::VectorXd v = es.eigenvectors().col(idx);
      out.left.col(k) = v.head(d) + Complex(0.0, 1.0) * v.tail(d);
      keep = k + 1;
    }
  }
  detail::orthonormalize_columns(out.left, keep);
  detail::apply_rank_policy(out, pol);
  return out;
}

/// Slater (canonical antisymmetric) decomposition A = U J U^T with
/// J block-diagonal in 2x2 blocks [[0, s], [-s, 0]]. Built from the
/// eigenspaces of A^dagger A: inside each positive eigenvalue cluster the
/// antilinear map e -> conj(A e)/s pairs the basis, and each pair
/// (conj(f), conj(e)) gives one block. Values below roughly 1e-7 of the
/// largest are resolved as zero by this route.
inline Decomposition slater(const Eigen::MatrixXcd& a_in, const RankPolicy& pol = {}) {
  if (a_in.rows() != a_in.cols()) throw SymmetryViolation("slater needs a square matrix");
  const long d = a_in.rows();
  if (d == 0) throw InvalidDimension("slater of an empty matrix");
  const double scale = a_in.norm();
  if ((a_in + a_in.transpose()).norm() > 1e-12 * std::max(scale, 1e-300))
    throw SymmetryViolation("slater input is not antisymmetric");
  const Eigen::MatrixXcd a = 0.5 * (a_in - a_in.transpose());

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(a.adjoint() * a);
  if (es.info() != Eigen::Success) throw Error("slater eigensolver failed");
  const long total = es.eigenvalues().size();
  const double lam_max = std::max(es.eigenvalues()(total - 1), 0.0);
  const double lam_zero = std::max(1e-13 * lam_max, pol.abs_floor * pol.abs_floor);
  const double lam_cluster = std::max(1e-10 * lam_max, lam_zero);

  Decomposition out;
  out.kind = DecompKind::Slater;
  out.left = Eigen::MatrixXcd(d, d);

  struct Block {
    double sigma;
    Eigen::VectorXcd u1, u2;
  };
  std::vector<Block> blocks;

  long k = total - 1;
  while (k >= 0 && es.eigenvalues()(k) > lam_zero) {
    // gather one cluster of (near-)equal eigenvalues
    long lo = k;
    while (lo - 1 >= 0 && es.eigenvalues()(k) - es.eigenvalues()(lo - 1) <= lam_cluster &&
           es.eigenvalues()(lo - 1) > lam_zero)
      --lo;
    std::vector<Eigen::VectorXcd> basis;
    for (long i = k; i >= lo; --i) basis.push_back(es.eigenvectors().col(i));
    // pair off the cluster with the antilinear map e -> conj(A e)
    std::vector<Eigen::VectorXcd> chosen;
    auto project_out = [&](Eigen::VectorXcd v) {
      for (const auto& c : chosen) v -= c.dot(v) * c;
      return v;
    };
    for (std::size_t b = 0; b < basis.size(); ++b) {
      Eigen::VectorXcd e = project_out(basis[b]);
      if (e.norm() < 1e-6) continue;
      e /= e.norm();
      Eigen::VectorXcd g = (a * e).conjugate();
      const double sigma = g.norm();
      if (sigma * sigma <= lam_zero) continue;
      Eigen::VectorXcd f = project_out(g / sigma);
      f -= e.dot(f) * e;
      if (f.norm() < 0.5) continue;  // cluster exhausted or degenerate pick
      f /= f.norm();
      chosen.push_back(e);
      chosen.push_back(f);
      blocks.push_back(Block{sigma, f.conjugate(), e.conjugate()});
    }
    k = lo - 1;
  }

  std::stable_sort(blocks.begin(), blocks.end(),
                   [](const Block& x, const Block& y) { return x.sigma > y.sigma; });
  long col = 0;
  out.values.assign(static_cast<std::size_t>(d), 0.0);
  for (const Block& blk : blocks) {
    out.left.col(col) = blk.u1;
    out.left.col(col + 1) = blk.u2;
    out.values[static_cast<std::size_t>(col)] = blk.sigma;
    out.values[static_cast<std::size_t>(col + 1)] = blk.sigma;
    col += 2;
  }
  detail::orthonormalize_columns(out.left, col);
  detail::apply_rank_policy(out, pol);
  return out;
}

/// Reconstructs the block matrix J from a Slater decomposition.
inline Eigen::MatrixXcd slater_block_matrix(const Decomposition& d) {
  const long n = d.left.rows();
  Eigen::MatrixXcd j = Eigen::MatrixXcd::Zero(n, n);
  for (long k = 0; 2 * k + 1 < n; ++k) {
    const double s = d.values[static_cast<std::size_t>(2 * k)];
    j(2 * k, 2 * k + 1) = s;
    j(2 * k + 1, 2 * k) = -s;
  }
  return j;
}

/// Alternating-least-squares configuration for rank_one_fit.
struct FitConfig {
  int restarts = kFitRestarts;
  int max_sweeps = kFitMaxSweeps;
  double convergence = kFitConvergence;
  std::uint64_t seed = kDefaultSeed;
};

struct RankOneFit {
  std::vector<SingleParticleVec> factors;
  Complex coeff = Complex(1.0, 0.0);
  double residual = 1.0;
};

namespace detail {

inline long dense_size(int dim, int order) {
  long p = 1;
  for (int i = 0; i < order; ++i) {
    p *= dim;
    if (p > (1L << 40)) return p;
  }
  return p;
}

inline long dense_index(const IndexTuple& k, int dim) {
  long x = 0;
  for (int i : k) x = x * dim + i;
  return x;
}

inline Eigen::VectorXcd to_dense(const NTensor& t) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dense_size(t.dim(), t.order()));
  for (const auto& [k, val] : t.entries()) v(dense_index(k, t.dim())) = val;
  return v;
}

/// Dense vector of the (anti)symmetrized product of the given factors.
inline Eigen::VectorXcd dense_ansatz(const std::vector<Eigen::VectorXcd>& factors, int dim,
                                     Symmetry sym) {
  const int n = static_cast<int>(factors.size());
  const long size = dense_size(dim, n);
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(size);
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  IndexTuple idx(static_cast<std::size_t>(n), 0);
  do {
    const double sign =
        sym == Symmetry::Antisymmetric ? static_cast<double>(sort_parity(order)) : 1.0;
    // accumulate sign * prod_k factors[order[k]][idx_k] over all idx
    std::function<void(int, long, Complex)> rec = [&](int slot, long base, Complex acc) {
      if (slot == n) {
        out(base) += sign * acc;
        return;
      }
      const Eigen::VectorXcd& f = factors[static_cast<std::size_t>(order[slot])];
      for (int j = 0; j < dim; ++j) {
        if (f(j) == Complex(0.0, 0.0)) continue;
        rec(slot + 1, base * dim + j, acc * f(j));
      }
    };
    rec(0, 0, Complex(1.0, 0.0));
    if (sym == Symmetry::None) break;
  } while (std::next_permutation(order.begin(), order.end()));
  return out;
}

/// Relative residual of fitting `target` by the optimally scaled ansatz.
inline double ansatz_residual(const Eigen::VectorXcd& target,
                              const std::vector<Eigen::VectorXcd>& factors, int dim,
                              Symmetry sym, Complex* coeff_out = nullptr) {
  const Eigen::VectorXcd p = dense_ansatz(factors, dim, sym);
  const double pn2 = p.squaredNorm();
  if (pn2 < 1e-300) return 1.0;
  const Complex c = p.dot(target) / pn2;
  if (coeff_out) *coeff_out = c;
  return (target - c * p).norm() / target.norm();
}

/// Symmetric higher-order power iteration toward the best identical-factor
/// ansatz u^(x)n; the alternating sweeps stall near such degenerate optima,
/// so this candidate is tried separately.
inline Eigen::VectorXcd symmetric_power_iterate(const NTensor& t, Eigen::VectorXcd u,
                                                int iters) {
  const int n = t.order();
  for (int it = 0; it < iters; ++it) {
    Eigen::VectorXcd g = Eigen::VectorXcd::Zero(t.dim());
    for (const auto& [k, v] : t.entries()) {
      Complex w = v;
      for (int l = 1; l < n; ++l) w *= std::conj(u(k[l]));
      g(k[0]) += w;
    }
    const double nrm = g.norm();
    if (nrm < 1e-300) break;
    Eigen::VectorXcd next = g / nrm;
    if ((next - u).norm() < 1e-15) {
      u = next;
      break;
    }
    u = next;
  }
  return u;
}

/// Phase-aligned mean of the factors; a cheap collapse candidate.
inline Eigen::VectorXcd aligned_mean(const std::vector<Eigen::VectorXcd>& factors) {
  Eigen::VectorXcd m = factors.front();
  for (std::size_t k = 1; k < factors.size(); ++k) {
    const Complex ov = factors.front().dot(factors[k]);
    const double a = std::abs(ov);
    m += a < 1e-300 ? factors[k] : (std::conj(ov) / a) * factors[k];
  }
  const double nrm = m.norm();
  return nrm < 1e-300 ? factors.front() : Eigen::VectorXcd(m / nrm);
}

}  // namespace detail

/// Best-effort rank-one fit of T by c * psi_1 (x) ... (x) psi_n, or the
/// (anti)symmetrized product when T carries a symmetry tag. Alternating
/// least squares with seeded random restarts; the relative residual of the
/// best fit is returned, so callers can treat this as a semidecision.
inline RankOneFit rank_one_fit(const NTensor& t, const FitConfig& cfg = {}) {
  if (t.is_zero()) throw ZeroState("rank_one_fit of the zero tensor");
  const int n = t.order();
  const int dim = t.dim();
  if (n < 1) throw InvalidDimension("rank_one_fit needs at least one slot");
  if (detail::dense_size(dim, n) > 200000)
    throw InvalidParameter("tensor too large for dense rank-one fitting");

  const Eigen::VectorXcd target = detail::to_dense(t);
  const double target_norm = target.norm();

  if (n == 1) {
    std::vector<Complex> amps(target.data(), target.data() + target.size());
    RankOneFit fit;
    fit.factors.emplace_back(SingleParticleVec(amps).normalized());
    fit.coeff = Complex(target_norm, 0.0);
    fit.residual = 0.0;
    return fit;
  }

  std::mt19937_64 rng(cfg.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  RankOneFit best;
  best.residual = 1.0;

  for (int restart = 0; restart < cfg.restarts; ++restart) {
    std::vector<Eigen::VectorXcd> factors(static_cast<std::size_t>(n));
    for (auto& f : factors) {
      f = Eigen::VectorXcd(dim);
      for (int j = 0; j < dim; ++j) f(j) = Complex(gauss(rng), gauss(rng));
      f /= f.norm();
    }
    Complex coeff(0.0, 0.0);
    double residual = detail::ansatz_residual(target, factors, dim, t.symmetry(), &coeff);

    if (t.symmetry() == Symmetry::Symmetric) {
      const Eigen::VectorXcd u = detail::symmetric_power_iterate(t, factors.front(), 60);
      const std::vector<Eigen::VectorXcd> identical(static_cast<std::size_t>(n), u);
      Complex cid;
      const double rid = detail::ansatz_residual(target, identical, dim, t.symmetry(), &cid);
      if (rid < residual) {
        factors = identical;
        residual = rid;
        coeff = cid;
      }
    }

    double prev_residual = 2.0;
    for (int sweep = 0; sweep < cfg.max_sweeps; ++sweep) {
      for (int slot = 0; slot < n; ++slot) {
        if (t.symmetry() == Symmetry::None) {
          // columns are orthogonal, the least-squares update is a contraction
          Eigen::VectorXcd upd = Eigen::VectorXcd::Zero(dim);
          for (const auto& [k, val] : t.entries()) {
            Complex w = val;
            for (int l = 0; l < n; ++l)
              if (l != slot) w *= std::conj(factors[static_cast<std::size_t>(l)](k[l]));
            upd(k[slot]) += w;
          }
          if (upd.norm() < 1e-300) break;
          factors[static_cast<std::size_t>(slot)] = upd / upd.norm();
        } else {
          Eigen::MatrixXcd a(target.size(), dim);
          for (int j = 0; j < dim; ++j) {
            std::vector<Eigen::VectorXcd> probe(factors);
            probe[static_cast<std::size_t>(slot)] = Eigen::VectorXcd::Zero(dim);
            probe[static_cast<std::size_t>(slot)](j) = Complex(1.0, 0.0);
            a.col(j) = detail::dense_ansatz(probe, dim, t.symmetry());
          }
          Eigen::VectorXcd sol =
              a.jacobiSvd(Eigen::ComputeThinU | Eigen::ComputeThinV).solve(target);
          if (sol.norm() < 1e-300) break;
          factors[static_cast<std::size_t>(slot)] = sol / sol.norm();
        }
      }
      residual = detail::ansatz_residual(target, factors, dim, t.symmetry(), &coeff);
      if (t.symmetry() == Symmetry::Symmetric) {
        // sweeps stall when the optimum has (nearly) equal factors; try the
        // collapsed candidate and keep it when it does better
        const Eigen::VectorXcd u = detail::aligned_mean(factors);
        const std::vector<Eigen::VectorXcd> identical(static_cast<std::size_t>(n), u);
        Complex cid;
        const double rid = detail::ansatz_residual(target, identical, dim, t.symmetry(), &cid);
        if (rid < residual) {
          factors = identical;
          residual = rid;
          coeff = cid;
        }
      }
      if (std::abs(prev_residual - residual) < cfg.convergence) break;
      prev_residual = residual;
    }
    if (residual < best.residual) {
      best.residual = residual;
      best.coeff = coeff;
      best.factors.clear();
      for (const auto& f : factors) {
        std::vector<Complex> amps(f.data(), f.data() + f.size());
        best.factors.emplace_back(SingleParticleVec(std::move(amps)));
      }
      if (best.residual < 1e-13) break;
    }
  }
  return best;
}

/// One-particle reduced density matrix: all slots but the first contracted
/// against the conjugate tensor, normalized to unit trace.
inline Eigen::MatrixXcd one_particle_rdm(const NTensor& t) {
  if (t.is_zero()) throw ZeroState("one_particle_rdm of the zero tensor");
  if (t.order() < 1) throw InvalidDimension("one_particle_rdm needs at least one slot");
  const double nsq = t.norm_sq();
  std::map<IndexTuple, std::vector<std::pair<int, Complex>>> by_tail;
  for (const auto& [k, v] : t.entries())
    by_tail[IndexTuple(k.begin() + 1, k.end())].emplace_back(k[0], v);
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(t.dim(), t.dim());
  for (const auto& [tail, firsts] : by_tail)
    for (const auto& [ia, va] : firsts)
      for (const auto& [ib, vb] : firsts) rho(ia, ib) += va * std::conj(vb);
  return rho / nsq;
}

}  // namespace fockpart
