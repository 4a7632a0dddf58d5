// Copyright 2026 The fockpart Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <cstdint>

namespace fockpart {

using Complex = std::complex<double>;

/// Amplitudes with modulus below this are dropped after arithmetic.
inline constexpr double kZeroPrune = 1e-14;

/// Relative cutoff for numerical rank against the largest value.
inline constexpr double kRankRelTol = 1e-8;

/// Absolute floor; all values below it means rank zero.
inline constexpr double kRankAbsFloor = 1e-12;

/// A value within this factor of the rank cutoff sets the "marginal" flag.
inline constexpr double kMarginalBand = 10.0;

/// Default truncation bound for states built from infinite series.
inline constexpr int kDefaultNmax = 8;

/// Rank-one fit: accept as factorizable below this relative residual,
/// reject above kFitReject, in between is indeterminate.
inline constexpr double kFitAccept = 1e-8;
inline constexpr double kFitReject = 1e-3;

inline constexpr int kFitRestarts = 16;
inline constexpr int kFitMaxSweeps = 500;
inline constexpr double kFitConvergence = 1e-12;

inline constexpr std::uint64_t kDefaultSeed = 42;

}  // namespace fockpart
