#pragma once

namespace rif {

// Central numerical tolerances. All relative tolerances are relative to the
// natural scale of the quantity they guard (largest coefficient, grid max,
// column norm), noted per constant.

// Polynomial coefficients below this fraction of the largest coefficient
// magnitude are pruned.
inline constexpr double kCoeffDropTol = 1e-12;

// Two roots closer than this (times max(1, |root|)) are treated as equal
// when cancelling numerator/denominator pairs or merging denominator roots.
inline constexpr double kRootMatchTol = 1e-8;

// Blaschke zeros must satisfy |a| <= 1 - kEpsInterior.
inline constexpr double kEpsInterior = 1e-10;

// Disk-analytic denominators must be root-free in |z| <= 1 + kEpsRoot.
// Must stay below kEpsInterior: a Blaschke zero at 1 - kEpsInterior mirrors
// to a pole at distance ~kEpsInterior outside the circle.
inline constexpr double kEpsRoot = 5e-11;

// Boundary-isometry defect threshold for accepting a function as inner.
inline constexpr double kTolInner = 1e-8;

// Smallest singular value accepted for the leading block after row selection.
inline constexpr double kSigmaMinThreshold = 1e-8;

// Unitarity defect threshold for constant matrices.
inline constexpr double kTolUnitary = 1e-10;

// Trigonometric matrix polynomials are accepted as circle-nonnegative when
// the grid minimum eigenvalue is >= -kTolPsd (relative to the grid max).
inline constexpr double kTolPsd = 1e-9;

// Outer polynomial matrices: det must be root-free in |z| < 1 - kEpsOuter.
inline constexpr double kEpsOuter = 1e-7;

// Spectral factorization residual targets.
inline constexpr double kTolFactor = 1e-8;
inline constexpr double kTolFactorDegenerate = 1e-4;

// Bauer iteration: block rows double from kBauerRowsStart until the read-off
// factor changes by less than kBauerRelChange, capped at kBauerRowsMax.
inline constexpr int kBauerRowsStart = 32;
inline constexpr int kBauerRowsMax = 4096;
inline constexpr double kBauerRelChange = 1e-11;

// A trig polynomial whose grid minimum eigenvalue falls below this fraction
// of the grid maximum is handled as boundary-degenerate.
inline constexpr double kDegenerateEigFraction = 1e-6;

// Kernel-vector extraction and Potapov deflation.
inline constexpr double kTolKernel = 1e-7;
inline constexpr double kTolDeflate = 1e-7;

// Homotopy path verification.
inline constexpr double kTolPath = 1e-6;
inline constexpr double kTolChain = 1e-8;

// Minimum boundary modulus (absolute) for a well-conditioned winding number:
// 100 * kTolInner per the precondition of winding_number.
inline constexpr double kWindingModulusFloor = 100.0 * kTolInner;

// Default boundary grid: max(512, 8*maxdeg + 1) points.
inline int default_grid_size(int max_degree) {
  int fine = 8 * (max_degree > 0 ? max_degree : 0) + 1;
  return fine > 512 ? fine : 512;
}

}  // namespace rif
