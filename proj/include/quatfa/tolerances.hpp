#pragma once

namespace quatfa::tol {

// Exact algebraic identities on O(1) data; covers rounding only.
inline constexpr double kExact = 1e-12;
// Intertwining / action-compatibility residuals.
inline constexpr double kAction = 1e-10;
// Norm equalities obtained from two independent singular value computations.
inline constexpr double kNorm = 1e-9;
// Relative singular value cutoff for kernels and ranks.
inline constexpr double kRank = 1e-9;
// Positive semidefinite cutoff, relative to (largest |eigenvalue| + 1).
inline constexpr double kPsd = 1e-10;
// Eigenvalue clustering threshold for joint diagonalization.
inline constexpr double kGap = 1e-8;

}  // namespace quatfa::tol
