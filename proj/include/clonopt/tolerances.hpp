#pragma once

#include <cstddef>

namespace clonopt::tol {

// Hermiticity, isometry, trace preservation, projector identities.
inline constexpr double structural = 1e-10;
// Unit norm of pure states and unit trace of density operators.
inline constexpr double normalization = 1e-12;
// Smallest eigenvalue accepted as "positive semidefinite".
inline constexpr double psd_floor = -1e-10;
// Residual allowed when fitting the omega coefficient.
inline constexpr double omega_residual = 1e-8;

// Largest full tensor dimension d^M built densely.
inline constexpr std::size_t dense_guard = 4096;

} // namespace clonopt::tol
