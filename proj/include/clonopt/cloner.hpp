#pragma once

// The optimal universal N → M cloner
//
//   T̂_*(ρ) = d[N]/d[M] · S_M (ρ ⊗ 1^{⊗(M−N)}) S_M
//
// for pure inputs on the symmetric subspace, together with its closed-form
// figures of merit.

#include <cstdint>

#include "clonopt/channel.hpp"
#include "clonopt/rational.hpp"

namespace clonopt {

struct ClonerSpec {
  int d = 2;
  int n = 1;
  int m = 2;

  /// d ≥ 2, N ≥ 1, M ≥ N. M = N is the identity limit.
  void validate() const;
};

enum class ClonerPath {
  /// Kraus operators written directly in the occupation bases (no d^M objects).
  occupation,
  /// S_M (E_N ⊗ e_J) built from dense symmetrizers; output in the full tensor basis.
  dense,
};

/// Kraus operators K_J, J running over the full product basis of the M−N
/// ancilla sites (d^{M−N} operators, duplicates kept). Input: symmetric(d,N).
/// Output: symmetric(d,M) for the occupation path, full(d,M) for the dense one.
/// The Kraus count d^{M−N} and, on the dense path, d^M are bounded by `guard`.
Channel optimal_cloner(const ClonerSpec& spec, ClonerPath path = ClonerPath::occupation,
                       std::size_t guard = tol::dense_guard);

/// T̂_*(ρ) in the occupation basis without materializing Kraus operators.
Matrix apply_optimal_cloner(const ClonerSpec& spec, const Matrix& rho);

/// γ(T̂) = N/(N+d) · (M+d)/M.
Rational shrinking_factor(const ClonerSpec& spec);

/// (d−1)/d · |1 − γ(T̂)|.
Rational delta_one_closed_form(const ClonerSpec& spec);

/// d[N]/d[M], the all-clone overlap of T̂ for any pure input.
Rational all_clone_overlap_closed_form(const ClonerSpec& spec);

/// One-site marginal of T̂_*(ψ^{⊗N}), computed from the channel output.
Matrix single_clone_marginal(const ClonerSpec& spec, const PureState& psi);

/// γ|ψ⟩⟨ψ| + (1−γ) 1/d.
Matrix single_clone_marginal_closed_form(const ClonerSpec& spec, const PureState& psi);

/// tr(σ^{⊗M} T̂_*(σ^{⊗N})) with σ = |ψ⟩⟨ψ|, computed numerically.
double all_clone_overlap(const ClonerSpec& spec, const PureState& psi);

struct SampledSupremum {
  double estimate = 0.0;
  int samples = 0;
  std::uint64_t seed = 0;
};

/// Sampled supremum over pure σ of ‖T̂_*(σ^{⊗N}) − σ^{⊗M}‖₁ in the symmetric
/// output basis, followed by local refinement of the best samples.
/// d[M] is bounded by `guard`.
SampledSupremum delta_all_numeric(const ClonerSpec& spec, int samples, std::uint64_t seed,
                                  std::size_t guard = tol::dense_guard);

} // namespace clonopt
