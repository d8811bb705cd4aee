#pragma once

// Generic machinery for cloning-shaped channels (symmetric N-site input,
// M-site output): Choi matrices, Haar twirling, Stinespring dilations,
// covariance defects, the ω coefficient, the single-clone error Δ_one,
// and explicit SU(2) component cloners.

#include <cstdint>

#include "clonopt/channel.hpp"
#include "clonopt/su2.hpp"

namespace clonopt {

/// Unnormalized Choi matrix Σ_ij |i⟩⟨j| ⊗ T_*(|i⟩⟨j|), row index i·dim_out + o.
/// Its trace is dim_in; the identity channel gives dim_in times the maximally
/// entangled projector.
Matrix choi(const Channel& t);

/// Kraus form of a Choi matrix (eigenvalues below the PSD floor are dropped).
Channel channel_from_choi(const Matrix& choi_matrix, const BasisTag& in, const BasisTag& out);

double min_choi_eigenvalue(const Channel& t);
bool is_completely_positive(const Channel& t, double floor = tol::psd_floor);
bool is_trace_preserving(const Channel& t, double tolerance = tol::structural);

/// The representation of u on a basis: u^{⊗n} (full) or π_n^+(u) (symmetric).
Matrix site_representation(const Matrix& u, const BasisTag& basis);

/// τ_u(T): ρ ↦ U_M* T_*(U_N ρ U_N*) U_M.
Channel rotate(const Channel& t, const Matrix& u);

struct TwirlConfig {
  int sample_count = 200;
  std::uint64_t seed = 0;
};

/// Monte-Carlo Haar average, with its distance from the input and the
/// largest standard error of any averaged Choi entry.
struct TwirlResult {
  Channel channel;
  double estimate = 0.0;  // ‖Choi(T̄) − Choi(T)‖
  int samples = 0;
  std::uint64_t seed = 0;
  double stderr_ = 0.0;
};

/// Average of τ_u T over u_i = haar_unitary(d, derive_seed(seed, i)).
TwirlResult twirl(const Channel& t, const TwirlConfig& cfg);

/// V = Σ_r K_r ⊗ |r⟩, an (out·R) × in isometry (row index o·R + r).
/// Throws NumericError when the channel is not trace preserving.
Matrix stinespring(const Channel& t);

/// tr_env(W) for W on output ⊗ environment (row index o·env + r).
Matrix trace_out_environment(const Matrix& w, std::size_t out_dim, std::size_t env_dim);

struct SampledReport {
  double estimate = 0.0;
  int samples = 0;
  std::uint64_t seed = 0;
  double stderr_ = 0.0;
};

/// max_i ‖Choi(τ_{u_i} T) − Choi(T)‖ over seeded Haar unitaries; stderr_ is the
/// standard error of the sampled defects.
SampledReport covariance_defect(const Channel& t, int samples, std::uint64_t seed);

/// Traceless Hermitian basis of d×d matrices (generalized Gell-Mann).
std::vector<Matrix> traceless_hermitian_basis(int d);

struct OmegaFit {
  double omega = 0.0;
  double residual = 0.0;  // ‖T(Σa_(k)) − ω Σa_(l)‖_F relative to ‖Σa_(l)‖_F, over the basis
};

/// Least-squares fit of T(Σ_{k≤M} a_(k)) = ω Σ_{l≤N} a_(l) over a traceless
/// Hermitian basis, with no preconditions checked.
OmegaFit fit_omega(const Channel& t);

/// ω(T). Checks covariance (8 Haar samples, Frobenius norm of the Choi
/// difference) and the fit residual, both at 1e-8; throws NumericError otherwise.
double omega_measure(const Channel& t);

/// sup_{ψ,k,0≤a≤1} |⟨ψ^N, T(a_(k)) ψ^N⟩ − ⟨ψ, aψ⟩|: for each sampled ψ and
/// site k the supremum over effects is the positive-part trace of ρ_k − |ψ⟩⟨ψ|.
SampledReport delta_one_numeric(const Channel& t, int samples, std::uint64_t seed);

/// A ↦ V*((J_α* A J_α) ⊗ 1_β) V for d = 2, where V couples spin γ = N/2 into
/// α ⊗ β and J_α embeds spin α into M qubits (see spin_chain_embedding).
/// Output in the full tensor basis of M qubits.
Channel su2_component_cloner(const SU2Labels& labels, int n, int m);

} // namespace clonopt
