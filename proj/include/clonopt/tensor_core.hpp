#pragma once

// Symmetric (Bose) subspaces of (C^d)^{⊗N}: occupation bases, symmetrizers,
// embeddings into the full tensor space, tensor powers and one-site marginals.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "clonopt/tolerances.hpp"

namespace clonopt {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Basis label |n_1, ..., n_d> of the symmetric subspace; counts sum to N.
struct OccupationVector {
  std::vector<int> counts;

  int total() const;
  int modes() const { return static_cast<int>(counts.size()); }
  auto operator<=>(const OccupationVector&) const = default;
};

/// binomial(d+N-1, N); throws ArithmeticOverflow outside int64.
std::int64_t sym_dimension(int d, int n);

/// All occupation vectors of N bosons in d modes, reverse-lexicographic:
/// (N,0,...,0) first, (0,...,0,N) last.
std::vector<OccupationVector> occupation_basis(int d, int n);

/// Occupation basis with a reverse lookup table.
class SymmetricBasis {
public:
  SymmetricBasis(int d, int n);

  int d() const { return d_; }
  int n() const { return n_; }
  std::size_t size() const { return states_.size(); }
  const OccupationVector& operator[](std::size_t i) const { return states_[i]; }
  const std::vector<OccupationVector>& states() const { return states_; }

  /// Index of an occupation vector; throws std::out_of_range if absent.
  std::size_t index_of(const std::vector<int>& counts) const;

private:
  int d_;
  int n_;
  std::vector<OccupationVector> states_;
  std::map<std::vector<int>, std::size_t> index_;
};

/// Which basis a matrix on M sites is written in.
enum class BasisKind { symmetric, full };

struct BasisTag {
  BasisKind kind = BasisKind::symmetric;
  int d = 2;
  int sites = 1;

  /// d[sites] for symmetric, d^sites for full.
  std::size_t dim() const;
  bool operator==(const BasisTag&) const = default;
};

/// d^n, or GuardError if it exceeds `guard`.
std::size_t checked_full_dim(int d, int n, std::size_t guard = tol::dense_guard);

/// Orthogonal projector onto the symmetric subspace of (C^d)^{⊗M}, dense.
Matrix symmetrizer(int d, int m, std::size_t guard = tol::dense_guard);

/// Isometry E from the occupation basis into the full tensor basis;
/// E*E = 1 and E E* = symmetrizer(d, N).
Matrix sym_embed(int d, int n, std::size_t guard = tol::dense_guard);

/// Full-tensor index of a product basis vector |i_1 ... i_n>, site 1 most significant.
std::size_t product_index(std::span<const int> digits, int d);

/// Permutation operator on (C^d)^{⊗n}: site k is moved to site perm[k].
Matrix permutation_operator(int d, std::span<const int> perm, std::size_t guard = tol::dense_guard);

/// u^{⊗n} as a dense matrix.
Matrix kron_power(const Matrix& u, int n, std::size_t guard = tol::dense_guard);

Matrix kron(const Matrix& a, const Matrix& b);

/// Normalized single-site vector.
class PureState {
public:
  /// Throws ConstraintError unless |norm - 1| <= 1e-12.
  explicit PureState(Vector amplitudes);
  /// Normalizes first; throws on the zero vector.
  static PureState normalized(Vector amplitudes);
  /// Computational basis vector e_k.
  static PureState basis(int d, int k);

  int d() const { return static_cast<int>(amplitudes_.size()); }
  const Vector& amplitudes() const { return amplitudes_; }
  Matrix projector() const { return amplitudes_ * amplitudes_.adjoint(); }

private:
  Vector amplitudes_;
};

/// ψ^{⊗N} in the occupation basis: c_n = sqrt(N!/∏n_i!) ∏ ψ_i^{n_i}.
Vector product_power(const PureState& psi, int n);

/// π_N^+(u): u^{⊗N} restricted to the symmetric subspace, in the occupation basis.
Matrix sym_power(const Matrix& u, int n);

/// Σ_k a_(k) restricted to the symmetric subspace, i.e. Σ_ij a_ij b_i^† b_j.
Matrix one_body_operator(const Matrix& a, int n);

/// Σ_k a_(k) on the full tensor space.
Matrix collective_operator(const Matrix& a, int n, std::size_t guard = tol::dense_guard);

/// Density operator with a basis tag; validated on construction.
class DensityOperator {
public:
  /// Throws ConstraintError unless Hermitian, unit trace (1e-12) and PSD (-1e-10).
  DensityOperator(Matrix matrix, BasisTag basis);

  const Matrix& matrix() const { return matrix_; }
  const BasisTag& basis() const { return basis_; }

private:
  Matrix matrix_;
  BasisTag basis_;
};

/// One-site reduced matrix ⟨i|ρ_k|j⟩. `site` is ignored for symmetric input.
/// Linear in ρ; does not require ρ to be a state.
Matrix single_site_marginal(const Matrix& rho, const BasisTag& basis, int site = 0);
Matrix single_site_marginal(const DensityOperator& rho, int site = 0);

/// ‖A‖ for a Hermitian matrix (largest |eigenvalue|).
double hermitian_norm(const Matrix& a);
/// Largest singular value.
double operator_norm(const Matrix& a);
/// Sum of |eigenvalues| of a Hermitian matrix.
double trace_norm_hermitian(const Matrix& a);
/// Sum of positive eigenvalues of a Hermitian matrix.
double positive_part_trace(const Matrix& a);
double min_eigenvalue(const Matrix& a);

} // namespace clonopt
