#pragma once

#include <vector>

#include "clonopt/tensor_core.hpp"

namespace clonopt {

/// Completely positive map in Kraus form, ρ ↦ Σ_r K_r ρ K_r*.
///
/// Each Kraus operator is out.dim() × in.dim(). The Heisenberg-picture map
/// (observables on the output to operators on the input) is A ↦ Σ_r K_r* A K_r.
class Channel {
public:
  Channel(std::vector<Matrix> kraus, BasisTag in, BasisTag out);

  const std::vector<Matrix>& kraus() const { return kraus_; }
  const BasisTag& input() const { return in_; }
  const BasisTag& output() const { return out_; }
  int d() const { return in_.d; }
  int n() const { return in_.sites; }
  int m() const { return out_.sites; }

  /// State map T_*(ρ).
  Matrix apply(const Matrix& rho) const;
  /// Observable map T(A).
  Matrix apply_adjoint(const Matrix& a) const;

  /// ‖Σ K*K − 1‖ (operator norm); zero for trace-preserving channels.
  double trace_preservation_defect() const;

  /// Same map with the output rewritten in the full tensor basis.
  /// Identity if the output is already full.
  Channel with_full_output(std::size_t guard = tol::dense_guard) const;

private:
  std::vector<Matrix> kraus_;
  BasisTag in_;
  BasisTag out_;
};

/// Convex combination Σ w_i T_i of channels with identical shapes.
Channel mix(const std::vector<Channel>& channels, const std::vector<double>& weights);

/// Identity channel on the symmetric subspace of N sites.
Channel identity_channel(int d, int n);

/// ρ ↦ V ρ V* for a single unitary on a d-dimensional system.
Channel unitary_channel(const Matrix& u);

/// ρ ↦ |0…0⟩⟨0…0| from the symmetric N-site input to the symmetric M-site output.
Channel constant_output_channel(int d, int n, int m);

} // namespace clonopt
