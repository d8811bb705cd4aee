#pragma once

// Spin bookkeeping for d = 2: half-integer labels, Clebsch–Gordan couplings,
// and embeddings of spin-j multiplets into chains of spin-1/2 sites.
//
// Spin-j vectors are indexed by i = j − m (i = 0 is the highest weight), which
// matches the reverse-lexicographic occupation basis of the symmetric subspace
// (|↑⟩ = e_0, |↓⟩ = e_1).

#include <string>

#include "clonopt/rational.hpp"
#include "clonopt/tensor_core.hpp"

namespace clonopt {

/// k/2 for an integer k ≥ 0, stored as k.
class HalfInt {
public:
  constexpr HalfInt() = default;
  static constexpr HalfInt from_twice(int twice) { return HalfInt(twice); }
  /// Parses "3", "3/2", "1.5".
  static HalfInt parse(const std::string& text);

  constexpr int twice() const { return twice_; }
  Rational value() const { return Rational(twice_, 2); }
  /// Multiplet dimension 2j+1.
  constexpr int dim() const { return twice_ + 1; }
  std::string str() const;

  constexpr auto operator<=>(const HalfInt&) const = default;

private:
  constexpr explicit HalfInt(int twice) : twice_(twice) {}
  int twice_ = 0;
};

/// Spin labels of a component cloner: output sector α, ancilla β, input γ = N/2.
struct SU2Labels {
  HalfInt alpha;
  HalfInt beta;
  HalfInt gamma;
};

/// |α−β| ≤ γ ≤ α+β and α+β+γ integral.
bool satisfies_triangle(HalfInt a, HalfInt b, HalfInt c);

/// Spin raising operator J_+ on the spin-j multiplet (index i = j − m).
Matrix spin_raising(HalfInt j);

/// Isometry H_j → H_{j1} ⊗ H_{j2} whose columns are |j, m⟩ written in the
/// product basis; Condon–Shortley phases (⟨j1 j1; j2 j−j1 | j j⟩ > 0).
/// Highest weight from the two-term recursion J_+ v = 0, then lowered.
Matrix clebsch_gordan_isometry(HalfInt j1, HalfInt j2, HalfInt j);

/// Isometry from the spin-α multiplet into (C²)^{⊗M} along the coupling chain
/// 1/2, 1, …, α, α+1/2, α, α+1/2, …, α (maximal intermediate spins first).
/// Needs α ≤ M/2 with M − 2α even.
Matrix spin_chain_embedding(HalfInt alpha, int sites);

} // namespace clonopt
