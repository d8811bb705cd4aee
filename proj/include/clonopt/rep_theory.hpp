#pragma once

// Highest-weight arithmetic for irreducible representations of U(d).

#include <cstdint>
#include <string>
#include <vector>

#include "clonopt/rational.hpp"

namespace clonopt {

/// Non-increasing integer d-tuple (m_1 ≥ … ≥ m_d); entries may be negative.
class HighestWeight {
public:
  /// Throws ConstraintError unless dominant and non-empty.
  explicit HighestWeight(std::vector<std::int64_t> components);
  /// (N, 0, …, 0): the symmetric power π_N^+.
  static HighestWeight symmetric_power(int d, std::int64_t n);
  /// Parses "2,1,0".
  static HighestWeight parse(const std::string& text);
  static bool is_dominant(const std::vector<std::int64_t>& components);

  int d() const { return static_cast<int>(c_.size()); }
  std::int64_t operator[](std::size_t k) const { return c_[k]; }
  const std::vector<std::int64_t>& components() const { return c_; }
  std::int64_t total() const;

  /// m + c·(1, …, 1).
  HighestWeight shifted(std::int64_t c) const;
  /// Shift with m_d = 0.
  HighestWeight normalized() const { return shifted(-c_.back()); }
  std::string str() const;

  auto operator<=>(const HighestWeight&) const = default;

private:
  std::vector<std::int64_t> c_;
};

/// (−m_d, …, −m_1).
HighestWeight conjugate_weight(const HighestWeight& m);
/// conjugate shifted by m_1: (m_1 − m_d, …, m_1 − m_2, 0).
HighestWeight normalized_conjugate_weight(const HighestWeight& m);

struct Casimirs {
  std::int64_t c1 = 0;
  std::int64_t c2 = 0;
  Rational c2_su;  // C2 − C1²/d

  bool operator==(const Casimirs&) const = default;
};

/// C1 = Σ m_j, C2 = Σ m_j² + Σ_{j<k} (m_j − m_k), C̃2 = C2 − C1²/d.
/// `d` must equal m.d().
Casimirs casimirs(const HighestWeight& m, int d);

/// ∏_{j<k} (m_j − m_k + k − j)/(k − j).
std::int64_t weyl_dimension(const HighestWeight& m, int d);

/// Irreducible components of π_N^+ ⊗ π_m: every m + μ with Σμ = N, μ ≥ 0 and
/// μ_{k+1} ≤ m_k − m_{k+1}; each occurs once. Order: lexicographically by μ,
/// largest μ_1 first.
std::vector<HighestWeight> pieri_branch(int n, const HighestWeight& m);

/// π_N^+ ⊂ π_m ⊗ π_n, decided as π_m ⊂ π_N^+ ⊗ π_ñ with ñ the conjugate of n.
bool contains_sym(const HighestWeight& m, const HighestWeight& n, int big_n);

/// Multiplicity of π_m in (C^d)^{⊗M} from r(m) = Σ_j r(m − e_j), r(0) = 1,
/// r = 0 on non-dominant tuples or when m_d < 0 or Σm ≠ M.
std::int64_t fund_power_multiplicity(const HighestWeight& m, int big_m);

/// Multiplicity of the adjoint weight (2, 1, …, 1, 0), up to uniform shift,
/// in π_N^+ ⊗ conj(π_N^+).
std::int64_t adjoint_multiplicity(int d, int n);

/// All dominant m with Σ m = M and m_d ≥ 0 (partitions of M into at most d parts),
/// lexicographically decreasing.
std::vector<HighestWeight> partitions(int d, int big_m);

} // namespace clonopt
