#pragma once

// Maximization of the ω functional over covariant cloners.
//
// A covariant component cloner is labelled by an output weight m (a partition
// of M into at most d parts) and an increment μ with ñ = m − μ, where ñ is the
// conjugate of the ancilla weight. Its ω value is
//
//   ω = 1/2 + (C̃2(m) − C̃2(n)) / (2 C̃2(N,0,…,0)),
//
// and C̃2(m) − C̃2(n) = F2(m, μ) + (d+1)N − (2MN − N²)/d with the integer
// objective F2(m, μ) = Σ_k μ_k (2 m_k − 2k − μ_k).

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "clonopt/rational.hpp"
#include "clonopt/rep_theory.hpp"
#include "clonopt/su2.hpp"

namespace clonopt {

struct CandidatePoint {
  HighestWeight m;
  std::vector<std::int64_t> mu;

  /// ñ = m − μ (dominant on the feasible domain).
  HighestWeight conjugate_ancilla() const;
  /// n = conjugate of ñ.
  HighestWeight ancilla() const;
  std::string str() const;

  bool operator==(const CandidatePoint&) const = default;
};

/// Σm = M, m_d ≥ 0, Σμ = N, 0 ≤ μ_k ≤ m_k − m_{k+1} (k < d), μ_d ≥ 0.
bool is_feasible(const CandidatePoint& point, int n, int m);
/// Throws ConstraintError naming the first violated condition.
void require_feasible(const CandidatePoint& point, int n, int m);

/// F2; throws ConstraintError if μ is not a box-feasible increment for m
/// (checks everything in is_feasible except the totals, which it infers).
std::int64_t f2(const CandidatePoint& point);

/// ω through the F2 chain; exact. Needs N ≥ 1.
Rational omega_of_point(const CandidatePoint& point, int d, int n, int m);

/// ω straight from the Casimirs of m and n; exact. Needs N ≥ 1.
Rational omega_from_casimirs(const CandidatePoint& point, int d, int n, int m);

struct EnumerationGuard {
  int max_m = 30;
  int max_d = 8;
};

/// Every feasible (m, μ), m in decreasing lexicographic order, μ with largest
/// μ_1 first. Throws GuardError beyond the guard.
std::vector<CandidatePoint> enumerate_W1(int d, int n, int m, const EnumerationGuard& guard = {});

struct OmegaReport {
  int d = 0;
  int n = 0;
  int m = 0;
  Rational omega_max;
  std::vector<CandidatePoint> maximizers;
  bool unique = false;
  Rational gamma;      // (N/M) ω_max
  Rational delta_one;  // (d−1)/d |1 − γ|
  std::int64_t f2_max = 0;
  std::size_t count_enumerated = 0;
};

/// Exhaustive maximum of F2 over W1 (N ≥ 1, M ≥ 1). `threads` splits the
/// partitions of M; the result does not depend on it.
OmegaReport maximize_brute(int d, int n, int m, const EnumerationGuard& guard = {}, int threads = 1);

/// (M,0,…,0) with μ = (N,0,…,0) for N ≤ M, (M,0,…,0,N−M) otherwise.
CandidatePoint expected_maximizer(int d, int n, int m);

enum class GreedyMove {
  shift_increment,    // μ_i += 1, μ_d −= 1 into an unsaturated slot
  grow_first_row,     // saturated μ: m_1 += 1 at the expense of a lower row
  absorb_last_row,    // μ_d = 0: m_1 += m_d, m_d = 0
  reduce_dimension,   // μ_d = m_d = 0: drop the last slot
  two_slot_endgame,   // saturated μ with μ_d = 1: move one box and one increment from row d to row 1
};

std::string to_string(GreedyMove move);

struct GreedyStep {
  GreedyMove move;
  int active_d;  // effective dimension when the move was applied
  std::int64_t f2_before;
  std::int64_t f2_after;
};

struct GreedyResult {
  CandidatePoint point;
  std::vector<GreedyStep> steps;
};

/// Most-balanced partition of M with μ packed into the lowest rows first.
CandidatePoint default_start(int d, int n, int m);

/// Uniformly random point of W1 (seeded).
CandidatePoint random_feasible_point(int d, int n, int m, std::uint64_t seed, const EnumerationGuard& guard = {});

/// Case-by-case ascent of F2 from `start` until no move applies. Every
/// shift_increment, grow_first_row and two_slot_endgame step strictly increases
/// F2 (checked; NumericError otherwise). The step count is bounded by a
/// watchdog derived from the F2 range.
GreedyResult maximize_greedy(int d, int n, int m, std::optional<CandidatePoint> start = std::nullopt);

/// 1/2 + (α(α+1) − β(β+1)) / (2γ(γ+1)). Throws on triangle violation, and
/// on γ = 0 unless α = β (then 1/2).
Rational omega_su2(HalfInt alpha, HalfInt beta, HalfInt gamma);

/// (α, β) = ((m_1 − m_2)/2, (ñ_1 − ñ_2)/2) for a d = 2 point.
SU2Labels su2_labels(const CandidatePoint& point, int n);

} // namespace clonopt
