#include "clonopt/omega_opt.hpp"

#include <algorithm>
#include <random>
#include <thread>

#include "clonopt/errors.hpp"

namespace clonopt {

namespace {

std::string join(const std::vector<std::int64_t>& v) {
  std::string out;
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (k) out += ',';
    out += std::to_string(v[k]);
  }
  return out;
}

// First violated feasibility condition, or empty.
std::string feasibility_problem(const CandidatePoint& p, int n, int m) {
  const auto& w = p.m.components();
  const std::size_t d = w.size();
  if (p.mu.size() != d) return "mu has " + std::to_string(p.mu.size()) + " entries, expected " + std::to_string(d);
  if (p.m.total() != m) return "sum of m is " + std::to_string(p.m.total()) + ", expected M = " + std::to_string(m);
  if (w.back() < 0) return "m_d is negative";
  std::int64_t sum = 0;
  for (std::size_t k = 0; k < d; ++k) {
    if (p.mu[k] < 0) return "mu_" + std::to_string(k + 1) + " is negative";
    if (k + 1 < d && p.mu[k] > w[k] - w[k + 1])
      return "mu_" + std::to_string(k + 1) + " exceeds m_" + std::to_string(k + 1) + " - m_" + std::to_string(k + 2);
    sum = checked_add(sum, p.mu[k]);
  }
  if (sum != n) return "sum of mu is " + std::to_string(sum) + ", expected N = " + std::to_string(n);
  return {};
}

std::int64_t sum_of(const std::vector<std::int64_t>& v) {
  std::int64_t s = 0;
  for (auto x : v) s = checked_add(s, x);
  return s;
}

// C̃2(N, 0, …, 0) = N² + (d−1)N − N²/d
Rational input_casimir(int d, int n) {
  return Rational(static_cast<std::int64_t>(n) * n + static_cast<std::int64_t>(d - 1) * n) -
         Rational(static_cast<std::int64_t>(n) * n, d);
}

void require_omega_args(int d, int n, int m) {
  if (d < 2) throw ConstraintError("omega needs d >= 2");
  if (n < 1) throw ConstraintError("omega is undefined for N = 0 (the input Casimir vanishes)");
  if (m < 1) throw ConstraintError("omega needs M >= 1");
}

void enumerate_increments(const HighestWeight& m, int n, std::vector<std::int64_t>& mu,
                          std::vector<CandidatePoint>& out) {
  const auto& w = m.components();
  const std::size_t d = w.size();
  const std::size_t k = mu.size();
  const std::int64_t used = sum_of(mu);
  if (k + 1 == d) {
    mu.push_back(n - used);
    out.push_back(CandidatePoint{m, mu});
    mu.pop_back();
    return;
  }
  const std::int64_t upper = std::min<std::int64_t>(w[k] - w[k + 1], n - used);
  for (std::int64_t v = upper; v >= 0; --v) {
    mu.push_back(v);
    enumerate_increments(m, n, mu, out);
    mu.pop_back();
  }
}

void check_guard(int d, int m, const EnumerationGuard& guard) {
  if (m > guard.max_m || d > guard.max_d)
    throw GuardError("enumeration guard exceeded (d <= " + std::to_string(guard.max_d) +
                     ", M <= " + std::to_string(guard.max_m) + ")");
}

} // namespace

HighestWeight CandidatePoint::conjugate_ancilla() const {
  std::vector<std::int64_t> out(m.components());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = checked_sub(out[k], mu.at(k));
  return HighestWeight(std::move(out));
}

HighestWeight CandidatePoint::ancilla() const { return conjugate_weight(conjugate_ancilla()); }

std::string CandidatePoint::str() const { return "m=(" + m.str() + ") mu=(" + join(mu) + ")"; }

bool is_feasible(const CandidatePoint& point, int n, int m) { return feasibility_problem(point, n, m).empty(); }

void require_feasible(const CandidatePoint& point, int n, int m) {
  if (auto problem = feasibility_problem(point, n, m); !problem.empty())
    throw ConstraintError("point " + point.str() + " is not in W1: " + problem);
}

std::int64_t f2(const CandidatePoint& point) {
  const std::int64_t n = sum_of(point.mu);
  const std::int64_t m = point.m.total();
  require_feasible(point, static_cast<int>(n), static_cast<int>(m));
  std::int64_t out = 0;
  for (std::size_t k = 0; k < point.mu.size(); ++k) {
    const std::int64_t row = static_cast<std::int64_t>(k) + 1;
    const std::int64_t factor = checked_sub(checked_sub(checked_mul(2, point.m[k]), 2 * row), point.mu[k]);
    out = checked_add(out, checked_mul(point.mu[k], factor));
  }
  return out;
}

Rational omega_of_point(const CandidatePoint& point, int d, int n, int m) {
  require_omega_args(d, n, m);
  if (point.m.d() != d) throw ConstraintError("point dimension does not match d");
  require_feasible(point, n, m);
  const std::int64_t big_n = n;
  const std::int64_t big_m = m;
  const Rational f = Rational(f2(point)) + Rational((d + 1) * big_n) - Rational(2 * big_m * big_n - big_n * big_n, d);
  return Rational(1, 2) + f / (Rational(2) * input_casimir(d, n));
}

Rational omega_from_casimirs(const CandidatePoint& point, int d, int n, int m) {
  require_omega_args(d, n, m);
  if (point.m.d() != d) throw ConstraintError("point dimension does not match d");
  require_feasible(point, n, m);
  const Rational c_out = casimirs(point.m, d).c2_su;
  const Rational c_anc = casimirs(point.ancilla(), d).c2_su;
  const Rational c_in = casimirs(HighestWeight::symmetric_power(d, n), d).c2_su;
  return Rational(1, 2) + (c_out - c_anc) / (Rational(2) * c_in);
}

std::vector<CandidatePoint> enumerate_W1(int d, int n, int m, const EnumerationGuard& guard) {
  if (d < 2 || n < 0 || m < 0) throw ConstraintError("enumerate_W1 needs d >= 2, N >= 0, M >= 0");
  check_guard(d, m, guard);
  std::vector<CandidatePoint> out;
  std::vector<std::int64_t> mu;
  for (const auto& w : partitions(d, m)) enumerate_increments(w, n, mu, out);
  return out;
}

CandidatePoint expected_maximizer(int d, int n, int m) {
  std::vector<std::int64_t> mu(static_cast<std::size_t>(d), 0);
  if (n <= m) {
    mu.front() = n;
  } else {
    mu.front() = m;
    mu.back() = n - m;
  }
  return CandidatePoint{HighestWeight::symmetric_power(d, m), std::move(mu)};
}

OmegaReport maximize_brute(int d, int n, int m, const EnumerationGuard& guard, int threads) {
  require_omega_args(d, n, m);
  check_guard(d, m, guard);
  const auto shapes = partitions(d, m);

  struct Partial {
    std::int64_t best = std::numeric_limits<std::int64_t>::min();
    std::vector<CandidatePoint> argmax;
    std::size_t count = 0;
  };
  const std::size_t workers = std::clamp<std::size_t>(static_cast<std::size_t>(std::max(threads, 1)), 1, shapes.size());
  std::vector<Partial> partial(workers);
  // Contiguous blocks of partitions so concatenating results preserves enumeration order.
  const auto run = [&](std::size_t w) {
    const std::size_t lo = shapes.size() * w / workers;
    const std::size_t hi = shapes.size() * (w + 1) / workers;
    std::vector<CandidatePoint> points;
    std::vector<std::int64_t> mu;
    for (std::size_t s = lo; s < hi; ++s) {
      points.clear();
      enumerate_increments(shapes[s], n, mu, points);
      for (auto& p : points) {
        ++partial[w].count;
        const std::int64_t value = f2(p);
        if (value > partial[w].best) {
          partial[w].best = value;
          partial[w].argmax.clear();
        }
        if (value == partial[w].best) partial[w].argmax.push_back(std::move(p));
      }
    }
  };
  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(run, w);
  }

  OmegaReport report;
  report.d = d;
  report.n = n;
  report.m = m;
  report.f2_max = std::numeric_limits<std::int64_t>::min();
  for (const auto& p : partial) {
    report.count_enumerated += p.count;
    if (p.argmax.empty()) continue;
    if (p.best > report.f2_max) {
      report.f2_max = p.best;
      report.maximizers.clear();
    }
    if (p.best == report.f2_max) report.maximizers.insert(report.maximizers.end(), p.argmax.begin(), p.argmax.end());
  }
  if (report.maximizers.empty()) throw NumericError("W1 is empty");
  report.unique = report.maximizers.size() == 1;
  report.omega_max = omega_of_point(report.maximizers.front(), d, n, m);
  report.gamma = Rational(n, m) * report.omega_max;
  report.delta_one = Rational(d - 1, d) * abs(Rational(1) - report.gamma);
  return report;
}

std::string to_string(GreedyMove move) {
  switch (move) {
    case GreedyMove::shift_increment: return "shift_increment";
    case GreedyMove::grow_first_row: return "grow_first_row";
    case GreedyMove::absorb_last_row: return "absorb_last_row";
    case GreedyMove::reduce_dimension: return "reduce_dimension";
    case GreedyMove::two_slot_endgame: return "two_slot_endgame";
  }
  return "unknown";
}

CandidatePoint default_start(int d, int n, int m) {
  if (d < 2 || n < 0 || m < 0) throw ConstraintError("default_start needs d >= 2, N >= 0, M >= 0");
  std::vector<std::int64_t> w(static_cast<std::size_t>(d));
  for (int k = 0; k < d; ++k) w[static_cast<std::size_t>(k)] = m / d + (k < m % d ? 1 : 0);
  std::vector<std::int64_t> mu(static_cast<std::size_t>(d), 0);
  std::int64_t left = n;
  for (std::size_t k = 0; k + 1 < w.size(); ++k) {
    mu[k] = std::min(left, w[k] - w[k + 1]);
    left -= mu[k];
  }
  mu.back() = left;
  return CandidatePoint{HighestWeight(std::move(w)), std::move(mu)};
}

CandidatePoint random_feasible_point(int d, int n, int m, std::uint64_t seed, const EnumerationGuard& guard) {
  const auto points = enumerate_W1(d, n, m, guard);
  std::mt19937_64 engine(seed);
  std::uniform_int_distribution<std::size_t> pick(0, points.size() - 1);
  return points[pick(engine)];
}

GreedyResult maximize_greedy(int d, int n, int m, std::optional<CandidatePoint> start) {
  if (d < 2 || n < 1 || m < 1) throw ConstraintError("maximize_greedy needs d >= 2, N >= 1, M >= 1");
  CandidatePoint point = start ? *start : default_start(d, n, m);
  if (point.m.d() != d) throw ConstraintError("start point dimension does not match d");
  require_feasible(point, n, m);

  const CandidatePoint target = expected_maximizer(d, n, m);
  const std::int64_t target_value = f2(target);
  std::int64_t value = f2(point);
  if (value > target_value) throw NumericError("start point exceeds the expected maximum: " + point.str());
  // Strict moves raise F2 by at least 1; absorb/reduce occur at most once per slot.
  const std::int64_t watchdog = (target_value - value) + 2 * static_cast<std::int64_t>(d) + 1;

  GreedyResult result{point, {}};
  std::vector<std::int64_t> w = point.m.components();
  std::vector<std::int64_t> mu = point.mu;
  std::size_t active = static_cast<std::size_t>(d);

  const auto commit = [&](GreedyMove move, bool strict) {
    CandidatePoint next{HighestWeight(w), mu};
    require_feasible(next, n, m);
    const std::int64_t next_value = f2(next);
    if (strict ? next_value <= value : next_value < value)
      throw NumericError(to_string(move) + " did not increase F2 at " + next.str());
    result.steps.push_back(GreedyStep{move, static_cast<int>(active), value, next_value});
    value = next_value;
    result.point = std::move(next);
  };

  while (!(result.point == target)) {
    if (static_cast<std::int64_t>(result.steps.size()) > watchdog)
      throw NumericError("greedy ascent exceeded its step bound at " + result.point.str());
    const std::size_t last = active - 1;

    if (mu[last] > 0) {
      // Unsaturated slot: move one increment up from the last row.
      std::size_t slot = last;
      for (std::size_t i = 0; i < last; ++i)
        if (mu[i] < w[i] - w[i + 1]) {
          slot = i;
          break;
        }
      if (slot < last) {
        ++mu[slot];
        --mu[last];
        commit(GreedyMove::shift_increment, true);
        continue;
      }

      // All slots saturated: μ is fixed by m, and F2 grows with m_1.
      // Donor row k (1 < k < d) keeps dominance iff m_k > m_{k+1}; the last row
      // costs two increments of μ_d.
      std::size_t donor = 0;
      for (std::size_t k = last - 1; k >= 1; --k)
        if (w[k] > w[k + 1]) {
          donor = k;
          break;
        }
      if (donor == 0 && w[last] >= 1 && mu[last] >= 2) donor = last;
      if (donor != 0) {
        ++w[0];
        --w[donor];
        for (std::size_t i = 0; i < last; ++i) mu[i] = w[i] - w[i + 1];
        mu[last] = n - (w[0] - w[last]);
        commit(GreedyMove::grow_first_row, true);
        continue;
      }

      if (mu[last] == 1 && w[last] >= 1) {
        ++w[0];
        --w[last];
        ++mu[0];
        --mu[last];
        commit(GreedyMove::two_slot_endgame, true);
        continue;
      }
      throw NumericError("greedy ascent stuck at " + result.point.str());
    }

    if (w[last] > 0) {
      w[0] += w[last];
      w[last] = 0;
      commit(GreedyMove::absorb_last_row, false);
      continue;
    }
    if (active > 2) {
      --active;
      result.steps.push_back(GreedyStep{GreedyMove::reduce_dimension, static_cast<int>(active + 1), value, value});
      continue;
    }
    throw NumericError("greedy ascent stuck at " + result.point.str());
  }
  return result;
}

Rational omega_su2(HalfInt alpha, HalfInt beta, HalfInt gamma) {
  if (gamma.twice() == 0 && alpha != beta)
    throw ConstraintError("omega_su2: gamma = 0 requires alpha = beta");
  if (!satisfies_triangle(alpha, beta, gamma))
    throw ConstraintError("omega_su2: (" + alpha.str() + ", " + beta.str() + ", " + gamma.str() +
                          ") violates the triangle rule");
  if (alpha == beta) return Rational(1, 2);
  const auto casimir = [](HalfInt j) { return j.value() * (j.value() + 1); };
  return Rational(1, 2) + (casimir(alpha) - casimir(beta)) / (Rational(2) * casimir(gamma));
}

SU2Labels su2_labels(const CandidatePoint& point, int n) {
  if (point.m.d() != 2) throw ConstraintError("spin labels need d = 2");
  const HighestWeight tilde = point.conjugate_ancilla();
  return SU2Labels{HalfInt::from_twice(static_cast<int>(point.m[0] - point.m[1])),
                   HalfInt::from_twice(static_cast<int>(tilde[0] - tilde[1])), HalfInt::from_twice(n)};
}

} // namespace clonopt
