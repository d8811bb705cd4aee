#include <doctest.h>

#include "clonopt/cloner.hpp"
#include "clonopt/errors.hpp"
#include "clonopt/omega_opt.hpp"

using namespace clonopt;

namespace {

CandidatePoint pt(std::vector<std::int64_t> m, std::vector<std::int64_t> mu) {
  return CandidatePoint{HighestWeight(std::move(m)), std::move(mu)};
}

HalfInt half(int twice) { return HalfInt::from_twice(twice); }

// C̃2 written out with plain loops.
Rational c2_su(const std::vector<std::int64_t>& m) {
  const auto d = static_cast<std::int64_t>(m.size());
  std::int64_t c1 = 0;
  std::int64_t c2 = 0;
  for (std::size_t j = 0; j < m.size(); ++j) {
    c1 += m[j];
    c2 += m[j] * m[j];
    for (std::size_t k = j + 1; k < m.size(); ++k) c2 += m[j] - m[k];
  }
  return Rational(c2) - Rational(c1 * c1, d);
}

// ω from the Casimirs of m and n = conj(m − μ).
Rational omega_oracle(const CandidatePoint& p, int d, int n) {
  std::vector<std::int64_t> tilde;
  for (std::size_t k = 0; k < p.mu.size(); ++k) tilde.push_back(p.m[k] - p.mu[k]);
  std::vector<std::int64_t> conj(tilde.rbegin(), tilde.rend());
  for (auto& v : conj) v = -v;
  std::vector<std::int64_t> sym(static_cast<std::size_t>(d), 0);
  sym[0] = n;
  return Rational(1, 2) + (c2_su(p.m.components()) - c2_su(conj)) / (Rational(2) * c2_su(sym));
}

std::int64_t f2_oracle(const CandidatePoint& p) {
  std::int64_t s = 0;
  for (std::size_t k = 0; k < p.mu.size(); ++k)
    s += p.mu[k] * (2 * p.m[k] - 2 * static_cast<std::int64_t>(k + 1) - p.mu[k]);
  return s;
}

} // namespace

TEST_CASE("f2") {
  for (int d = 2; d <= 4; ++d)
    for (int m = 1; m <= 6; ++m)
      for (int n = 1; n <= m; ++n) {
        std::vector<std::int64_t> mm(static_cast<std::size_t>(d), 0);
        std::vector<std::int64_t> mu(static_cast<std::size_t>(d), 0);
        mm[0] = m;
        mu[0] = n;
        CHECK(f2(CandidatePoint{HighestWeight(mm), mu}) == 2 * m * n - n * n - 2 * n);
      }
  CHECK(f2(pt({3, 0, 0}, {0, 0, 0})) == 0);
  CHECK(f2(pt({2, 0}, {0, 1})) == -5);
  CHECK_THROWS_AS(f2(pt({2, 0}, {3, 0})), ConstraintError);
  CHECK_THROWS_AS(f2(pt({2, 0}, {1})), ConstraintError);
}

TEST_CASE("omega_of_point") {
  CHECK(omega_of_point(expected_maximizer(2, 1, 2), 2, 1, 2) == Rational(4, 3));
  CHECK(omega_of_point(expected_maximizer(3, 2, 4), 3, 2, 4) == Rational(7, 5));
  for (int d = 2; d <= 4; ++d)
    for (int n = 1; n <= 5; ++n) CHECK(omega_of_point(expected_maximizer(d, n, n), d, n, n) == Rational(1));
  CHECK_THROWS_AS(omega_of_point(pt({2, 0}, {0, 0}), 2, 0, 2), ConstraintError);
  CHECK_THROWS_AS(omega_of_point(pt({2, 0}, {1, 0}), 2, 1, 3), ConstraintError);
}

TEST_CASE("enumerate_W1") {
  const auto points = enumerate_W1(2, 1, 2);
  REQUIRE(points.size() == 3);
  CHECK(points[0] == pt({2, 0}, {1, 0}));
  CHECK(points[1] == pt({2, 0}, {0, 1}));
  CHECK(points[2] == pt({1, 1}, {0, 1}));

  for (int d = 2; d <= 4; ++d)
    for (int m = 0; m <= 6; ++m) {
      const auto zero = enumerate_W1(d, 0, m);
      CHECK(zero.size() == partitions(d, m).size());
      for (const auto& p : zero) CHECK(std::all_of(p.mu.begin(), p.mu.end(), [](auto v) { return v == 0; }));
    }

  CHECK_THROWS_AS(enumerate_W1(2, 1, 31), GuardError);
  CHECK_THROWS_AS(enumerate_W1(9, 1, 2), GuardError);
}

TEST_CASE("every enumerated point is a genuine coupling and the routes agree") {
  for (int d = 2; d <= 4; ++d)
    for (int m = 1; m <= 6; ++m)
      for (int n = 1; n <= m + 1; ++n)
        for (const auto& p : enumerate_W1(d, n, m)) {
          CAPTURE(p.str());
          CHECK(is_feasible(p, n, m));
          CHECK(contains_sym(p.m, p.ancilla(), n));
          CHECK(f2(p) == f2_oracle(p));
          const Rational w = omega_of_point(p, d, n, m);
          CHECK(w == omega_from_casimirs(p, d, n, m));
          CHECK(w == omega_oracle(p, d, n));
        }
}

TEST_CASE("enumeration agrees with a filter over all small tuples") {
  // Brute filter: every dominant m and every μ in a box, kept if feasible.
  const int d = 3;
  for (int m = 1; m <= 5; ++m)
    for (int n = 1; n <= 4; ++n) {
      std::size_t count = 0;
      for (const auto& w : partitions(d, m))
        for (int a = 0; a <= n; ++a)
          for (int b = 0; a + b <= n; ++b)
            if (is_feasible(CandidatePoint{w, {a, b, n - a - b}}, n, m)) ++count;
      CHECK(enumerate_W1(d, n, m).size() == count);
    }
}

TEST_CASE("feasibility requires a non-negative last increment") {
  // With μ_d unconstrained, (2,0) with μ = (2,−1) would score F2 = 3 above the true maximum.
  const auto p = pt({2, 0}, {2, -1});
  CHECK_FALSE(is_feasible(p, 1, 2));
  CHECK_THROWS_AS(require_feasible(p, 1, 2), ConstraintError);
  CHECK(f2_oracle(p) == 3);
  CHECK(maximize_brute(2, 1, 2).f2_max == 1);
}

TEST_CASE("maximize_brute") {
  const auto r = maximize_brute(2, 1, 2);
  CHECK(r.omega_max == Rational(4, 3));
  CHECK(r.unique);
  REQUIRE(r.maximizers.size() == 1);
  CHECK(r.maximizers[0] == pt({2, 0}, {1, 0}));
  CHECK(r.count_enumerated == 3u);

  const auto r3 = maximize_brute(3, 2, 4);
  CHECK(r3.omega_max == Rational(7, 5));
  CHECK(r3.unique);
  CHECK(r3.gamma == Rational(7, 10));
  CHECK(r3.delta_one == Rational(1, 5));

  const auto wide = maximize_brute(2, 3, 2);
  REQUIRE(wide.maximizers.size() == 1);
  CHECK(wide.maximizers[0] == pt({2, 0}, {2, 1}));
  CHECK(wide.maximizers[0] == expected_maximizer(2, 3, 2));

  CHECK_THROWS_AS(maximize_brute(2, 0, 2), ConstraintError);
}

TEST_CASE("brute-force optimum on a small grid") {
  for (int d = 2; d <= 4; ++d)
    for (int m = 2; m <= 7; ++m)
      for (int n = 1; n < m; ++n) {
        const auto r = maximize_brute(d, n, m);
        CHECK(r.omega_max == Rational(m + d, n + d));
        CHECK(r.unique);
        CHECK(r.maximizers.front() == expected_maximizer(d, n, m));
        CHECK(r.gamma == shrinking_factor({d, n, m}));
        CHECK(r.delta_one == delta_one_closed_form({d, n, m}));
        for (const auto& p : enumerate_W1(d, n, m))
          if (!(p == r.maximizers.front())) CHECK(omega_of_point(p, d, n, m) < r.omega_max);
      }
}

TEST_CASE("thread count does not change the brute-force result") {
  const auto one = maximize_brute(4, 3, 9, {}, 1);
  for (int threads : {2, 3, 7}) {
    const auto many = maximize_brute(4, 3, 9, {}, threads);
    CHECK(many.omega_max == one.omega_max);
    CHECK(many.maximizers == one.maximizers);
    CHECK(many.count_enumerated == one.count_enumerated);
  }
}

TEST_CASE("greedy ascent") {
  const auto r = maximize_greedy(2, 1, 2, pt({1, 1}, {0, 1}));
  CHECK(r.point == pt({2, 0}, {1, 0}));
  CHECK_FALSE(r.steps.empty());

  const auto fixed = maximize_greedy(3, 2, 4, expected_maximizer(3, 2, 4));
  CHECK(fixed.point == expected_maximizer(3, 2, 4));
  CHECK(fixed.steps.empty());

  // The stuck configuration the two-slot endgame exists for.
  const auto stuck = maximize_greedy(3, 3, 5, pt({3, 1, 1}, {2, 0, 1}));
  CHECK(stuck.point == expected_maximizer(3, 3, 5));

  CHECK_THROWS_AS(maximize_greedy(2, 1, 2, pt({2, 0}, {2, -1})), ConstraintError);
}

TEST_CASE("greedy reaches the brute-force maximizer from random starts") {
  for (int d = 2; d <= 4; ++d)
    for (int m = 2; m <= 7; ++m)
      for (int n = 1; n < m; ++n) {
        const auto target = maximize_brute(d, n, m).maximizers.front();
        CHECK(maximize_greedy(d, n, m).point == target);
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
          const auto start = random_feasible_point(d, n, m, seed);
          const auto r = maximize_greedy(d, n, m, start);
          CAPTURE(start.str());
          CHECK(r.point == target);
          for (const auto& s : r.steps)
            if (s.move == GreedyMove::shift_increment || s.move == GreedyMove::grow_first_row ||
                s.move == GreedyMove::two_slot_endgame)
              CHECK(s.f2_after > s.f2_before);
        }
      }
}

TEST_CASE("default start is feasible") {
  for (int d = 2; d <= 5; ++d)
    for (int m = 1; m <= 9; ++m)
      for (int n = 1; n <= m; ++n) CHECK(is_feasible(default_start(d, n, m), n, m));
}

TEST_CASE("omega_su2") {
  for (int m = 1; m <= 8; ++m)
    for (int n = 1; n <= m; ++n) CHECK(omega_su2(half(m), half(m - n), half(n)) == Rational(m + 2, n + 2));
  for (int a = 0; a <= 6; ++a)
    for (int g = 1; g <= 6; ++g)
      if (satisfies_triangle(half(a), half(a), half(g))) CHECK(omega_su2(half(a), half(a), half(g)) == Rational(1, 2));
  CHECK(omega_su2(half(2), half(1), half(1)) == Rational(4, 3));
  CHECK_THROWS_AS(omega_su2(half(4), half(0), half(2)), ConstraintError);
  CHECK_THROWS_AS(omega_su2(half(2), half(0), half(0)), ConstraintError);
  CHECK(omega_su2(half(2), half(2), half(0)) == Rational(1, 2));
}

TEST_CASE("spin dictionary matches the weight formulation for d = 2") {
  for (int m = 1; m <= 12; ++m)
    for (int n = 1; n <= m + 2; ++n)
      for (const auto& p : enumerate_W1(2, n, m)) {
        const auto labels = su2_labels(p, n);
        CHECK(omega_su2(labels.alpha, labels.beta, labels.gamma) == omega_of_point(p, 2, n, m));
      }
}

TEST_CASE("half-integers") {
  CHECK(HalfInt::parse("3/2") == half(3));
  CHECK(HalfInt::parse("1.5") == half(3));
  CHECK(HalfInt::parse("2") == half(4));
  CHECK(half(3).str() == "3/2");
  CHECK(half(4).str() == "2");
  CHECK_THROWS_AS(HalfInt::parse("1/3"), ConstraintError);
  CHECK_THROWS_AS(HalfInt::parse("-1"), ConstraintError);
  CHECK_THROWS_AS(HalfInt::parse("x"), ConstraintError);
}
