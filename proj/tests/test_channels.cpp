#include <doctest.h>

#include <cmath>

#include "clonopt/channels.hpp"
#include "clonopt/cloner.hpp"
#include "clonopt/errors.hpp"
#include "clonopt/omega_opt.hpp"
#include "clonopt/random.hpp"
#include "oracles.hpp"

using namespace clonopt;

namespace {

double choi_distance(const Channel& a, const Channel& b) { return operator_norm(choi(a) - choi(b)); }

HalfInt half(int twice) { return HalfInt::from_twice(twice); }

} // namespace

TEST_CASE("choi of the identity channel") {
  const Matrix c = choi(identity_channel(2, 1));
  Vector phi = Vector::Zero(4);
  phi(0) = phi(3) = 1.0 / std::sqrt(2.0);
  CHECK(oracle::max_abs(c - 2.0 * phi * phi.adjoint()) < 1e-14);
  CHECK(std::abs(choi(identity_channel(3, 2)).trace().real() - 6.0) < 1e-12);
}

TEST_CASE("complete positivity and trace preservation") {
  const Channel t = optimal_cloner({2, 1, 2});
  CHECK(min_choi_eigenvalue(t) >= -1e-10);
  CHECK(is_completely_positive(t));
  CHECK(is_trace_preserving(t));

  std::vector<Matrix> scaled;
  for (const auto& k : t.kraus()) scaled.push_back(1.1 * k);
  const Channel loud(scaled, t.input(), t.output());
  CHECK_FALSE(is_trace_preserving(loud));
  CHECK_THROWS_AS(stinespring(loud), NumericError);
}

TEST_CASE("channel_from_choi round trip") {
  const Channel t = optimal_cloner({3, 1, 2});
  const Channel back = channel_from_choi(choi(t), t.input(), t.output());
  CHECK(choi_distance(t, back) < 1e-12);
  CHECK(back.kraus().size() <= t.kraus().size());
}

TEST_CASE("twirl") {
  const Channel t = optimal_cloner({2, 1, 2});
  const auto fixed = twirl(t, TwirlConfig{20, 1});
  CHECK(fixed.estimate < 1e-10);
  CHECK(choi_distance(fixed.channel, t) < 1e-10);

  const auto one = twirl(t, TwirlConfig{1, 5});
  CHECK(choi_distance(one.channel, rotate(t, haar_unitary(2, derive_seed(5, 0)))) < 1e-12);

  const Channel constant = constant_output_channel(2, 1, 2);
  const auto averaged = twirl(constant, TwirlConfig{2000, 9});
  CHECK(is_trace_preserving(averaged.channel, 1e-8));
  CHECK(min_choi_eigenvalue(averaged.channel) > -1e-8);
  const auto psi = haar_state(2, 77);
  const Matrix marginal = single_site_marginal(averaged.channel.apply(psi.projector()), averaged.channel.output());
  const double fidelity = (psi.amplitudes().adjoint() * marginal * psi.amplitudes())(0, 0).real();
  const double gamma = (fidelity - 0.5) / 0.5;
  CHECK(std::abs(gamma) < 0.05);
  CHECK(averaged.stderr_ > 0.0);
}

TEST_CASE("stinespring dilation") {
  const Matrix u = haar_unitary(3, 4);
  const Matrix v = stinespring(unitary_channel(u));
  CHECK(oracle::max_abs(v - u) < 1e-14);

  const Channel t = optimal_cloner({2, 1, 2});
  const Matrix w = stinespring(t);
  CHECK(w.rows() == static_cast<Eigen::Index>(t.output().dim() * t.kraus().size()));
  CHECK(oracle::max_abs(w.adjoint() * w - Matrix::Identity(2, 2)) < 1e-12);
  const auto psi = haar_state(2, 8);
  const Matrix reduced = trace_out_environment(w * psi.projector() * w.adjoint(), t.output().dim(), t.kraus().size());
  CHECK(oracle::max_abs(reduced - t.apply(psi.projector())) < 1e-12);
}

TEST_CASE("covariant dilation: rotated Kraus operators mix unitarily") {
  // U_out* K_r U_in = Σ_s W_rs K_s with W unitary on the dilation space.
  // With one ancilla site the Kraus operators are linearly independent.
  for (const ClonerSpec spec : {ClonerSpec{2, 1, 2}, ClonerSpec{3, 2, 3}}) {
  const Channel t = optimal_cloner(spec);
  const auto& k = t.kraus();
  const auto r = static_cast<Eigen::Index>(k.size());
  Matrix gram(r, r);
  for (Eigen::Index a = 0; a < r; ++a)
    for (Eigen::Index b = 0; b < r; ++b) gram(a, b) = (k[a].adjoint() * k[b]).trace();
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    const Matrix g = haar_unitary(spec.d, seed);
    const Matrix u_in = site_representation(g, t.input());
    const Matrix u_out = site_representation(g, t.output());
    Matrix w(r, r);
    double residual = 0.0;
    for (Eigen::Index a = 0; a < r; ++a) {
      const Matrix rotated = u_out.adjoint() * k[a] * u_in;
      Vector rhs(r);
      for (Eigen::Index b = 0; b < r; ++b) rhs(b) = (k[b].adjoint() * rotated).trace();
      const Vector coeff = gram.fullPivLu().solve(rhs);
      Matrix rebuilt = Matrix::Zero(rotated.rows(), rotated.cols());
      for (Eigen::Index b = 0; b < r; ++b) rebuilt += coeff(b) * k[b];
      residual = std::max(residual, oracle::max_abs(rebuilt - rotated));
      w.row(a) = coeff.transpose();
    }
    CHECK(residual < 1e-12);
    CHECK(oracle::max_abs(w.adjoint() * w - Matrix::Identity(r, r)) < 1e-12);
  }
  }
}

TEST_CASE("covariance defect") {
  CHECK(covariance_defect(optimal_cloner({2, 1, 2}), 20, 1).estimate <= 1e-10);
  CHECK(covariance_defect(optimal_cloner({3, 2, 3}), 20, 1).estimate <= 1e-10);
  CHECK(covariance_defect(identity_channel(3, 2), 20, 1).estimate <= 1e-10);
  const auto r = covariance_defect(constant_output_channel(2, 1, 2), 20, 1);
  CHECK(r.estimate > 0.1);
  CHECK(r.samples == 20);
}

TEST_CASE("omega measurement") {
  CHECK(std::abs(omega_measure(optimal_cloner({2, 1, 2})) - 4.0 / 3.0) < 1e-8);
  CHECK(std::abs(omega_measure(identity_channel(2, 3)) - 1.0) < 1e-8);
  CHECK(std::abs(omega_measure(optimal_cloner({3, 2, 4})) - 7.0 / 5.0) < 1e-8);
  CHECK_THROWS_AS(omega_measure(constant_output_channel(2, 1, 2)), NumericError);
  CHECK(traceless_hermitian_basis(3).size() == 8u);
}

TEST_CASE("delta_one numeric") {
  const auto r = delta_one_numeric(optimal_cloner({2, 1, 2}), 200, 4);
  CHECK(r.estimate >= 1.0 / 6.0 - 1e-9);
  CHECK(r.estimate <= 1.0 / 6.0 + 2e-3);
  CHECK(delta_one_numeric(identity_channel(2, 2), 50, 4).estimate < 1e-12);
  CHECK(delta_one_numeric(optimal_cloner({2, 1, 2}), 200, 4).estimate == r.estimate);
}

TEST_CASE("su2 component cloners") {
  for (int m = 1; m <= 6; ++m)
    for (int n = 1; n <= m; ++n) {
      CAPTURE(n);
      CAPTURE(m);
      const SU2Labels optimal{half(m), half(m - n), half(n)};
      const Channel component = su2_component_cloner(optimal, n, m);
      CHECK(is_trace_preserving(component));
      CHECK(choi_distance(component, optimal_cloner({2, n, m}).with_full_output()) < 1e-8);
    }

  const Channel c = su2_component_cloner({half(2), half(1), half(1)}, 1, 2);
  CHECK(std::abs(omega_measure(c) - 4.0 / 3.0) < 1e-8);

  // A non-optimal component: α = 1/2, β = 1 for N = 1, M = 3.
  const Channel low = su2_component_cloner({half(1), half(2), half(1)}, 1, 3);
  CHECK(is_trace_preserving(low));
  CHECK(std::abs(omega_measure(low) - to_double(omega_su2(half(1), half(2), half(1)))) < 1e-8);

  CHECK_THROWS_AS(su2_component_cloner({half(4), half(0), half(2)}, 2, 4), ConstraintError);
  CHECK_THROWS_AS(su2_component_cloner({half(3), half(1), half(2)}, 2, 4), ConstraintError);  // parity of M − 2α
}

TEST_CASE("clebsch-gordan isometry") {
  const Matrix v = clebsch_gordan_isometry(half(1), half(1), half(2));
  CHECK(oracle::max_abs(v.adjoint() * v - Matrix::Identity(3, 3)) < 1e-14);
  // |1,0> = (|↑↓> + |↓↑>)/√2
  CHECK(std::abs(v(1, 1) - 1.0 / std::sqrt(2.0)) < 1e-14);
  CHECK(std::abs(v(2, 1) - 1.0 / std::sqrt(2.0)) < 1e-14);
  const Matrix singlet = clebsch_gordan_isometry(half(1), half(1), half(0));
  CHECK(singlet(1, 0).real() > 0.0);  // Condon–Shortley: <1/2 1/2; 1/2 −1/2 | 0 0> > 0
  CHECK(std::abs(singlet(1, 0) + singlet(2, 0)) < 1e-14);
}
