#include "clonopt/su2.hpp"

#include <cmath>
#include <cstdlib>

#include "clonopt/errors.hpp"

namespace clonopt {

HalfInt HalfInt::parse(const std::string& text) {
  const auto fail = [&] { return ConstraintError("not a non-negative half-integer: '" + text + "'"); };
  if (text.empty()) throw fail();
  char* end = nullptr;
  if (const auto slash = text.find('/'); slash != std::string::npos) {
    const long num = std::strtol(text.c_str(), &end, 10);
    if (end != text.c_str() + slash) throw fail();
    const long den = std::strtol(text.c_str() + slash + 1, &end, 10);
    if (*end != '\0' || num < 0) throw fail();
    if (den == 1) return from_twice(static_cast<int>(2 * num));
    if (den == 2) return from_twice(static_cast<int>(num));
    throw fail();
  }
  const double value = std::strtod(text.c_str(), &end);
  if (*end != '\0' || value < 0.0) throw fail();
  const double twice = 2.0 * value;
  if (std::abs(twice - std::round(twice)) > 1e-12) throw fail();
  return from_twice(static_cast<int>(std::lround(twice)));
}

std::string HalfInt::str() const {
  if (twice_ % 2 == 0) return std::to_string(twice_ / 2);
  return std::to_string(twice_) + "/2";
}

bool satisfies_triangle(HalfInt a, HalfInt b, HalfInt c) {
  if ((a.twice() + b.twice() + c.twice()) % 2 != 0) return false;
  return std::abs(a.twice() - b.twice()) <= c.twice() && c.twice() <= a.twice() + b.twice();
}

Matrix spin_raising(HalfInt j) {
  const int dim = j.dim();
  const double jj = 0.5 * j.twice();
  Matrix out = Matrix::Zero(dim, dim);
  // J_+ |j, m⟩ = sqrt(j(j+1) − m(m+1)) |j, m+1⟩, index i = j − m.
  for (int i = 1; i < dim; ++i) {
    const double m = jj - i;
    out(i - 1, i) = std::sqrt(jj * (jj + 1.0) - m * (m + 1.0));
  }
  return out;
}

Matrix clebsch_gordan_isometry(HalfInt j1, HalfInt j2, HalfInt j) {
  if (!satisfies_triangle(j1, j2, j))
    throw ConstraintError("spins " + j1.str() + ", " + j2.str() + ", " + j.str() + " violate the triangle rule");
  const int d1 = j1.dim();
  const int d2 = j2.dim();
  const double s1 = 0.5 * j1.twice();
  const double s2 = 0.5 * j2.twice();
  const double s = 0.5 * j.twice();

  // Highest weight |j, j⟩ = Σ c(m1) |m1⟩|j − m1⟩; J_+ v = 0 gives
  // c(m1+1) sqrt(s2(s2+1) − (m2−1) m2) = −c(m1) sqrt(s1(s1+1) − m1(m1+1)), m2 = j − m1.
  Vector top = Vector::Zero(d1 * d2);
  const double m1_min = std::max(-s1, s - s2);
  const double m1_max = std::min(s1, s + s2);
  const int steps = static_cast<int>(std::lround(m1_max - m1_min));
  std::vector<double> coeff(static_cast<std::size_t>(steps) + 1);
  coeff[0] = 1.0;
  for (int t = 0; t < steps; ++t) {
    const double m1 = m1_min + t;
    const double m2 = s - m1;
    const double up1 = std::sqrt(s1 * (s1 + 1.0) - m1 * (m1 + 1.0));
    const double up2 = std::sqrt(s2 * (s2 + 1.0) - (m2 - 1.0) * m2);
    coeff[static_cast<std::size_t>(t) + 1] = -coeff[static_cast<std::size_t>(t)] * up1 / up2;
  }
  // Condon–Shortley: the m1 = j1 component is positive.
  const double sign = coeff.back() > 0.0 ? 1.0 : -1.0;
  for (int t = 0; t <= steps; ++t) {
    const double m1 = m1_min + t;
    const double m2 = s - m1;
    const auto i1 = static_cast<int>(std::lround(s1 - m1));
    const auto i2 = static_cast<int>(std::lround(s2 - m2));
    top(i1 * d2 + i2) = sign * coeff[static_cast<std::size_t>(t)];
  }
  top.normalize();

  const Matrix lower = kron(spin_raising(j1).adjoint(), Matrix::Identity(d2, d2)) +
                       kron(Matrix::Identity(d1, d1), spin_raising(j2).adjoint());
  Matrix out(d1 * d2, j.dim());
  out.col(0) = top;
  for (int i = 1; i < j.dim(); ++i) {
    Vector next = lower * out.col(i - 1);
    out.col(i) = next / next.norm();
  }
  return out;
}

Matrix spin_chain_embedding(HalfInt alpha, int sites) {
  if (sites < 1) throw ConstraintError("spin chain needs at least one site");
  if (alpha.twice() > sites || (sites - alpha.twice()) % 2 != 0)
    throw ConstraintError("spin " + alpha.str() + " does not occur in " + std::to_string(sites) + " spin-1/2 sites");

  const HalfInt half = HalfInt::from_twice(1);
  Matrix embedding = Matrix::Identity(2, 2);  // one site carries spin 1/2
  HalfInt current = half;
  for (int site = 2; site <= sites; ++site) {
    // Climb to α first, then oscillate α+1/2, α so the chain ends on α.
    // For α = 0 the oscillation is 1/2, 0, 1/2, 0, ...
    const HalfInt next = HalfInt::from_twice(current.twice() + (current.twice() <= alpha.twice() ? 1 : -1));
    const Matrix coupling = clebsch_gordan_isometry(current, half, next);
    embedding = kron(embedding, Matrix::Identity(2, 2)) * coupling;
    current = next;
  }
  if (current != alpha) throw NumericError("spin chain did not terminate on the requested spin");
  return embedding;
}

} // namespace clonopt
