#include "clonopt/cloner.hpp"

#include <cmath>
#include <string>

#include "clonopt/errors.hpp"
#include "clonopt/random.hpp"

namespace clonopt {

namespace {

double log_factorial(int n) { return std::lgamma(static_cast<double>(n) + 1.0); }

double sum_log_factorials(const std::vector<int>& counts) {
  double acc = 0.0;
  for (int c : counts) acc += log_factorial(c);
  return acc;
}

// ⟨k| (|n⟩ ⊗ |J⟩) for a product vector J with occupation k − n:
// sqrt(N! ∏k! / (M! ∏n!)).
double embed_overlap(const OccupationVector& k, const OccupationVector& n) {
  const double log_value = log_factorial(n.total()) + sum_log_factorials(k.counts) - log_factorial(k.total()) -
                           sum_log_factorials(n.counts);
  return std::exp(0.5 * log_value);
}

std::vector<int> add_counts(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out(a);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += b[i];
  return out;
}

double cloner_scale(const ClonerSpec& spec) {
  return static_cast<double>(sym_dimension(spec.d, spec.n)) / static_cast<double>(sym_dimension(spec.d, spec.m));
}

} // namespace

void ClonerSpec::validate() const {
  if (d < 2) throw ConstraintError("cloner needs d >= 2, got " + std::to_string(d));
  if (n < 1) throw ConstraintError("cloner needs N >= 1, got " + std::to_string(n));
  if (m < n) throw ConstraintError("cloner needs M >= N, got N=" + std::to_string(n) + " M=" + std::to_string(m));
}

Channel optimal_cloner(const ClonerSpec& spec, ClonerPath path, std::size_t guard) {
  spec.validate();
  const int extra = spec.m - spec.n;
  const std::size_t kraus_count = checked_full_dim(spec.d, extra, guard);
  const double amplitude = std::sqrt(cloner_scale(spec));
  const BasisTag in{BasisKind::symmetric, spec.d, spec.n};

  std::vector<Matrix> kraus;
  kraus.reserve(kraus_count);

  if (path == ClonerPath::dense) {
    checked_full_dim(spec.d, spec.m, guard);
    const Matrix embed_in = sym_embed(spec.d, spec.n, guard);
    const Matrix project_out = symmetrizer(spec.d, spec.m, guard);
    for (std::size_t j = 0; j < kraus_count; ++j) {
      Matrix ancilla = Matrix::Zero(static_cast<Eigen::Index>(kraus_count), 1);
      ancilla(static_cast<Eigen::Index>(j), 0) = 1.0;
      kraus.push_back(amplitude * project_out * kron(embed_in, ancilla));
    }
    return Channel(std::move(kraus), in, BasisTag{BasisKind::full, spec.d, spec.m});
  }

  const SymmetricBasis basis_in(spec.d, spec.n);
  const SymmetricBasis basis_out(spec.d, spec.m);
  const BasisTag out{BasisKind::symmetric, spec.d, spec.m};
  std::vector<int> digits(static_cast<std::size_t>(extra));
  std::vector<int> occupation(static_cast<std::size_t>(spec.d));
  for (std::size_t j = 0; j < kraus_count; ++j) {
    std::size_t rest = j;
    std::fill(occupation.begin(), occupation.end(), 0);
    for (int s = 0; s < extra; ++s) {
      ++occupation[rest % static_cast<std::size_t>(spec.d)];
      rest /= static_cast<std::size_t>(spec.d);
    }
    Matrix k = Matrix::Zero(static_cast<Eigen::Index>(basis_out.size()), static_cast<Eigen::Index>(basis_in.size()));
    for (std::size_t c = 0; c < basis_in.size(); ++c) {
      const std::size_t r = basis_out.index_of(add_counts(basis_in[c].counts, occupation));
      k(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = amplitude * embed_overlap(basis_out[r], basis_in[c]);
    }
    kraus.push_back(std::move(k));
  }
  return Channel(std::move(kraus), in, out);
}

Matrix apply_optimal_cloner(const ClonerSpec& spec, const Matrix& rho) {
  spec.validate();
  const SymmetricBasis basis_in(spec.d, spec.n);
  const SymmetricBasis basis_out(spec.d, spec.m);
  const SymmetricBasis basis_extra(spec.d, spec.m - spec.n);
  if (rho.rows() != static_cast<Eigen::Index>(basis_in.size()) || rho.cols() != rho.rows())
    throw ConstraintError("input matrix does not match the symmetric N-site basis");

  const double scale = cloner_scale(spec);
  Matrix out = Matrix::Zero(static_cast<Eigen::Index>(basis_out.size()), static_cast<Eigen::Index>(basis_out.size()));
  std::vector<std::size_t> target(basis_in.size());
  std::vector<double> weight(basis_in.size());
  for (const auto& j : basis_extra.states()) {
    // Number of ancilla product vectors sharing occupation j.
    const double multiplicity = std::exp(log_factorial(j.total()) - sum_log_factorials(j.counts));
    for (std::size_t c = 0; c < basis_in.size(); ++c) {
      target[c] = basis_out.index_of(add_counts(basis_in[c].counts, j.counts));
      weight[c] = embed_overlap(basis_out[target[c]], basis_in[c]);
    }
    for (std::size_t a = 0; a < basis_in.size(); ++a)
      for (std::size_t b = 0; b < basis_in.size(); ++b)
        out(static_cast<Eigen::Index>(target[a]), static_cast<Eigen::Index>(target[b])) +=
            scale * multiplicity * weight[a] * weight[b] * rho(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
  }
  return out;
}

Rational shrinking_factor(const ClonerSpec& spec) {
  spec.validate();
  return Rational(spec.n, spec.n + spec.d) * Rational(spec.m + spec.d, spec.m);
}

Rational delta_one_closed_form(const ClonerSpec& spec) {
  return Rational(spec.d - 1, spec.d) * abs(Rational(1) - shrinking_factor(spec));
}

Rational all_clone_overlap_closed_form(const ClonerSpec& spec) {
  return Rational(sym_dimension(spec.d, spec.n), sym_dimension(spec.d, spec.m));
}

Matrix single_clone_marginal(const ClonerSpec& spec, const PureState& psi) {
  spec.validate();
  if (psi.d() != spec.d) throw ConstraintError("state dimension does not match the cloner");
  const Vector input = product_power(psi, spec.n);
  const Matrix output = apply_optimal_cloner(spec, input * input.adjoint());
  return single_site_marginal(output, BasisTag{BasisKind::symmetric, spec.d, spec.m});
}

Matrix single_clone_marginal_closed_form(const ClonerSpec& spec, const PureState& psi) {
  const double gamma = to_double(shrinking_factor(spec));
  return gamma * psi.projector() + (1.0 - gamma) / spec.d * Matrix::Identity(spec.d, spec.d);
}

double all_clone_overlap(const ClonerSpec& spec, const PureState& psi) {
  spec.validate();
  const Vector input = product_power(psi, spec.n);
  const Vector ideal = product_power(psi, spec.m);
  const Matrix output = apply_optimal_cloner(spec, input * input.adjoint());
  return (ideal.adjoint() * output * ideal)(0, 0).real();
}

SampledSupremum delta_all_numeric(const ClonerSpec& spec, int samples, std::uint64_t seed, std::size_t guard) {
  spec.validate();
  const auto out_dim = static_cast<std::size_t>(sym_dimension(spec.d, spec.m));
  if (out_dim > guard)
    throw GuardError("symmetric output dimension " + std::to_string(out_dim) + " exceeds the dense guard");
  const auto objective = [&](const PureState& psi) {
    const Vector input = product_power(psi, spec.n);
    const Vector ideal = product_power(psi, spec.m);
    const Matrix diff = apply_optimal_cloner(spec, input * input.adjoint()) - ideal * ideal.adjoint();
    return trace_norm_hermitian(diff);
  };
  PureStateSearch search;
  search.samples = samples;
  const auto best = maximize_over_pure_states(spec.d, seed, objective, search);
  return SampledSupremum{best.value, samples, seed};
}

} // namespace clonopt
