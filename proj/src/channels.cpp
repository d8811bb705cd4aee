#include "clonopt/channels.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "clonopt/errors.hpp"
#include "clonopt/random.hpp"

namespace clonopt {

namespace {

void require_cloner_shape(const Channel& t) {
  if (t.input().kind != BasisKind::symmetric)
    throw ConstraintError("expected a channel with symmetric N-site input");
}

double standard_error(const std::vector<double>& values) {
  const auto n = static_cast<double>(values.size());
  if (values.size() < 2) return 0.0;
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= n;
  double var = 0.0;
  for (double v : values) var += (v - mean) * (v - mean);
  var /= (n - 1.0);
  return std::sqrt(var / n);
}

Matrix collective(const Matrix& a, const BasisTag& basis) {
  if (basis.kind == BasisKind::symmetric) return one_body_operator(a, basis.sites);
  return collective_operator(a, basis.sites);
}

} // namespace

Matrix choi(const Channel& t) {
  const auto in = static_cast<Eigen::Index>(t.input().dim());
  const auto out = static_cast<Eigen::Index>(t.output().dim());
  Matrix c = Matrix::Zero(in * out, in * out);
  for (const auto& k : t.kraus()) {
    // vec[i·out + o] = K[o, i]
    const Eigen::Map<const Vector> vec(k.data(), in * out);
    c.noalias() += vec * vec.adjoint();
  }
  return c;
}

Channel channel_from_choi(const Matrix& choi_matrix, const BasisTag& in, const BasisTag& out) {
  const auto in_dim = static_cast<Eigen::Index>(in.dim());
  const auto out_dim = static_cast<Eigen::Index>(out.dim());
  if (choi_matrix.rows() != in_dim * out_dim || choi_matrix.cols() != choi_matrix.rows())
    throw ConstraintError("Choi matrix shape does not match the basis tags");
  Eigen::SelfAdjointEigenSolver<Matrix> solver(0.5 * (choi_matrix + choi_matrix.adjoint()));
  if (solver.info() != Eigen::Success) throw NumericError("Choi eigendecomposition failed");
  const auto& values = solver.eigenvalues();
  const double cutoff = std::max(1e-14 * std::abs(values.maxCoeff()), 0.0);
  std::vector<Matrix> kraus;
  for (Eigen::Index r = values.size() - 1; r >= 0; --r) {
    if (values(r) <= cutoff) continue;
    const Vector v = std::sqrt(values(r)) * solver.eigenvectors().col(r);
    kraus.push_back(Eigen::Map<const Matrix>(v.data(), out_dim, in_dim));
  }
  if (kraus.empty()) throw NumericError("Choi matrix has no positive spectrum");
  return Channel(std::move(kraus), in, out);
}

double min_choi_eigenvalue(const Channel& t) { return min_eigenvalue(choi(t)); }

bool is_completely_positive(const Channel& t, double floor) { return min_choi_eigenvalue(t) >= floor; }

bool is_trace_preserving(const Channel& t, double tolerance) {
  return t.trace_preservation_defect() <= tolerance;
}

Matrix site_representation(const Matrix& u, const BasisTag& basis) {
  if (basis.kind == BasisKind::symmetric) return sym_power(u, basis.sites);
  return kron_power(u, basis.sites);
}

Channel rotate(const Channel& t, const Matrix& u) {
  if (u.rows() != t.d() || u.cols() != t.d()) throw ConstraintError("unitary dimension does not match the channel");
  const Matrix u_in = site_representation(u, t.input());
  const Matrix u_out_adj = site_representation(u, t.output()).adjoint();
  std::vector<Matrix> kraus;
  kraus.reserve(t.kraus().size());
  for (const auto& k : t.kraus()) kraus.push_back(u_out_adj * k * u_in);
  return Channel(std::move(kraus), t.input(), t.output());
}

TwirlResult twirl(const Channel& t, const TwirlConfig& cfg) {
  require_cloner_shape(t);
  if (cfg.sample_count < 1) throw ConstraintError("twirl needs at least one sample");
  const Matrix reference = choi(t);
  Matrix sum = Matrix::Zero(reference.rows(), reference.cols());
  Eigen::MatrixXd sum_sq = Eigen::MatrixXd::Zero(reference.rows(), reference.cols());
  for (int i = 0; i < cfg.sample_count; ++i) {
    const Matrix u = haar_unitary(t.d(), derive_seed(cfg.seed, static_cast<std::uint64_t>(i)));
    const Matrix c = choi(rotate(t, u));
    sum += c;
    sum_sq += c.cwiseAbs2();
  }
  const double n = cfg.sample_count;
  const Matrix mean = sum / n;
  double worst_stderr = 0.0;
  if (cfg.sample_count > 1) {
    const Eigen::MatrixXd var = ((sum_sq / n) - mean.cwiseAbs2()).cwiseMax(0.0) * (n / (n - 1.0));
    worst_stderr = std::sqrt(var.maxCoeff() / n);
  }
  Channel averaged = channel_from_choi(mean, t.input(), t.output());
  return TwirlResult{std::move(averaged), operator_norm(mean - reference), cfg.sample_count, cfg.seed, worst_stderr};
}

Matrix stinespring(const Channel& t) {
  const double defect = t.trace_preservation_defect();
  if (defect > tol::structural)
    throw NumericError("Stinespring dilation needs a trace-preserving channel (defect " + std::to_string(defect) + ")");
  const auto env = static_cast<Eigen::Index>(t.kraus().size());
  const auto out = static_cast<Eigen::Index>(t.output().dim());
  const auto in = static_cast<Eigen::Index>(t.input().dim());
  Matrix v = Matrix::Zero(out * env, in);
  for (Eigen::Index r = 0; r < env; ++r) {
    const Matrix& k = t.kraus()[static_cast<std::size_t>(r)];
    for (Eigen::Index o = 0; o < out; ++o) v.row(o * env + r) = k.row(o);
  }
  return v;
}

Matrix trace_out_environment(const Matrix& w, std::size_t out_dim, std::size_t env_dim) {
  const auto out = static_cast<Eigen::Index>(out_dim);
  const auto env = static_cast<Eigen::Index>(env_dim);
  if (w.rows() != out * env || w.cols() != out * env) throw ConstraintError("operator shape does not match out·env");
  Matrix result = Matrix::Zero(out, out);
  for (Eigen::Index a = 0; a < out; ++a)
    for (Eigen::Index b = 0; b < out; ++b)
      for (Eigen::Index r = 0; r < env; ++r) result(a, b) += w(a * env + r, b * env + r);
  return result;
}

SampledReport covariance_defect(const Channel& t, int samples, std::uint64_t seed) {
  require_cloner_shape(t);
  if (samples < 1) throw ConstraintError("covariance_defect needs at least one sample");
  const Matrix reference = choi(t);
  std::vector<double> defects;
  defects.reserve(static_cast<std::size_t>(samples));
  for (int i = 0; i < samples; ++i) {
    const Matrix u = haar_unitary(t.d(), derive_seed(seed, static_cast<std::uint64_t>(i)));
    // The Choi difference is Hermitian, so its operator norm is the largest |eigenvalue|.
    defects.push_back(hermitian_norm(choi(rotate(t, u)) - reference));
  }
  return SampledReport{*std::max_element(defects.begin(), defects.end()), samples, seed, standard_error(defects)};
}

std::vector<Matrix> traceless_hermitian_basis(int d) {
  std::vector<Matrix> basis;
  for (int j = 0; j < d; ++j)
    for (int k = j + 1; k < d; ++k) {
      Matrix sym = Matrix::Zero(d, d);
      sym(j, k) = 1.0;
      sym(k, j) = 1.0;
      basis.push_back(sym);
      Matrix anti = Matrix::Zero(d, d);
      anti(j, k) = Complex(0.0, -1.0);
      anti(k, j) = Complex(0.0, 1.0);
      basis.push_back(anti);
    }
  for (int l = 1; l < d; ++l) {
    Matrix diag = Matrix::Zero(d, d);
    for (int i = 0; i < l; ++i) diag(i, i) = 1.0;
    diag(l, l) = -static_cast<double>(l);
    basis.push_back(diag);
  }
  return basis;
}

OmegaFit fit_omega(const Channel& t) {
  require_cloner_shape(t);
  double num = 0.0;
  double den = 0.0;
  std::vector<std::pair<Matrix, Matrix>> pairs;
  for (const auto& a : traceless_hermitian_basis(t.d())) {
    Matrix image = t.apply_adjoint(collective(a, t.output()));
    Matrix target = one_body_operator(a, t.n());
    num += (target.adjoint() * image).trace().real();
    den += target.squaredNorm();
    pairs.emplace_back(std::move(image), std::move(target));
  }
  if (den == 0.0) throw NumericError("omega is undefined for N = 0");
  const double omega = num / den;
  double residual_sq = 0.0;
  for (const auto& [image, target] : pairs) residual_sq += (image - omega * target).squaredNorm();
  return OmegaFit{omega, std::sqrt(residual_sq / den)};
}

double omega_measure(const Channel& t) {
  require_cloner_shape(t);
  // Frobenius norm bounds the operator norm and avoids an eigensolve per sample.
  const Matrix reference = choi(t);
  for (std::uint64_t i = 0; i < 8; ++i) {
    const double defect = (choi(rotate(t, haar_unitary(t.d(), derive_seed(0x6f6d656761ULL, i)))) - reference).norm();
    if (defect > tol::omega_residual)
      throw NumericError("channel not covariant enough to define omega (covariance defect " +
                         std::to_string(defect) + ")");
  }
  const OmegaFit fit = fit_omega(t);
  if (fit.residual > tol::omega_residual)
    throw NumericError("channel not covariant enough to define omega (residual " +
                       std::to_string(fit.residual) + ")");
  return fit.omega;
}

SampledReport delta_one_numeric(const Channel& t, int samples, std::uint64_t seed) {
  require_cloner_shape(t);
  const BasisTag& out = t.output();
  const int sites = out.kind == BasisKind::symmetric ? 1 : out.sites;
  std::vector<double> sampled;
  const auto objective = [&](const PureState& psi) {
    const Vector input = product_power(psi, t.n());
    const Matrix output = t.apply(input * input.adjoint());
    const Matrix sigma = psi.projector();
    double worst = 0.0;
    for (int k = 0; k < sites; ++k)
      worst = std::max(worst, positive_part_trace(single_site_marginal(output, out, k) - sigma));
    return worst;
  };
  const auto recording = [&](const PureState& psi) {
    const double v = objective(psi);
    sampled.push_back(v);
    return v;
  };
  PureStateSearch search;
  search.samples = samples;
  const auto best = maximize_over_pure_states(t.d(), seed, recording, search);
  sampled.resize(std::min(sampled.size(), static_cast<std::size_t>(samples)));
  return SampledReport{best.value, samples, seed, standard_error(sampled)};
}

Channel su2_component_cloner(const SU2Labels& labels, int n, int m) {
  if (n < 0 || m < 1) throw ConstraintError("component cloner needs N >= 0 and M >= 1");
  if (labels.gamma.twice() != n)
    throw ConstraintError("gamma must equal N/2 (got " + labels.gamma.str() + " for N=" + std::to_string(n) + ")");
  if (labels.alpha.twice() > m)
    throw ConstraintError("alpha = " + labels.alpha.str() + " exceeds M/2 = " + HalfInt::from_twice(m).str());
  if ((m - labels.alpha.twice()) % 2 != 0)
    throw ConstraintError("alpha = " + labels.alpha.str() + " does not occur in " + std::to_string(m) + " qubits");
  if (!satisfies_triangle(labels.alpha, labels.beta, labels.gamma))
    throw ConstraintError("labels (" + labels.alpha.str() + ", " + labels.beta.str() + ", " + labels.gamma.str() +
                          ") violate the triangle rule");

  const Matrix embed = spin_chain_embedding(labels.alpha, m);
  const Matrix coupling = clebsch_gordan_isometry(labels.alpha, labels.beta, labels.gamma);
  const int dim_a = labels.alpha.dim();
  const int dim_b = labels.beta.dim();
  std::vector<Matrix> kraus;
  kraus.reserve(static_cast<std::size_t>(dim_b));
  for (int b = 0; b < dim_b; ++b) {
    Matrix slice(dim_a, coupling.cols());
    for (int a = 0; a < dim_a; ++a) slice.row(a) = coupling.row(a * dim_b + b);
    kraus.push_back(embed * slice);
  }
  return Channel(std::move(kraus), BasisTag{BasisKind::symmetric, 2, n}, BasisTag{BasisKind::full, 2, m});
}

} // namespace clonopt
