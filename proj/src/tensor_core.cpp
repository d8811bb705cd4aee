#include "clonopt/tensor_core.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "clonopt/errors.hpp"

namespace clonopt {

namespace {

void require_modes(int d) {
  if (d < 1) throw ConstraintError("number of modes must be positive, got " + std::to_string(d));
}

void require_count(int n) {
  if (n < 0) throw ConstraintError("number of sites must be non-negative, got " + std::to_string(n));
}

void fill_basis(int d, int remaining, std::vector<int>& prefix, std::vector<OccupationVector>& out) {
  const auto mode = static_cast<int>(prefix.size());
  if (mode == d - 1) {
    prefix.push_back(remaining);
    out.push_back(OccupationVector{prefix});
    prefix.pop_back();
    return;
  }
  for (int c = remaining; c >= 0; --c) {
    prefix.push_back(c);
    fill_basis(d, remaining - c, prefix, out);
    prefix.pop_back();
  }
}

double log_factorial(int n) { return std::lgamma(static_cast<double>(n) + 1.0); }

// sqrt(N! / ∏ n_i!)
double sqrt_multinomial(const std::vector<int>& counts) {
  const int total = std::accumulate(counts.begin(), counts.end(), 0);
  double log_value = log_factorial(total);
  for (int c : counts) log_value -= log_factorial(c);
  return std::exp(0.5 * log_value);
}

std::vector<int> digits_of(std::size_t index, int d, int n) {
  std::vector<int> digits(static_cast<std::size_t>(n));
  for (int k = n - 1; k >= 0; --k) {
    digits[static_cast<std::size_t>(k)] = static_cast<int>(index % static_cast<std::size_t>(d));
    index /= static_cast<std::size_t>(d);
  }
  return digits;
}

Eigen::VectorXd hermitian_eigenvalues(const Matrix& a) {
  const Matrix h = 0.5 * (a + a.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw NumericError("Hermitian eigensolver failed");
  return solver.eigenvalues();
}

} // namespace

int OccupationVector::total() const { return std::accumulate(counts.begin(), counts.end(), 0); }

std::int64_t sym_dimension(int d, int n) {
  if (d < 1) throw ConstraintError("sym_dimension: d must be positive");
  require_count(n);
  // binomial(d+n-1, n) built as ∏_{k=1}^{n} (d-1+k)/k; each partial product is a binomial.
  __int128 value = 1;
  for (int k = 1; k <= n; ++k) {
    value = value * (d - 1 + k) / k;
    if (value > std::numeric_limits<std::int64_t>::max())
      throw ArithmeticOverflow("sym_dimension(" + std::to_string(d) + ", " + std::to_string(n) +
                               ") exceeds the 64-bit range");
  }
  return static_cast<std::int64_t>(value);
}

std::vector<OccupationVector> occupation_basis(int d, int n) {
  require_modes(d);
  require_count(n);
  std::vector<OccupationVector> out;
  out.reserve(static_cast<std::size_t>(sym_dimension(d, n)));
  std::vector<int> prefix;
  prefix.reserve(static_cast<std::size_t>(d));
  fill_basis(d, n, prefix, out);
  return out;
}

SymmetricBasis::SymmetricBasis(int d, int n) : d_(d), n_(n), states_(occupation_basis(d, n)) {
  for (std::size_t i = 0; i < states_.size(); ++i) index_.emplace(states_[i].counts, i);
}

std::size_t SymmetricBasis::index_of(const std::vector<int>& counts) const {
  const auto it = index_.find(counts);
  if (it == index_.end()) throw std::out_of_range("occupation vector not in basis");
  return it->second;
}

std::size_t BasisTag::dim() const {
  if (kind == BasisKind::symmetric) return static_cast<std::size_t>(sym_dimension(d, sites));
  std::size_t out = 1;
  for (int k = 0; k < sites; ++k) out *= static_cast<std::size_t>(d);
  return out;
}

std::size_t checked_full_dim(int d, int n, std::size_t guard) {
  require_modes(d);
  require_count(n);
  std::size_t dim = 1;
  for (int k = 0; k < n; ++k) {
    dim *= static_cast<std::size_t>(d);
    if (dim > guard)
      throw GuardError("full tensor dimension " + std::to_string(d) + "^" + std::to_string(n) +
                       " exceeds the dense guard " + std::to_string(guard) +
                       "; use the occupation-basis routines instead");
  }
  return dim;
}

Matrix sym_embed(int d, int n, std::size_t guard) {
  const std::size_t full = checked_full_dim(d, n, guard);
  const SymmetricBasis basis(d, n);
  Matrix e = Matrix::Zero(static_cast<Eigen::Index>(full), static_cast<Eigen::Index>(basis.size()));
  std::vector<double> amplitude(basis.size());
  for (std::size_t c = 0; c < basis.size(); ++c) amplitude[c] = 1.0 / sqrt_multinomial(basis[c].counts);

  std::vector<int> counts(static_cast<std::size_t>(d));
  for (std::size_t idx = 0; idx < full; ++idx) {
    std::fill(counts.begin(), counts.end(), 0);
    for (int digit : digits_of(idx, d, n)) ++counts[static_cast<std::size_t>(digit)];
    const std::size_t col = basis.index_of(counts);
    e(static_cast<Eigen::Index>(idx), static_cast<Eigen::Index>(col)) = amplitude[col];
  }
  return e;
}

Matrix symmetrizer(int d, int m, std::size_t guard) {
  const Matrix e = sym_embed(d, m, guard);
  return e * e.adjoint();
}

std::size_t product_index(std::span<const int> digits, int d) {
  std::size_t idx = 0;
  for (int digit : digits) idx = idx * static_cast<std::size_t>(d) + static_cast<std::size_t>(digit);
  return idx;
}

Matrix permutation_operator(int d, std::span<const int> perm, std::size_t guard) {
  const int n = static_cast<int>(perm.size());
  const std::size_t full = checked_full_dim(d, n, guard);
  Matrix p = Matrix::Zero(static_cast<Eigen::Index>(full), static_cast<Eigen::Index>(full));
  std::vector<int> moved(static_cast<std::size_t>(n));
  for (std::size_t idx = 0; idx < full; ++idx) {
    const auto digits = digits_of(idx, d, n);
    for (int k = 0; k < n; ++k) moved[static_cast<std::size_t>(perm[static_cast<std::size_t>(k)])] = digits[static_cast<std::size_t>(k)];
    p(static_cast<Eigen::Index>(product_index(moved, d)), static_cast<Eigen::Index>(idx)) = 1.0;
  }
  return p;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Matrix kron_power(const Matrix& u, int n, std::size_t guard) {
  require_count(n);
  checked_full_dim(static_cast<int>(std::max(u.rows(), u.cols())), n, guard);
  Matrix out = Matrix::Identity(1, 1);
  for (int k = 0; k < n; ++k) out = kron(out, u);
  return out;
}

PureState::PureState(Vector amplitudes) : amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() < 1) throw ConstraintError("pure state needs at least one amplitude");
  if (std::abs(amplitudes_.norm() - 1.0) > tol::normalization)
    throw ConstraintError("pure state is not normalized");
}

PureState PureState::normalized(Vector amplitudes) {
  const double norm = amplitudes.norm();
  if (norm == 0.0) throw ConstraintError("cannot normalize the zero vector");
  return PureState(amplitudes / norm);
}

PureState PureState::basis(int d, int k) {
  require_modes(d);
  if (k < 0 || k >= d) throw ConstraintError("basis index out of range");
  Vector v = Vector::Zero(d);
  v(k) = 1.0;
  return PureState(std::move(v));
}

Vector product_power(const PureState& psi, int n) {
  require_count(n);
  const SymmetricBasis basis(psi.d(), n);
  Vector out(static_cast<Eigen::Index>(basis.size()));
  const Vector& amp = psi.amplitudes();
  for (std::size_t c = 0; c < basis.size(); ++c) {
    Complex value = sqrt_multinomial(basis[c].counts);
    for (int i = 0; i < psi.d(); ++i) {
      const int count = basis[c].counts[static_cast<std::size_t>(i)];
      if (count > 0) value *= std::pow(amp(i), count);
    }
    out(static_cast<Eigen::Index>(c)) = value;
  }
  return out;
}

Matrix sym_power(const Matrix& u, int n) {
  require_count(n);
  if (u.rows() != u.cols()) throw ConstraintError("sym_power needs a square matrix");
  const int d = static_cast<int>(u.rows());

  // Bases of every intermediate degree for the polynomial expansion
  // ∏_j (Σ_i u_ij x_i)^{n_j}; the monomial x^k stands for sqrt(∏k!) |k>.
  std::vector<SymmetricBasis> degree;
  degree.reserve(static_cast<std::size_t>(n) + 1);
  for (int t = 0; t <= n; ++t) degree.emplace_back(d, t);

  const SymmetricBasis& target = degree.back();
  Matrix out = Matrix::Zero(static_cast<Eigen::Index>(target.size()), static_cast<Eigen::Index>(target.size()));

  for (std::size_t col = 0; col < target.size(); ++col) {
    const auto& counts = target[col].counts;
    Vector poly = Vector::Ones(1);
    int t = 0;
    for (int j = 0; j < d; ++j) {
      for (int rep = 0; rep < counts[static_cast<std::size_t>(j)]; ++rep) {
        const SymmetricBasis& from = degree[static_cast<std::size_t>(t)];
        const SymmetricBasis& to = degree[static_cast<std::size_t>(t) + 1];
        Vector next = Vector::Zero(static_cast<Eigen::Index>(to.size()));
        for (std::size_t k = 0; k < from.size(); ++k) {
          const Complex c = poly(static_cast<Eigen::Index>(k));
          if (c == Complex(0.0)) continue;
          std::vector<int> raised = from[k].counts;
          for (int i = 0; i < d; ++i) {
            ++raised[static_cast<std::size_t>(i)];
            next(static_cast<Eigen::Index>(to.index_of(raised))) += c * u(i, j);
            --raised[static_cast<std::size_t>(i)];
          }
        }
        poly = std::move(next);
        ++t;
      }
    }
    // sqrt(∏k!) / sqrt(∏n!) == sqrt_multinomial(n) / sqrt_multinomial(k)
    const double in_factor = sqrt_multinomial(counts);
    for (std::size_t row = 0; row < target.size(); ++row)
      out(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) =
          poly(static_cast<Eigen::Index>(row)) * (in_factor / sqrt_multinomial(target[row].counts));
  }
  return out;
}

Matrix one_body_operator(const Matrix& a, int n) {
  require_count(n);
  if (a.rows() != a.cols()) throw ConstraintError("one_body_operator needs a square matrix");
  const int d = static_cast<int>(a.rows());
  const SymmetricBasis basis(d, n);
  Matrix out = Matrix::Zero(static_cast<Eigen::Index>(basis.size()), static_cast<Eigen::Index>(basis.size()));
  for (std::size_t col = 0; col < basis.size(); ++col) {
    std::vector<int> k = basis[col].counts;
    for (int j = 0; j < d; ++j) {
      const int kj = k[static_cast<std::size_t>(j)];
      if (kj == 0) continue;
      --k[static_cast<std::size_t>(j)];
      for (int i = 0; i < d; ++i) {
        ++k[static_cast<std::size_t>(i)];
        const double amp = std::sqrt(static_cast<double>(kj) * k[static_cast<std::size_t>(i)]);
        out(static_cast<Eigen::Index>(basis.index_of(k)), static_cast<Eigen::Index>(col)) += a(i, j) * amp;
        --k[static_cast<std::size_t>(i)];
      }
      ++k[static_cast<std::size_t>(j)];
    }
  }
  return out;
}

Matrix collective_operator(const Matrix& a, int n, std::size_t guard) {
  if (a.rows() != a.cols()) throw ConstraintError("collective_operator needs a square matrix");
  const int d = static_cast<int>(a.rows());
  const std::size_t full = checked_full_dim(d, n, guard);
  Matrix out = Matrix::Zero(static_cast<Eigen::Index>(full), static_cast<Eigen::Index>(full));
  for (std::size_t in = 0; in < full; ++in) {
    auto digits = digits_of(in, d, n);
    for (int site = 0; site < n; ++site) {
      const int original = digits[static_cast<std::size_t>(site)];
      for (int i = 0; i < d; ++i) {
        digits[static_cast<std::size_t>(site)] = i;
        out(static_cast<Eigen::Index>(product_index(digits, d)), static_cast<Eigen::Index>(in)) += a(i, original);
      }
      digits[static_cast<std::size_t>(site)] = original;
    }
  }
  return out;
}

DensityOperator::DensityOperator(Matrix matrix, BasisTag basis) : matrix_(std::move(matrix)), basis_(basis) {
  const auto dim = static_cast<Eigen::Index>(basis_.dim());
  if (matrix_.rows() != dim || matrix_.cols() != dim)
    throw ConstraintError("density matrix shape does not match its basis tag");
  if ((matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff() > tol::normalization)
    throw ConstraintError("density matrix is not Hermitian");
  if (std::abs(matrix_.trace() - Complex(1.0)) > tol::normalization)
    throw ConstraintError("density matrix does not have unit trace");
  if (min_eigenvalue(matrix_) < tol::psd_floor) throw ConstraintError("density matrix is not positive");
}

Matrix single_site_marginal(const Matrix& rho, const BasisTag& basis, int site) {
  const int d = basis.d;
  const int n = basis.sites;
  if (n < 1) throw ConstraintError("marginal needs at least one site");
  const auto dim = static_cast<Eigen::Index>(basis.dim());
  if (rho.rows() != dim || rho.cols() != dim) throw ConstraintError("matrix shape does not match its basis tag");
  Matrix out = Matrix::Zero(d, d);

  if (basis.kind == BasisKind::full) {
    if (site < 0 || site >= n) throw ConstraintError("site index out of range");
    std::size_t stride = 1;
    for (int k = site + 1; k < n; ++k) stride *= static_cast<std::size_t>(d);
    const std::size_t block = stride * static_cast<std::size_t>(d);
    const std::size_t outer = static_cast<std::size_t>(dim) / block;
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        Complex acc = 0.0;
        for (std::size_t hi = 0; hi < outer; ++hi)
          for (std::size_t lo = 0; lo < stride; ++lo) {
            const std::size_t base = hi * block + lo;
            acc += rho(static_cast<Eigen::Index>(base + static_cast<std::size_t>(i) * stride),
                       static_cast<Eigen::Index>(base + static_cast<std::size_t>(j) * stride));
          }
        out(i, j) = acc;
      }
    return out;
  }

  // ⟨i|ρ_1|j⟩ = tr(ρ b_j^† b_i) / M
  const SymmetricBasis sym(d, n);
  for (std::size_t col = 0; col < sym.size(); ++col) {
    std::vector<int> k = sym[col].counts;
    for (int i = 0; i < d; ++i) {
      const int ki = k[static_cast<std::size_t>(i)];
      if (ki == 0) continue;
      --k[static_cast<std::size_t>(i)];
      for (int j = 0; j < d; ++j) {
        ++k[static_cast<std::size_t>(j)];
        const double amp = std::sqrt(static_cast<double>(ki) * k[static_cast<std::size_t>(j)]);
        const auto row = static_cast<Eigen::Index>(sym.index_of(k));
        out(i, j) += rho(static_cast<Eigen::Index>(col), row) * amp;
        --k[static_cast<std::size_t>(j)];
      }
      ++k[static_cast<std::size_t>(i)];
    }
  }
  return out / static_cast<double>(n);
}

Matrix single_site_marginal(const DensityOperator& rho, int site) {
  return single_site_marginal(rho.matrix(), rho.basis(), site);
}

double hermitian_norm(const Matrix& a) {
  if (a.size() == 0) return 0.0;
  return hermitian_eigenvalues(a).cwiseAbs().maxCoeff();
}

double operator_norm(const Matrix& a) {
  if (a.size() == 0) return 0.0;
  Eigen::BDCSVD<Matrix> svd(a);
  return svd.singularValues()(0);
}

double trace_norm_hermitian(const Matrix& a) { return hermitian_eigenvalues(a).cwiseAbs().sum(); }

double positive_part_trace(const Matrix& a) { return hermitian_eigenvalues(a).cwiseMax(0.0).sum(); }

double min_eigenvalue(const Matrix& a) { return hermitian_eigenvalues(a).minCoeff(); }

} // namespace clonopt
