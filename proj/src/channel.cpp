#include "clonopt/channel.hpp"

#include <cmath>
#include <string>

#include "clonopt/errors.hpp"

namespace clonopt {

Channel::Channel(std::vector<Matrix> kraus, BasisTag in, BasisTag out)
    : kraus_(std::move(kraus)), in_(in), out_(out) {
  if (kraus_.empty()) throw ConstraintError("a channel needs at least one Kraus operator");
  const auto rows = static_cast<Eigen::Index>(out_.dim());
  const auto cols = static_cast<Eigen::Index>(in_.dim());
  for (const auto& k : kraus_)
    if (k.rows() != rows || k.cols() != cols)
      throw ConstraintError("Kraus operator shape " + std::to_string(k.rows()) + "x" + std::to_string(k.cols()) +
                            " does not match basis tags " + std::to_string(rows) + "x" + std::to_string(cols));
  if (in_.d != out_.d) throw ConstraintError("input and output local dimensions differ");
}

Matrix Channel::apply(const Matrix& rho) const {
  Matrix out = Matrix::Zero(static_cast<Eigen::Index>(out_.dim()), static_cast<Eigen::Index>(out_.dim()));
  for (const auto& k : kraus_) out.noalias() += k * rho * k.adjoint();
  return out;
}

Matrix Channel::apply_adjoint(const Matrix& a) const {
  Matrix out = Matrix::Zero(static_cast<Eigen::Index>(in_.dim()), static_cast<Eigen::Index>(in_.dim()));
  for (const auto& k : kraus_) out.noalias() += k.adjoint() * a * k;
  return out;
}

double Channel::trace_preservation_defect() const {
  Matrix sum = Matrix::Zero(static_cast<Eigen::Index>(in_.dim()), static_cast<Eigen::Index>(in_.dim()));
  for (const auto& k : kraus_) sum.noalias() += k.adjoint() * k;
  sum -= Matrix::Identity(sum.rows(), sum.cols());
  return hermitian_norm(sum);
}

Channel Channel::with_full_output(std::size_t guard) const {
  if (out_.kind == BasisKind::full) return *this;
  const Matrix e = sym_embed(out_.d, out_.sites, guard);
  std::vector<Matrix> kraus;
  kraus.reserve(kraus_.size());
  for (const auto& k : kraus_) kraus.push_back(e * k);
  return Channel(std::move(kraus), in_, BasisTag{BasisKind::full, out_.d, out_.sites});
}

Channel mix(const std::vector<Channel>& channels, const std::vector<double>& weights) {
  if (channels.empty() || channels.size() != weights.size())
    throw ConstraintError("mix needs one weight per channel");
  std::vector<Matrix> kraus;
  for (std::size_t i = 0; i < channels.size(); ++i) {
    if (weights[i] < 0.0) throw ConstraintError("mixture weights must be non-negative");
    if (!(channels[i].input() == channels[0].input()) || !(channels[i].output() == channels[0].output()))
      throw ConstraintError("mixed channels must share input and output bases");
    if (weights[i] == 0.0) continue;
    const double s = std::sqrt(weights[i]);
    for (const auto& k : channels[i].kraus()) kraus.push_back(s * k);
  }
  return Channel(std::move(kraus), channels[0].input(), channels[0].output());
}

Channel identity_channel(int d, int n) {
  const BasisTag tag{BasisKind::symmetric, d, n};
  const auto dim = static_cast<Eigen::Index>(tag.dim());
  return Channel({Matrix::Identity(dim, dim)}, tag, tag);
}

Channel unitary_channel(const Matrix& u) {
  if (u.rows() != u.cols()) throw ConstraintError("unitary_channel needs a square matrix");
  const BasisTag tag{BasisKind::symmetric, static_cast<int>(u.rows()), 1};
  return Channel({u}, tag, tag);
}

Channel constant_output_channel(int d, int n, int m) {
  const BasisTag in{BasisKind::symmetric, d, n};
  const BasisTag out{BasisKind::symmetric, d, m};
  std::vector<Matrix> kraus;
  for (std::size_t i = 0; i < in.dim(); ++i) {
    Matrix k = Matrix::Zero(static_cast<Eigen::Index>(out.dim()), static_cast<Eigen::Index>(in.dim()));
    k(0, static_cast<Eigen::Index>(i)) = 1.0;  // (M,0,…,0) is the first occupation vector
    kraus.push_back(std::move(k));
  }
  return Channel(std::move(kraus), in, out);
}

} // namespace clonopt
