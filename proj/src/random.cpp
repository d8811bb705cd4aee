#include "clonopt/random.hpp"

#include "clonopt/errors.hpp"

#include <algorithm>
#include <limits>
#include <random>
#include <utility>

namespace clonopt {

namespace {

Matrix ginibre(int rows, int cols, std::uint64_t seed) {
  std::mt19937_64 engine(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix g(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) {
      const double re = normal(engine);
      const double im = normal(engine);
      g(i, j) = Complex(re, im);
    }
  return g;
}

} // namespace

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

Matrix haar_unitary(int d, std::uint64_t seed) {
  const Matrix g = ginibre(d, d, seed);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ() * Matrix::Identity(d, d);
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int k = 0; k < d; ++k) {
    const Complex diag = r(k, k);
    const double mag = std::abs(diag);
    if (mag > 0.0) q.col(k) *= diag / mag;
  }
  return q;
}

PureState haar_state(int d, std::uint64_t seed) {
  const Matrix g = ginibre(d, 1, seed);
  return PureState::normalized(g.col(0));
}

PureStateMaximum maximize_over_pure_states(int d, std::uint64_t seed,
                                           const std::function<double(const PureState&)>& objective,
                                           const PureStateSearch& search) {
  struct Candidate {
    double value;
    std::uint64_t index;
    PureState psi;
  };
  std::vector<Candidate> best;
  best.reserve(static_cast<std::size_t>(search.refine_top) + 1);
  const auto by_value = [](const Candidate& a, const Candidate& b) { return a.value > b.value; };

  double sampled_max = -std::numeric_limits<double>::infinity();
  PureState sampled_argmax = PureState::basis(d, 0);
  for (int i = 0; i < search.samples; ++i) {
    const auto index = static_cast<std::uint64_t>(i);
    PureState psi = haar_state(d, derive_seed(seed, index));
    const double value = objective(psi);
    if (value > sampled_max) {
      sampled_max = value;
      sampled_argmax = psi;
    }
    if (search.refine_top <= 0) continue;
    if (static_cast<int>(best.size()) < search.refine_top || value > best.back().value) {
      best.push_back(Candidate{value, index, std::move(psi)});
      std::stable_sort(best.begin(), best.end(), by_value);
      if (static_cast<int>(best.size()) > search.refine_top) best.pop_back();
    }
  }
  if (search.samples < 1) throw ConstraintError("pure-state search needs at least one sample");

  PureStateMaximum out{sampled_max, sampled_argmax};
  for (auto& c : best) {
    // Refinement stream depends only on (seed, sample index).
    std::mt19937_64 engine(derive_seed(~seed, c.index));
    std::normal_distribution<double> normal(0.0, 1.0);
    double step = search.initial_step;
    for (int it = 0; it < search.refine_iterations; ++it) {
      Vector trial = c.psi.amplitudes();
      for (int k = 0; k < d; ++k) trial(k) += step * Complex(normal(engine), normal(engine));
      PureState candidate = PureState::normalized(trial);
      const double candidate_value = objective(candidate);
      if (candidate_value > c.value) {
        c.value = candidate_value;
        c.psi = std::move(candidate);
      } else {
        step *= 0.7;
      }
    }
    if (c.value > out.value) out = PureStateMaximum{c.value, c.psi};
  }
  return out;
}

} // namespace clonopt
