#pragma once

#include <cstdint>
#include <functional>

#include "clonopt/tensor_core.hpp"

namespace clonopt {

/// Seed for sample `index` of a run seeded with `seed` (splitmix64 mix).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

/// Haar-random unitary: QR of a complex Ginibre matrix with R's diagonal phases
/// moved into Q. Deterministic in `seed`.
Matrix haar_unitary(int d, std::uint64_t seed);

/// Haar-random pure state (normalized complex Gaussian vector).
PureState haar_state(int d, std::uint64_t seed);

struct PureStateSearch {
  int samples = 500;
  int refine_top = 5;
  int refine_iterations = 20;
  double initial_step = 0.2;
};

struct PureStateMaximum {
  double value = 0.0;
  PureState argmax = PureState::basis(2, 0);
};

/// Running maximum of `objective` over `samples` Haar states (sample i seeded
/// by derive_seed(seed, i)), then a shrinking-step random local search from
/// the best `refine_top` samples. Never returns less than the sampled maximum.
PureStateMaximum maximize_over_pure_states(int d, std::uint64_t seed,
                                           const std::function<double(const PureState&)>& objective,
                                           const PureStateSearch& search = {});

} // namespace clonopt
