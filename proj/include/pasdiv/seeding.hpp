#pragma once

#include <cstdint>

#include "pasdiv/model.hpp"
#include "pasdiv/rng.hpp"

namespace pasdiv {

struct SeedConfig {
  std::int64_t improvement_budget = 20000;  ///< local search evaluations
  std::uint64_t seed = 1;
};

/// Longest stays first (random tie order); each patient takes the cheapest room free for its whole stay.
/// Throws ConstructionFailure naming the first patient that fits nowhere.
Solution greedy_construct(const Instance& instance, Rng& rng);

/// First-improvement hill climbing over change (one or two patients) and swap moves.
/// Only strictly lower objectives are accepted.
Solution local_search(const Instance& instance, const Solution& start, std::int64_t budget, Rng& rng);

/// greedy_construct followed by local_search.
Solution solve_seed(const Instance& instance, const SeedConfig& config);

/// Copy of the instance with seed_solution and seed_objective set from `seed`.
Instance with_seed(Instance instance, const Solution& seed);

}  // namespace pasdiv
