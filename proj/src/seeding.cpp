#include "pasdiv/seeding.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>

#include "pasdiv/error.hpp"
#include "pasdiv/operators.hpp"

namespace pasdiv {

Solution greedy_construct(const Instance& instance, Rng& rng) {
  std::vector<int> order(static_cast<std::size_t>(instance.num_patients()));
  std::iota(order.begin(), order.end(), 0);
  for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[draw_below(rng, i)]);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return instance.patients[static_cast<std::size_t>(a)].length_of_stay() >
           instance.patients[static_cast<std::size_t>(b)].length_of_stay();
  });

  Occupancy occ(instance);
  std::vector<int> room_of(order.size(), -1);
  for (int p : order) {
    const auto& pt = instance.patients[static_cast<std::size_t>(p)];
    std::int64_t best = std::numeric_limits<std::int64_t>::max();
    int chosen = -1;
    int ties = 0;
    for (int r = 0; r < instance.num_rooms(); ++r) {
      if (!occ.has_capacity(r, pt.admission, pt.discharge)) continue;
      const std::int64_t c = occ.placement_cost(p, r);
      if (c < best) {
        best = c;
        chosen = r;
        ties = 1;
      } else if (c == best && draw_below(rng, static_cast<std::uint64_t>(++ties)) == 0) {
        chosen = r;
      }
    }
    if (chosen < 0) throw ConstructionFailure(p, "no room has a free bed for the whole stay of patient " + std::to_string(p));
    occ.place(p, chosen);
    room_of[static_cast<std::size_t>(p)] = chosen;
  }
  return make_solution(instance, whole_stay_assignment(instance, room_of));
}

Solution local_search(const Instance& instance, const Solution& start, std::int64_t budget, Rng& rng) {
  Solution current = make_solution(instance, start.rooms);
  if (instance.num_patients() == 0 || instance.num_rooms() == 0) return current;
  const CandidateRooms everywhere(instance, instance.num_rooms());
  OperatorConfig change = OperatorConfig::defaults(Variant::Fixed);
  change.x_min = 1;

  for (std::int64_t i = 0; i < budget; ++i) {
    std::optional<Solution> next;
    if (instance.num_patients() >= 2 && draw_below(rng, 2) == 0) {
      next = standard_swap(instance, current, rng);
    } else {
      change.x = static_cast<double>(std::min<std::uint64_t>(1 + draw_below(rng, 2), instance.patients.size()));
      change.gamma = draw_below(rng, 2) == 0 ? 1.0 : 50.0;
      next = change_mutation(instance, current, change, everywhere, nullptr, rng);
    }
    if (next && next->objective < current.objective) current = std::move(*next);
  }
  return current;
}

Solution solve_seed(const Instance& instance, const SeedConfig& config) {
  if (config.improvement_budget < 0) throw ConfigError("improvement budget must be >= 0");
  Rng rng(config.seed);
  const Solution start = greedy_construct(instance, rng);
  return local_search(instance, start, config.improvement_budget, rng);
}

Instance with_seed(Instance instance, const Solution& seed) {
  instance.seed_solution = seed.rooms;
  instance.seed_objective = seed.objective;
  return instance;
}

}  // namespace pasdiv
