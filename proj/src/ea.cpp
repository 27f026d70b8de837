#include "pasdiv/ea.hpp"

#include <algorithm>
#include <chrono>
#include <string>

#include "pasdiv/error.hpp"

namespace pasdiv {

Population initialize(const Instance& instance, int mu, double alpha, double log_base) {
  if (mu < 1) throw ConfigError("mu must be >= 1");
  if (!instance.seed_solution) {
    throw ConfigError("instance '" + instance.name + "' has no seed solution; run seed-solve first");
  }
  Solution seed = make_solution(instance, *instance.seed_solution);
  const auto report = check_feasibility(instance, seed);
  if (!report.ok()) {
    const auto& v = report.violations.front();
    throw StructuralError("seed solution violates capacity of room " + std::to_string(v.room) + " on day " +
                          std::to_string(v.day));
  }
  const std::int64_t reference = instance.seed_objective.value_or(seed.objective);
  std::vector<Solution> members(static_cast<std::size_t>(mu), seed);
  EntropyState counts(instance, members, log_base);
  return Population{std::move(members), std::move(counts), quality_threshold(reference, alpha), 0};
}

StepOutcome step(const Instance& instance, Population& population, const OperatorConfig& config,
                 const CandidateRooms& candidates, Rng& rng) {
  ++population.evaluations_used;
  const auto parent_index = static_cast<std::size_t>(draw_index(rng, population.members.size()));
  const Solution& parent = population.members[parent_index];

  auto child = mutate(instance, parent, config, candidates, population.entropy, rng);
  if (!child) return StepOutcome::OperatorRejected;
  if (child->objective > population.c_max) return StepOutcome::QualityRejected;
  const double after = population.entropy.replace_delta(parent.rooms, child->rooms);
  if (!(after > population.entropy.cached_entropy())) return StepOutcome::EntropyRejected;

  population.entropy.commit_replace(parent.rooms, child->rooms);
  population.members[parent_index] = std::move(*child);
  return StepOutcome::Accepted;
}

RunRecord run(const Instance& instance, const RunConfig& config) {
  config.op.validate();
  if (config.budget < 0) throw ConfigError("budget must be >= 0");
  const auto started = std::chrono::steady_clock::now();

  Rng rng(config.seed);
  OperatorConfig op = config.op;
  const CandidateRooms candidates(instance, op.candidates);
  RunRecord record{config, {}, initialize(instance, config.mu, config.alpha, config.log_base),
                   max_entropy(instance.total_patient_days(), instance.num_rooms(), config.mu, config.log_base)};
  Population& pop = record.population;
  record.x_used_min = record.x_used_max = op.step_size();

  const std::int64_t stride = std::max<std::int64_t>(config.trajectory_stride, 1);
  record.trajectory.push_back({0, pop.entropy.cached_entropy(), op.x});
  double interval_start = pop.entropy.cached_entropy();

  while (pop.evaluations_used < config.budget) {
    const int used = op.step_size();
    record.x_used_min = std::min(record.x_used_min, used);
    record.x_used_max = std::max(record.x_used_max, used);
    if (step(instance, pop, op, candidates, rng) == StepOutcome::Accepted) ++record.accepted;

    const std::int64_t done = pop.evaluations_used;
    if (op.self_adaptive() && done % op.interval == 0) {
      const double now = pop.entropy.cached_entropy();
      op.x = adapt_x(op, now > interval_start);
      interval_start = now;
    }
    if (config.verify_stride > 0 && done % config.verify_stride == 0) {
      const EntropyState recount(instance, pop.members, config.log_base);
      if (!recount.same_counts(pop.entropy)) throw StateCorruption("entropy counters drifted from the population");
    }
    if (done % stride == 0 || done == config.budget) {
      record.trajectory.push_back({done, pop.entropy.cached_entropy(), op.x});
    }
  }

  record.final_x = op.x;
  record.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return record;
}

}  // namespace pasdiv
