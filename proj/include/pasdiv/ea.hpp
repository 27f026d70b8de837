#pragma once

#include <cstdint>
#include <vector>

#include "pasdiv/diversity.hpp"
#include "pasdiv/model.hpp"
#include "pasdiv/operators.hpp"
#include "pasdiv/rng.hpp"

namespace pasdiv {

/// mu solutions that all satisfy O(s) <= c_max, plus their shared counters.
struct Population {
  std::vector<Solution> members;
  EntropyState entropy;
  std::int64_t c_max = 0;
  std::int64_t evaluations_used = 0;

  int mu() const { return static_cast<int>(members.size()); }
};

/// mu copies of the instance's seed solution. Throws ConfigError if the instance has no seed
/// (run seed-solve first) and StructuralError if the seed is infeasible.
Population initialize(const Instance& instance, int mu, double alpha, double log_base = 2.0);

enum class StepOutcome { Accepted, OperatorRejected, QualityRejected, EntropyRejected };

/// One iteration: uniform parent, one offspring, quality gate, strict entropy improvement.
StepOutcome step(const Instance& instance, Population& population, const OperatorConfig& config,
                 const CandidateRooms& candidates, Rng& rng);

struct RunConfig {
  OperatorConfig op = OperatorConfig::defaults(Variant::Adaptive);
  int mu = 50;
  double alpha = 0.02;
  std::int64_t budget = 1'000'000;
  std::uint64_t seed = 1;
  double log_base = 2.0;
  std::int64_t trajectory_stride = 1000;
  /// When > 0, recount the entropy state every this many evaluations and throw StateCorruption on mismatch.
  std::int64_t verify_stride = 0;
};

struct TrajectoryPoint {
  std::int64_t evaluations = 0;
  double entropy = 0;
  double x = 0;

  bool operator==(const TrajectoryPoint&) const = default;
};

struct RunRecord {
  RunConfig config;
  std::vector<TrajectoryPoint> trajectory;
  Population population;
  double max_entropy = 0;
  std::int64_t accepted = 0;
  /// Extremes of round(x) over every mutation of the run.
  int x_used_min = 0;
  int x_used_max = 0;
  double final_x = 0;
  double wall_seconds = 0;
};

RunRecord run(const Instance& instance, const RunConfig& config);

}  // namespace pasdiv
