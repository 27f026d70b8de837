#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pasdiv/ea.hpp"
#include "pasdiv/model.hpp"
#include "pasdiv/operators.hpp"

namespace pasdiv {

/// Decimal rendering used in every CSV: 6 significant digits.
std::string format_real(double v);

// ---------------------------------------------------------------------------
// Robustness simulation: can some member keep b co-located patient pairs apart?

struct RobustnessSpec {
  int pairs = 1;  ///< b
  int repetitions = 100;
  std::uint64_t seed = 1;
};

struct RobustnessResult {
  double ratio = 0;  ///< % of repetitions separated by at least one member
  double alt = 0;    ///< mean number of separating members

  bool operator==(const RobustnessResult&) const = default;
};

using PatientPair = std::pair<int, int>;

/// Pairs (p < q) sharing a room on at least one common day of `initial`, in lexicographic order.
std::vector<PatientPair> colocated_pairs(const Instance& instance, const Assignment& initial);

/// True if on every common day of every pair the two patients occupy different rooms.
bool separates(const Instance& instance, const Assignment& member, std::span<const PatientPair> pairs);

/// Throws ConfigError when fewer than spec.pairs co-located pairs exist.
RobustnessResult robustness_sim(const Instance& instance, std::span<const Solution> population,
                                const Assignment& initial, const RobustnessSpec& spec);

// ---------------------------------------------------------------------------
// Patient-over-rooms spread of a final population.

struct SpreadRow {
  int patient = 0;
  int distinct_rooms = 0;
  double fraction = 0;  ///< distinct_rooms / number of rooms
};

std::vector<SpreadRow> room_spread(const Instance& instance, std::span<const Solution> population);
std::string heatmap_csv(const Instance& instance, std::span<const Solution> population);
void heatmap_export(const Instance& instance, std::span<const Solution> population, const std::filesystem::path& path);

// ---------------------------------------------------------------------------
// Operator comparison.

std::string trajectory_csv(const RunRecord& record);

struct CompareConfig {
  std::vector<Variant> variants = {Variant::Swap, Variant::Fixed, Variant::Adaptive, Variant::Biased};
  int runs = 10;
  std::int64_t budget = 1'000'000;
  int mu = 50;
  double alpha = 0.02;
  std::uint64_t base_seed = 1;
  double log_base = 2.0;
  std::int64_t trajectory_stride = 1000;
  /// When set, one trajectory CSV per run is written there.
  std::optional<std::filesystem::path> trajectory_dir;
  /// Worker threads; 0 picks the hardware concurrency.
  unsigned threads = 0;
};

struct CompareRow {
  Variant variant = Variant::Swap;
  int run = 0;
  std::uint64_t seed = 0;
  std::int64_t evaluations = 0;
  double final_entropy = 0;
  double max_entropy = 0;
};

struct CompareReport {
  std::vector<CompareRow> rows;  ///< ordered by variant, then run

  double median(Variant v) const;
  /// One line per run plus one `median` line per variant.
  std::string to_csv() const;
};

/// runs x variants independent EA runs; run i of every variant uses seed base_seed + i.
CompareReport compare_operators(const Instance& instance, const CompareConfig& config);

}  // namespace pasdiv
