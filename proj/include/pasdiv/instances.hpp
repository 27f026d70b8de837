#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "pasdiv/ea.hpp"
#include "pasdiv/model.hpp"

namespace pasdiv {

// ---------------------------------------------------------------------------
// Generator

/// Penalty magnitudes of the component costs merged into CV. Synthetic values, not the benchmark's.
struct CostWeights {
  std::int64_t age = 10;                 ///< department age policy not respected
  std::int64_t department = 20;          ///< department lacks the patient's specialty
  std::int64_t room_specialty = 5;       ///< per level the room falls short
  std::int64_t features = 10;            ///< per missing required feature (desired ones cost a fifth)
  std::int64_t capacity_preference = 2;  ///< per bed above the preferred room size
  std::int64_t gender_fixed = 50;        ///< F/M room given to the other gender
};

struct GeneratorSpec {
  std::string name = "synthetic";
  int patients = 60;
  int rooms = 10;
  int total_beds = 32;
  int days = 7;
  double mean_los = 2.8;
  /// Cap on any day's load as a fraction of all beds; patients are thinned until it holds.
  double occupancy_target = 0.9;
  /// Probability that a patient is female.
  double gender_mix = 0.5;
  /// Relative weights of the F, M, D, N policies.
  std::array<double, 4> policy_mix = {0.15, 0.15, 0.4, 0.3};
  CostWeights cost_weights;
  std::int64_t cg2 = 5;
  std::int64_t ct = 11;
  std::uint64_t seed = 1;
  bool emit_breakdown = false;
};

/// ~60 patients, 10 rooms, 7 days.
GeneratorSpec desk_scale_spec(std::uint64_t seed = 1);
/// Sizes of the published benchmark instances 1..6 (beds, rooms, days, patients, average stay).
GeneratorSpec benchmark_like_spec(int index, std::uint64_t seed = 1);

/// Throws ConfigError for invalid or infeasible specs (expected load above the bed count).
Instance generate(const GeneratorSpec& spec);

// ---------------------------------------------------------------------------
// Validation

struct ValidationIssue {
  std::string where;
  std::string message;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;
  bool ok() const { return issues.empty(); }
};

ValidationReport validate(const Instance& instance);

// ---------------------------------------------------------------------------
// Files

std::string instance_to_json(const Instance& instance);
/// Throws ParseError naming the line/column (syntax) or JSON pointer (schema) of the first problem.
Instance instance_from_json(const std::string& text);

void write_instance(const Instance& instance, const std::filesystem::path& path);
Instance read_instance(const std::filesystem::path& path);

std::string population_to_json(const Instance& instance, const Population& population);
/// Rebuilds the counters from the stored members. Objectives are re-evaluated and must match.
Population population_from_json(const Instance& instance, const std::string& text);

void write_population(const Instance& instance, const Population& population, const std::filesystem::path& path);
Population read_population(const Instance& instance, const std::filesystem::path& path);

std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace pasdiv
