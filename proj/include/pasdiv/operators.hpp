#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "pasdiv/diversity.hpp"
#include "pasdiv/model.hpp"
#include "pasdiv/rng.hpp"

namespace pasdiv {

enum class Variant { Swap, Fixed, Adaptive, Biased };

std::string_view to_string(Variant v);
std::optional<Variant> parse_variant(std::string_view name);

/// Mutation hyper-parameters. `x` is kept real-valued and rounded when used.
struct OperatorConfig {
  Variant variant = Variant::Adaptive;
  double gamma = 50.0;  ///< selection pressure towards cheap rooms
  double x = 15.0;      ///< patients moved per mutation
  double x_min = 2.0;
  double x_max = 15.0;
  double factor = 2.0;          ///< F
  double decay_exponent = 8.0;  ///< k
  int interval = 200;           ///< u, evaluations per adaptation check
  int candidates = 10;          ///< y, cheapest rooms considered per patient

  /// Tuned elite configuration for the variant.
  static OperatorConfig defaults(Variant v);

  bool self_adaptive() const { return variant == Variant::Adaptive || variant == Variant::Biased; }
  int step_size() const;
  /// Throws ConfigError on violated bounds.
  void validate() const;

  bool operator==(const OperatorConfig&) const = default;
};

/// The `y` rooms with lowest CV for every patient, ascending by cost then room id.
class CandidateRooms {
 public:
  CandidateRooms(const Instance& instance, int y);

  std::span<const int> of(int patient) const {
    return {rooms_.data() + static_cast<std::size_t>(patient) * width_, width_};
  }
  std::size_t width() const { return width_; }

 private:
  std::size_t width_;
  std::vector<int> rooms_;
};

/// Exchanges the rooms of two patients day by day. Days on which only one of them is present use the
/// other patient's room on the nearest day of its stay. Rejects (nullopt) on any capacity violation.
std::optional<Solution> swap_patients(const Instance& instance, const Solution& parent, int a, int b);

/// Swap of two distinct patients drawn uniformly. Rejects with fewer than two patients.
std::optional<Solution> standard_swap(const Instance& instance, const Solution& parent, Rng& rng);

/// x distinct patients, uniformly without replacement. x above the patient count is clamped.
std::vector<int> select_patients_uniform(int num_patients, int x, Rng& rng);

/// x distinct patients drawn without replacement, each with weight equal to how often the population
/// shares the patient's current assignment (summed over the stay).
std::vector<int> select_patients_biased(const Instance& instance, const Assignment& parent,
                                        const EntropyState& counts, int x, Rng& rng);

struct EligibleRoom {
  int room = 0;
  std::int64_t cost = 0;    ///< marginal objective cost of the whole stay
  double probability = 0;
};

/// Candidate rooms able to hold the (unplaced) patient for the whole stay, with their selection probability
/// (1 + C - C_min)^-gamma normalised. Empty when no candidate has room.
std::vector<EligibleRoom> reinsertion_distribution(const Occupancy& partial, int patient,
                                                   std::span<const int> candidates, double gamma);

struct Placement {
  int room = 0;
  std::int64_t cost = 0;
};

/// Draws a room from reinsertion_distribution and places the patient there in `partial`.
/// nullopt means no eligible room; `partial` is left untouched in that case.
std::optional<Placement> reinsert(Occupancy& partial, int patient, std::span<const int> candidates, double gamma,
                                  Rng& rng);

/// Remove round(x) patients and reinsert each for a whole stay. Uniform selection for Fixed/Adaptive,
/// biased for Biased (needs `counts`). nullopt if some patient cannot be placed.
std::optional<Solution> change_mutation(const Instance& instance, const Solution& parent,
                                        const OperatorConfig& config, const CandidateRooms& candidates,
                                        const EntropyState* counts, Rng& rng);

/// Dispatches on config.variant.
std::optional<Solution> mutate(const Instance& instance, const Solution& parent, const OperatorConfig& config,
                               const CandidateRooms& candidates, const EntropyState& counts, Rng& rng);

/// x * F on success, x * F^(-1/k) on failure, clamped to [x_min, x_max].
double adapt_x(const OperatorConfig& config, bool interval_succeeded);

}  // namespace pasdiv
