#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace pasdiv {

enum class Gender : std::uint8_t { Female, Male };

/// Room gender policy. Tokens F, M, D, N.
enum class GenderPolicy : std::uint8_t { Female, Male, Dual, Neutral };

char to_token(Gender g);
char to_token(GenderPolicy p);
std::optional<Gender> parse_gender(std::string_view token);
std::optional<GenderPolicy> parse_policy(std::string_view token);

/// How a mixed-gender day in a D room is charged.
enum class GenderPenaltyRule : std::uint8_t {
  Minority,         ///< CG2 x min(#female, #male)
  PerMixedRoomDay,  ///< CG2 once per mixed room-day
};

struct ObjectiveOptions {
  /// Charge CV for every patient-day. When false, CV is charged once per contiguous stint in a room.
  bool cv_per_day = true;
  GenderPenaltyRule gender_rule = GenderPenaltyRule::Minority;

  bool operator==(const ObjectiveOptions&) const = default;
};

struct Room {
  int id = 0;
  int capacity = 1;
  GenderPolicy policy = GenderPolicy::Neutral;

  bool operator==(const Room&) const = default;
};

struct Patient {
  int id = 0;
  Gender gender = Gender::Female;
  int admission = 0;  // inclusive
  int discharge = 1;  // exclusive

  int length_of_stay() const { return discharge - admission; }
  bool present(int day) const { return day >= admission && day < discharge; }

  bool operator==(const Patient&) const = default;
};

/// rooms[p][i] is the room of patient p on day admission_p + i.
using Assignment = std::vector<std::vector<int>>;

/// Per-component cost matrices (patients x rooms, row-major) that were summed into CV.
using CostBreakdown = std::map<std::string, std::vector<std::int64_t>>;

struct Instance {
  std::string name;
  int horizon = 0;
  std::vector<Room> rooms;
  std::vector<Patient> patients;
  std::vector<std::int64_t> cv;  // patients x rooms, row-major
  std::int64_t cg2 = 0;
  std::int64_t ct = 0;
  std::optional<Assignment> seed_solution;
  std::optional<std::int64_t> seed_objective;
  std::optional<CostBreakdown> cost_breakdown;
  ObjectiveOptions options;

  int num_patients() const { return static_cast<int>(patients.size()); }
  int num_rooms() const { return static_cast<int>(rooms.size()); }
  std::int64_t cost(int patient, int room) const {
    return cv[static_cast<std::size_t>(patient) * rooms.size() + static_cast<std::size_t>(room)];
  }
  /// W: total patient-days.
  std::int64_t total_patient_days() const;

  bool operator==(const Instance&) const = default;
};

struct Solution {
  Assignment rooms;
  std::int64_t objective = 0;

  bool operator==(const Solution&) const = default;
};

struct Objective {
  std::int64_t total = 0;
  std::int64_t cv = 0;        // O1
  std::int64_t gender = 0;    // O2
  std::int64_t transfer = 0;  // O3

  bool operator==(const Objective&) const = default;
};

struct CapacityViolation {
  int room = 0;
  int day = 0;
  int occupants = 0;
  int capacity = 0;

  bool operator==(const CapacityViolation&) const = default;
};

struct FeasibilityReport {
  std::vector<CapacityViolation> violations;
  bool ok() const { return violations.empty(); }
};

/// Throws StructuralError unless every patient has exactly LoS valid room ids.
void check_dimensions(const Instance& instance, const Assignment& rooms);

FeasibilityReport check_feasibility(const Instance& instance, const Assignment& rooms);
inline FeasibilityReport check_feasibility(const Instance& instance, const Solution& s) {
  return check_feasibility(instance, s.rooms);
}

Objective evaluate_objective(const Instance& instance, const Assignment& rooms);
inline Objective evaluate_objective(const Instance& instance, const Solution& s) {
  return evaluate_objective(instance, s.rooms);
}

/// Wraps an assignment with its evaluated objective.
Solution make_solution(const Instance& instance, Assignment rooms);

/// Assignment keeping each patient in one room for the whole stay.
Assignment whole_stay_assignment(const Instance& instance, std::span<const int> room_of_patient);

/// c_max = floor((1 + alpha) * seed_objective). Alpha is resolved to 1e-9.
std::int64_t quality_threshold(std::int64_t seed_objective, double alpha);

/// O1 share of one patient.
std::int64_t patient_cv_cost(const Instance& instance, int patient, std::span<const int> rooms);
/// Number of adjacent-day room changes within one stay.
std::int64_t patient_transfers(std::span<const int> rooms);

/// Dense room x day occupancy with per-gender counts. Mutators return the change in O2.
class Occupancy {
 public:
  explicit Occupancy(const Instance& instance);
  Occupancy(const Instance& instance, const Assignment& rooms);

  const Instance& instance() const { return *instance_; }
  int occupants(int room, int day) const { return female(room, day) + male(room, day); }
  int female(int room, int day) const { return female_[index(room, day)]; }
  int male(int room, int day) const { return male_[index(room, day)]; }

  /// True if the room has a free bed on every day of [from, to).
  bool has_capacity(int room, int from, int to) const;
  /// O2 contribution of one room-day.
  std::int64_t gender_cost(int room, int day) const;
  std::int64_t gender_cost_with(int room, int day, Gender extra) const;

  std::int64_t add(int patient, int room, int day);
  std::int64_t remove(int patient, int room, int day);

  /// CV plus O2 delta of putting an unplaced patient in `room` for the whole stay. No mutation.
  std::int64_t placement_cost(int patient, int room) const;
  /// Places the patient for the whole stay; returns the O2 delta.
  std::int64_t place(int patient, int room);
  /// Removes every day of the patient's stay; returns the O2 delta.
  std::int64_t unplace(int patient, std::span<const int> rooms);

 private:
  std::size_t index(int room, int day) const {
    return static_cast<std::size_t>(room) * static_cast<std::size_t>(horizon_) + static_cast<std::size_t>(day);
  }
  std::int64_t gender_cost_counts(int room, int f, int m) const;

  const Instance* instance_;
  int horizon_;
  std::vector<int> female_;
  std::vector<int> male_;
};

}  // namespace pasdiv
