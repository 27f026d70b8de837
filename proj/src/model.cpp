#include "pasdiv/model.hpp"

#include <algorithm>
#include <cmath>

#include "pasdiv/error.hpp"

namespace pasdiv {

char to_token(Gender g) { return g == Gender::Female ? 'F' : 'M'; }

char to_token(GenderPolicy p) {
  switch (p) {
    case GenderPolicy::Female: return 'F';
    case GenderPolicy::Male: return 'M';
    case GenderPolicy::Dual: return 'D';
    case GenderPolicy::Neutral: return 'N';
  }
  return '?';
}

std::optional<Gender> parse_gender(std::string_view token) {
  if (token == "F") return Gender::Female;
  if (token == "M") return Gender::Male;
  return std::nullopt;
}

std::optional<GenderPolicy> parse_policy(std::string_view token) {
  if (token == "F") return GenderPolicy::Female;
  if (token == "M") return GenderPolicy::Male;
  if (token == "D") return GenderPolicy::Dual;
  if (token == "N") return GenderPolicy::Neutral;
  return std::nullopt;
}

std::int64_t Instance::total_patient_days() const {
  std::int64_t w = 0;
  for (const auto& p : patients) w += p.length_of_stay();
  return w;
}

void check_dimensions(const Instance& instance, const Assignment& rooms) {
  if (rooms.size() != instance.patients.size()) {
    throw StructuralError("assignment has " + std::to_string(rooms.size()) + " patients, instance has " +
                          std::to_string(instance.patients.size()));
  }
  if (instance.cv.size() != instance.patients.size() * instance.rooms.size()) {
    throw StructuralError("cost matrix does not match patients x rooms");
  }
  for (std::size_t p = 0; p < rooms.size(); ++p) {
    const auto& patient = instance.patients[p];
    if (patient.admission < 0 || patient.discharge > instance.horizon || patient.length_of_stay() < 1) {
      throw StructuralError("patient " + std::to_string(p) + ": stay outside the planning horizon");
    }
    if (static_cast<int>(rooms[p].size()) != patient.length_of_stay()) {
      throw StructuralError("patient " + std::to_string(p) + ": assignment covers " + std::to_string(rooms[p].size()) +
                            " days, stay is " + std::to_string(patient.length_of_stay()));
    }
    for (int r : rooms[p]) {
      if (r < 0 || r >= instance.num_rooms()) {
        throw StructuralError("patient " + std::to_string(p) + ": invalid room id " + std::to_string(r));
      }
    }
  }
}

FeasibilityReport check_feasibility(const Instance& instance, const Assignment& rooms) {
  check_dimensions(instance, rooms);
  const Occupancy occ(instance, rooms);
  FeasibilityReport report;
  for (int r = 0; r < instance.num_rooms(); ++r) {
    for (int t = 0; t < instance.horizon; ++t) {
      const int n = occ.occupants(r, t);
      if (n > instance.rooms[r].capacity) report.violations.push_back({r, t, n, instance.rooms[r].capacity});
    }
  }
  return report;
}

std::int64_t patient_cv_cost(const Instance& instance, int patient, std::span<const int> rooms) {
  std::int64_t cost = 0;
  for (std::size_t i = 0; i < rooms.size(); ++i) {
    if (instance.options.cv_per_day || i == 0 || rooms[i] != rooms[i - 1]) cost += instance.cost(patient, rooms[i]);
  }
  return cost;
}

std::int64_t patient_transfers(std::span<const int> rooms) {
  std::int64_t n = 0;
  for (std::size_t i = 1; i < rooms.size(); ++i) n += rooms[i] != rooms[i - 1];
  return n;
}

Objective evaluate_objective(const Instance& instance, const Assignment& rooms) {
  check_dimensions(instance, rooms);
  Objective o;
  std::int64_t transfers = 0;
  for (int p = 0; p < instance.num_patients(); ++p) {
    o.cv += patient_cv_cost(instance, p, rooms[p]);
    transfers += patient_transfers(rooms[p]);
  }
  o.transfer = instance.ct * transfers;

  const Occupancy occ(instance, rooms);
  for (int r = 0; r < instance.num_rooms(); ++r) {
    if (instance.rooms[r].policy != GenderPolicy::Dual) continue;
    for (int t = 0; t < instance.horizon; ++t) o.gender += occ.gender_cost(r, t);
  }
  o.total = o.cv + o.gender + o.transfer;
  return o;
}

Solution make_solution(const Instance& instance, Assignment rooms) {
  Solution s{std::move(rooms), 0};
  s.objective = evaluate_objective(instance, s.rooms).total;
  return s;
}

Assignment whole_stay_assignment(const Instance& instance, std::span<const int> room_of_patient) {
  if (room_of_patient.size() != instance.patients.size()) throw StructuralError("one room per patient expected");
  Assignment a(instance.patients.size());
  for (std::size_t p = 0; p < a.size(); ++p) {
    a[p].assign(static_cast<std::size_t>(instance.patients[p].length_of_stay()), room_of_patient[p]);
  }
  return a;
}

std::int64_t quality_threshold(std::int64_t seed_objective, double alpha) {
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) throw ConfigError("alpha must be a non-negative number");
  if (seed_objective < 0) throw ConfigError("seed objective must be non-negative");
  constexpr std::int64_t kScale = 1'000'000'000;
  const auto alpha_units = static_cast<__int128>(std::llround(alpha * static_cast<double>(kScale)));
  const __int128 extra = static_cast<__int128>(seed_objective) * alpha_units / kScale;
  return seed_objective + static_cast<std::int64_t>(extra);
}

// ---------------------------------------------------------------------------

Occupancy::Occupancy(const Instance& instance)
    : instance_(&instance),
      horizon_(instance.horizon),
      female_(static_cast<std::size_t>(instance.num_rooms()) * static_cast<std::size_t>(instance.horizon), 0),
      male_(female_.size(), 0) {}

Occupancy::Occupancy(const Instance& instance, const Assignment& rooms) : Occupancy(instance) {
  for (int p = 0; p < instance.num_patients(); ++p) {
    const auto& patient = instance.patients[p];
    auto& bucket = patient.gender == Gender::Female ? female_ : male_;
    for (int i = 0; i < patient.length_of_stay(); ++i) ++bucket[index(rooms[p][i], patient.admission + i)];
  }
}

bool Occupancy::has_capacity(int room, int from, int to) const {
  const int cap = instance_->rooms[room].capacity;
  for (int t = from; t < to; ++t) {
    if (occupants(room, t) >= cap) return false;
  }
  return true;
}

std::int64_t Occupancy::gender_cost_counts(int room, int f, int m) const {
  if (instance_->rooms[room].policy != GenderPolicy::Dual || f == 0 || m == 0) return 0;
  if (instance_->options.gender_rule == GenderPenaltyRule::PerMixedRoomDay) return instance_->cg2;
  return instance_->cg2 * std::min(f, m);
}

std::int64_t Occupancy::gender_cost(int room, int day) const {
  return gender_cost_counts(room, female(room, day), male(room, day));
}

std::int64_t Occupancy::gender_cost_with(int room, int day, Gender extra) const {
  const int f = female(room, day) + (extra == Gender::Female);
  const int m = male(room, day) + (extra == Gender::Male);
  return gender_cost_counts(room, f, m);
}

std::int64_t Occupancy::add(int patient, int room, int day) {
  const std::int64_t before = gender_cost(room, day);
  auto& bucket = instance_->patients[patient].gender == Gender::Female ? female_ : male_;
  ++bucket[index(room, day)];
  return gender_cost(room, day) - before;
}

std::int64_t Occupancy::remove(int patient, int room, int day) {
  const std::int64_t before = gender_cost(room, day);
  auto& bucket = instance_->patients[patient].gender == Gender::Female ? female_ : male_;
  auto& slot = bucket[index(room, day)];
  if (slot == 0) throw StructuralError("removing a patient that is not in the room");
  --slot;
  return gender_cost(room, day) - before;
}

std::int64_t Occupancy::placement_cost(int patient, int room) const {
  const auto& pt = instance_->patients[patient];
  std::int64_t cost = instance_->options.cv_per_day ? instance_->cost(patient, room) * pt.length_of_stay()
                                                    : instance_->cost(patient, room);
  for (int t = pt.admission; t < pt.discharge; ++t) cost += gender_cost_with(room, t, pt.gender) - gender_cost(room, t);
  return cost;
}

std::int64_t Occupancy::place(int patient, int room) {
  const auto& pt = instance_->patients[patient];
  std::int64_t delta = 0;
  for (int t = pt.admission; t < pt.discharge; ++t) delta += add(patient, room, t);
  return delta;
}

std::int64_t Occupancy::unplace(int patient, std::span<const int> rooms) {
  const auto& pt = instance_->patients[patient];
  std::int64_t delta = 0;
  for (int i = 0; i < pt.length_of_stay(); ++i) delta += remove(patient, rooms[i], pt.admission + i);
  return delta;
}

}  // namespace pasdiv
