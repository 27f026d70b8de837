#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "pasdiv/error.hpp"
#include "pasdiv/instances.hpp"
#include "pasdiv/rng.hpp"

namespace pasdiv {

namespace {

constexpr int kSpecialties = 6;
constexpr int kFeatures = 4;

struct RoomTraits {
  int department = 0;
  int level = 0;     // room specialty level 0..2
  unsigned features = 0;
};

struct DepartmentTraits {
  int age_group = 0;  // 0 = any
  unsigned specialties = 0;
};

struct PatientTraits {
  int age_group = 1;
  int specialty = 0;
  int level = 0;
  unsigned required = 0;
  unsigned desired = 0;
  int preferred_capacity = 1;
};

int draw_poisson(Rng& rng, double mean) {
  const double limit = std::exp(-mean);
  int k = 0;
  double prod = draw_unit(rng);
  while (prod > limit) {
    ++k;
    prod *= draw_unit(rng);
  }
  return k;
}

bool chance(Rng& rng, double p) { return draw_unit(rng) < p; }

void check_spec(const GeneratorSpec& s) {
  if (s.patients < 0) throw ConfigError("patients must be >= 0");
  if (s.rooms < 1) throw ConfigError("rooms must be >= 1");
  if (s.total_beds < s.rooms) throw ConfigError("total_beds must be >= rooms");
  if (s.days < 1) throw ConfigError("days must be >= 1");
  if (!(s.mean_los >= 1.0 && s.mean_los <= s.days)) throw ConfigError("mean_los must lie in [1, days]");
  if (!(s.occupancy_target > 0.0 && s.occupancy_target <= 1.0)) throw ConfigError("occupancy_target must lie in (0, 1]");
  if (!(s.gender_mix >= 0.0 && s.gender_mix <= 1.0)) throw ConfigError("gender_mix must lie in [0, 1]");
  double mix = 0;
  for (double w : s.policy_mix) {
    if (!(w >= 0)) throw ConfigError("policy_mix weights must be >= 0");
    mix += w;
  }
  if (!(mix > 0)) throw ConfigError("policy_mix needs a positive weight");
  const auto& w = s.cost_weights;
  if (std::min({w.age, w.department, w.room_specialty, w.features, w.capacity_preference, w.gender_fixed}) < 0) {
    throw ConfigError("cost weights must be >= 0");
  }
  if (s.cg2 < 0 || s.ct < 0) throw ConfigError("cg2 and ct must be >= 0");
  const double expected_load = s.patients * s.mean_los / s.days;
  if (expected_load > s.total_beds) {
    throw ConfigError("infeasible spec: expected daily load " + std::to_string(expected_load) + " exceeds " +
                      std::to_string(s.total_beds) + " beds");
  }
}

}  // namespace

GeneratorSpec desk_scale_spec(std::uint64_t seed) {
  GeneratorSpec s;
  s.name = "desk-" + std::to_string(seed);
  s.patients = 64;
  s.total_beds = 36;
  s.seed = seed;
  return s;
}

GeneratorSpec benchmark_like_spec(int index, std::uint64_t seed) {
  struct Row {
    int beds, rooms, days, patients;
    double los;
  };
  // B, R, D, P, SL of the six classic instances.
  static constexpr Row kRows[] = {
      {286, 98, 14, 652, 3.66}, {465, 151, 14, 755, 5.17}, {395, 131, 14, 708, 4.46},
      {471, 155, 14, 746, 4.79}, {325, 102, 14, 587, 3.82}, {313, 104, 14, 685, 4.12},
  };
  if (index < 1 || index > 6) throw ConfigError("benchmark-like specs exist for instances 1..6");
  const Row& row = kRows[index - 1];
  GeneratorSpec s;
  s.name = "bench" + std::to_string(index) + "-like";
  s.patients = row.patients;
  s.rooms = row.rooms;
  s.total_beds = row.beds;
  s.days = row.days;
  s.mean_los = row.los;
  s.occupancy_target = 0.95;
  s.seed = seed;
  return s;
}

Instance generate(const GeneratorSpec& spec) {
  check_spec(spec);
  Rng rng(spec.seed);

  Instance inst;
  inst.name = spec.name;
  inst.horizon = spec.days;
  inst.cg2 = spec.cg2;
  inst.ct = spec.ct;

  // Rooms: one bed each, the remaining beds spread at random.
  std::vector<int> capacity(static_cast<std::size_t>(spec.rooms), 1);
  for (int b = spec.rooms; b < spec.total_beds; ++b) ++capacity[draw_below(rng, capacity.size())];
  const int departments = std::max(1, (spec.rooms + 4) / 5);
  std::vector<DepartmentTraits> dept(static_cast<std::size_t>(departments));
  for (auto& d : dept) {
    d.age_group = chance(rng, 0.5) ? 0 : 1 + draw_index(rng, 3);
    while (std::popcount(d.specialties) < 2) d.specialties |= 1u << draw_index(rng, kSpecialties);
  }
  std::vector<RoomTraits> room_traits(capacity.size());
  for (int r = 0; r < spec.rooms; ++r) {
    const auto policy = static_cast<GenderPolicy>(draw_weighted(rng, spec.policy_mix));
    inst.rooms.push_back({r, capacity[static_cast<std::size_t>(r)], policy});
    auto& t = room_traits[static_cast<std::size_t>(r)];
    t.department = r * departments / spec.rooms;
    t.level = draw_index(rng, 3);
    for (int f = 0; f < kFeatures; ++f) {
      if (chance(rng, 0.5)) t.features |= 1u << f;
    }
  }

  // Patients: length of stay first, then an admission day that fits it.
  std::vector<PatientTraits> traits;
  for (int p = 0; p < spec.patients; ++p) {
    int los = 0;
    do {
      los = 1 + draw_poisson(rng, spec.mean_los - 1.0);
    } while (los > spec.days);
    Patient pt;
    pt.gender = chance(rng, spec.gender_mix) ? Gender::Female : Gender::Male;
    pt.admission = draw_index(rng, static_cast<std::size_t>(spec.days - los + 1));
    pt.discharge = pt.admission + los;
    inst.patients.push_back(pt);

    PatientTraits t;
    t.age_group = 1 + draw_index(rng, 3);
    t.specialty = draw_index(rng, kSpecialties);
    const double u = draw_unit(rng);
    t.level = u < 0.6 ? 0 : (u < 0.9 ? 1 : 2);
    for (int f = 0; f < kFeatures; ++f) {
      if (chance(rng, 0.15)) t.required |= 1u << f;
      else if (chance(rng, 0.2)) t.desired |= 1u << f;
    }
    static constexpr int kPreferred[] = {1, 2, 4};
    t.preferred_capacity = kPreferred[draw_index(rng, 3)];
    traits.push_back(t);
  }

  // Thin out patients on overloaded days.
  const auto limit = static_cast<int>(std::floor(spec.occupancy_target * spec.total_beds));
  for (;;) {
    std::vector<int> load(static_cast<std::size_t>(spec.days), 0);
    for (const auto& pt : inst.patients) {
      for (int t = pt.admission; t < pt.discharge; ++t) ++load[static_cast<std::size_t>(t)];
    }
    const auto busiest = std::max_element(load.begin(), load.end());
    if (*busiest <= limit) break;
    const int day = static_cast<int>(busiest - load.begin());
    std::vector<std::size_t> present;
    for (std::size_t p = 0; p < inst.patients.size(); ++p) {
      if (inst.patients[p].present(day)) present.push_back(p);
    }
    const auto victim = present[draw_below(rng, present.size())];
    inst.patients.erase(inst.patients.begin() + static_cast<std::ptrdiff_t>(victim));
    traits.erase(traits.begin() + static_cast<std::ptrdiff_t>(victim));
  }
  for (std::size_t p = 0; p < inst.patients.size(); ++p) inst.patients[p].id = static_cast<int>(p);

  // Component costs, merged into CV.
  const auto& w = spec.cost_weights;
  const std::size_t cells = inst.patients.size() * inst.rooms.size();
  CostBreakdown parts;
  for (const char* name : {"age", "department", "room_specialty", "features", "capacity_preference", "gender_fixed"}) {
    parts[name].assign(cells, 0);
  }
  inst.cv.assign(cells, 0);
  for (std::size_t p = 0; p < inst.patients.size(); ++p) {
    const auto& pt = traits[p];
    for (std::size_t r = 0; r < inst.rooms.size(); ++r) {
      const auto& rt = room_traits[r];
      const auto& dt = dept[static_cast<std::size_t>(rt.department)];
      const std::size_t cell = p * inst.rooms.size() + r;
      parts["age"][cell] = (dt.age_group != 0 && dt.age_group != pt.age_group) ? w.age : 0;
      parts["department"][cell] = (dt.specialties >> pt.specialty & 1u) ? 0 : w.department;
      parts["room_specialty"][cell] = w.room_specialty * std::max(0, pt.level - rt.level);
      parts["features"][cell] = w.features * std::popcount(pt.required & ~rt.features) +
                                (w.features / 5) * std::popcount(pt.desired & ~rt.features);
      parts["capacity_preference"][cell] =
          w.capacity_preference * std::max(0, inst.rooms[r].capacity - pt.preferred_capacity);
      const auto policy = inst.rooms[r].policy;
      const auto gender = inst.patients[p].gender;
      const bool wrong = (policy == GenderPolicy::Female && gender == Gender::Male) ||
                         (policy == GenderPolicy::Male && gender == Gender::Female);
      parts["gender_fixed"][cell] = wrong ? w.gender_fixed : 0;
      for (const auto& [name, matrix] : parts) inst.cv[cell] += matrix[cell];
    }
  }
  if (spec.emit_breakdown) inst.cost_breakdown = std::move(parts);
  return inst;
}

}  // namespace pasdiv
