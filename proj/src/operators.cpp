#include "pasdiv/operators.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <iostream>
#include <numeric>

#include "pasdiv/error.hpp"

namespace pasdiv {

std::string_view to_string(Variant v) {
  switch (v) {
    case Variant::Swap: return "swap";
    case Variant::Fixed: return "fixed";
    case Variant::Adaptive: return "adaptive";
    case Variant::Biased: return "biased";
  }
  return "?";
}

std::optional<Variant> parse_variant(std::string_view name) {
  for (Variant v : {Variant::Swap, Variant::Fixed, Variant::Adaptive, Variant::Biased}) {
    if (to_string(v) == name) return v;
  }
  return std::nullopt;
}

OperatorConfig OperatorConfig::defaults(Variant v) {
  OperatorConfig c;
  c.variant = v;
  switch (v) {
    case Variant::Swap:
    case Variant::Fixed:
      c.gamma = 50;
      c.x = c.x_max = 14;
      break;
    case Variant::Adaptive:
      c.gamma = 50;
      c.x = c.x_max = 15;
      c.decay_exponent = 8;
      c.interval = 200;
      break;
    case Variant::Biased:
      c.gamma = 47;
      c.x = c.x_max = 14;
      c.decay_exponent = 1;
      c.interval = 200;
      break;
  }
  return c;
}

int OperatorConfig::step_size() const { return static_cast<int>(std::lround(x)); }

void OperatorConfig::validate() const {
  if (!(gamma >= 0)) throw ConfigError("gamma must be >= 0");
  if (!(x_min <= x && x <= x_max)) throw ConfigError("x must lie in [x_min, x_max]");
  if (!(x_min >= 0)) throw ConfigError("x_min must be >= 0");
  if (!(factor > 1)) throw ConfigError("F must be > 1");
  if (!(decay_exponent > 0)) throw ConfigError("k must be > 0");
  if (interval < 1) throw ConfigError("u must be >= 1");
  if (candidates < 1) throw ConfigError("y must be >= 1");
}

CandidateRooms::CandidateRooms(const Instance& instance, int y)
    : width_(static_cast<std::size_t>(std::min(std::max(y, 1), instance.num_rooms()))) {
  rooms_.reserve(width_ * instance.patients.size());
  std::vector<int> order(static_cast<std::size_t>(instance.num_rooms()));
  for (int p = 0; p < instance.num_patients(); ++p) {
    std::iota(order.begin(), order.end(), 0);
    std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(width_), order.end(),
                      [&](int a, int b) {
                        const auto ca = instance.cost(p, a);
                        const auto cb = instance.cost(p, b);
                        return ca != cb ? ca < cb : a < b;
                      });
    rooms_.insert(rooms_.end(), order.begin(), order.begin() + static_cast<std::ptrdiff_t>(width_));
  }
}

// ---------------------------------------------------------------------------

std::optional<Solution> swap_patients(const Instance& instance, const Solution& parent, int a, int b) {
  if (a == b) return std::nullopt;
  const auto& pa = instance.patients[static_cast<std::size_t>(a)];
  const auto& pb = instance.patients[static_cast<std::size_t>(b)];
  const auto& ra = parent.rooms[static_cast<std::size_t>(a)];
  const auto& rb = parent.rooms[static_cast<std::size_t>(b)];

  auto take_rooms = [](const Patient& self, const Patient& other, const std::vector<int>& other_rooms) {
    std::vector<int> out(static_cast<std::size_t>(self.length_of_stay()));
    for (int t = self.admission; t < self.discharge; ++t) {
      const int nearest = std::clamp(t, other.admission, other.discharge - 1);
      out[static_cast<std::size_t>(t - self.admission)] = other_rooms[static_cast<std::size_t>(nearest - other.admission)];
    }
    return out;
  };
  std::vector<int> new_a = take_rooms(pa, pb, rb);
  std::vector<int> new_b = take_rooms(pb, pa, ra);

  Occupancy occ(instance, parent.rooms);
  std::int64_t delta = 0;
  delta += occ.unplace(a, ra) + occ.unplace(b, rb);
  delta -= patient_cv_cost(instance, a, ra) + patient_cv_cost(instance, b, rb);
  delta -= instance.ct * (patient_transfers(ra) + patient_transfers(rb));
  for (int i = 0; i < pa.length_of_stay(); ++i) delta += occ.add(a, new_a[static_cast<std::size_t>(i)], pa.admission + i);
  for (int i = 0; i < pb.length_of_stay(); ++i) delta += occ.add(b, new_b[static_cast<std::size_t>(i)], pb.admission + i);

  auto overfull = [&](const Patient& pt, const std::vector<int>& stay) {
    for (int i = 0; i < pt.length_of_stay(); ++i) {
      const int r = stay[static_cast<std::size_t>(i)];
      if (occ.occupants(r, pt.admission + i) > instance.rooms[static_cast<std::size_t>(r)].capacity) return true;
    }
    return false;
  };
  if (overfull(pa, new_a) || overfull(pb, new_b)) return std::nullopt;

  delta += patient_cv_cost(instance, a, new_a) + patient_cv_cost(instance, b, new_b);
  delta += instance.ct * (patient_transfers(new_a) + patient_transfers(new_b));

  Solution child = parent;
  child.rooms[static_cast<std::size_t>(a)] = std::move(new_a);
  child.rooms[static_cast<std::size_t>(b)] = std::move(new_b);
  child.objective = parent.objective + delta;
  return child;
}

std::optional<Solution> standard_swap(const Instance& instance, const Solution& parent, Rng& rng) {
  const auto n = instance.patients.size();
  if (n < 2) return std::nullopt;
  const int a = draw_index(rng, n);
  int b = draw_index(rng, n - 1);
  if (b >= a) ++b;
  return swap_patients(instance, parent, a, b);
}

// ---------------------------------------------------------------------------

namespace {

int clamp_selection(int num_patients, int x) {
  static std::atomic<bool> warned{false};
  if (x > num_patients) {
    if (!warned.exchange(true)) {
      std::clog << "pasdiv: step size " << x << " exceeds patient count " << num_patients << ", clamping\n";
    }
    return num_patients;
  }
  return std::max(x, 0);
}

}  // namespace

std::vector<int> select_patients_uniform(int num_patients, int x, Rng& rng) {
  x = clamp_selection(num_patients, x);
  std::vector<int> pool(static_cast<std::size_t>(num_patients));
  std::iota(pool.begin(), pool.end(), 0);
  for (int i = 0; i < x; ++i) {
    const auto j = static_cast<std::size_t>(i) + draw_below(rng, pool.size() - static_cast<std::size_t>(i));
    std::swap(pool[static_cast<std::size_t>(i)], pool[j]);
  }
  pool.resize(static_cast<std::size_t>(x));
  return pool;
}

std::vector<int> select_patients_biased(const Instance& instance, const Assignment& parent,
                                        const EntropyState& counts, int x, Rng& rng) {
  const int n = instance.num_patients();
  x = clamp_selection(n, x);
  std::vector<double> weight(static_cast<std::size_t>(n));
  for (int p = 0; p < n; ++p) weight[static_cast<std::size_t>(p)] = static_cast<double>(counts.patient_weight(p, parent));

  std::vector<int> chosen;
  chosen.reserve(static_cast<std::size_t>(x));
  for (int i = 0; i < x; ++i) {
    auto idx = draw_weighted(rng, weight);
    if (idx == weight.size()) {
      // Only zero weights left: fall back to a uniform pick among the remaining patients.
      std::vector<int> rest;
      for (int p = 0; p < n; ++p) {
        if (std::find(chosen.begin(), chosen.end(), p) == chosen.end()) rest.push_back(p);
      }
      idx = static_cast<std::size_t>(rest[draw_below(rng, rest.size())]);
    }
    chosen.push_back(static_cast<int>(idx));
    weight[idx] = 0.0;
  }
  return chosen;
}

// ---------------------------------------------------------------------------

std::vector<EligibleRoom> reinsertion_distribution(const Occupancy& partial, int patient,
                                                   std::span<const int> candidates, double gamma) {
  const auto& pt = partial.instance().patients[static_cast<std::size_t>(patient)];
  std::vector<EligibleRoom> eligible;
  for (int r : candidates) {
    if (partial.has_capacity(r, pt.admission, pt.discharge)) eligible.push_back({r, partial.placement_cost(patient, r), 0});
  }
  if (eligible.empty()) return eligible;

  const auto cheapest = std::min_element(eligible.begin(), eligible.end(), [](const auto& a, const auto& b) {
                          return a.cost < b.cost;
                        })->cost;
  double total = 0;
  for (auto& e : eligible) {
    e.probability = std::exp(-gamma * std::log1p(static_cast<double>(e.cost - cheapest)));
    total += e.probability;
  }
  for (auto& e : eligible) e.probability /= total;
  return eligible;
}

std::optional<Placement> reinsert(Occupancy& partial, int patient, std::span<const int> candidates, double gamma,
                                  Rng& rng) {
  const auto eligible = reinsertion_distribution(partial, patient, candidates, gamma);
  if (eligible.empty()) return std::nullopt;
  std::vector<double> weights(eligible.size());
  std::transform(eligible.begin(), eligible.end(), weights.begin(), [](const auto& e) { return e.probability; });
  const auto& pick = eligible[draw_weighted(rng, weights)];
  partial.place(patient, pick.room);
  return Placement{pick.room, pick.cost};
}

std::optional<Solution> change_mutation(const Instance& instance, const Solution& parent,
                                        const OperatorConfig& config, const CandidateRooms& candidates,
                                        const EntropyState* counts, Rng& rng) {
  const int x = config.step_size();
  std::vector<int> chosen;
  if (config.variant == Variant::Biased) {
    if (counts == nullptr) throw ConfigError("biased change mutation needs population counts");
    chosen = select_patients_biased(instance, parent.rooms, *counts, x, rng);
  } else {
    chosen = select_patients_uniform(instance.num_patients(), x, rng);
  }

  Occupancy occ(instance, parent.rooms);
  std::int64_t objective = parent.objective;
  for (int p : chosen) {
    const auto& stay = parent.rooms[static_cast<std::size_t>(p)];
    objective += occ.unplace(p, stay);
    objective -= patient_cv_cost(instance, p, stay) + instance.ct * patient_transfers(stay);
  }

  Solution child = parent;
  for (int p : chosen) {
    const auto placed = reinsert(occ, p, candidates.of(p), config.gamma, rng);
    if (!placed) return std::nullopt;
    objective += placed->cost;
    auto& stay = child.rooms[static_cast<std::size_t>(p)];
    std::fill(stay.begin(), stay.end(), placed->room);
  }
  child.objective = objective;
  return child;
}

std::optional<Solution> mutate(const Instance& instance, const Solution& parent, const OperatorConfig& config,
                               const CandidateRooms& candidates, const EntropyState& counts, Rng& rng) {
  if (config.variant == Variant::Swap) return standard_swap(instance, parent, rng);
  return change_mutation(instance, parent, config, candidates, &counts, rng);
}

double adapt_x(const OperatorConfig& config, bool interval_succeeded) {
  if (interval_succeeded) return std::min(config.x * config.factor, config.x_max);
  return std::max(config.x * std::pow(config.factor, -1.0 / config.decay_exponent), config.x_min);
}

}  // namespace pasdiv
