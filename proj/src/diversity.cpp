#include "pasdiv/diversity.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pasdiv/error.hpp"

namespace pasdiv {

namespace {

void require_base(double log_base) {
  if (!(log_base > 1.0) || !std::isfinite(log_base)) throw ConfigError("log base must be a finite number > 1");
}

}  // namespace

double entropy_term(int count, int mu, double log_base) {
  if (mu < 1) throw ConfigError("mu must be >= 1");
  if (count < 0 || count > mu) {
    throw StateCorruption("count " + std::to_string(count) + " outside [0, " + std::to_string(mu) + "]");
  }
  if (count == 0 || count == mu) return 0.0;
  const double q = static_cast<double>(count) / static_cast<double>(mu);
  return -q * std::log(q) / std::log(log_base);
}

double max_entropy(std::int64_t patient_days, int num_rooms, int mu, double log_base) {
  require_base(log_base);
  if (patient_days < 0 || num_rooms < 1 || mu < 1) throw ConfigError("max_entropy needs W >= 0, rooms >= 1, mu >= 1");
  const int share = mu / num_rooms;
  const int spill = mu % num_rooms;
  // `spill` rooms hold share + 1 members, the rest hold `share`.
  double per_day = static_cast<double>(num_rooms - spill) * entropy_term(share, mu, log_base);
  if (spill > 0) per_day += static_cast<double>(spill) * entropy_term(share + 1, mu, log_base);
  return static_cast<double>(patient_days) * per_day;
}

EntropyState::EntropyState(const Instance& instance, int mu, double log_base)
    : instance_(&instance), mu_(mu), log_base_(log_base) {
  require_base(log_base);
  if (mu < 1) throw ConfigError("mu must be >= 1");
  offset_.reserve(instance.patients.size() + 1);
  std::int64_t acc = 0;
  for (const auto& p : instance.patients) {
    offset_.push_back(acc);
    acc += p.length_of_stay();
  }
  offset_.push_back(acc);
  slots_.resize(static_cast<std::size_t>(acc));
  by_count_.assign(static_cast<std::size_t>(mu) + 1, 0);
  term_.resize(static_cast<std::size_t>(mu) + 1);
  for (int x = 0; x <= mu; ++x) term_[static_cast<std::size_t>(x)] = entropy_term(x, mu, log_base);
}

EntropyState::EntropyState(const Instance& instance, std::span<const Solution> population, double log_base)
    : EntropyState(instance, static_cast<int>(population.size()), log_base) {
  for (const auto& s : population) add(s.rooms);
}

void EntropyState::bump(std::size_t s, int room, int delta) {
  auto& hist = slots_[s];
  auto it = std::find_if(hist.begin(), hist.end(), [room](const auto& e) { return e.first == room; });
  const int before = it == hist.end() ? 0 : it->second;
  const int after = before + delta;
  if (after < 0) throw StateCorruption("decrementing a zero count (room " + std::to_string(room) + ")");
  if (after > mu_) throw StateCorruption("count exceeds population size (room " + std::to_string(room) + ")");
  if (before > 0) --by_count_[static_cast<std::size_t>(before)];
  if (after > 0) ++by_count_[static_cast<std::size_t>(after)];
  if (it == hist.end()) {
    hist.emplace_back(room, after);
  } else if (after == 0) {
    *it = hist.back();
    hist.pop_back();
  } else {
    it->second = after;
  }
}

void EntropyState::refresh_cache() {
  long double acc = 0.0L;
  for (std::size_t x = 1; x < by_count_.size(); ++x) {
    acc += static_cast<long double>(by_count_[x]) * static_cast<long double>(term_[x]);
  }
  cached_ = static_cast<double>(acc);
}

void EntropyState::add(const Assignment& rooms) {
  if (members_ >= mu_) throw StateCorruption("population already holds mu members");
  check_dimensions(*instance_, rooms);
  for (int p = 0; p < instance_->num_patients(); ++p) {
    const auto& stay = rooms[static_cast<std::size_t>(p)];
    for (std::size_t i = 0; i < stay.size(); ++i) bump(slot(p, static_cast<int>(i)), stay[i], +1);
  }
  ++members_;
  refresh_cache();
}

void EntropyState::remove(const Assignment& rooms) {
  if (members_ == 0) throw StateCorruption("removing from an empty population");
  check_dimensions(*instance_, rooms);
  for (int p = 0; p < instance_->num_patients(); ++p) {
    const auto& stay = rooms[static_cast<std::size_t>(p)];
    for (std::size_t i = 0; i < stay.size(); ++i) bump(slot(p, static_cast<int>(i)), stay[i], -1);
  }
  --members_;
  refresh_cache();
}

int EntropyState::count(int patient, int room, int day) const {
  const auto& pt = instance_->patients[static_cast<std::size_t>(patient)];
  if (!pt.present(day)) return 0;
  for (const auto& [r, n] : slots_[slot(patient, day - pt.admission)]) {
    if (r == room) return n;
  }
  return 0;
}

std::int64_t EntropyState::patient_weight(int patient, const Assignment& rooms) const {
  const auto& stay = rooms[static_cast<std::size_t>(patient)];
  std::int64_t w = 0;
  for (std::size_t i = 0; i < stay.size(); ++i) {
    for (const auto& [r, n] : slots_[slot(patient, static_cast<int>(i))]) {
      if (r == stay[i]) {
        w += n;
        break;
      }
    }
  }
  return w;
}

double EntropyState::entropy() const {
  long double acc = 0.0L;
  for (const auto& hist : slots_) {
    for (const auto& [room, n] : hist) acc += static_cast<long double>(entropy_term(n, mu_, log_base_));
  }
  return static_cast<double>(acc);
}

double EntropyState::replace_delta(const Assignment& parent, const Assignment& offspring) const {
  std::vector<std::int64_t> counts = by_count_;
  bool changed = false;
  auto shift = [&](int from, int to) {
    if (from > 0) --counts[static_cast<std::size_t>(from)];
    if (to > 0) ++counts[static_cast<std::size_t>(to)];
  };
  for (int p = 0; p < instance_->num_patients(); ++p) {
    const auto& a = parent[static_cast<std::size_t>(p)];
    const auto& b = offspring[static_cast<std::size_t>(p)];
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i] == b[i]) continue;
      changed = true;
      int n_old = 0;
      int n_new = 0;
      for (const auto& [r, n] : slots_[slot(p, static_cast<int>(i))]) {
        if (r == a[i]) n_old = n;
        if (r == b[i]) n_new = n;
      }
      if (n_old == 0) throw StateCorruption("parent assignment is not counted in the population");
      if (n_new >= mu_) throw StateCorruption("count would exceed population size");
      shift(n_old, n_old - 1);
      shift(n_new, n_new + 1);
    }
  }
  if (!changed) return cached_;
  long double acc = 0.0L;
  for (std::size_t x = 1; x < counts.size(); ++x) {
    acc += static_cast<long double>(counts[x]) * static_cast<long double>(term_[x]);
  }
  return static_cast<double>(acc);
}

void EntropyState::commit_replace(const Assignment& parent, const Assignment& offspring) {
  for (int p = 0; p < instance_->num_patients(); ++p) {
    const auto& a = parent[static_cast<std::size_t>(p)];
    const auto& b = offspring[static_cast<std::size_t>(p)];
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i] == b[i]) continue;
      bump(slot(p, static_cast<int>(i)), a[i], -1);
      bump(slot(p, static_cast<int>(i)), b[i], +1);
    }
  }
  refresh_cache();
}

bool EntropyState::same_counts(const EntropyState& other) const {
  if (mu_ != other.mu_ || slots_.size() != other.slots_.size()) return false;
  for (std::size_t s = 0; s < slots_.size(); ++s) {
    auto a = slots_[s];
    auto b = other.slots_[s];
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b) return false;
  }
  return true;
}

}  // namespace pasdiv
