#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "pasdiv/model.hpp"

namespace pasdiv {

/// Entropy contribution -(x/mu) log_b(x/mu) of a single count; zero for x = 0.
double entropy_term(int count, int mu, double log_base = 2.0);

/// Pigeonhole upper bound on H(S): every patient-day spreads its mu members over the rooms as evenly as possible.
double max_entropy(std::int64_t patient_days, int num_rooms, int mu, double log_base = 2.0);

/// Population-wide counters n_prt and the entropy derived from them.
///
/// Counts are keyed by patient-day; each key holds a small histogram of (room, count) because at most mu
/// distinct rooms can appear there. The cached entropy is rebuilt from a histogram of count values, so two
/// states with the same multiset of counts report bit-identical entropies.
class EntropyState {
 public:
  EntropyState(const Instance& instance, int mu, double log_base = 2.0);
  /// Counts over a full population; population.size() becomes mu.
  EntropyState(const Instance& instance, std::span<const Solution> population, double log_base = 2.0);

  int mu() const { return mu_; }
  double log_base() const { return log_base_; }
  int members() const { return members_; }

  void add(const Assignment& rooms);
  void remove(const Assignment& rooms);

  int count(int patient, int room, int day) const;
  /// Sum over the stay of n_{p, room(p,t), t} for the rooms `rooms` gives the patient.
  std::int64_t patient_weight(int patient, const Assignment& rooms) const;

  double cached_entropy() const { return cached_; }
  /// Full recomputation over every stored count.
  double entropy() const;

  /// Entropy of the population after swapping `parent` for `offspring`. Only differing patient-days are touched.
  double replace_delta(const Assignment& parent, const Assignment& offspring) const;
  void commit_replace(const Assignment& parent, const Assignment& offspring);

  /// Same counters (ignores the cached value).
  bool same_counts(const EntropyState& other) const;

 private:
  using Histogram = std::vector<std::pair<int, int>>;  // (room, count)

  std::size_t slot(int patient, int stay_day) const {
    return static_cast<std::size_t>(offset_[static_cast<std::size_t>(patient)] + stay_day);
  }
  void bump(std::size_t slot, int room, int delta);
  void refresh_cache();

  const Instance* instance_;
  int mu_;
  double log_base_;
  int members_ = 0;
  std::vector<std::int64_t> offset_;
  std::vector<Histogram> slots_;
  std::vector<std::int64_t> by_count_;  // by_count_[x] = number of (p, r, t) with n_prt = x
  std::vector<double> term_;
  double cached_ = 0.0;
};

}  // namespace pasdiv
