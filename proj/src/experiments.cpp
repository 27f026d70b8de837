#include "pasdiv/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <set>
#include <sstream>
#include <thread>

#include "pasdiv/error.hpp"
#include "pasdiv/instances.hpp"
#include "pasdiv/rng.hpp"

namespace pasdiv {

std::string format_real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

// ---------------------------------------------------------------------------

std::vector<PatientPair> colocated_pairs(const Instance& instance, const Assignment& initial) {
  check_dimensions(instance, initial);
  // room-day -> patients present there
  std::vector<std::vector<int>> cell(static_cast<std::size_t>(instance.num_rooms()) *
                                     static_cast<std::size_t>(instance.horizon));
  for (int p = 0; p < instance.num_patients(); ++p) {
    const auto& pt = instance.patients[static_cast<std::size_t>(p)];
    for (int i = 0; i < pt.length_of_stay(); ++i) {
      const auto r = static_cast<std::size_t>(initial[static_cast<std::size_t>(p)][static_cast<std::size_t>(i)]);
      cell[r * static_cast<std::size_t>(instance.horizon) + static_cast<std::size_t>(pt.admission + i)].push_back(p);
    }
  }
  std::set<PatientPair> pairs;
  for (const auto& patients : cell) {
    for (std::size_t i = 0; i < patients.size(); ++i) {
      for (std::size_t j = i + 1; j < patients.size(); ++j) {
        pairs.emplace(std::min(patients[i], patients[j]), std::max(patients[i], patients[j]));
      }
    }
  }
  return {pairs.begin(), pairs.end()};
}

bool separates(const Instance& instance, const Assignment& member, std::span<const PatientPair> pairs) {
  for (const auto& [p, q] : pairs) {
    const auto& a = instance.patients[static_cast<std::size_t>(p)];
    const auto& b = instance.patients[static_cast<std::size_t>(q)];
    const int from = std::max(a.admission, b.admission);
    const int to = std::min(a.discharge, b.discharge);
    for (int t = from; t < to; ++t) {
      if (member[static_cast<std::size_t>(p)][static_cast<std::size_t>(t - a.admission)] ==
          member[static_cast<std::size_t>(q)][static_cast<std::size_t>(t - b.admission)]) {
        return false;
      }
    }
  }
  return true;
}

RobustnessResult robustness_sim(const Instance& instance, std::span<const Solution> population,
                                const Assignment& initial, const RobustnessSpec& spec) {
  if (spec.pairs < 1) throw ConfigError("robustness needs at least one pair");
  if (spec.repetitions < 1) throw ConfigError("robustness needs at least one repetition");
  const auto candidates = colocated_pairs(instance, initial);
  if (candidates.size() < static_cast<std::size_t>(spec.pairs)) {
    throw ConfigError("only " + std::to_string(candidates.size()) + " co-located patient pairs available, " +
                      std::to_string(spec.pairs) + " requested");
  }

  Rng rng(spec.seed);
  std::vector<std::size_t> index(candidates.size());
  std::vector<PatientPair> draw(static_cast<std::size_t>(spec.pairs));
  int covered = 0;
  std::int64_t separating = 0;
  for (int rep = 0; rep < spec.repetitions; ++rep) {
    for (std::size_t i = 0; i < index.size(); ++i) index[i] = i;
    for (std::size_t i = 0; i < draw.size(); ++i) {
      std::swap(index[i], index[i + draw_below(rng, index.size() - i)]);
      draw[i] = candidates[index[i]];
    }
    int n = 0;
    for (const auto& member : population) n += separates(instance, member.rooms, draw);
    covered += n > 0;
    separating += n;
  }
  return {100.0 * covered / spec.repetitions, static_cast<double>(separating) / spec.repetitions};
}

// ---------------------------------------------------------------------------

std::vector<SpreadRow> room_spread(const Instance& instance, std::span<const Solution> population) {
  if (population.empty()) throw ConfigError("population is empty");
  std::vector<SpreadRow> rows;
  std::vector<char> seen(static_cast<std::size_t>(instance.num_rooms()));
  for (int p = 0; p < instance.num_patients(); ++p) {
    std::fill(seen.begin(), seen.end(), 0);
    int distinct = 0;
    for (const auto& member : population) {
      for (int r : member.rooms[static_cast<std::size_t>(p)]) {
        if (!seen[static_cast<std::size_t>(r)]) {
          seen[static_cast<std::size_t>(r)] = 1;
          ++distinct;
        }
      }
    }
    rows.push_back({p, distinct, static_cast<double>(distinct) / instance.num_rooms()});
  }
  return rows;
}

std::string heatmap_csv(const Instance& instance, std::span<const Solution> population) {
  std::ostringstream out;
  out << "patient,distinct_rooms,fraction\n";
  for (const auto& row : room_spread(instance, population)) {
    out << row.patient << ',' << row.distinct_rooms << ',' << format_real(row.fraction) << '\n';
  }
  return out.str();
}

void heatmap_export(const Instance& instance, std::span<const Solution> population, const std::filesystem::path& path) {
  write_text(path, heatmap_csv(instance, population));
}

// ---------------------------------------------------------------------------

std::string trajectory_csv(const RunRecord& record) {
  std::ostringstream out;
  out << "evaluations,entropy,x\n";
  for (const auto& pt : record.trajectory) {
    out << pt.evaluations << ',' << format_real(pt.entropy) << ',' << format_real(pt.x) << '\n';
  }
  return out.str();
}

double CompareReport::median(Variant v) const {
  std::vector<double> values;
  for (const auto& row : rows) {
    if (row.variant == v) values.push_back(row.final_entropy);
  }
  if (values.empty()) return 0.0;
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  return values.size() % 2 ? values[mid] : 0.5 * (values[mid - 1] + values[mid]);
}

std::string CompareReport::to_csv() const {
  std::ostringstream out;
  out << "variant,run,seed,evaluations,final_entropy,max_entropy\n";
  for (const auto& row : rows) {
    out << to_string(row.variant) << ',' << row.run << ',' << row.seed << ',' << row.evaluations << ','
        << format_real(row.final_entropy) << ',' << format_real(row.max_entropy) << '\n';
  }
  std::vector<Variant> seen;
  for (const auto& row : rows) {
    if (std::find(seen.begin(), seen.end(), row.variant) != seen.end()) continue;
    seen.push_back(row.variant);
    out << to_string(row.variant) << ",median,,," << format_real(median(row.variant)) << ','
        << format_real(row.max_entropy) << '\n';
  }
  return out.str();
}

CompareReport compare_operators(const Instance& instance, const CompareConfig& config) {
  if (config.runs < 1) throw ConfigError("runs must be >= 1");
  if (config.variants.empty()) throw ConfigError("at least one variant is required");

  struct Job {
    Variant variant;
    int run;
  };
  std::vector<Job> jobs;
  for (Variant v : config.variants) {
    for (int i = 0; i < config.runs; ++i) jobs.push_back({v, i});
  }
  std::vector<CompareRow> rows(jobs.size());
  std::vector<std::string> errors(jobs.size());

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t j = next++; j < jobs.size(); j = next++) {
      try {
        RunConfig rc;
        rc.op = OperatorConfig::defaults(jobs[j].variant);
        rc.mu = config.mu;
        rc.alpha = config.alpha;
        rc.budget = config.budget;
        rc.seed = config.base_seed + static_cast<std::uint64_t>(jobs[j].run);
        rc.log_base = config.log_base;
        rc.trajectory_stride = config.trajectory_stride;
        const RunRecord rec = run(instance, rc);
        rows[j] = {jobs[j].variant, jobs[j].run, rc.seed, rec.population.evaluations_used,
                   rec.population.entropy.cached_entropy(), rec.max_entropy};
        if (config.trajectory_dir) {
          const auto name = "trajectory_" + std::string(to_string(jobs[j].variant)) + "_" + std::to_string(jobs[j].run) + ".csv";
          write_text(*config.trajectory_dir / name, trajectory_csv(rec));
        }
      } catch (const std::exception& e) {
        errors[j] = e.what();
      }
    }
  };

  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const unsigned threads = std::min<std::size_t>(config.threads ? config.threads : hw, jobs.size());
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  for (const auto& e : errors) {
    if (!e.empty()) throw std::runtime_error("comparison run failed: " + e);
  }
  return CompareReport{std::move(rows)};
}

}  // namespace pasdiv
