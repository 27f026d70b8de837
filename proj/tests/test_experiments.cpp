#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "oracles.hpp"
#include "pasdiv/error.hpp"
#include "pasdiv/experiments.hpp"
#include "pasdiv/instances.hpp"
#include "pasdiv/seeding.hpp"

namespace pasdiv {
namespace {

// 4 patients over 2 days, 3 rooms. Initially 0/1 share room 0 and 2/3 share room 1.
Instance quad() {
  Instance inst;
  inst.name = "quad";
  inst.horizon = 2;
  inst.rooms = {{0, 4, GenderPolicy::Neutral}, {1, 4, GenderPolicy::Neutral}, {2, 4, GenderPolicy::Neutral}};
  for (int p = 0; p < 4; ++p) inst.patients.push_back({p, Gender::Female, 0, 2});
  inst.cv.assign(12, 0);
  return inst;
}

const Assignment kInitial{{0, 0}, {0, 0}, {1, 1}, {1, 1}};

std::vector<Solution> quad_population() {
  const Instance inst = quad();
  return {make_solution(inst, kInitial),
          make_solution(inst, {{0, 0}, {1, 1}, {0, 0}, {2, 2}}),
          make_solution(inst, {{0, 1}, {1, 1}, {2, 2}, {1, 1}}),
          make_solution(inst, {{2, 2}, {0, 0}, {1, 0}, {0, 1}})};
}

// member keeps every listed pair apart on every shared day
bool apart(const Instance& inst, const Assignment& m, const std::vector<PatientPair>& pairs) {
  for (const auto& [p, q] : pairs) {
    for (int t = 0; t < inst.horizon; ++t) {
      if (inst.patients[p].present(t) && inst.patients[q].present(t) &&
          oracle::room_on(inst, m, p, t) == oracle::room_on(inst, m, q, t)) {
        return false;
      }
    }
  }
  return true;
}

TEST(Robustness, ColocatedPairs) {
  EXPECT_EQ(colocated_pairs(quad(), kInitial), (std::vector<PatientPair>{{0, 1}, {2, 3}}));
}

TEST(Robustness, IdenticalCopiesNeverSeparate) {
  const Instance inst = quad();
  const std::vector<Solution> pop(4, make_solution(inst, kInitial));
  const auto r = robustness_sim(inst, pop, kInitial, {1, 50, 3});
  EXPECT_EQ(r.ratio, 0.0);
  EXPECT_EQ(r.alt, 0.0);
}

TEST(Robustness, EveryMemberSeparates) {
  const Instance inst = quad();
  const auto pop = quad_population();
  const std::vector<Solution> good{pop[1], pop[3], pop[1]};
  const auto r = robustness_sim(inst, good, kInitial, {2, 10, 3});
  EXPECT_EQ(r.ratio, 100.0);
  EXPECT_EQ(r.alt, 3.0);
}

TEST(Robustness, BothPairsMatchExhaustiveCheck) {
  const Instance inst = quad();
  const auto pop = quad_population();
  const std::vector<PatientPair> both{{0, 1}, {2, 3}};
  int separating = 0;
  for (const auto& m : pop) separating += apart(inst, m.rooms, both);
  const auto r = robustness_sim(inst, pop, kInitial, {2, 100, 9});
  EXPECT_EQ(r.alt, static_cast<double>(separating));
  EXPECT_EQ(r.ratio, separating > 0 ? 100.0 : 0.0);
  EXPECT_EQ(separating, 2);
}

TEST(Robustness, SinglePairAltIsMixtureOfPerPairCounts) {
  const Instance inst = quad();
  const auto pop = quad_population();
  int first = 0, second = 0;
  for (const auto& m : pop) {
    first += apart(inst, m.rooms, {{0, 1}});
    second += apart(inst, m.rooms, {{2, 3}});
  }
  ASSERT_NE(first, second);
  const int reps = 2000;
  const auto r = robustness_sim(inst, pop, kInitial, {1, reps, 4});
  // alt * reps = first * n + second * (reps - n) for the number n of draws of pair (0, 1)
  const double n = (r.alt * reps - second * reps) / (first - second);
  EXPECT_NEAR(n, std::round(n), 1e-6);
  EXPECT_NEAR(n / reps, 0.5, 3 * std::sqrt(0.25 / reps));
  EXPECT_EQ(r.ratio, 100.0);
}

TEST(Robustness, ShortfallAndDeterminism) {
  const Instance inst = quad();
  const auto pop = quad_population();
  EXPECT_THROW(robustness_sim(inst, pop, kInitial, {3, 10, 1}), ConfigError);
  EXPECT_THROW(robustness_sim(inst, pop, kInitial, {0, 10, 1}), ConfigError);
  EXPECT_EQ(robustness_sim(inst, pop, kInitial, {1, 100, 8}), robustness_sim(inst, pop, kInitial, {1, 100, 8}));
}

TEST(Robustness, BoundsOnRandomPopulations) {
  std::mt19937_64 gen(61);
  for (int trial = 0; trial < 100; ++trial) {
    const Instance inst = oracle::random_instance(gen, {8, 3, 4, 4, 9});
    const Assignment initial = oracle::random_assignment(gen, inst);
    const auto pairs = colocated_pairs(inst, initial);
    if (pairs.empty()) continue;
    std::vector<Solution> pop;
    for (int i = 0; i < 5; ++i) pop.push_back(make_solution(inst, oracle::random_assignment(gen, inst)));
    const auto r = robustness_sim(inst, pop, initial, {1, 30, static_cast<std::uint64_t>(trial)});
    EXPECT_GE(r.ratio, 0.0);
    EXPECT_LE(r.ratio, 100.0);
    EXPECT_LE(r.alt, 5.0);
    EXPECT_EQ(r.alt > 0, r.ratio > 0);
    // every listed pair really is co-located
    for (const auto& [p, q] : pairs) EXPECT_FALSE(apart(inst, initial, {{p, q}}));
  }
}

TEST(Heatmap, IdenticalCopiesUseOneRoom) {
  const Instance raw = generate(desk_scale_spec(8));
  const Solution seed = solve_seed(raw, {500, 8});
  const std::vector<Solution> pop(5, seed);
  for (const auto& row : room_spread(raw, pop)) {
    EXPECT_EQ(row.distinct_rooms, 1);
    EXPECT_DOUBLE_EQ(row.fraction, 1.0 / raw.num_rooms());
  }
}

TEST(Heatmap, TwoMembersDisagreeOnOnePatient) {
  const Instance inst = quad();
  const std::vector<Solution> pop{make_solution(inst, kInitial), make_solution(inst, {{2, 2}, {0, 0}, {1, 1}, {1, 1}})};
  const auto rows = room_spread(inst, pop);
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_EQ(rows[0].distinct_rooms, 2);
  EXPECT_EQ(rows[1].distinct_rooms, 1);
  EXPECT_EQ(heatmap_csv(inst, pop), "patient,distinct_rooms,fraction\n0,2,0.666667\n1,1,0.333333\n2,1,0.333333\n3,1,0.333333\n");
}

TEST(Heatmap, SupportBound) {
  std::mt19937_64 gen(62);
  for (int trial = 0; trial < 100; ++trial) {
    const Instance inst = oracle::random_instance(gen, {6, 5, 5, 3, 9});
    const int mu = 1 + trial % 4;
    std::vector<Solution> pop;
    for (int i = 0; i < mu; ++i) pop.push_back(make_solution(inst, oracle::random_assignment(gen, inst)));
    for (const auto& row : room_spread(inst, pop)) {
      EXPECT_GE(row.distinct_rooms, 1);
      EXPECT_LE(row.distinct_rooms, std::min(mu * inst.patients[row.patient].length_of_stay(), inst.num_rooms()));
    }
  }
  EXPECT_THROW(room_spread(quad(), {}), ConfigError);
}

TEST(Csv, SixSignificantDigits) {
  EXPECT_EQ(format_real(13488.816293561591), "13488.8");
  EXPECT_EQ(format_real(0.112877123795), "0.112877");
  EXPECT_EQ(format_real(2.0), "2");
  EXPECT_EQ(format_real(1234567.0), "1.23457e+06");
}

class CompareTest : public ::testing::Test {
 protected:
  static const Instance& instance() {
    static const Instance inst = [] {
      const Instance raw = generate(desk_scale_spec(9));
      return with_seed(raw, solve_seed(raw, {1000, 9}));
    }();
    return inst;
  }
};

TEST_F(CompareTest, OneRunOneVariant) {
  CompareConfig cfg;
  cfg.variants = {Variant::Fixed};
  cfg.runs = 1;
  cfg.budget = 500;
  cfg.mu = 4;
  const auto report = compare_operators(instance(), cfg);
  ASSERT_EQ(report.rows.size(), 1u);
  std::istringstream lines(report.to_csv());
  std::string line;
  std::vector<std::string> all;
  while (std::getline(lines, line)) all.push_back(line);
  ASSERT_EQ(all.size(), 3u);
  EXPECT_EQ(all[0], "variant,run,seed,evaluations,final_entropy,max_entropy");
  EXPECT_EQ(all[1].rfind("fixed,0,1,500,", 0), 0u);
  EXPECT_EQ(all[2].rfind("fixed,median,,,", 0), 0u);
}

TEST_F(CompareTest, ReportBytesAreReproducible) {
  CompareConfig cfg;
  cfg.runs = 3;
  cfg.budget = 800;
  cfg.mu = 5;
  cfg.threads = 4;
  const auto a = compare_operators(instance(), cfg).to_csv();
  cfg.threads = 1;
  const auto b = compare_operators(instance(), cfg).to_csv();
  EXPECT_EQ(a, b);
}

TEST_F(CompareTest, MedianOfRuns) {
  CompareReport report;
  report.rows = {{Variant::Swap, 0, 1, 10, 3.0, 9.0}, {Variant::Swap, 1, 2, 10, 1.0, 9.0},
                 {Variant::Swap, 2, 3, 10, 2.0, 9.0}, {Variant::Fixed, 0, 1, 10, 4.0, 9.0},
                 {Variant::Fixed, 1, 2, 10, 6.0, 9.0}};
  EXPECT_EQ(report.median(Variant::Swap), 2.0);
  EXPECT_EQ(report.median(Variant::Fixed), 5.0);
}

}  // namespace
}  // namespace pasdiv
