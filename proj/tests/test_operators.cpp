#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <random>
#include <set>

#include "oracles.hpp"
#include "pasdiv/error.hpp"
#include "pasdiv/operators.hpp"

namespace pasdiv {
namespace {

Instance neutral(int horizon, std::vector<int> capacities, std::vector<std::pair<int, int>> stays) {
  Instance inst;
  inst.name = "ops";
  inst.horizon = horizon;
  for (int r = 0; r < static_cast<int>(capacities.size()); ++r) inst.rooms.push_back({r, capacities[r], GenderPolicy::Neutral});
  for (int p = 0; p < static_cast<int>(stays.size()); ++p) {
    inst.patients.push_back({p, p % 2 ? Gender::Male : Gender::Female, stays[p].first, stays[p].second});
  }
  inst.cv.assign(inst.rooms.size() * inst.patients.size(), 0);
  return inst;
}

// 3 sigma bound for a binomial frequency
double sigma3(double p, int n) { return 3.0 * std::sqrt(p * (1 - p) / n); }

TEST(OperatorConfig, TunedDefaults) {
  const auto fixed = OperatorConfig::defaults(Variant::Fixed);
  EXPECT_EQ(fixed.gamma, 50);
  EXPECT_EQ(fixed.x, 14);
  const auto adaptive = OperatorConfig::defaults(Variant::Adaptive);
  EXPECT_EQ(adaptive.gamma, 50);
  EXPECT_EQ(adaptive.x_max, 15);
  EXPECT_EQ(adaptive.decay_exponent, 8);
  EXPECT_EQ(adaptive.interval, 200);
  EXPECT_EQ(adaptive.factor, 2);
  const auto biased = OperatorConfig::defaults(Variant::Biased);
  EXPECT_EQ(biased.gamma, 47);
  EXPECT_EQ(biased.x_max, 14);
  EXPECT_EQ(biased.decay_exponent, 1);
  for (Variant v : {Variant::Swap, Variant::Fixed, Variant::Adaptive, Variant::Biased}) {
    EXPECT_NO_THROW(OperatorConfig::defaults(v).validate());
    EXPECT_EQ(parse_variant(to_string(v)), v);
  }
  auto bad = adaptive;
  bad.factor = 1.0;
  EXPECT_THROW(bad.validate(), ConfigError);
  bad = adaptive;
  bad.x = 20;
  EXPECT_THROW(bad.validate(), ConfigError);
}

TEST(CandidateRooms, CheapestFirstTiesByRoomId) {
  Instance inst = neutral(1, {1, 1, 1, 1}, {{0, 1}});
  inst.cv = {5, 2, 5, 2};
  const CandidateRooms top3(inst, 3);
  ASSERT_EQ(top3.width(), 3u);
  EXPECT_EQ(std::vector<int>(top3.of(0).begin(), top3.of(0).end()), (std::vector<int>{1, 3, 0}));
  EXPECT_EQ(CandidateRooms(inst, 10).width(), 4u);
}

TEST(Swap, SymmetricExchange) {
  const Instance inst = neutral(1, {1, 1}, {{0, 1}, {0, 1}});
  const Solution parent = make_solution(inst, {{0}, {1}});
  const auto child = swap_patients(inst, parent, 0, 1);
  ASSERT_TRUE(child);
  EXPECT_EQ(child->rooms, (Assignment{{1}, {0}}));
  EXPECT_TRUE(check_feasibility(inst, child->rooms).ok());
}

TEST(Swap, IntoFullRoomIsRejected) {
  // patient 0 (days 0-1, room 0) swaps with patient 1 (day 1, room 1); room 1 is also held by patient 2 on day 0
  const Instance inst = neutral(2, {1, 1}, {{0, 2}, {1, 2}, {0, 1}});
  const Solution parent = make_solution(inst, {{0, 0}, {1}, {1}});
  EXPECT_FALSE(swap_patients(inst, parent, 0, 1));
}

TEST(Swap, NeedsTwoPatients) {
  const Instance inst = neutral(1, {1}, {{0, 1}});
  Rng rng(1);
  EXPECT_FALSE(standard_swap(inst, make_solution(inst, {{0}}), rng));
}

TEST(Swap, AcceptedOffspringAreFeasibleAndTouchOnlyTwoPatients) {
  std::mt19937_64 gen(31);
  Rng rng(31);
  int accepted = 0;
  for (int trial = 0; trial < 400; ++trial) {
    const Instance inst = oracle::random_instance(gen, {5, 4, 5, 3, 9});
    const auto start = oracle::first_fit(inst);
    if (!start || inst.num_patients() < 2) continue;
    const Solution parent = make_solution(inst, *start);
    for (int k = 0; k < 25; ++k) {
      const auto child = standard_swap(inst, parent, rng);
      if (!child) continue;
      ++accepted;
      ASSERT_TRUE(oracle::overfull(inst, child->rooms).empty());
      ASSERT_EQ(child->objective, oracle::objective(inst, child->rooms));
      int changed = 0;
      for (int p = 0; p < inst.num_patients(); ++p) changed += child->rooms[p] != parent.rooms[p];
      ASSERT_LE(changed, 2);
    }
  }
  EXPECT_GT(accepted, 100);
}

TEST(SelectUniform, FullDrawTakesEveryone) {
  Rng rng(2);
  auto all = select_patients_uniform(9, 9, rng);
  std::sort(all.begin(), all.end());
  EXPECT_EQ(all, (std::vector<int>{0, 1, 2, 3, 4, 5, 6, 7, 8}));
  auto clamped = select_patients_uniform(3, 5, rng);
  EXPECT_EQ(clamped.size(), 3u);
}

TEST(SelectUniform, SingleDrawChiSquare) {
  Rng rng(3);
  const int n = 8, draws = 10000;
  std::vector<int> freq(n, 0);
  for (int i = 0; i < draws; ++i) ++freq[select_patients_uniform(n, 1, rng).at(0)];
  double chi2 = 0;
  for (int f : freq) {
    chi2 += std::pow(f - draws / double(n), 2) / (draws / double(n));
    EXPECT_NEAR(f / double(draws), 1.0 / n, sigma3(1.0 / n, draws));
  }
  EXPECT_LT(chi2, 24.32);  // 7 degrees of freedom, p = 0.001
}

TEST(SelectUniform, DeterministicForSeed) {
  Rng a(77), b(77);
  EXPECT_EQ(select_patients_uniform(40, 6, a), select_patients_uniform(40, 6, b));
}

TEST(SelectBiased, SharedAssignmentIsTwiceAsLikely) {
  const Instance inst = neutral(1, {2, 2}, {{0, 1}, {0, 1}});
  const std::vector<Solution> pop{make_solution(inst, {{0}, {0}}), make_solution(inst, {{0}, {1}})};
  const EntropyState counts(inst, pop);
  EXPECT_EQ(counts.patient_weight(0, pop[0].rooms), 2);
  EXPECT_EQ(counts.patient_weight(1, pop[0].rooms), 1);
  Rng rng(4);
  const int draws = 10000;
  int a = 0;
  for (int i = 0; i < draws; ++i) a += select_patients_biased(inst, pop[0].rooms, counts, 1, rng).at(0) == 0;
  EXPECT_NEAR(a / double(draws), 2.0 / 3.0, sigma3(2.0 / 3.0, draws));
}

TEST(SelectBiased, ThreePatientFrequenciesFollowWeights) {
  // weights 3, 2, 1 over a mu = 3 population
  const Instance inst = neutral(1, {3, 3, 3}, {{0, 1}, {0, 1}, {0, 1}});
  const std::vector<Solution> pop{make_solution(inst, {{0}, {0}, {0}}), make_solution(inst, {{0}, {0}, {1}}),
                                  make_solution(inst, {{0}, {1}, {2}})};
  const EntropyState counts(inst, pop);
  Rng rng(5);
  const int draws = 10000;
  std::vector<int> freq(3, 0);
  for (int i = 0; i < draws; ++i) ++freq[select_patients_biased(inst, pop[0].rooms, counts, 1, rng).at(0)];
  const double expected[] = {3.0 / 6, 2.0 / 6, 1.0 / 6};
  for (int p = 0; p < 3; ++p) EXPECT_NEAR(freq[p] / double(draws), expected[p], sigma3(expected[p], draws));
}

TEST(SelectBiased, EqualWeightsAreUniformAndDistinct) {
  const Instance inst = neutral(1, {4}, {{0, 1}, {0, 1}, {0, 1}, {0, 1}});
  const std::vector<Solution> pop(3, make_solution(inst, {{0}, {0}, {0}, {0}}));
  const EntropyState counts(inst, pop);
  Rng rng(6);
  const int draws = 10000;
  std::vector<int> freq(4, 0);
  for (int i = 0; i < draws; ++i) {
    const auto pick = select_patients_biased(inst, pop[0].rooms, counts, 2, rng);
    ASSERT_EQ(pick.size(), 2u);
    ASSERT_NE(pick[0], pick[1]);
    for (int p : pick) ++freq[p];
  }
  for (int f : freq) EXPECT_NEAR(f / double(draws), 0.5, sigma3(0.5, draws));
}

TEST(Reinsert, GammaZeroIsUniform) {
  Instance inst = neutral(1, {1, 1, 1}, {{0, 1}});
  inst.cv = {0, 5, 9};
  const Occupancy occ(inst);
  const std::vector<int> cand{0, 1, 2};
  for (const auto& e : reinsertion_distribution(occ, 0, cand, 0.0)) EXPECT_NEAR(e.probability, 1.0 / 3, 1e-12);
}

TEST(Reinsert, ShiftedInverseWeights) {
  Instance inst = neutral(1, {1, 1}, {{0, 1}});
  inst.cv = {4, 5};
  const Occupancy occ(inst);
  const std::vector<int> cand{0, 1};
  const auto dist = reinsertion_distribution(occ, 0, cand, 1.0);
  ASSERT_EQ(dist.size(), 2u);
  EXPECT_NEAR(dist[0].probability, 2.0 / 3, 1e-12);
  EXPECT_NEAR(dist[1].probability, 1.0 / 3, 1e-12);

  Occupancy live(inst);
  Rng rng(7);
  const int draws = 10000;
  int first = 0;
  for (int i = 0; i < draws; ++i) {
    const auto placed = reinsert(live, 0, cand, 1.0, rng);
    ASSERT_TRUE(placed);
    first += placed->room == 0;
    EXPECT_EQ(placed->cost, inst.cv[placed->room]);
    live.unplace(0, std::vector<int>{placed->room});
  }
  EXPECT_NEAR(first / double(draws), 2.0 / 3, sigma3(2.0 / 3, draws));
}

TEST(Reinsert, SingleEligibleRoomIsCertain) {
  const Instance inst = neutral(1, {1, 1}, {{0, 1}, {0, 1}});
  Occupancy occ(inst);
  occ.place(1, 0);
  const std::vector<int> cand{0, 1};
  const auto dist = reinsertion_distribution(occ, 0, cand, 3.0);
  ASSERT_EQ(dist.size(), 1u);
  EXPECT_EQ(dist[0].room, 1);
  EXPECT_EQ(dist[0].probability, 1.0);
}

TEST(Reinsert, NoEligibleRoomLeavesOccupancyUntouched) {
  const Instance inst = neutral(2, {1}, {{0, 2}, {1, 2}});
  Occupancy occ(inst);
  occ.place(1, 0);
  Rng rng(8);
  EXPECT_FALSE(reinsert(occ, 0, std::vector<int>{0}, 1.0, rng));
  EXPECT_EQ(occ.occupants(0, 0), 0);
  EXPECT_EQ(occ.occupants(0, 1), 1);
}

TEST(ChangeMutation, ZeroStepReproducesParent) {
  std::mt19937_64 gen(9);
  Instance inst;
  std::optional<Assignment> start;
  while (!start || inst.num_patients() < 3) {
    inst = oracle::random_instance(gen, {6, 3, 4, 4, 9});
    start = oracle::first_fit(inst);
  }
  auto cfg = OperatorConfig::defaults(Variant::Fixed);
  cfg.x = 0.4;
  cfg.x_min = 0;
  const Solution parent = make_solution(inst, *start);
  Rng rng(9);
  const auto child = change_mutation(inst, parent, cfg, CandidateRooms(inst, 10), nullptr, rng);
  ASSERT_TRUE(child);
  EXPECT_EQ(*child, parent);
}

TEST(ChangeMutation, ForcedChoiceKeepsRoom) {
  const Instance inst = neutral(3, {1}, {{0, 3}});
  const Solution parent = make_solution(inst, {{0, 0, 0}});
  auto cfg = OperatorConfig::defaults(Variant::Fixed);
  Rng rng(10);
  const auto child = change_mutation(inst, parent, cfg, CandidateRooms(inst, 10), nullptr, rng);
  ASSERT_TRUE(child);
  EXPECT_EQ(*child, parent);
}

TEST(ChangeMutation, BiasedNeedsCounts) {
  const Instance inst = neutral(1, {1}, {{0, 1}});
  Rng rng(11);
  EXPECT_THROW(change_mutation(inst, make_solution(inst, {{0}}), OperatorConfig::defaults(Variant::Biased),
                               CandidateRooms(inst, 1), nullptr, rng),
               ConfigError);
}

TEST(ChangeMutation, RandomFixturesStayFeasibleWithExactObjective) {
  std::mt19937_64 gen(12);
  Rng rng(12);
  int produced = 0;
  for (int trial = 0; trial < 400; ++trial) {
    Instance inst = oracle::random_instance(gen, {7, 4, 5, 3, 9});
    if (trial % 4 == 1) inst.options.gender_rule = GenderPenaltyRule::PerMixedRoomDay;
    if (trial % 4 == 2) inst.options.cv_per_day = false;
    const auto start = oracle::first_fit(inst);
    if (!start) continue;
    const Solution parent = make_solution(inst, *start);
    const std::vector<Solution> pop(3, parent);
    const EntropyState counts(inst, pop);
    for (Variant v : {Variant::Fixed, Variant::Adaptive, Variant::Biased}) {
      auto cfg = OperatorConfig::defaults(v);
      cfg.x = std::uniform_int_distribution<int>(1, 4)(gen);
      cfg.x_min = 1;
      cfg.gamma = trial % 2 ? 0.0 : 2.0;
      const CandidateRooms cand(inst, 1 + trial % 4);
      for (int k = 0; k < 10; ++k) {
        const auto child = change_mutation(inst, parent, cfg, cand, &counts, rng);
        if (!child) continue;
        ++produced;
        ASSERT_TRUE(oracle::overfull(inst, child->rooms).empty());
        ASSERT_EQ(child->objective, oracle::objective(inst, child->rooms));
        for (int p = 0; p < inst.num_patients(); ++p) {
          if (child->rooms[p] == parent.rooms[p]) continue;
          const auto& stay = child->rooms[p];
          EXPECT_TRUE(std::all_of(stay.begin(), stay.end(), [&](int r) { return r == stay[0]; }));
        }
      }
    }
  }
  EXPECT_GT(produced, 5000);
}

TEST(ChangeMutation, ParentWithTransfersGetsObjectiveRight) {
  std::mt19937_64 gen(13);
  Rng rng(13);
  for (int trial = 0; trial < 300; ++trial) {
    Instance inst = oracle::random_instance(gen, {5, 4, 4, 5, 9});
    Assignment a = oracle::random_assignment(gen, inst);
    if (!oracle::overfull(inst, a).empty()) continue;
    const Solution parent = make_solution(inst, a);
    auto cfg = OperatorConfig::defaults(Variant::Fixed);
    cfg.x = 2;
    cfg.x_min = 1;
    cfg.gamma = 1;
    const auto child = change_mutation(inst, parent, cfg, CandidateRooms(inst, 4), nullptr, rng);
    if (child) ASSERT_EQ(child->objective, oracle::objective(inst, child->rooms));
  }
}

TEST(AdaptX, UnitVectors) {
  auto cfg = OperatorConfig::defaults(Variant::Adaptive);
  cfg.x = 14;
  EXPECT_EQ(adapt_x(cfg, true), 15.0);
  cfg.x = 15;
  EXPECT_NEAR(adapt_x(cfg, false), 15.0 * std::pow(2.0, -1.0 / 8.0), 1e-12);
  EXPECT_NEAR(adapt_x(cfg, false), 13.7551, 1e-3);
  cfg.x = cfg.x_min;
  EXPECT_EQ(adapt_x(cfg, false), cfg.x_min);
}

TEST(AdaptX, StaysWithinBoundsOverRandomSequences) {
  std::mt19937_64 gen(14);
  for (Variant v : {Variant::Adaptive, Variant::Biased}) {
    auto cfg = OperatorConfig::defaults(v);
    for (int i = 0; i < 10000; ++i) {
      cfg.x = adapt_x(cfg, gen() % 3 == 0);
      ASSERT_GE(cfg.x, cfg.x_min);
      ASSERT_LE(cfg.x, cfg.x_max);
    }
  }
}

}  // namespace
}  // namespace pasdiv
