// pasdiv: command-line front end for instance generation, seeding, evolution and experiments.

#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pasdiv/ea.hpp"
#include "pasdiv/error.hpp"
#include "pasdiv/experiments.hpp"
#include "pasdiv/instances.hpp"
#include "pasdiv/seeding.hpp"

namespace {

using namespace pasdiv;

const std::map<std::string, Variant> kVariants = {
    {"swap", Variant::Swap}, {"fixed", Variant::Fixed}, {"adaptive", Variant::Adaptive}, {"biased", Variant::Biased}};

struct GenerateArgs {
  std::string out;
  std::string preset = "desk";
  std::uint64_t seed = 1;
  std::optional<int> patients, rooms, beds, days;
  std::optional<double> mean_los, occupancy;
  std::optional<std::int64_t> cg2, ct;
  std::optional<std::string> name;
  bool breakdown = false;
};

int cmd_generate(const GenerateArgs& a) {
  GeneratorSpec spec;
  if (a.preset == "desk") {
    spec = desk_scale_spec(a.seed);
  } else if (a.preset.size() == 6 && a.preset.rfind("bench", 0) == 0) {
    spec = benchmark_like_spec(a.preset[5] - '0', a.seed);
  } else {
    throw ConfigError("unknown preset '" + a.preset + "' (desk, bench1 .. bench6)");
  }
  if (a.patients) spec.patients = *a.patients;
  if (a.rooms) spec.rooms = *a.rooms;
  if (a.beds) spec.total_beds = *a.beds;
  if (a.days) spec.days = *a.days;
  if (a.mean_los) spec.mean_los = *a.mean_los;
  if (a.occupancy) spec.occupancy_target = *a.occupancy;
  if (a.cg2) spec.cg2 = *a.cg2;
  if (a.ct) spec.ct = *a.ct;
  if (a.name) spec.name = *a.name;
  spec.emit_breakdown = a.breakdown;
  const Instance inst = generate(spec);
  write_instance(inst, a.out);
  std::cout << "wrote " << a.out << ": " << inst.num_patients() << " patients, " << inst.num_rooms() << " rooms, "
            << inst.horizon << " days, W = " << inst.total_patient_days() << '\n';
  return 0;
}

int cmd_validate(const std::string& path) {
  Instance inst;
  try {
    inst = read_instance(path);
  } catch (const ParseError& e) {
    std::cout << path << ": " << e.what() << '\n';
    return 1;
  }
  const auto report = validate(inst);
  for (const auto& issue : report.issues) std::cout << path << ": " << issue.where << ": " << issue.message << '\n';
  if (report.ok()) std::cout << path << ": ok\n";
  return report.ok() ? 0 : 1;
}

int cmd_seed_solve(const std::string& path, std::string out, const SeedConfig& config) {
  const Instance inst = read_instance(path);
  const Solution seed = solve_seed(inst, config);
  if (out.empty()) out = path;
  write_instance(with_seed(inst, seed), out);
  std::cout << "seed objective " << seed.objective << " written to " << out << '\n';
  return 0;
}

struct EvolveArgs {
  std::string instance, op = "adaptive", trajectory, out;
  int mu = 50;
  double alpha = 0.02;
  std::int64_t evals = 1'000'000;
  std::uint64_t seed = 1;
  std::int64_t stride = 1000;
  std::optional<double> gamma, x, x_min, x_max, factor, k;
  std::optional<int> u, y;
};

int cmd_evolve(const EvolveArgs& a) {
  const Instance inst = read_instance(a.instance);
  RunConfig rc;
  rc.op = OperatorConfig::defaults(kVariants.at(a.op));
  if (a.gamma) rc.op.gamma = *a.gamma;
  if (a.x_min) rc.op.x_min = *a.x_min;
  if (a.x_max) rc.op.x_max = rc.op.x = *a.x_max;
  if (a.x) rc.op.x = *a.x;
  if (a.factor) rc.op.factor = *a.factor;
  if (a.k) rc.op.decay_exponent = *a.k;
  if (a.u) rc.op.interval = *a.u;
  if (a.y) rc.op.candidates = *a.y;
  rc.mu = a.mu;
  rc.alpha = a.alpha;
  rc.budget = a.evals;
  rc.seed = a.seed;
  rc.trajectory_stride = a.stride;

  const RunRecord rec = run(inst, rc);
  if (!a.trajectory.empty()) write_text(a.trajectory, trajectory_csv(rec));
  if (!a.out.empty()) write_population(inst, rec.population, a.out);
  std::cout << "operator " << a.op << ": H(S) = " << format_real(rec.population.entropy.cached_entropy())
            << " of H_max = " << format_real(rec.max_entropy) << " after " << rec.population.evaluations_used
            << " evaluations (" << rec.accepted << " accepted, c_max = " << rec.population.c_max << ")\n";
  return 0;
}

int cmd_robustness(const std::string& instance_path, const std::string& population_path, const RobustnessSpec& spec) {
  const Instance inst = read_instance(instance_path);
  if (!inst.seed_solution) throw ConfigError("instance has no seed solution to compare against");
  const Population pop = read_population(inst, population_path);
  const auto result = robustness_sim(inst, pop.members, *inst.seed_solution, spec);
  std::cout << "pairs,repetitions,ratio,alt\n"
            << spec.pairs << ',' << spec.repetitions << ',' << format_real(result.ratio) << ','
            << format_real(result.alt) << '\n';
  return 0;
}

int cmd_heatmap(const std::string& instance_path, const std::string& population_path, const std::string& out) {
  const Instance inst = read_instance(instance_path);
  const Population pop = read_population(inst, population_path);
  if (out.empty()) {
    std::cout << heatmap_csv(inst, pop.members);
  } else {
    heatmap_export(inst, pop.members, out);
  }
  return 0;
}

struct CompareArgs {
  std::string instance, out, trajectories;
  std::vector<std::string> operators = {"swap", "fixed", "adaptive", "biased"};
  CompareConfig config;
};

int cmd_compare(CompareArgs a) {
  const Instance inst = read_instance(a.instance);
  a.config.variants.clear();
  for (const auto& name : a.operators) a.config.variants.push_back(kVariants.at(name));
  if (!a.trajectories.empty()) {
    std::filesystem::create_directories(a.trajectories);
    a.config.trajectory_dir = a.trajectories;
  }
  const auto report = compare_operators(inst, a.config);
  if (a.out.empty()) {
    std::cout << report.to_csv();
  } else {
    write_text(a.out, report.to_csv());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Diversity-maximising evolutionary algorithm for patient admission scheduling"};
  app.require_subcommand(1);
  int status = 0;

  GenerateArgs gen;
  auto* g = app.add_subcommand("generate", "Generate a synthetic instance");
  g->add_option("--out,-o", gen.out, "Instance file to write")->required();
  g->add_option("--preset", gen.preset, "desk, or bench1 .. bench6 for the classic instance sizes");
  g->add_option("--seed", gen.seed);
  g->add_option("--patients", gen.patients);
  g->add_option("--rooms", gen.rooms);
  g->add_option("--beds", gen.beds, "Total beds");
  g->add_option("--days", gen.days);
  g->add_option("--mean-los", gen.mean_los);
  g->add_option("--occupancy", gen.occupancy, "Cap on daily load as a fraction of beds");
  g->add_option("--cg2", gen.cg2);
  g->add_option("--ct", gen.ct);
  g->add_option("--name", gen.name);
  g->add_flag("--breakdown", gen.breakdown, "Store the component costs next to CV");
  g->callback([&] { status = cmd_generate(gen); });

  std::string validate_path;
  auto* v = app.add_subcommand("validate", "Check an instance file");
  v->add_option("instance", validate_path)->required();
  v->callback([&] { status = cmd_validate(validate_path); });

  std::string seed_path, seed_out;
  SeedConfig seed_cfg;
  auto* s = app.add_subcommand("seed-solve", "Compute a near-optimal seed solution and store it in the instance");
  s->add_option("instance", seed_path)->required();
  s->add_option("--out,-o", seed_out, "Write here instead of updating the instance in place");
  s->add_option("--budget", seed_cfg.improvement_budget, "Local search evaluations");
  s->add_option("--seed", seed_cfg.seed);
  s->callback([&] { status = cmd_seed_solve(seed_path, seed_out, seed_cfg); });

  EvolveArgs ev;
  auto* e = app.add_subcommand("evolve", "Run the diversity-maximising EA");
  e->add_option("--instance,-i", ev.instance)->required();
  e->add_option("--operator", ev.op)->check(CLI::IsMember({"swap", "fixed", "adaptive", "biased"}));
  e->add_option("--mu", ev.mu);
  e->add_option("--alpha", ev.alpha);
  e->add_option("--evals", ev.evals);
  e->add_option("--seed", ev.seed);
  e->add_option("--trajectory", ev.trajectory, "Trajectory CSV to write");
  e->add_option("--out,-o", ev.out, "Final population JSON to write");
  e->add_option("--stride", ev.stride, "Trajectory sampling stride");
  e->add_option("--gamma", ev.gamma);
  e->add_option("--x", ev.x, "Initial step size");
  e->add_option("--x-min", ev.x_min);
  e->add_option("--x-max", ev.x_max);
  e->add_option("--factor", ev.factor, "Adaptation factor F");
  e->add_option("--k", ev.k, "Failure decay exponent");
  e->add_option("--u", ev.u, "Evaluations per adaptation interval");
  e->add_option("--y", ev.y, "Candidate rooms per patient");
  e->callback([&] { status = cmd_evolve(ev); });

  std::string rob_instance, rob_population;
  RobustnessSpec rob;
  auto* r = app.add_subcommand("robustness", "Pair-separation simulation on an evolved population");
  r->add_option("--instance,-i", rob_instance)->required();
  r->add_option("--population,-p", rob_population)->required();
  r->add_option("--pairs", rob.pairs);
  r->add_option("--reps", rob.repetitions);
  r->add_option("--seed", rob.seed);
  r->callback([&] { status = cmd_robustness(rob_instance, rob_population, rob); });

  std::string heat_instance, heat_population, heat_out;
  auto* h = app.add_subcommand("heatmap", "Distinct rooms per patient across a population");
  h->add_option("--instance,-i", heat_instance)->required();
  h->add_option("--population,-p", heat_population)->required();
  h->add_option("--out,-o", heat_out, "CSV to write (stdout when omitted)");
  h->callback([&] { status = cmd_heatmap(heat_instance, heat_population, heat_out); });

  CompareArgs cmp;
  auto* c = app.add_subcommand("compare", "Compare operators over independent runs");
  c->add_option("--instance,-i", cmp.instance)->required();
  c->add_option("--runs", cmp.config.runs);
  c->add_option("--evals", cmp.config.budget);
  c->add_option("--mu", cmp.config.mu);
  c->add_option("--alpha", cmp.config.alpha);
  c->add_option("--seed", cmp.config.base_seed, "Run i uses seed + i");
  c->add_option("--operators", cmp.operators)->check(CLI::IsMember({"swap", "fixed", "adaptive", "biased"}));
  c->add_option("--threads", cmp.config.threads);
  c->add_option("--out,-o", cmp.out, "Report CSV (stdout when omitted)");
  c->add_option("--trajectories", cmp.trajectories, "Directory for per-run trajectory CSVs");
  c->callback([&] { status = cmd_compare(cmp); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    return app.exit(err);
  } catch (const std::exception& err) {
    std::cerr << "pasdiv: " << err.what() << '\n';
    return 1;
  }
  return status;
}
