#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "pasdiv/diversity.hpp"
#include "pasdiv/ea.hpp"
#include "pasdiv/error.hpp"
#include "pasdiv/experiments.hpp"
#include "pasdiv/instances.hpp"
#include "pasdiv/seeding.hpp"

namespace py = pybind11;
using namespace pasdiv;

namespace {

Variant variant_from(const std::string& name) {
  const auto v = parse_variant(name);
  if (!v) throw ConfigError("unknown operator '" + name + "' (swap, fixed, adaptive, biased)");
  return *v;
}

py::dict objective_dict(const Objective& o) {
  py::dict d;
  d["total"] = o.total;
  d["cv"] = o.cv;
  d["gender"] = o.gender;
  d["transfer"] = o.transfer;
  return d;
}

// Python-facing result of one EA run; the population stays attached to its instance.
struct EvolveResult {
  Instance instance;
  RunRecord record;

  double entropy() const { return record.population.entropy.cached_entropy(); }
  std::vector<Assignment> members() const {
    std::vector<Assignment> out;
    for (const auto& m : record.population.members) out.push_back(m.rooms);
    return out;
  }
  std::vector<std::int64_t> objectives() const {
    std::vector<std::int64_t> out;
    for (const auto& m : record.population.members) out.push_back(m.objective);
    return out;
  }
  std::vector<std::tuple<std::int64_t, double, double>> trajectory() const {
    std::vector<std::tuple<std::int64_t, double, double>> out;
    for (const auto& p : record.trajectory) out.emplace_back(p.evaluations, p.entropy, p.x);
    return out;
  }
};

std::vector<Solution> as_solutions(const Instance& inst, const std::vector<Assignment>& members) {
  std::vector<Solution> out;
  for (const auto& a : members) out.push_back(make_solution(inst, a));
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Entropy-based diversity optimisation for patient admission scheduling";

  py::register_exception<StructuralError>(m, "StructuralError", PyExc_ValueError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<StateCorruption>(m, "StateCorruption", PyExc_RuntimeError);
  py::register_exception<ConstructionFailure>(m, "ConstructionFailure", PyExc_RuntimeError);

  py::class_<Instance>(m, "Instance")
      .def_readonly("name", &Instance::name)
      .def_readonly("horizon", &Instance::horizon)
      .def_property_readonly("num_patients", &Instance::num_patients)
      .def_property_readonly("num_rooms", &Instance::num_rooms)
      .def_property_readonly("total_patient_days", &Instance::total_patient_days)
      .def_property_readonly("capacities",
                             [](const Instance& i) {
                               std::vector<int> c;
                               for (const auto& r : i.rooms) c.push_back(r.capacity);
                               return c;
                             })
      .def_property_readonly("stays",
                             [](const Instance& i) {
                               std::vector<std::pair<int, int>> s;
                               for (const auto& p : i.patients) s.emplace_back(p.admission, p.discharge);
                               return s;
                             })
      .def_readonly("seed_solution", &Instance::seed_solution)
      .def_readonly("seed_objective", &Instance::seed_objective)
      .def("to_json", &instance_to_json)
      .def("__eq__", [](const Instance& a, const Instance& b) { return a == b; })
      .def("__repr__", [](const Instance& i) {
        return "<Instance '" + i.name + "': " + std::to_string(i.num_patients()) + " patients, " +
               std::to_string(i.num_rooms()) + " rooms, " + std::to_string(i.horizon) + " days>";
      });

  m.def("read_instance", &read_instance, py::arg("path"));
  m.def("write_instance", &write_instance, py::arg("instance"), py::arg("path"));
  m.def("instance_from_json", &instance_from_json, py::arg("text"));

  m.def(
      "generate",
      [](const std::string& preset, std::uint64_t seed, std::optional<int> patients, std::optional<int> rooms,
         std::optional<int> beds, std::optional<int> days) {
        GeneratorSpec spec;
        if (preset == "desk") {
          spec = desk_scale_spec(seed);
        } else if (preset.size() == 6 && preset.rfind("bench", 0) == 0) {
          spec = benchmark_like_spec(preset[5] - '0', seed);
        } else {
          throw ConfigError("unknown preset '" + preset + "'");
        }
        if (patients) spec.patients = *patients;
        if (rooms) spec.rooms = *rooms;
        if (beds) spec.total_beds = *beds;
        if (days) spec.days = *days;
        return generate(spec);
      },
      py::arg("preset") = "desk", py::arg("seed") = 1, py::arg("patients") = py::none(),
      py::arg("rooms") = py::none(), py::arg("beds") = py::none(), py::arg("days") = py::none());

  m.def(
      "validate",
      [](const Instance& inst) {
        std::vector<std::pair<std::string, std::string>> out;
        for (const auto& i : validate(inst).issues) out.emplace_back(i.where, i.message);
        return out;
      },
      py::arg("instance"), "List of (location, message); empty when the instance is valid.");

  m.def(
      "seed_solve",
      [](const Instance& inst, std::int64_t budget, std::uint64_t seed) {
        py::gil_scoped_release nogil;
        return with_seed(inst, solve_seed(inst, {budget, seed}));
      },
      py::arg("instance"), py::arg("budget") = 20000, py::arg("seed") = 1,
      "Copy of the instance carrying a near-optimal seed solution.");

  m.def(
      "evaluate",
      [](const Instance& inst, const Assignment& a) { return objective_dict(evaluate_objective(inst, a)); },
      py::arg("instance"), py::arg("assignment"));
  m.def(
      "is_feasible", [](const Instance& inst, const Assignment& a) { return check_feasibility(inst, a).ok(); },
      py::arg("instance"), py::arg("assignment"));
  m.def("quality_threshold", &quality_threshold, py::arg("seed_objective"), py::arg("alpha"));

  m.def("entropy_term", &entropy_term, py::arg("count"), py::arg("mu"), py::arg("log_base") = 2.0);
  m.def("max_entropy", &max_entropy, py::arg("patient_days"), py::arg("num_rooms"), py::arg("mu"),
        py::arg("log_base") = 2.0);
  m.def(
      "population_entropy",
      [](const Instance& inst, const std::vector<Assignment>& members, double base) {
        return EntropyState(inst, as_solutions(inst, members), base).entropy();
      },
      py::arg("instance"), py::arg("members"), py::arg("log_base") = 2.0);

  py::class_<EvolveResult>(m, "EvolveResult")
      .def_property_readonly("entropy", &EvolveResult::entropy)
      .def_property_readonly("max_entropy", [](const EvolveResult& r) { return r.record.max_entropy; })
      .def_property_readonly("c_max", [](const EvolveResult& r) { return r.record.population.c_max; })
      .def_property_readonly("evaluations", [](const EvolveResult& r) { return r.record.population.evaluations_used; })
      .def_property_readonly("accepted", [](const EvolveResult& r) { return r.record.accepted; })
      .def_property_readonly("final_x", [](const EvolveResult& r) { return r.record.final_x; })
      .def_property_readonly("members", &EvolveResult::members)
      .def_property_readonly("objectives", &EvolveResult::objectives)
      .def_property_readonly("trajectory", &EvolveResult::trajectory, "List of (evaluations, entropy, x).")
      .def("trajectory_csv", [](const EvolveResult& r) { return trajectory_csv(r.record); })
      .def("population_json", [](const EvolveResult& r) { return population_to_json(r.instance, r.record.population); });

  m.def(
      "evolve",
      [](const Instance& inst, const std::string& op, int mu, double alpha, std::int64_t evals, std::uint64_t seed,
         std::int64_t stride) {
        RunConfig rc;
        rc.op = OperatorConfig::defaults(variant_from(op));
        rc.mu = mu;
        rc.alpha = alpha;
        rc.budget = evals;
        rc.seed = seed;
        rc.trajectory_stride = stride;
        py::gil_scoped_release nogil;
        return EvolveResult{inst, run(inst, rc)};
      },
      py::arg("instance"), py::arg("operator") = "adaptive", py::arg("mu") = 50, py::arg("alpha") = 0.02,
      py::arg("evals") = 1'000'000, py::arg("seed") = 1, py::arg("stride") = 1000);

  m.def(
      "robustness",
      [](const Instance& inst, const std::vector<Assignment>& members, const Assignment& initial, int pairs,
         int reps, std::uint64_t seed) {
        const auto r = robustness_sim(inst, as_solutions(inst, members), initial, {pairs, reps, seed});
        return std::make_pair(r.ratio, r.alt);
      },
      py::arg("instance"), py::arg("members"), py::arg("initial"), py::arg("pairs") = 1, py::arg("reps") = 100,
      py::arg("seed") = 1, "(ratio, alt) of the pair-separation simulation.");

  m.def(
      "heatmap_csv",
      [](const Instance& inst, const std::vector<Assignment>& members) {
        return heatmap_csv(inst, as_solutions(inst, members));
      },
      py::arg("instance"), py::arg("members"));

  m.def(
      "compare",
      [](const Instance& inst, std::vector<std::string> operators, int runs, std::int64_t evals, int mu,
         double alpha, std::uint64_t seed, unsigned threads) {
        CompareConfig cfg;
        cfg.variants.clear();
        for (const auto& name : operators) cfg.variants.push_back(variant_from(name));
        cfg.runs = runs;
        cfg.budget = evals;
        cfg.mu = mu;
        cfg.alpha = alpha;
        cfg.base_seed = seed;
        cfg.threads = threads;
        py::gil_scoped_release nogil;
        return compare_operators(inst, cfg).to_csv();
      },
      py::arg("instance"), py::arg("operators") = std::vector<std::string>{"swap", "fixed", "adaptive", "biased"},
      py::arg("runs") = 10, py::arg("evals") = 1'000'000, py::arg("mu") = 50, py::arg("alpha") = 0.02,
      py::arg("seed") = 1, py::arg("threads") = 0u, "CSV report, one row per run plus per-operator medians.");
}
