#include <algorithm>
#include <fstream>
#include <limits>
#include <sstream>

#include "json.hpp"

#include "pasdiv/error.hpp"
#include "pasdiv/instances.hpp"

namespace pasdiv {

using nlohmann::json;

namespace {

// --- writing ---------------------------------------------------------------

std::string quoted(const std::string& s) { return json(s).dump(); }

template <typename Row>
void emit_row(std::ostream& out, const Row& row) {
  out << '[';
  for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
  out << ']';
}

template <typename Matrix>
void emit_matrix(std::ostream& out, const Matrix& rows, const std::string& indent) {
  out << '[';
  for (std::size_t i = 0; i < rows.size(); ++i) {
    out << (i ? ",\n" : "\n") << indent << "  ";
    emit_row(out, rows[i]);
  }
  if (!rows.empty()) out << '\n' << indent;
  out << ']';
}

std::vector<std::vector<std::int64_t>> as_rows(const std::vector<std::int64_t>& flat, std::size_t width,
                                               std::size_t height) {
  std::vector<std::vector<std::int64_t>> rows(height);
  for (std::size_t i = 0; i < height; ++i) {
    rows[i].assign(flat.begin() + static_cast<std::ptrdiff_t>(i * width),
                   flat.begin() + static_cast<std::ptrdiff_t>((i + 1) * width));
  }
  return rows;
}

// --- reading ---------------------------------------------------------------

std::string child(const std::string& path, const std::string& key) { return path + "/" + key; }
std::string child(const std::string& path, std::size_t index) { return path + "/" + std::to_string(index); }

const json& require_object(const json& j, const std::string& path, std::initializer_list<const char*> required,
                           std::initializer_list<const char*> optional = {}) {
  if (!j.is_object()) throw ParseError(path.empty() ? "/" : path, "expected an object");
  for (const char* key : required) {
    if (!j.contains(key)) throw ParseError(child(path, key), "missing required field");
  }
  for (const auto& item : j.items()) {
    const bool known = std::any_of(required.begin(), required.end(), [&](const char* k) { return item.key() == k; }) ||
                       std::any_of(optional.begin(), optional.end(), [&](const char* k) { return item.key() == k; });
    if (!known) throw ParseError(child(path, item.key()), "unknown field");
  }
  return j;
}

const json& require_array(const json& j, const std::string& path) {
  if (!j.is_array()) throw ParseError(path, "expected an array");
  return j;
}

std::int64_t read_int(const json& j, const std::string& path, std::int64_t lo = std::numeric_limits<std::int64_t>::min(),
                      std::int64_t hi = std::numeric_limits<std::int64_t>::max()) {
  if (!j.is_number_integer()) throw ParseError(path, "expected an integer");
  if (j.is_number_unsigned() && j.get<std::uint64_t>() > static_cast<std::uint64_t>(hi)) {
    throw ParseError(path, "value out of range");
  }
  const auto v = j.get<std::int64_t>();
  if (v < lo || v > hi) throw ParseError(path, "value " + std::to_string(v) + " out of range");
  return v;
}

int read_small(const json& j, const std::string& path, int lo = 0) {
  return static_cast<int>(read_int(j, path, lo, std::numeric_limits<int>::max()));
}

double read_real(const json& j, const std::string& path) {
  if (!j.is_number()) throw ParseError(path, "expected a number");
  return j.get<double>();
}

std::string read_string(const json& j, const std::string& path) {
  if (!j.is_string()) throw ParseError(path, "expected a string");
  return j.get<std::string>();
}

std::vector<std::int64_t> read_int_row(const json& j, const std::string& path, std::int64_t lo) {
  require_array(j, path);
  std::vector<std::int64_t> row;
  row.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) row.push_back(read_int(j[i], child(path, i), lo));
  return row;
}

/// Patients x rooms matrix, flattened row-major.
std::vector<std::int64_t> read_cost_matrix(const json& j, const std::string& path, std::size_t rows,
                                           std::size_t cols) {
  require_array(j, path);
  std::vector<std::int64_t> flat;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const auto row = read_int_row(j[i], child(path, i), std::numeric_limits<std::int64_t>::min());
    if (row.size() != cols) throw ParseError(child(path, i), "expected " + std::to_string(cols) + " columns (one per room)");
    flat.insert(flat.end(), row.begin(), row.end());
  }
  if (j.size() != rows) throw ParseError(path, "expected " + std::to_string(rows) + " rows (one per patient), got " + std::to_string(j.size()));
  return flat;
}

Assignment read_assignment(const json& j, const std::string& path) {
  require_array(j, path);
  Assignment a(j.size());
  for (std::size_t p = 0; p < j.size(); ++p) {
    const auto row = read_int_row(j[p], child(path, p), std::numeric_limits<int>::min());
    a[p].assign(row.begin(), row.end());
  }
  return a;
}

json parse_document(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    const std::size_t offset = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    const auto line = 1 + std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(offset), '\n');
    const auto last_nl = text.rfind('\n', offset == 0 ? 0 : offset - 1);
    const auto column = last_nl == std::string::npos || offset == 0 ? offset + 1 : offset - last_nl;
    throw ParseError("line " + std::to_string(line) + ", column " + std::to_string(column), "malformed JSON");
  }
}

const char* rule_name(GenderPenaltyRule r) {
  return r == GenderPenaltyRule::Minority ? "minority" : "per_mixed_room_day";
}

}  // namespace

// ---------------------------------------------------------------------------

std::string instance_to_json(const Instance& inst) {
  std::ostringstream out;
  const std::size_t n_rooms = inst.rooms.size();
  const std::size_t n_patients = inst.patients.size();

  out << "{\n  \"name\": " << quoted(inst.name) << ",\n  \"horizon\": " << inst.horizon << ",\n  \"rooms\": [";
  for (std::size_t r = 0; r < n_rooms; ++r) {
    const auto& room = inst.rooms[r];
    out << (r ? ",\n" : "\n") << "    {\"id\": " << room.id << ", \"capacity\": " << room.capacity
        << ", \"gender_policy\": \"" << to_token(room.policy) << "\"}";
  }
  out << (n_rooms ? "\n  ]" : "]") << ",\n  \"patients\": [";
  for (std::size_t p = 0; p < n_patients; ++p) {
    const auto& pt = inst.patients[p];
    out << (p ? ",\n" : "\n") << "    {\"id\": " << pt.id << ", \"gender\": \"" << to_token(pt.gender)
        << "\", \"admission\": " << pt.admission << ", \"discharge\": " << pt.discharge << "}";
  }
  out << (n_patients ? "\n  ]" : "]") << ",\n  \"cost\": {\n    \"cv\": ";
  emit_matrix(out, as_rows(inst.cv, n_rooms, inst.cv.size() / std::max<std::size_t>(n_rooms, 1)), "    ");
  out << ",\n    \"cg2\": " << inst.cg2 << ",\n    \"ct\": " << inst.ct << "\n  }";
  if (inst.seed_solution) {
    out << ",\n  \"seed_solution\": ";
    emit_matrix(out, *inst.seed_solution, "  ");
  }
  if (inst.seed_objective) out << ",\n  \"seed_objective\": " << *inst.seed_objective;
  if (inst.cost_breakdown) {
    out << ",\n  \"cost_breakdown\": {";
    bool first = true;
    for (const auto& [component, flat] : *inst.cost_breakdown) {
      out << (first ? "\n" : ",\n") << "    " << quoted(component) << ": ";
      emit_matrix(out, as_rows(flat, n_rooms, flat.size() / std::max<std::size_t>(n_rooms, 1)), "    ");
      first = false;
    }
    out << "\n  }";
  }
  if (inst.options != ObjectiveOptions{}) {
    out << ",\n  \"objective_options\": {\"cv_per_day\": " << (inst.options.cv_per_day ? "true" : "false")
        << ", \"gender_penalty\": \"" << rule_name(inst.options.gender_rule) << "\"}";
  }
  out << "\n}\n";
  return out.str();
}

Instance instance_from_json(const std::string& text) {
  const json doc = parse_document(text);
  require_object(doc, "", {"name", "horizon", "rooms", "patients", "cost"},
                 {"seed_solution", "seed_objective", "cost_breakdown", "objective_options"});
  Instance inst;
  inst.name = read_string(doc["name"], "/name");
  inst.horizon = read_small(doc["horizon"], "/horizon");

  const auto& rooms = require_array(doc["rooms"], "/rooms");
  for (std::size_t r = 0; r < rooms.size(); ++r) {
    const auto path = child("/rooms", r);
    require_object(rooms[r], path, {"id", "capacity", "gender_policy"});
    Room room;
    room.id = read_small(rooms[r]["id"], child(path, "id"));
    room.capacity = read_small(rooms[r]["capacity"], child(path, "capacity"), 1);
    const auto token = read_string(rooms[r]["gender_policy"], child(path, "gender_policy"));
    const auto policy = parse_policy(token);
    if (!policy) throw ParseError(child(path, "gender_policy"), "unknown gender policy \"" + token + "\" (expected F, M, D or N)");
    room.policy = *policy;
    inst.rooms.push_back(room);
  }

  const auto& patients = require_array(doc["patients"], "/patients");
  for (std::size_t p = 0; p < patients.size(); ++p) {
    const auto path = child("/patients", p);
    require_object(patients[p], path, {"id", "gender", "admission", "discharge"});
    Patient pt;
    pt.id = read_small(patients[p]["id"], child(path, "id"));
    const auto token = read_string(patients[p]["gender"], child(path, "gender"));
    const auto gender = parse_gender(token);
    if (!gender) throw ParseError(child(path, "gender"), "unknown gender \"" + token + "\" (expected F or M)");
    pt.gender = *gender;
    pt.admission = read_small(patients[p]["admission"], child(path, "admission"));
    pt.discharge = read_small(patients[p]["discharge"], child(path, "discharge"));
    if (pt.discharge <= pt.admission) throw ParseError(child(path, "discharge"), "discharge must be after admission");
    if (pt.discharge > inst.horizon) throw ParseError(child(path, "discharge"), "discharge beyond the planning horizon");
    inst.patients.push_back(pt);
  }

  const auto& cost = require_object(doc["cost"], "/cost", {"cv", "cg2", "ct"});
  inst.cv = read_cost_matrix(cost["cv"], "/cost/cv", patients.size(), rooms.size());
  for (std::size_t i = 0; i < inst.cv.size(); ++i) {
    if (inst.cv[i] < 0) {
      throw ParseError(child(child("/cost/cv", i / std::max<std::size_t>(rooms.size(), 1)), i % std::max<std::size_t>(rooms.size(), 1)),
                       "cost must be non-negative");
    }
  }
  inst.cg2 = read_int(cost["cg2"], "/cost/cg2", 0);
  inst.ct = read_int(cost["ct"], "/cost/ct", 0);

  if (doc.contains("seed_solution")) inst.seed_solution = read_assignment(doc["seed_solution"], "/seed_solution");
  if (doc.contains("seed_objective")) inst.seed_objective = read_int(doc["seed_objective"], "/seed_objective", 0);
  if (doc.contains("cost_breakdown")) {
    const auto& parts = doc["cost_breakdown"];
    if (!parts.is_object()) throw ParseError("/cost_breakdown", "expected an object");
    CostBreakdown breakdown;
    for (const auto& item : parts.items()) {
      breakdown[item.key()] = read_cost_matrix(item.value(), child("/cost_breakdown", item.key()), patients.size(), rooms.size());
    }
    inst.cost_breakdown = std::move(breakdown);
  }
  if (doc.contains("objective_options")) {
    const auto& opt = require_object(doc["objective_options"], "/objective_options", {}, {"cv_per_day", "gender_penalty"});
    if (opt.contains("cv_per_day")) {
      if (!opt["cv_per_day"].is_boolean()) throw ParseError("/objective_options/cv_per_day", "expected a boolean");
      inst.options.cv_per_day = opt["cv_per_day"].get<bool>();
    }
    if (opt.contains("gender_penalty")) {
      const auto rule = read_string(opt["gender_penalty"], "/objective_options/gender_penalty");
      if (rule == "minority") {
        inst.options.gender_rule = GenderPenaltyRule::Minority;
      } else if (rule == "per_mixed_room_day") {
        inst.options.gender_rule = GenderPenaltyRule::PerMixedRoomDay;
      } else {
        throw ParseError("/objective_options/gender_penalty", "unknown rule \"" + rule + "\"");
      }
    }
  }
  return inst;
}

// ---------------------------------------------------------------------------

ValidationReport validate(const Instance& inst) {
  ValidationReport report;
  auto issue = [&](std::string where, std::string message) { report.issues.push_back({std::move(where), std::move(message)}); };

  if (inst.horizon < 1) issue("/horizon", "planning horizon must be at least one day");
  if (inst.rooms.empty()) issue("/rooms", "at least one room is required");
  for (std::size_t r = 0; r < inst.rooms.size(); ++r) {
    const auto& room = inst.rooms[r];
    if (room.id != static_cast<int>(r)) issue(child(child("/rooms", r), "id"), "room ids must equal their position");
    if (room.capacity < 1) issue(child(child("/rooms", r), "capacity"), "capacity must be >= 1");
  }
  for (std::size_t p = 0; p < inst.patients.size(); ++p) {
    const auto& pt = inst.patients[p];
    const auto path = child("/patients", p);
    if (pt.id != static_cast<int>(p)) issue(child(path, "id"), "patient ids must equal their position");
    if (pt.admission < 0) issue(child(path, "admission"), "admission before day 0");
    if (pt.discharge <= pt.admission) issue(child(path, "discharge"), "length of stay must be >= 1");
    if (pt.discharge > inst.horizon) issue(child(path, "discharge"), "discharge beyond the planning horizon");
  }
  const bool cv_shape_ok = inst.cv.size() == inst.patients.size() * inst.rooms.size();
  if (!cv_shape_ok) {
    const std::size_t rows = inst.rooms.empty() ? inst.cv.size() : inst.cv.size() / inst.rooms.size();
    issue("/cost/cv", "dimension mismatch on the patients axis: " + std::to_string(rows) + " rows for " +
                          std::to_string(inst.patients.size()) + " patients");
  } else {
    for (std::size_t i = 0; i < inst.cv.size(); ++i) {
      if (inst.cv[i] < 0) issue(child(child("/cost/cv", i / inst.rooms.size()), i % inst.rooms.size()), "negative cost");
    }
  }
  if (inst.cg2 < 0) issue("/cost/cg2", "negative penalty");
  if (inst.ct < 0) issue("/cost/ct", "negative penalty");
  if (inst.cost_breakdown) {
    for (const auto& [name, flat] : *inst.cost_breakdown) {
      if (flat.size() != inst.cv.size()) issue(child("/cost_breakdown", name), "dimension mismatch with cv");
    }
  }
  if (inst.seed_objective && !inst.seed_solution) issue("/seed_objective", "seed objective without a seed solution");

  if (inst.seed_solution && report.ok()) {
    try {
      const auto feas = check_feasibility(inst, *inst.seed_solution);
      for (const auto& v : feas.violations) {
        issue("/seed_solution", "room " + std::to_string(v.room) + " holds " + std::to_string(v.occupants) + " patients on day " +
                                    std::to_string(v.day) + " (capacity " + std::to_string(v.capacity) + ")");
      }
      const auto objective = evaluate_objective(inst, *inst.seed_solution).total;
      if (inst.seed_objective && *inst.seed_objective != objective) {
        issue("/seed_objective", "objective mismatch: stored " + std::to_string(*inst.seed_objective) + ", recomputed " +
                                     std::to_string(objective));
      }
    } catch (const StructuralError& e) {
      issue("/seed_solution", e.what());
    }
  }
  return report;
}

// ---------------------------------------------------------------------------

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  if (!out) throw std::runtime_error("error writing " + path.string());
}

void write_instance(const Instance& instance, const std::filesystem::path& path) {
  write_text(path, instance_to_json(instance));
}

Instance read_instance(const std::filesystem::path& path) { return instance_from_json(read_text(path)); }

std::string population_to_json(const Instance& instance, const Population& population) {
  std::ostringstream out;
  out << "{\n  \"instance_name\": " << quoted(instance.name) << ",\n  \"c_max\": " << population.c_max
      << ",\n  \"mu\": " << population.mu() << ",\n  \"solutions\": [";
  for (std::size_t i = 0; i < population.members.size(); ++i) {
    out << (i ? ",\n" : "\n") << "    {\"objective\": " << population.members[i].objective << ", \"assignment\": ";
    emit_matrix(out, population.members[i].rooms, "    ");
    out << '}';
  }
  out << (population.members.empty() ? "]" : "\n  ]") << ",\n  \"entropy\": " << json(population.entropy.cached_entropy()).dump()
      << ",\n  \"log_base\": " << json(population.entropy.log_base()).dump() << "\n}\n";
  return out.str();
}

Population population_from_json(const Instance& instance, const std::string& text) {
  const json doc = parse_document(text);
  require_object(doc, "", {"instance_name", "c_max", "mu", "solutions", "entropy", "log_base"});
  const auto name = read_string(doc["instance_name"], "/instance_name");
  if (name != instance.name) throw ParseError("/instance_name", "population belongs to instance \"" + name + "\"");
  const auto c_max = read_int(doc["c_max"], "/c_max", 0);
  const int mu = read_small(doc["mu"], "/mu", 1);
  const double log_base = read_real(doc["log_base"], "/log_base");
  read_real(doc["entropy"], "/entropy");

  const auto& sols = require_array(doc["solutions"], "/solutions");
  if (static_cast<int>(sols.size()) != mu) throw ParseError("/solutions", "expected mu = " + std::to_string(mu) + " solutions");
  std::vector<Solution> members;
  for (std::size_t i = 0; i < sols.size(); ++i) {
    const auto path = child("/solutions", i);
    require_object(sols[i], path, {"assignment", "objective"});
    Assignment rooms = read_assignment(sols[i]["assignment"], child(path, "assignment"));
    const auto stored = read_int(sols[i]["objective"], child(path, "objective"), 0);
    try {
      members.push_back(make_solution(instance, std::move(rooms)));
    } catch (const StructuralError& e) {
      throw ParseError(child(path, "assignment"), e.what());
    }
    if (members.back().objective != stored) throw ParseError(child(path, "objective"), "objective does not match the assignment");
  }
  EntropyState counts(instance, members, log_base);
  return Population{std::move(members), std::move(counts), c_max, 0};
}

void write_population(const Instance& instance, const Population& population, const std::filesystem::path& path) {
  write_text(path, population_to_json(instance, population));
}

Population read_population(const Instance& instance, const std::filesystem::path& path) {
  return population_from_json(instance, read_text(path));
}

}  // namespace pasdiv
