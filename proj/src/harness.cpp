#include "harness.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "errors.hpp"

namespace splbee {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

constexpr const char* kFrontHeader = "correctness,richness,used_before,defects,cost,config";

std::string repair_mode_name(RepairMode mode, int rounds) {
  switch (mode) {
    case RepairMode::Full:
      return "full";
    case RepairMode::Bounded:
      return "bounded:" + std::to_string(rounds);
    case RepairMode::Off:
      return "off";
  }
  return "full";
}

std::string move_semantics_name(MoveSemantics semantics) {
  return semantics == MoveSemantics::WordArith ? "word-arith" : "bitwise-prob";
}

}  // namespace

void write_front_csv(std::ostream& out, const Front& front) {
  std::vector<std::pair<std::vector<double>, std::string>> rows;
  rows.reserve(front.points.size());
  for (std::size_t i = 0; i < front.points.size(); ++i) {
    if (front.points[i].size() != 5)
      throw std::invalid_argument("front CSV requires 5-objective points");
    rows.emplace_back(front.points[i],
                      i < front.configs.size() ? front.configs[i] : std::string());
  }
  std::sort(rows.begin(), rows.end());

  out << kFrontHeader << "\n";
  for (const auto& [point, config] : rows) {
    for (std::size_t o = 0; o < point.size(); ++o) {
      if (o) out << ",";
      out << format_double(point[o]);
    }
    out << "," << config << "\n";
  }
}

Front read_front_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kFrontHeader)
    throw ParseError(std::string("front CSV: expected header '") + kFrontHeader + "'");

  Front front;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::size_t start = 0;
    for (;;) {
      const std::size_t comma = line.find(',', start);
      fields.push_back(line.substr(start, comma - start));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (fields.size() != 5 && fields.size() != 6)
      throw ParseError("front CSV line " + std::to_string(line_no) + ": expected 5 objectives");
    std::vector<double> point(5);
    for (int o = 0; o < 5; ++o) {
      try {
        std::size_t used = 0;
        point[o] = std::stod(fields[o], &used);
        if (used != fields[o].size()) throw std::invalid_argument("trailing garbage");
      } catch (const std::exception&) {
        throw ParseError("front CSV line " + std::to_string(line_no) + ": bad number '" +
                         fields[o] + "'");
      }
    }
    front.points.push_back(std::move(point));
    front.configs.push_back(fields.size() == 6 ? fields[5] : std::string());
  }
  return front;
}

Front front_of(const std::vector<ArchiveEntry>& entries) {
  Front front;
  front.points.reserve(entries.size());
  front.configs.reserve(entries.size());
  for (const auto& entry : entries) {
    const auto v = entry.objectives.as_array();
    front.points.emplace_back(v.begin(), v.end());
    front.configs.push_back(entry.config.to_bitstring());
  }
  return front;
}

Front read_front_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open front file: " + path);
  return read_front_csv(in);
}

void write_front_file(const std::string& path, const Front& front) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write front file: " + path);
  write_front_csv(out, front);
}

FeatureModel load_model_file(const std::string& dimacs_path, const std::string& mandatory_path) {
  std::ifstream in(dimacs_path);
  if (!in) throw IoError("cannot open model file: " + dimacs_path);
  const std::string name = std::filesystem::path(dimacs_path).stem().string();
  std::vector<std::string> warnings;
  FeatureModel model = parse_dimacs(in, name, &warnings);
  for (const auto& warning : warnings)
    std::cerr << "warning: " << dimacs_path << ": " << warning << "\n";
  if (!mandatory_path.empty()) {
    std::ifstream ms(mandatory_path);
    if (!ms) throw IoError("cannot open mandatory list: " + mandatory_path);
    model.mandatory = parse_mandatory_list(ms, model.num_features);
  }
  return model;
}

AttributeTable load_attributes_file(const std::string& csv_path, int expected_features) {
  std::ifstream in(csv_path);
  if (!in) throw IoError("cannot open attribute file: " + csv_path);
  return load_attributes(in, expected_features);
}

void save_attributes_file(const std::string& csv_path, const AttributeTable& attrs) {
  std::ofstream out(csv_path);
  if (!out) throw IoError("cannot write attribute file: " + csv_path);
  save_attributes(out, attrs);
}

namespace {

RunMetrics score_front(const Front& raw, const Front& reference_norm,
                       const NormalizationBounds& bounds) {
  RunMetrics metrics;
  const Front norm = normalize(raw, bounds);
  metrics.hv = hypervolume(norm);
  metrics.epsilon = epsilon(norm, reference_norm);
  metrics.igd = igd(norm, reference_norm);
  metrics.spread = spread(norm, reference_norm);
  metrics.pfs = static_cast<std::int64_t>(raw.size());
  return metrics;
}

ordered_json params_to_json(const RunParams& params) {
  ordered_json j;
  j["population"] = params.population;
  j["scout_fraction"] = params.scout_fraction;
  j["leader_weight"] = params.leader_weight;
  j["elite_weight"] = params.elite_weight;
  j["archive_capacity"] = params.archive_capacity;
  j["sections"] = params.sections;
  j["max_iterations"] = params.max_iterations;
  j["budget_seconds"] = params.budget_seconds;
  j["seed"] = params.seed;
  j["move"] = move_semantics_name(params.move_semantics);
  j["repair"] = repair_mode_name(params.repair_mode, params.repair_rounds);
  j["workers"] = params.workers;
  return j;
}

ordered_json metrics_to_json(const RunMetrics& m) {
  ordered_json j;
  j["hv"] = m.hv;
  j["epsilon"] = m.epsilon;
  j["igd"] = m.igd;
  j["pfs"] = m.pfs;
  j["spread"] = m.spread;
  return j;
}

}  // namespace

std::string report_json(const RunReport& report) {
  ordered_json j;
  j["model"] = {{"name", report.model_name},
                {"features", report.features},
                {"clauses", report.clauses}};
  j["params"] = params_to_json(report.params);
  j["repetitions"] = report.repetitions;
  j["runs"] = ordered_json::array();
  for (const auto& run : report.runs) {
    ordered_json r;
    r["seed"] = run.seed;
    r["wall_seconds"] = run.wall_seconds;
    r["iterations"] = run.iterations;
    r["partial"] = run.partial;
    r["front_file"] = run.front_file;
    r["metrics"] = metrics_to_json(run.metrics);
    j["runs"].push_back(std::move(r));
  }
  j["mean"] = {{"hv", report.mean.hv},
               {"epsilon", report.mean.epsilon},
               {"igd", report.mean.igd},
               {"pfs", report.mean.pfs},
               {"spread", report.mean.spread}};
  j["reference_file"] = report.reference_file;
  return j.dump(2);
}

RunReport run_experiment(const FeatureModel& model, const AttributeTable& attrs,
                         const RunParams& params, int repetitions, const std::string& out_dir) {
  if (repetitions < 1) throw std::invalid_argument("repetitions must be >= 1");
  params.validate();
  if (attrs.feature_count() != model.num_features)
    throw std::invalid_argument("attribute table does not match the model's feature count");

  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create output directory: " + out_dir);

  const ReducedModel reduced = preprocess(model);

  RunReport report;
  report.model_name = model.name;
  report.features = model.num_features;
  report.clauses = model.clause_count();
  report.params = params;
  report.repetitions = repetitions;
  report.reference_file = "reference.csv";

  std::vector<Front> fronts;
  fronts.reserve(repetitions);
  for (int r = 0; r < repetitions; ++r) {
    RunParams run_params = params;
    run_params.seed = params.seed + static_cast<std::uint64_t>(r);
    const RunOutcome outcome = run(run_params, reduced, attrs);

    char name[32];
    std::snprintf(name, sizeof(name), "front_%03d.csv", r);
    Front front = front_of(outcome.front);
    write_front_file(out_dir + "/" + name, front);

    RunRecord record;
    record.seed = run_params.seed;
    record.wall_seconds = outcome.wall_seconds;
    record.iterations = outcome.iterations;
    record.partial = outcome.partial;
    record.front_file = name;
    report.runs.push_back(std::move(record));
    fronts.push_back(std::move(front));
  }

  const ReferenceResult reference = build_reference_front(fronts);
  write_front_file(out_dir + "/" + report.reference_file, reference.front);
  const Front reference_norm = normalize(reference.front, reference.bounds);

  for (int r = 0; r < repetitions; ++r) {
    report.runs[r].metrics = score_front(fronts[r], reference_norm, reference.bounds);
    report.mean.hv += report.runs[r].metrics.hv;
    report.mean.epsilon += report.runs[r].metrics.epsilon;
    report.mean.igd += report.runs[r].metrics.igd;
    report.mean.pfs += static_cast<double>(report.runs[r].metrics.pfs);
    report.mean.spread += report.runs[r].metrics.spread;
  }
  report.mean.hv /= repetitions;
  report.mean.epsilon /= repetitions;
  report.mean.igd /= repetitions;
  report.mean.pfs /= repetitions;
  report.mean.spread /= repetitions;

  std::ofstream out(out_dir + "/report.json");
  if (!out) throw IoError("cannot write report: " + out_dir + "/report.json");
  out << report_json(report) << "\n";
  return report;
}

RunReport run_experiment(const ExperimentSpec& spec) {
  FeatureModel model = load_model_file(spec.model_path, spec.mandatory_path);
  AttributeTable attrs;
  if (!spec.attrs_path.empty()) {
    attrs = load_attributes_file(spec.attrs_path, model.num_features);
  } else {
    attrs = augment_attributes(model, spec.attr_seed.value_or(spec.params.seed));
  }
  std::error_code ec;
  std::filesystem::create_directories(spec.out_dir, ec);
  if (ec) throw IoError("cannot create output directory: " + spec.out_dir);
  save_attributes_file(spec.out_dir + "/attributes.csv", attrs);
  return run_experiment(model, attrs, spec.params, spec.repetitions, spec.out_dir);
}

Front brute_force_pareto(const FeatureModel& model, const AttributeTable& attrs) {
  ReducedModel reduced;
  try {
    reduced = preprocess(model);
  } catch (const UnsatError&) {
    return Front{};
  }

  const int nfree = reduced.free_count();
  if (nfree > 24)
    throw LimitError("brute_force_pareto: " + std::to_string(nfree) +
                     " free features exceed the 24-feature enumeration bound");

  std::vector<ArchiveEntry> archive;
  Configuration config = reduced.base_config();
  const std::uint64_t total = 1ull << nfree;
  for (std::uint64_t bits = 0; bits < total; ++bits) {
    for (int s = 0; s < nfree; ++s)
      config.set(reduced.free_features[s], (bits >> s) & 1u);
    if (count_violations(config, reduced.active_clauses) != 0) continue;
    ObjectiveVector objectives = attribute_objectives(config, attrs);

    bool rejected = false;
    for (const auto& entry : archive) {
      if (entry.objectives == objectives || dominates(entry.objectives, objectives)) {
        rejected = true;
        break;
      }
    }
    if (rejected) continue;
    std::erase_if(archive, [&](const ArchiveEntry& entry) {
      return dominates(objectives, entry.objectives);
    });
    archive.push_back({config, objectives, 0, 1});
  }
  return front_of(archive);
}

std::vector<ComparisonRow> compare(const RunReport& report_a, const RunReport& report_b) {
  auto samples = [](const RunReport& report, auto pick) {
    std::vector<double> values;
    values.reserve(report.runs.size());
    for (const auto& run : report.runs) values.push_back(pick(run.metrics));
    return values;
  };

  std::vector<ComparisonRow> rows;
  rows.push_back({"hv", a12(samples(report_a, [](const RunMetrics& m) { return m.hv; }),
                            samples(report_b, [](const RunMetrics& m) { return m.hv; }))});
  rows.push_back({"epsilon", a12(samples(report_a, [](const RunMetrics& m) { return m.epsilon; }),
                                 samples(report_b, [](const RunMetrics& m) { return m.epsilon; }))});
  rows.push_back({"igd", a12(samples(report_a, [](const RunMetrics& m) { return m.igd; }),
                             samples(report_b, [](const RunMetrics& m) { return m.igd; }))});
  rows.push_back(
      {"pfs", a12(samples(report_a, [](const RunMetrics& m) { return static_cast<double>(m.pfs); }),
                  samples(report_b, [](const RunMetrics& m) { return static_cast<double>(m.pfs); }))});
  rows.push_back({"spread", a12(samples(report_a, [](const RunMetrics& m) { return m.spread; }),
                                samples(report_b, [](const RunMetrics& m) { return m.spread; }))});
  return rows;
}

namespace {

RunReport report_from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open report: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw ParseError("report " + path + ": " + e.what());
  }
  RunReport report;
  try {
    report.model_name = j.at("model").at("name").get<std::string>();
    for (const auto& r : j.at("runs")) {
      RunRecord record;
      record.seed = r.at("seed").get<std::uint64_t>();
      const auto& m = r.at("metrics");
      record.metrics.hv = m.at("hv").get<double>();
      record.metrics.epsilon = m.at("epsilon").get<double>();
      record.metrics.igd = m.at("igd").get<double>();
      record.metrics.pfs = m.at("pfs").get<std::int64_t>();
      record.metrics.spread = m.at("spread").get<double>();
      report.runs.push_back(std::move(record));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("report " + path + ": " + e.what());
  }
  return report;
}

}  // namespace

std::vector<ComparisonRow> compare_report_files(const std::string& path_a,
                                                const std::string& path_b) {
  return compare(report_from_json_file(path_a), report_from_json_file(path_b));
}

std::string comparison_json(const std::vector<ComparisonRow>& rows) {
  ordered_json j;
  for (const auto& row : rows) j[row.metric] = row.a12;
  return j.dump(2);
}

std::string preprocess_json(const FeatureModel& model) {
  const ReducedModel reduced = preprocess(model);
  ordered_json j;
  j["F"] = model.num_features;
  j["C"] = model.clause_count();
  j["mandatory"] = reported_mandatory(model);
  j["constants_one"] = reduced.constants.one;
  j["constants_zero"] = reduced.constants.zero;
  j["declined"] = reduced.declined;
  j["free_count"] = reduced.free_count();
  j["W"] = reduced_dimension(reduced);
  return j.dump(2);
}

std::string metrics_json(const std::string& front_csv_path,
                         const std::string& reference_csv_path) {
  const Front front = read_front_file(front_csv_path);
  const Front reference = read_front_file(reference_csv_path);
  // Normalization bounds come from the reference set; front points outside
  // them are clipped.
  const ReferenceResult combined = build_reference_front({reference});
  const Front reference_norm = normalize(combined.front, combined.bounds);
  const RunMetrics m = score_front(front, reference_norm, combined.bounds);
  return metrics_to_json(m).dump(2);
}

}  // namespace splbee

