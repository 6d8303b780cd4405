#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "metrics.hpp"
#include "mobafs.hpp"

namespace splbee {

struct ExperimentSpec {
  std::string model_path;
  std::string mandatory_path;              // optional sidecar
  std::string attrs_path;                  // CSV, or
  std::optional<std::uint64_t> attr_seed;  // generated table
  RunParams params;
  int repetitions = 30;
  std::string out_dir;
};

struct RunMetrics {
  double hv = 0.0;
  double epsilon = 0.0;
  double igd = 0.0;
  std::int64_t pfs = 0;
  double spread = 0.0;
};

struct RunRecord {
  std::uint64_t seed = 0;
  double wall_seconds = 0.0;
  std::int64_t iterations = 0;
  bool partial = false;
  std::string front_file;
  RunMetrics metrics;
};

struct MetricMeans {
  double hv = 0.0;
  double epsilon = 0.0;
  double igd = 0.0;
  double pfs = 0.0;
  double spread = 0.0;
};

struct RunReport {
  std::string model_name;
  int features = 0;
  int clauses = 0;
  RunParams params;
  int repetitions = 0;
  std::vector<RunRecord> runs;
  MetricMeans mean;
  std::string reference_file;
};

// Front CSV: header `correctness,richness,used_before,defects,cost,config`,
// one row per point, rows sorted so equal inputs give byte-equal files. The
// config column (selected-feature bitstring, feature 1 first) is optional on
// input.
void write_front_csv(std::ostream& out, const Front& front);
Front read_front_csv(std::istream& in);

Front front_of(const std::vector<ArchiveEntry>& entries);

// Executes `repetitions` independent optimizer runs with seeds
// seed+0..seed+r-1, persists each front plus an aggregate JSON report, and
// scores every run against the reference front built across all runs.
RunReport run_experiment(const FeatureModel& model, const AttributeTable& attrs,
                         const RunParams& params, int repetitions, const std::string& out_dir);
RunReport run_experiment(const ExperimentSpec& spec);

std::string report_json(const RunReport& report);

// Exhaustive ground truth for desk-scale models: enumerates all assignments
// over the free features (at most 24), keeps the clause-satisfying ones and
// returns the exact non-dominated set. An unsatisfiable model yields an
// empty front.
Front brute_force_pareto(const FeatureModel& model, const AttributeTable& attrs);

// Per-metric Vargha-Delaney effect size between the per-run samples of two
// reports (probability the first report's value is larger).
struct ComparisonRow {
  std::string metric;
  double a12 = 0.5;
};
std::vector<ComparisonRow> compare(const RunReport& report_a, const RunReport& report_b);
std::vector<ComparisonRow> compare_report_files(const std::string& path_a,
                                                const std::string& path_b);
std::string comparison_json(const std::vector<ComparisonRow>& rows);

// JSON summary of preprocessing:
// {F, C, mandatory, constants_one, constants_zero, declined, free_count, W}.
std::string preprocess_json(const FeatureModel& model);

// Helpers shared by the C API and the CLI.
FeatureModel load_model_file(const std::string& dimacs_path, const std::string& mandatory_path);
AttributeTable load_attributes_file(const std::string& csv_path, int expected_features);
void save_attributes_file(const std::string& csv_path, const AttributeTable& attrs);
std::string metrics_json(const std::string& front_csv_path, const std::string& reference_csv_path);
Front read_front_file(const std::string& path);
void write_front_file(const std::string& path, const Front& front);

}  // namespace splbee
