#include "splbee/splbee.h"

#include <cstring>
#include <memory>
#include <new>
#include <string>

#include "errors.hpp"
#include "harness.hpp"

struct splbee_model {
  splbee::FeatureModel model;
};

struct splbee_attrs {
  splbee::AttributeTable table;
};

namespace {

thread_local std::string g_last_error;

char* copy_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

// Runs the body, converting exceptions into status codes + last-error text.
template <typename Fn>
splbee_status guarded(Fn&& fn) {
  try {
    g_last_error.clear();
    fn();
    return SPLBEE_OK;
  } catch (const splbee::IoError& e) {
    g_last_error = e.what();
    return SPLBEE_ERR_IO;
  } catch (const splbee::ParseError& e) {
    g_last_error = e.what();
    return SPLBEE_ERR_PARSE;
  } catch (const splbee::UnsatError& e) {
    g_last_error = e.what();
    return SPLBEE_ERR_UNSAT;
  } catch (const splbee::LimitError& e) {
    g_last_error = e.what();
    return SPLBEE_ERR_LIMIT;
  } catch (const std::invalid_argument& e) {
    g_last_error = e.what();
    return SPLBEE_ERR_INVALID;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return SPLBEE_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return SPLBEE_ERR_INTERNAL;
  }
}

splbee_status require(bool condition, const char* message) {
  if (condition) return SPLBEE_OK;
  g_last_error = message;
  return SPLBEE_ERR_INVALID;
}

splbee::RunParams to_run_params(const splbee_run_options& options) {
  splbee::RunParams params;
  params.population = static_cast<int>(options.population);
  params.scout_fraction = options.scout_fraction;
  params.leader_weight = options.leader_weight;
  params.elite_weight = options.elite_weight;
  params.archive_capacity = static_cast<int>(options.archive_capacity);
  params.sections = static_cast<int>(options.sections);
  params.max_iterations = options.max_iterations;
  params.budget_seconds = options.budget_seconds;
  params.seed = options.seed;
  params.workers = static_cast<int>(options.workers);
  params.repair_rounds = static_cast<int>(options.repair_rounds);
  switch (options.repair_mode) {
    case SPLBEE_REPAIR_FULL:
      params.repair_mode = splbee::RepairMode::Full;
      break;
    case SPLBEE_REPAIR_BOUNDED:
      params.repair_mode = splbee::RepairMode::Bounded;
      break;
    case SPLBEE_REPAIR_OFF:
      params.repair_mode = splbee::RepairMode::Off;
      break;
    default:
      throw std::invalid_argument("unknown repair mode");
  }
  switch (options.move_semantics) {
    case SPLBEE_MOVE_WORD_ARITH:
      params.move_semantics = splbee::MoveSemantics::WordArith;
      break;
    case SPLBEE_MOVE_BITWISE_PROB:
      params.move_semantics = splbee::MoveSemantics::BitwiseProb;
      break;
    default:
      throw std::invalid_argument("unknown move semantics");
  }
  return params;
}

}  // namespace

extern "C" {

const char* splbee_version(void) { return "1.0.0"; }

const char* splbee_status_name(splbee_status status) {
  switch (status) {
    case SPLBEE_OK: return "ok";
    case SPLBEE_ERR_IO: return "io-error";
    case SPLBEE_ERR_PARSE: return "parse-error";
    case SPLBEE_ERR_INVALID: return "invalid-argument";
    case SPLBEE_ERR_UNSAT: return "unsatisfiable";
    case SPLBEE_ERR_LIMIT: return "limit-exceeded";
    case SPLBEE_ERR_INTERNAL: return "internal-error";
  }
  return "unknown";
}

const char* splbee_last_error(void) { return g_last_error.c_str(); }

void splbee_string_free(char* s) { delete[] s; }

splbee_status splbee_model_load(const char* dimacs_path, const char* mandatory_path,
                                splbee_model** out) {
  if (auto s = require(dimacs_path && out, "model_load: null argument")) return s;
  return guarded([&] {
    auto handle = std::make_unique<splbee_model>();
    handle->model = splbee::load_model_file(dimacs_path, mandatory_path ? mandatory_path : "");
    *out = handle.release();
  });
}

splbee_status splbee_model_parse(const char* dimacs_text, const char* name, splbee_model** out) {
  if (auto s = require(dimacs_text && out, "model_parse: null argument")) return s;
  return guarded([&] {
    auto handle = std::make_unique<splbee_model>();
    handle->model = splbee::parse_dimacs_text(dimacs_text, name ? name : "");
    *out = handle.release();
  });
}

splbee_status splbee_model_generate(uint32_t features, uint32_t clauses, uint32_t min_clause_len,
                                    uint32_t max_clause_len, uint64_t seed, splbee_model** out) {
  if (auto s = require(out != nullptr, "model_generate: null output")) return s;
  return guarded([&] {
    auto handle = std::make_unique<splbee_model>();
    handle->model = splbee::generate_synthetic_model(
        static_cast<int>(features), static_cast<int>(clauses), static_cast<int>(min_clause_len),
        static_cast<int>(max_clause_len), seed);
    *out = handle.release();
  });
}

splbee_status splbee_model_dimacs(const splbee_model* model, char** out_text) {
  if (auto s = require(model && out_text, "model_dimacs: null argument")) return s;
  return guarded([&] { *out_text = copy_string(splbee::dimacs_text(model->model)); });
}

uint32_t splbee_model_features(const splbee_model* model) {
  return model ? static_cast<uint32_t>(model->model.num_features) : 0;
}

uint32_t splbee_model_clauses(const splbee_model* model) {
  return model ? static_cast<uint32_t>(model->model.clause_count()) : 0;
}

void splbee_model_free(splbee_model* model) { delete model; }

splbee_status splbee_attrs_augment(const splbee_model* model, uint64_t seed, splbee_attrs** out) {
  if (auto s = require(model && out, "attrs_augment: null argument")) return s;
  return guarded([&] {
    auto handle = std::make_unique<splbee_attrs>();
    handle->table = splbee::augment_attributes(model->model, seed);
    *out = handle.release();
  });
}

splbee_status splbee_attrs_load(const splbee_model* model, const char* csv_path,
                                splbee_attrs** out) {
  if (auto s = require(model && csv_path && out, "attrs_load: null argument")) return s;
  return guarded([&] {
    auto handle = std::make_unique<splbee_attrs>();
    handle->table = splbee::load_attributes_file(csv_path, model->model.num_features);
    *out = handle.release();
  });
}

splbee_status splbee_attrs_save(const splbee_attrs* attrs, const char* csv_path) {
  if (auto s = require(attrs && csv_path, "attrs_save: null argument")) return s;
  return guarded([&] { splbee::save_attributes_file(csv_path, attrs->table); });
}

void splbee_attrs_free(splbee_attrs* attrs) { delete attrs; }

splbee_status splbee_preprocess_json(const splbee_model* model, char** out_json) {
  if (auto s = require(model && out_json, "preprocess: null argument")) return s;
  return guarded([&] { *out_json = copy_string(splbee::preprocess_json(model->model)); });
}

void splbee_run_options_init(splbee_run_options* options) {
  if (!options) return;
  const splbee::RunParams defaults;
  options->population = static_cast<uint32_t>(defaults.population);
  options->scout_fraction = defaults.scout_fraction;
  options->leader_weight = defaults.leader_weight;
  options->elite_weight = defaults.elite_weight;
  options->archive_capacity = static_cast<uint32_t>(defaults.archive_capacity);
  options->sections = static_cast<uint32_t>(defaults.sections);
  options->max_iterations = defaults.max_iterations;
  options->budget_seconds = defaults.budget_seconds;
  options->seed = defaults.seed;
  options->repetitions = 1;
  options->repair_mode = SPLBEE_REPAIR_FULL;
  options->repair_rounds = static_cast<uint32_t>(defaults.repair_rounds);
  options->move_semantics = SPLBEE_MOVE_WORD_ARITH;
  options->workers = 0;
}

splbee_status splbee_run_experiment(const splbee_model* model, const splbee_attrs* attrs,
                                    const splbee_run_options* options, const char* out_dir,
                                    char** out_report_json) {
  if (auto s = require(model && attrs && options && out_dir, "run_experiment: null argument"))
    return s;
  return guarded([&] {
    const splbee::RunParams params = to_run_params(*options);
    const splbee::RunReport report = splbee::run_experiment(
        model->model, attrs->table, params, static_cast<int>(options->repetitions), out_dir);
    if (out_report_json) *out_report_json = copy_string(splbee::report_json(report));
  });
}

splbee_status splbee_oracle_front(const splbee_model* model, const splbee_attrs* attrs,
                                  const char* out_csv, char** out_json) {
  if (auto s = require(model && attrs && out_csv, "oracle_front: null argument")) return s;
  return guarded([&] {
    const splbee::Front front = splbee::brute_force_pareto(model->model, attrs->table);
    splbee::write_front_file(out_csv, front);
    if (out_json) {
      *out_json = copy_string("{\n  \"pfs\": " + std::to_string(front.size()) +
                              ",\n  \"front_file\": \"" + out_csv + "\"\n}");
    }
  });
}

splbee_status splbee_metrics_json(const char* front_csv, const char* reference_csv,
                                  char** out_json) {
  if (auto s = require(front_csv && reference_csv && out_json, "metrics: null argument")) return s;
  return guarded([&] { *out_json = copy_string(splbee::metrics_json(front_csv, reference_csv)); });
}

splbee_status splbee_compare_json(const char* report_a, const char* report_b, char** out_json) {
  if (auto s = require(report_a && report_b && out_json, "compare: null argument")) return s;
  return guarded([&] {
    *out_json = copy_string(
        splbee::comparison_json(splbee::compare_report_files(report_a, report_b)));
  });
}

double splbee_predict_speedup(double iterations, double population, double features,
                              double constraints, double processors) {
  double result = -1.0;
  guarded([&] {
    result = splbee::predict_speedup(iterations, population, features, constraints, processors);
  });
  return result;
}

}  // extern "C"
