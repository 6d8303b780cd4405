// splbee command-line front end. Talks to the optimizer exclusively through
// the public C API in splbee/splbee.h.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>

#include <CLI11.hpp>

#include "splbee/splbee.h"

namespace {

struct ModelDeleter {
  void operator()(splbee_model* m) const { splbee_model_free(m); }
};
struct AttrsDeleter {
  void operator()(splbee_attrs* a) const { splbee_attrs_free(a); }
};
using ModelPtr = std::unique_ptr<splbee_model, ModelDeleter>;
using AttrsPtr = std::unique_ptr<splbee_attrs, AttrsDeleter>;

struct StringDeleter {
  void operator()(char* s) const { splbee_string_free(s); }
};
using StringPtr = std::unique_ptr<char, StringDeleter>;

[[noreturn]] void fail(splbee_status status) {
  std::cerr << "error (" << splbee_status_name(status) << "): " << splbee_last_error() << "\n";
  std::exit(1);
}

void check(splbee_status status) {
  if (status != SPLBEE_OK) fail(status);
}

ModelPtr load_model(const std::string& model_path, const std::string& mandatory_path) {
  splbee_model* model = nullptr;
  check(splbee_model_load(model_path.c_str(),
                          mandatory_path.empty() ? nullptr : mandatory_path.c_str(), &model));
  return ModelPtr(model);
}

AttrsPtr make_attrs(const splbee_model* model, const std::string& attrs_path,
                    std::uint64_t attr_seed) {
  splbee_attrs* attrs = nullptr;
  if (!attrs_path.empty())
    check(splbee_attrs_load(model, attrs_path.c_str(), &attrs));
  else
    check(splbee_attrs_augment(model, attr_seed, &attrs));
  return AttrsPtr(attrs);
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << "\n";
    return;
  }
  std::ofstream out(out_path);
  if (!out) {
    std::cerr << "error: cannot write " << out_path << "\n";
    std::exit(1);
  }
  out << text;
  if (!text.empty() && text.back() != '\n') out << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-objective bee-swarm product configuration for software product lines"};
  app.require_subcommand(1);

  // --- run ---------------------------------------------------------------
  auto* run = app.add_subcommand("run", "Optimize a feature model and report front metrics");
  std::string run_model, run_mandatory, run_attrs, run_out;
  std::uint64_t run_attr_seed = 0;
  bool run_attr_seed_set = false;
  splbee_run_options options;
  splbee_run_options_init(&options);
  std::string repair = "full", move = "word-arith";
  run->add_option("--model", run_model, "Feature model (DIMACS CNF)")->required();
  run->add_option("--mandatory", run_mandatory, "Sidecar list of mandatory features");
  auto* attrs_opt = run->add_option("--attrs", run_attrs, "Attribute CSV");
  run->add_option("--attr-seed", run_attr_seed, "Generate attributes from this seed")
      ->excludes(attrs_opt)
      ->each([&](const std::string&) { run_attr_seed_set = true; });
  run->add_option("--seed", options.seed, "Master seed (run r uses seed+r)");
  run->add_option("--pop", options.population, "Population size")->capture_default_str();
  run->add_option("--scouts", options.scout_fraction, "Scout fraction")->capture_default_str();
  run->add_option("--wl", options.leader_weight, "Leader weight")->capture_default_str();
  run->add_option("--we", options.elite_weight, "Elite weight")->capture_default_str();
  run->add_option("--arch-size", options.archive_capacity, "Archive capacity")->capture_default_str();
  run->add_option("--sp", options.sections, "Grid sections per objective")->capture_default_str();
  auto* max_iter_opt = run->add_option("--max-iter", options.max_iterations, "Iteration bound");
  auto* budget_opt =
      run->add_option("--budget-seconds", options.budget_seconds, "Wall-clock bound per run");
  run->add_option("--repair", repair, "Repair mode: full | bounded:k | off")->capture_default_str();
  run->add_option("--move", move, "Movement semantics: word-arith | bitwise-prob")->capture_default_str();
  run->add_option("--reps", options.repetitions, "Independent repetitions")->capture_default_str();
  run->add_option("--workers", options.workers, "Worker threads (0 = auto)")
      ->envname("SPLBEE_WORKERS");
  run->add_option("--out", run_out, "Output directory")->required();

  // --- preprocess ----------------------------------------------------------
  auto* preprocess = app.add_subcommand("preprocess", "Report constants and declined constraints");
  std::string pre_model, pre_mandatory, pre_out;
  preprocess->add_option("--model", pre_model, "Feature model (DIMACS CNF)")->required();
  preprocess->add_option("--mandatory", pre_mandatory, "Sidecar list of mandatory features");
  preprocess->add_option("--out", pre_out, "Write JSON here instead of stdout");

  // --- metrics ---------------------------------------------------------------
  auto* metrics = app.add_subcommand("metrics", "Score a front CSV against a reference front");
  std::string metrics_front, metrics_reference, metrics_out;
  metrics->add_option("--front", metrics_front, "Front CSV")->required();
  metrics->add_option("--reference", metrics_reference, "Reference front CSV")->required();
  metrics->add_option("--out", metrics_out, "Write JSON here instead of stdout");

  // --- oracle ----------------------------------------------------------------
  auto* oracle = app.add_subcommand("oracle", "Exhaustive Pareto front (<= 24 free features)");
  std::string oracle_model, oracle_mandatory, oracle_attrs, oracle_out;
  std::uint64_t oracle_attr_seed = 0;
  oracle->add_option("--model", oracle_model, "Feature model (DIMACS CNF)")->required();
  oracle->add_option("--mandatory", oracle_mandatory, "Sidecar list of mandatory features");
  auto* oracle_attrs_opt = oracle->add_option("--attrs", oracle_attrs, "Attribute CSV");
  oracle->add_option("--attr-seed", oracle_attr_seed, "Generate attributes from this seed")
      ->excludes(oracle_attrs_opt);
  oracle->add_option("--out", oracle_out, "Front CSV to write")->required();

  // --- gen -------------------------------------------------------------------
  auto* gen = app.add_subcommand("gen", "Generate a satisfiable synthetic model");
  std::uint32_t gen_features = 0, gen_clauses = 0, gen_min_len = 2, gen_max_len = 3;
  std::uint64_t gen_seed = 0;
  std::string gen_out;
  gen->add_option("--features", gen_features, "Feature count")->required();
  gen->add_option("--clauses", gen_clauses, "Clause count")->required();
  gen->add_option("--min-len", gen_min_len, "Minimum clause length")->capture_default_str();
  gen->add_option("--max-len", gen_max_len, "Maximum clause length")->capture_default_str();
  gen->add_option("--seed", gen_seed, "Generator seed");
  gen->add_option("--out", gen_out, "Write DIMACS here instead of stdout");

  // --- compare -----------------------------------------------------------------
  auto* compare = app.add_subcommand("compare", "Effect-size table between two report.json files");
  std::string compare_a, compare_b, compare_out;
  compare->add_option("report_a", compare_a, "First report.json")->required();
  compare->add_option("report_b", compare_b, "Second report.json")->required();
  compare->add_option("--out", compare_out, "Write JSON here instead of stdout");

  // --- speedup -----------------------------------------------------------------
  auto* speedup = app.add_subcommand("speedup", "Predicted parallel speedup of one iteration");
  double sp_iter = 1, sp_pop = 3000, sp_features = 0, sp_constraints = 0, sp_procs = 1;
  speedup->add_option("--iters", sp_iter, "Iteration count")->capture_default_str();
  speedup->add_option("--pop", sp_pop, "Population size")->capture_default_str();
  speedup->add_option("--features", sp_features, "Feature count")->required();
  speedup->add_option("--constraints", sp_constraints, "Constraint count")->required();
  speedup->add_option("--workers", sp_procs, "Processor count")->required();

  CLI11_PARSE(app, argc, argv);

  if (run->parsed()) {
    if (max_iter_opt->count() == 0 && budget_opt->count() == 0) {
      std::cerr << "error: run needs --max-iter and/or --budget-seconds\n";
      return 1;
    }
    ModelPtr model = load_model(run_model, run_mandatory);
    // Attribute default: derive the table from the master seed.
    AttrsPtr attrs = make_attrs(model.get(), run_attrs,
                                run_attr_seed_set ? run_attr_seed : options.seed);
    char* report = nullptr;
    check(splbee_run_experiment(model.get(), attrs.get(), &options, run_out.c_str(), &report));
    StringPtr report_owner(report);
    if (run_attrs.empty()) {
      // Persist the generated table so the run is reproducible from files alone.
      check(splbee_attrs_save(attrs.get(), (run_out + "/attributes.csv").c_str()));
    }
    std::cout << report << "\n";
    return 0;
  }

  if (preprocess->parsed()) {
    ModelPtr model = load_model(pre_model, pre_mandatory);
    char* json = nullptr;
    check(splbee_preprocess_json(model.get(), &json));
    StringPtr owner(json);
    emit(json, pre_out);
    return 0;
  }

  if (metrics->parsed()) {
    char* json = nullptr;
    check(splbee_metrics_json(metrics_front.c_str(), metrics_reference.c_str(), &json));
    StringPtr owner(json);
    emit(json, metrics_out);
    return 0;
  }

  if (oracle->parsed()) {
    ModelPtr model = load_model(oracle_model, oracle_mandatory);
    AttrsPtr attrs = make_attrs(model.get(), oracle_attrs, oracle_attr_seed);
    char* json = nullptr;
    check(splbee_oracle_front(model.get(), attrs.get(), oracle_out.c_str(), &json));
    StringPtr owner(json);
    std::cout << json << "\n";
    return 0;
  }

  if (gen->parsed()) {
    splbee_model* raw = nullptr;
    check(splbee_model_generate(gen_features, gen_clauses, gen_min_len, gen_max_len, gen_seed,
                                &raw));
    ModelPtr model(raw);
    char* text = nullptr;
    check(splbee_model_dimacs(model.get(), &text));
    StringPtr owner(text);
    emit(text, gen_out);
    return 0;
  }

  if (compare->parsed()) {
    char* json = nullptr;
    check(splbee_compare_json(compare_a.c_str(), compare_b.c_str(), &json));
    StringPtr owner(json);
    emit(json, compare_out);
    return 0;
  }

  if (speedup->parsed()) {
    const double value =
        splbee_predict_speedup(sp_iter, sp_pop, sp_features, sp_constraints, sp_procs);
    if (value < 0) fail(SPLBEE_ERR_INVALID);
    std::printf("%.6f\n", value);
    return 0;
  }

  return 0;
}
