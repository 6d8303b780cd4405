#include <doctest.h>

#include <algorithm>
#include <sstream>

#include "errors.hpp"
#include "model_io.hpp"
#include "rng.hpp"
#include "sat_engine.hpp"

using namespace splbee;

TEST_SUITE_BEGIN("model_io");

TEST_CASE("parse_dimacs transcribes literals") {
  const FeatureModel model = parse_dimacs_text("p cnf 2 1\n1 -2 0\n");
  CHECK(model.num_features == 2);
  REQUIRE(model.clauses.size() == 1);
  CHECK(model.clauses[0] == std::vector<int>{1, -2});
}

TEST_CASE("parse_dimacs handles comments and multi-line clauses") {
  const FeatureModel model = parse_dimacs_text(
      "c a comment\np cnf 3 2\n1 2\n3 0\nc mid comment\n-1 -3 0\n");
  CHECK(model.clauses == std::vector<std::vector<int>>{{1, 2, 3}, {-1, -3}});
}

TEST_CASE("parse_dimacs rejects an empty clause") {
  CHECK_THROWS_AS(parse_dimacs_text("p cnf 1 1\n0\n"), ParseError);
}

TEST_CASE("parse_dimacs rejects out-of-range literals and bad headers") {
  CHECK_THROWS_AS(parse_dimacs_text("p cnf 2 1\n1 -3 0\n"), ParseError);
  CHECK_THROWS_AS(parse_dimacs_text("p dnf 2 1\n1 0\n"), ParseError);
  CHECK_THROWS_AS(parse_dimacs_text("1 0\n"), ParseError);
  CHECK_THROWS_AS(parse_dimacs_text("p cnf 2 1\n1 x 0\n"), ParseError);
}

TEST_CASE("clause count mismatch is a warning, not an error") {
  std::vector<std::string> warnings;
  const FeatureModel model = parse_dimacs_text("p cnf 2 5\n1 0\n2 0\n", "", &warnings);
  CHECK(model.clause_count() == 2);
  REQUIRE(warnings.size() == 1);
  CHECK(warnings[0].find("declares 5") != std::string::npos);
}

TEST_CASE("parse then serialize reproduces the clause multiset") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const FeatureModel model = generate_synthetic_model(10, 15, 1, 4, seed);
    const FeatureModel reparsed = parse_dimacs_text(dimacs_text(model));
    CHECK(reparsed.num_features == model.num_features);
    auto lhs = model.clauses;
    auto rhs = reparsed.clauses;
    std::sort(lhs.begin(), lhs.end());
    std::sort(rhs.begin(), rhs.end());
    CHECK(lhs == rhs);
  }
}

TEST_CASE("mandatory sidecar list") {
  std::istringstream in("2\n# comment\n\n5\n");
  const auto mandatory = parse_mandatory_list(in, 6);
  CHECK(mandatory == std::set<int>{2, 5});

  std::istringstream bad("9\n");
  CHECK_THROWS_AS(parse_mandatory_list(bad, 6), ParseError);
}

TEST_CASE("augment_attributes satisfies the table invariants for any seed") {
  FeatureModel model;
  model.num_features = 4;
  for (std::uint64_t seed = 0; seed < 10000; ++seed) {
    const AttributeTable table = augment_attributes(model, seed);
    for (int f = 1; f <= 4; ++f) {
      const auto& a = table.at(f);
      CHECK(a.cost >= 5.0);
      CHECK(a.cost <= 15.0);
      CHECK(a.defects >= 0);
      CHECK(a.defects <= 10);
      if (!a.used_before) CHECK(a.defects == 0);
    }
  }
}

TEST_CASE("augment_attributes is deterministic in (F, seed)") {
  FeatureModel model;
  model.num_features = 12;
  CHECK(augment_attributes(model, 99) == augment_attributes(model, 99));
  CHECK(augment_attributes(model, 99) != augment_attributes(model, 100));
}

TEST_CASE("attribute CSV round-trips and transcribes rows") {
  FeatureModel model;
  model.num_features = 5;
  const AttributeTable table = augment_attributes(model, 7);

  std::ostringstream out;
  save_attributes(out, table);
  std::istringstream in(out.str());
  CHECK(load_attributes(in, 5) == table);

  std::istringstream row(
      "feature,cost,used_before,defects\n1,5.5,false,0\n3,7.25,true,4\n2,6,true,0\n");
  const AttributeTable parsed = load_attributes(row, 3);
  CHECK(parsed.at(3).cost == 7.25);
  CHECK(parsed.at(3).used_before);
  CHECK(parsed.at(3).defects == 4);
}

TEST_CASE("attribute CSV rejects invariant violations") {
  std::istringstream defects("feature,cost,used_before,defects\n1,7.0,false,2\n");
  CHECK_THROWS_AS(load_attributes(defects, 1), ParseError);

  std::istringstream cost("feature,cost,used_before,defects\n1,3.0,true,2\n");
  CHECK_THROWS_AS(load_attributes(cost, 1), ParseError);

  std::istringstream count("feature,cost,used_before,defects\n1,6.0,true,2\n");
  CHECK_THROWS_AS(load_attributes(count, 2), ParseError);

  std::istringstream dup("feature,cost,used_before,defects\n1,6.0,true,2\n1,6.0,true,2\n");
  CHECK_THROWS_AS(load_attributes(dup, 2), ParseError);
}

TEST_CASE("generate_synthetic_model: no constraints when C = 0") {
  const FeatureModel model = generate_synthetic_model(6, 0, 1, 3, 1);
  CHECK(model.num_features == 6);
  CHECK(model.clauses.empty());
}

TEST_CASE("generate_synthetic_model is deterministic and satisfiable") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const FeatureModel model = generate_synthetic_model(9, 20, 1, 4, seed);
    CHECK(model == [&] {
      FeatureModel again = generate_synthetic_model(9, 20, 1, 4, seed);
      return again;
    }());
    SatSolver solver(model.num_features, model.clauses);
    CHECK(solver.solve({}).has_value());
  }
}

TEST_SUITE_END();
