#pragma once

#include <cstdint>
#include <iosfwd>
#include <set>
#include <string>
#include <vector>

namespace splbee {

// A feature model in CNF form. Literals are 1-based: +f selects feature f,
// -f deselects it. `mandatory` lists features declared mandatory by a sidecar
// file (the CNF itself cannot express them).
struct FeatureModel {
  std::string name;
  int num_features = 0;
  std::vector<std::vector<int>> clauses;
  std::set<int> mandatory;

  int clause_count() const { return static_cast<int>(clauses.size()); }
  bool operator==(const FeatureModel&) const = default;
};

struct FeatureAttributes {
  double cost = 0.0;
  bool used_before = false;
  int defects = 0;
};

// Per-feature cost / used-before / defect counts, indexed by feature id.
// Invariants: cost in [5, 15], defects in [0, 10], and a feature that was
// never used before has zero known defects.
class AttributeTable {
 public:
  AttributeTable() = default;
  explicit AttributeTable(int num_features) : rows_(num_features) {}

  int feature_count() const { return static_cast<int>(rows_.size()); }
  FeatureAttributes& at(int feature) { return rows_[feature - 1]; }
  const FeatureAttributes& at(int feature) const { return rows_[feature - 1]; }

  bool operator==(const AttributeTable&) const = default;

 private:
  std::vector<FeatureAttributes> rows_;
};

// Parses DIMACS CNF: `c` comment lines, one `p cnf V C` header, then
// whitespace-separated literals with `0` terminating each clause.
// A header/actual clause-count mismatch is accepted with a warning; an empty
// clause or an out-of-range literal is an error.
FeatureModel parse_dimacs(std::istream& in, const std::string& name = "",
                          std::vector<std::string>* warnings = nullptr);
FeatureModel parse_dimacs_text(const std::string& text, const std::string& name = "",
                               std::vector<std::string>* warnings = nullptr);

void write_dimacs(std::ostream& out, const FeatureModel& model);
std::string dimacs_text(const FeatureModel& model);

// Sidecar list of mandatory features: one 1-based feature index per line,
// blank lines ignored, `#` starts a comment.
std::set<int> parse_mandatory_list(std::istream& in, int num_features);

// Draws the attribute table as a deterministic function of (F, seed):
// cost ~ U[5,15], used_before ~ Bernoulli(0.5), defects ~ U{0..10} overwritten
// to 0 where used_before is false. One derived stream, consumed in feature
// order with three draws per feature.
AttributeTable augment_attributes(const FeatureModel& model, std::uint64_t seed);

// CSV with header `feature,cost,used_before,defects`, one row per feature.
// Loading validates the table invariants; when expected_features >= 0 the
// row set must cover exactly features 1..expected_features.
AttributeTable load_attributes(std::istream& in, int expected_features = -1);
void save_attributes(std::ostream& out, const AttributeTable& table);

// Random model that is satisfiable by construction: a hidden assignment is
// planted and every clause gets at least one literal true under it.
FeatureModel generate_synthetic_model(int num_features, int num_clauses,
                                      int min_clause_len, int max_clause_len,
                                      std::uint64_t seed);

}  // namespace splbee
