#include "model_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "errors.hpp"
#include "rng.hpp"

namespace splbee {

namespace {

// Doubles are written with enough digits to round-trip exactly.
std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

FeatureModel parse_dimacs(std::istream& in, const std::string& name,
                          std::vector<std::string>* warnings) {
  FeatureModel model;
  model.name = name;

  int declared_clauses = -1;
  bool header_seen = false;
  std::vector<int> current;
  std::string line;
  int line_no = 0;

  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (line[0] == 'c') continue;
    if (line[0] == 'p') {
      if (header_seen) throw ParseError("line " + std::to_string(line_no) + ": duplicate header");
      std::istringstream hs(line);
      std::string p, fmt;
      int vars = 0, cls = 0;
      if (!(hs >> p >> fmt >> vars >> cls) || fmt != "cnf" || vars < 0 || cls < 0)
        throw ParseError("line " + std::to_string(line_no) + ": malformed header '" + line + "'");
      model.num_features = vars;
      declared_clauses = cls;
      header_seen = true;
      continue;
    }
    if (!header_seen)
      throw ParseError("line " + std::to_string(line_no) + ": clause before 'p cnf' header");

    std::istringstream ls(line);
    int lit;
    while (ls >> lit) {
      if (lit == 0) {
        if (current.empty())
          throw ParseError("line " + std::to_string(line_no) +
                           ": empty clause (model trivially unsatisfiable)");
        model.clauses.push_back(std::move(current));
        current.clear();
      } else {
        if (std::abs(lit) > model.num_features)
          throw ParseError("line " + std::to_string(line_no) + ": literal " +
                           std::to_string(lit) + " out of range 1.." +
                           std::to_string(model.num_features));
        current.push_back(lit);
      }
    }
    if (!ls.eof()) {
      std::string tok;
      ls.clear();
      ls >> tok;
      throw ParseError("line " + std::to_string(line_no) + ": unexpected token '" + tok + "'");
    }
  }

  if (!header_seen) throw ParseError("missing 'p cnf' header");
  if (!current.empty()) {
    model.clauses.push_back(std::move(current));
    if (warnings) warnings->push_back("last clause not terminated by 0; accepted as-is");
  }
  if (declared_clauses != model.clause_count() && warnings) {
    warnings->push_back("header declares " + std::to_string(declared_clauses) +
                        " clauses but file contains " + std::to_string(model.clause_count()) +
                        "; using actual count");
  }
  return model;
}

FeatureModel parse_dimacs_text(const std::string& text, const std::string& name,
                               std::vector<std::string>* warnings) {
  std::istringstream in(text);
  return parse_dimacs(in, name, warnings);
}

void write_dimacs(std::ostream& out, const FeatureModel& model) {
  if (!model.name.empty()) out << "c " << model.name << "\n";
  out << "p cnf " << model.num_features << " " << model.clause_count() << "\n";
  for (const auto& clause : model.clauses) {
    for (int lit : clause) out << lit << " ";
    out << "0\n";
  }
}

std::string dimacs_text(const FeatureModel& model) {
  std::ostringstream out;
  write_dimacs(out, model);
  return out.str();
}

std::set<int> parse_mandatory_list(std::istream& in, int num_features) {
  std::set<int> mandatory;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    int feature;
    if (!(ls >> feature)) continue;
    if (feature < 1 || feature > num_features)
      throw ParseError("mandatory list line " + std::to_string(line_no) + ": feature " +
                       std::to_string(feature) + " out of range 1.." +
                       std::to_string(num_features));
    std::string extra;
    if (ls >> extra)
      throw ParseError("mandatory list line " + std::to_string(line_no) +
                       ": expected one feature index per line");
    mandatory.insert(feature);
  }
  return mandatory;
}

AttributeTable augment_attributes(const FeatureModel& model, std::uint64_t seed) {
  AttributeTable table(model.num_features);
  RngStream rng = RngStream::derive(seed, stream::kAttributes);
  for (int f = 1; f <= model.num_features; ++f) {
    FeatureAttributes& a = table.at(f);
    a.cost = rng.uniform(5.0, 15.0);
    a.used_before = rng.bernoulli(0.5);
    a.defects = static_cast<int>(rng.uniform_int(0, 10));
    if (!a.used_before) a.defects = 0;
  }
  return table;
}

namespace {

void validate_row(int feature, const FeatureAttributes& a) {
  const std::string where = "attributes for feature " + std::to_string(feature);
  if (a.cost < 5.0 || a.cost > 15.0) throw ParseError(where + ": cost outside [5, 15]");
  if (a.defects < 0 || a.defects > 10) throw ParseError(where + ": defects outside [0, 10]");
  if (!a.used_before && a.defects != 0)
    throw ParseError(where + ": defects > 0 but used_before is false");
}

}  // namespace

AttributeTable load_attributes(std::istream& in, int expected_features) {
  std::string line;
  if (!std::getline(in, line) || line != "feature,cost,used_before,defects")
    throw ParseError("attribute CSV: missing header 'feature,cost,used_before,defects'");

  struct Row {
    int feature;
    FeatureAttributes attrs;
  };
  std::vector<Row> rows;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ls(line);
    Row row{};
    std::string used;
    if (!(ls >> row.feature >> row.attrs.cost >> used >> row.attrs.defects))
      throw ParseError("attribute CSV line " + std::to_string(line_no) + ": malformed row");
    if (used == "true" || used == "1")
      row.attrs.used_before = true;
    else if (used == "false" || used == "0")
      row.attrs.used_before = false;
    else
      throw ParseError("attribute CSV line " + std::to_string(line_no) +
                       ": used_before must be true/false");
    validate_row(row.feature, row.attrs);
    rows.push_back(row);
  }

  const int count = static_cast<int>(rows.size());
  if (expected_features >= 0 && count != expected_features)
    throw ParseError("attribute CSV: " + std::to_string(count) + " rows for " +
                     std::to_string(expected_features) + " features");

  AttributeTable table(count);
  std::vector<bool> seen(count + 1, false);
  for (const Row& row : rows) {
    if (row.feature < 1 || row.feature > count || seen[row.feature])
      throw ParseError("attribute CSV: rows must cover features 1.." + std::to_string(count) +
                       " exactly once (bad feature " + std::to_string(row.feature) + ")");
    seen[row.feature] = true;
    table.at(row.feature) = row.attrs;
  }
  return table;
}

void save_attributes(std::ostream& out, const AttributeTable& table) {
  out << "feature,cost,used_before,defects\n";
  for (int f = 1; f <= table.feature_count(); ++f) {
    const FeatureAttributes& a = table.at(f);
    out << f << "," << format_double(a.cost) << "," << (a.used_before ? "true" : "false") << ","
        << a.defects << "\n";
  }
}

FeatureModel generate_synthetic_model(int num_features, int num_clauses, int min_clause_len,
                                      int max_clause_len, std::uint64_t seed) {
  if (num_features < 1) throw std::invalid_argument("generate_synthetic_model: need F >= 1");
  if (num_clauses < 0) throw std::invalid_argument("generate_synthetic_model: need C >= 0");
  if (min_clause_len < 1 || max_clause_len < min_clause_len)
    throw std::invalid_argument("generate_synthetic_model: bad clause length range");

  RngStream rng = RngStream::derive(seed, stream::kSynthetic);

  // Hidden satisfying assignment; every clause is forced to agree with it
  // somewhere, so the model is satisfiable by construction.
  std::vector<bool> hidden(num_features + 1);
  for (int f = 1; f <= num_features; ++f) hidden[f] = rng.bernoulli(0.5);

  FeatureModel model;
  model.name = "synthetic-f" + std::to_string(num_features) + "-c" + std::to_string(num_clauses) +
               "-s" + std::to_string(seed);
  model.num_features = num_features;
  model.clauses.reserve(num_clauses);

  std::vector<int> vars(num_features);
  for (int f = 1; f <= num_features; ++f) vars[f - 1] = f;

  for (int c = 0; c < num_clauses; ++c) {
    const int len = std::min<int>(
        num_features, static_cast<int>(rng.uniform_int(min_clause_len, max_clause_len)));
    // Partial Fisher-Yates: the first `len` entries become the clause variables.
    for (int i = 0; i < len; ++i) {
      const int j = i + static_cast<int>(rng.below(vars.size() - i));
      std::swap(vars[i], vars[j]);
    }
    std::vector<int> clause(len);
    bool satisfied = false;
    for (int i = 0; i < len; ++i) {
      const bool positive = rng.bernoulli(0.5);
      clause[i] = positive ? vars[i] : -vars[i];
      satisfied |= positive == hidden[vars[i]];
    }
    if (!satisfied) {
      const int i = static_cast<int>(rng.below(len));
      const int v = std::abs(clause[i]);
      clause[i] = hidden[v] ? v : -v;
    }
    model.clauses.push_back(std::move(clause));
  }
  return model;
}

}  // namespace splbee
