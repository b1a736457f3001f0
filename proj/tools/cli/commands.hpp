#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "groupcut/core.hpp"
#include "groupcut/exact.hpp"
#include "json.hpp"

namespace groupcut::cli {

/// Where the distance matrix comes from and how city distances are shaped.
struct InstanceOptions {
  std::string cities;  // empty: $GROUPCUT_DATA, then the bundled file
  std::string matrix;
  int n = 0;  // 0: every city in the file
  std::string round = "int";
  std::string weight = "none";
  double scale = 1.0;
};

struct ModelOptions {
  std::string model = "B";
  std::optional<int> p;
  std::vector<int> sizes;
};

struct SolveOptions {
  InstanceOptions instance;
  ModelOptions model;
  int restarts = 10000;
  std::uint64_t seed = 0;
  double best_prob = 2.0 / 3.0;
  int workers = 1;
  std::string out;
};

struct ExactOptions {
  InstanceOptions instance;
  ModelOptions model;
  std::uint64_t max_combinations = kDefaultEnumerationBudget;
  std::string out;
};

struct CountOptions {
  ModelOptions model;
  int n = 0;
};

struct ExportOptions {
  InstanceOptions instance;
  ModelOptions model;
  std::string format = "lp";
  std::string out;  // empty: standard output
};

struct BenchOptions {
  std::string suite = "fixed";
  std::string rows;  // "40:2,50:25"; empty selects every row
  InstanceOptions instance;
  int restarts = 10000;
  std::uint64_t seed = 0;
  int workers = 1;
  std::string out;
};

using CostValue = std::variant<std::int64_t, double>;

/// Paper-style tables count each pair of a group in both directions.
[[nodiscard]] CostValue ordered_pair_total(const CostValue& c);

/// One solver run. Serializes to a flat JSON object with sorted keys.
struct RunReport {
  std::string source;
  int n = 0;
  std::string model;  // "A" or "B"
  std::string spec;   // "sizes=20,20" or "p=3"
  std::string rounding;
  std::string weighting;
  std::string method;  // "grasp" or "enumeration"
  int restarts = 0;
  std::uint64_t seed = 0;
  CostValue best_cost = std::int64_t{0};
  CostValue ordered_pair_cost = std::int64_t{0};
  std::string best_partition;
  int times_best = 0;
  std::string visited;  // enumeration only
  double elapsed_seconds = 0;
  std::string optimality;  // "exact" or "heuristic"

  [[nodiscard]] nlohmann::json to_json() const;
  static RunReport from_json(const nlohmann::json& j);
  friend bool operator==(const RunReport&, const RunReport&) = default;
};

/// Canonical document text; `with_timing = false` drops elapsed_seconds so
/// two runs can be compared byte for byte.
[[nodiscard]] std::string serialize(const RunReport& r, bool with_timing = true);

struct CountReport {
  BigCount count;
  std::string decimal;
  std::string scientific;
};

struct ExportSummary {
  std::string format;
  long long variables = 0;
  long long constraints = 0;
  std::string document;
};

/// A cities-based row of the published result tables.
struct PublishedRow {
  int n;
  int p;
  std::int64_t best;
  const char* status;  // CPLEX outcome: OPT or UB
};

[[nodiscard]] const std::vector<PublishedRow>& published_rows(const std::string& suite);

struct BenchRow {
  PublishedRow published;
  RunReport report;
  std::string verdict;  // match | improved | miss
};

[[nodiscard]] GroupSpec resolve_spec(const ModelOptions& m, int n);
[[nodiscard]] AnyMatrix load_instance(const InstanceOptions& opt, std::string* source = nullptr);
[[nodiscard]] std::string default_data_path();

RunReport cmd_solve(const SolveOptions& opt, std::ostream& out);
RunReport cmd_exact(const ExactOptions& opt, std::ostream& out);
CountReport cmd_count(const CountOptions& opt, std::ostream& out);
ExportSummary cmd_export(const ExportOptions& opt, std::ostream& out);
std::vector<BenchRow> cmd_bench(const BenchOptions& opt, std::ostream& out);

/// Full command-line entry point; returns the process exit code.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace groupcut::cli
