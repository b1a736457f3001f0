#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "commands.hpp"
#include "groupcut/formulations.hpp"
#include "test_support.hpp"

using namespace groupcut;
using namespace groupcut::cli;

namespace {

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "groupcut_cli_tests";
  std::filesystem::create_directories(dir);
  return dir / name;
}

std::string tiny12() {
  const auto path = scratch("tiny12.txt");
  std::mt19937_64 rng(12);
  std::ofstream f(path);
  write_matrix(f, groupcut::testing::random_int_matrix(12, rng));
  return path.string();
}

InstanceOptions cities(int n) {
  InstanceOptions o;
  o.cities = GROUPCUT_TEST_DATA;
  o.n = n;
  return o;
}

int invoke(std::vector<std::string> args, std::string* out_text = nullptr, std::string* err_text = nullptr) {
  args.insert(args.begin(), "groupcut");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  std::ostringstream out, err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  if (out_text) *out_text = out.str();
  if (err_text) *err_text = err.str();
  return code;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p);
  return {std::istreambuf_iterator<char>(f), {}};
}

}  // namespace

TEST(ResolveSpec, Rules) {
  EXPECT_EQ(std::get<FixedSizes>(resolve_spec({"A", 3, {}}, 12)).sizes, (std::vector<int>{4, 4, 4}));
  EXPECT_EQ(std::get<FixedSizes>(resolve_spec({"A", std::nullopt, {5, 7}}, 12)).sizes, (std::vector<int>{5, 7}));
  EXPECT_EQ(std::get<VariableCount>(resolve_spec({"B", 4, {}}, 12)).p, 4);
  EXPECT_THROW((void)resolve_spec({"A", 2, {6, 6}}, 12), Error);
  EXPECT_THROW((void)resolve_spec({"B", std::nullopt, {6, 6}}, 12), Error);
  EXPECT_THROW((void)resolve_spec({"B", std::nullopt, {}}, 12), Error);
  EXPECT_THROW((void)resolve_spec({"C", 2, {}}, 12), Error);
  EXPECT_THROW((void)resolve_spec({"A", 5, {}}, 12), Error);
}

TEST(Count, PublishedEntries) {
  std::ostringstream sink;
  EXPECT_EQ(cmd_count({{"B", 2, {}}, 30}, sink).scientific, "5.37E+08");
  EXPECT_EQ(cmd_count({{"A", 50, {}}, 100}, sink).scientific, "2.73E+78");
  EXPECT_EQ(cmd_count({{"B", 1, {}}, 17}, sink).decimal, "1");
  EXPECT_EQ(cmd_count({{"A", std::nullopt, {6, 6}}, 12}, sink).decimal, "462");
  EXPECT_THROW((void)cmd_count({{"A", std::nullopt, {6, 5}}, 12}, sink), Error);
}

TEST(Solve, EverythingAloneCostsNothing) {
  SolveOptions o;
  o.instance.matrix = tiny12();
  o.model = {"B", 12, {}};
  o.restarts = 5;
  std::ostringstream sink;
  const auto r = cmd_solve(o, sink);
  EXPECT_EQ(std::get<std::int64_t>(r.best_cost), 0);
  EXPECT_EQ(r.best_partition, "0 1 2 3 4 5 6 7 8 9 10 11");
  EXPECT_EQ(r.optimality, "heuristic");
}

TEST(Solve, ReportsBothCostConventions) {
  SolveOptions o;
  o.instance = cities(12);
  o.model = {"A", 2, {}};
  o.restarts = 50;
  std::ostringstream sink;
  const auto r = cmd_solve(o, sink);
  EXPECT_EQ(std::get<std::int64_t>(r.ordered_pair_cost), 2 * std::get<std::int64_t>(r.best_cost));
  EXPECT_NE(sink.str().find("ordered pairs"), std::string::npos);
}

TEST(Solve, FlagErrors) {
  SolveOptions o;
  o.instance = cities(12);
  o.model = {"A", 2, {6, 6}};
  std::ostringstream sink;
  EXPECT_THROW((void)cmd_solve(o, sink), Error);
  o.model = {"A", std::nullopt, {6, 5}};
  EXPECT_THROW((void)cmd_solve(o, sink), Error);
  o.model = {"B", 2, {}};
  o.restarts = 0;
  EXPECT_THROW((void)cmd_solve(o, sink), Error);
  o.restarts = 10;
  o.instance.matrix = tiny12();
  EXPECT_THROW((void)cmd_solve(o, sink), Error);  // --matrix with --cities
  o.instance = cities(12);
  o.instance.cities = scratch("missing.csv").string();
  EXPECT_THROW((void)cmd_solve(o, sink), Error);
  o.instance = cities(500);
  EXPECT_THROW((void)cmd_solve(o, sink), Error);
}

TEST(Exact, PublishedVisitedCounts) {
  std::ostringstream sink;
  ExactOptions o;
  o.instance = cities(12);
  o.model = {"B", 2, {}};
  const auto b = cmd_exact(o, sink);
  EXPECT_EQ(b.visited, "2047");
  EXPECT_EQ(b.optimality, "exact");
  o.model = {"A", std::nullopt, {6, 6}};
  EXPECT_EQ(cmd_exact(o, sink).visited, "462");
}

TEST(Exact, RefusesHugeSpaces) {
  std::ostringstream sink;
  ExactOptions o;
  o.instance = cities(100);
  o.model = {"B", 10, {}};
  try {
    (void)cmd_exact(o, sink);
    FAIL();
  } catch (const BudgetExceeded& e) {
    EXPECT_NE(std::string(e.what()).find("2.75E+93"), std::string::npos) << e.what();
  }
}

TEST(Export, LpCountsAndFile) {
  ExportOptions o;
  o.instance = cities(12);
  o.model = {"A", std::nullopt, {4, 4, 4}};
  o.out = scratch("a12.lp").string();
  std::ostringstream msg;
  const auto s = cmd_export(o, msg);
  EXPECT_EQ(s.variables, 102);
  EXPECT_EQ(s.constraints, 132 + 1 + 12 + 3);
  EXPECT_NE(msg.str().find("102 binary variables"), std::string::npos);
  std::ifstream f(o.out);
  const auto lp = parse_lp<std::int64_t>(f);
  EXPECT_EQ(lp, build_blp_fixed(groupcut::testing::city_matrix(12), {4, 4, 4}));
}

TEST(Export, QaplibBlocks) {
  ExportOptions o;
  o.instance = cities(12);
  o.model = {"A", 3, {}};
  o.format = "qaplib";
  std::ostringstream doc;
  (void)cmd_export(o, doc);
  std::istringstream in(doc.str());
  const auto q = read_qaplib<std::int64_t>(in);
  EXPECT_EQ(q.sizes, (std::vector<int>{4, 4, 4}));
  for (int i = 0; i < 12; ++i)
    for (int j = 0; j < 12; ++j) EXPECT_EQ(q.flow(i, j), i / 4 == j / 4 ? 1 : 0);
}

TEST(Export, QaplibRejectsVariableSizes) {
  ExportOptions o;
  o.instance = cities(12);
  o.model = {"B", 3, {}};
  o.format = "qaplib";
  std::ostringstream sink;
  try {
    (void)cmd_export(o, sink);
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("model B"), std::string::npos);
  }
  o.format = "mps";
  o.model = {"A", 3, {}};
  EXPECT_THROW((void)cmd_export(o, sink), Error);
}

TEST(Bench, RejectsZeroRestarts) {
  BenchOptions o;
  o.restarts = 0;
  std::ostringstream sink;
  EXPECT_THROW((void)cmd_bench(o, sink), Error);
  o.restarts = 1;
  o.rows = "30:2";
  EXPECT_THROW((void)cmd_bench(o, sink), Error);
  o.suite = "mixed";
  EXPECT_THROW((void)cmd_bench(o, sink), Error);
}

TEST(Bench, PublishedRowsPresent) {
  const auto& f = published_rows("fixed");
  const auto& v = published_rows("variable");
  auto find = [](const auto& rows, int n, int p) {
    for (const auto& r : rows)
      if (r.n == n && r.p == p) return r.best;
    return std::int64_t{-1};
  };
  EXPECT_EQ(find(f, 40, 20), 7082);
  EXPECT_EQ(find(v, 50, 2), 797668);
  for (const auto* rows : {&f, &v})
    for (const auto& r : *rows) EXPECT_GE(r.n, 40);
}

TEST(Bench, SmallRowRun) {
  BenchOptions o;
  o.suite = "fixed";
  o.rows = "40:20";
  o.instance.cities = GROUPCUT_TEST_DATA;
  o.restarts = 200;
  std::ostringstream sink;
  const auto rows = cmd_bench(o, sink);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].published.best, 7082);
  EXPECT_TRUE(rows[0].verdict == "match" || rows[0].verdict == "miss" || rows[0].verdict == "improved");
  EXPECT_NE(sink.str().find("not run"), std::string::npos);
}

TEST(Report, JsonRoundTrip) {
  RunReport r;
  r.source = "cities:x.csv";
  r.n = 40;
  r.model = "A";
  r.spec = "sizes=20,20";
  r.rounding = "int";
  r.weighting = "none";
  r.method = "grasp";
  r.restarts = 10000;
  r.seed = 0xffffffffffffffffULL;
  r.best_cost = std::int64_t{250712};
  r.ordered_pair_cost = std::int64_t{501424};
  r.best_partition = "0 0 1";
  r.times_best = 9999;
  r.elapsed_seconds = 1.25;
  r.optimality = "heuristic";
  EXPECT_EQ(RunReport::from_json(nlohmann::json::parse(serialize(r))), r);
  r.best_cost = 3.5;
  r.ordered_pair_cost = 7.0;
  EXPECT_EQ(RunReport::from_json(nlohmann::json::parse(serialize(r))), r);
  EXPECT_EQ(serialize(r, false).find("elapsed"), std::string::npos);
}

TEST(Report, IdenticalAcrossRunsAndWorkers) {
  SolveOptions o;
  o.instance = cities(30);
  o.model = {"B", 3, {}};
  o.restarts = 300;
  o.seed = 42;
  std::ostringstream sink;
  const auto a = serialize(cmd_solve(o, sink), false);
  const auto b = serialize(cmd_solve(o, sink), false);
  o.workers = 4;
  const auto c = serialize(cmd_solve(o, sink), false);
  EXPECT_EQ(a, b);
  EXPECT_EQ(a, c);
}

TEST(Run, ExitCodesAndOutFile) {
  std::string out, err;
  EXPECT_EQ(invoke({"count", "--model", "B", "--p", "2", "--n", "12"}, &out), 0);
  EXPECT_NE(out.find("2047"), std::string::npos);
  EXPECT_NE(invoke({"count", "--model", "A", "--p", "5", "--n", "12"}, &out, &err), 0);
  EXPECT_NE(err.find("error:"), std::string::npos);
  EXPECT_NE(invoke({"solve", "--model", "A", "--p", "2", "--sizes", "6,6", "--cities", GROUPCUT_TEST_DATA, "--n", "12"},
                   &out, &err),
            0);
  EXPECT_NE(invoke({"frobnicate"}, &out, &err), 0);

  const auto report = scratch("solve.json");
  std::filesystem::remove(report);
  EXPECT_EQ(invoke({"solve", "--model", "A", "--sizes", "6,6", "--cities", GROUPCUT_TEST_DATA, "--n", "12", "--restarts",
                    "20", "--out", report.string()},
                   &out),
            0);
  const auto doc = nlohmann::json::parse(slurp(report));
  EXPECT_EQ(doc.at("spec"), "sizes=6,6");
  EXPECT_EQ(doc.at("method"), "grasp");
  EXPECT_EQ(doc.at("restarts"), 20);
}
