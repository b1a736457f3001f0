#include <iostream>

#include "CLI11.hpp"
#include "commands.hpp"

namespace groupcut::cli {

namespace {

void add_instance_flags(CLI::App* app, InstanceOptions& inst) {
  app->add_option("--cities", inst.cities, "City CSV (name,lat,lng,population); defaults to $GROUPCUT_DATA or the bundled file");
  app->add_option("--matrix", inst.matrix, "Distance matrix file: n, then n rows");
  app->add_option("--n", inst.n, "Use the n largest cities (default: all)")->check(CLI::NonNegativeNumber);
  app->add_option("--round", inst.round, "Rounding of city distances: int|none")->capture_default_str();
  app->add_option("--weight", inst.weight, "Population weighting: none|product|sum")->capture_default_str();
  app->add_option("--scale", inst.scale, "Scale factor for population weighting")->capture_default_str();
}

void add_model_flags(CLI::App* app, ModelOptions& model) {
  app->add_option("--model", model.model, "A (fixed group sizes) or B (variable group sizes)")->required();
  app->add_option("--p", model.p, "Number of groups")->check(CLI::PositiveNumber);
  app->add_option("--sizes", model.sizes, "Group sizes, comma separated (model A)")->delimiter(',');
}

}  // namespace

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"groupcut: partition items into groups minimizing intra-group distances"};
  app.require_subcommand(1);

  SolveOptions solve;
  auto* solve_cmd = app.add_subcommand("solve", "Multi-start GRASP heuristic");
  add_instance_flags(solve_cmd, solve.instance);
  add_model_flags(solve_cmd, solve.model);
  solve_cmd->add_option("--restarts", solve.restarts, "Number of restarts")->capture_default_str();
  solve_cmd->add_option("--seed", solve.seed, "Base seed; restart r uses seed XOR r")->capture_default_str();
  solve_cmd->add_option("--best-prob", solve.best_prob, "Probability of taking the best candidate")->capture_default_str();
  solve_cmd->add_option("--workers", solve.workers, "Worker threads")->check(CLI::PositiveNumber)->capture_default_str();
  solve_cmd->add_option("--out", solve.out, "Write the JSON report here");

  ExactOptions exact;
  auto* exact_cmd = app.add_subcommand("exact", "Exhaustive enumeration");
  add_instance_flags(exact_cmd, exact.instance);
  add_model_flags(exact_cmd, exact.model);
  exact_cmd->add_option("--max-combinations", exact.max_combinations, "Refuse to enumerate more partitions than this")
      ->capture_default_str();
  exact_cmd->add_option("--out", exact.out, "Write the JSON report here");

  CountOptions count;
  auto* count_cmd = app.add_subcommand("count", "Number of feasible partitions");
  add_model_flags(count_cmd, count.model);
  count_cmd->add_option("--n", count.n, "Number of items")->required();

  ExportOptions exp;
  auto* export_cmd = app.add_subcommand("export", "Write the BLP (LP format) or QAP (QAPLIB format)");
  add_instance_flags(export_cmd, exp.instance);
  add_model_flags(export_cmd, exp.model);
  export_cmd->add_option("--format", exp.format, "lp|qaplib")->capture_default_str();
  export_cmd->add_option("--out", exp.out, "Output file (default: standard output)");

  BenchOptions bench;
  auto* bench_cmd = app.add_subcommand("bench", "Re-run the cities rows of the published result tables");
  bench_cmd->add_option("--suite", bench.suite, "fixed|variable")->capture_default_str();
  bench_cmd->add_option("--rows", bench.rows, "Subset such as 40:2,50:25");
  bench_cmd->add_option("--cities", bench.instance.cities, "City CSV");
  bench_cmd->add_option("--restarts", bench.restarts, "Restarts per row")->capture_default_str();
  bench_cmd->add_option("--seed", bench.seed, "Base seed")->capture_default_str();
  bench_cmd->add_option("--workers", bench.workers, "Worker threads")->check(CLI::PositiveNumber)->capture_default_str();
  bench_cmd->add_option("--out", bench.out, "Write a JSON array of row reports here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (*solve_cmd) cmd_solve(solve, out);
    else if (*exact_cmd) cmd_exact(exact, out);
    else if (*count_cmd) cmd_count(count, out);
    else if (*export_cmd) cmd_export(exp, out);
    else if (*bench_cmd) cmd_bench(bench, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace groupcut::cli
