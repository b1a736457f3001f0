#include "commands.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "groupcut/exact.hpp"
#include "groupcut/formulations.hpp"
#include "groupcut/geo.hpp"
#include "groupcut/heuristic.hpp"

#ifndef GROUPCUT_DEFAULT_DATA
#define GROUPCUT_DEFAULT_DATA "data/us_cities_100.csv"
#endif

namespace groupcut::cli {

namespace {

template <class F>
decltype(auto) with_matrix(const AnyMatrix& m, F&& f) {
  return std::visit(std::forward<F>(f), m);
}

nlohmann::json cost_json(const CostValue& c) {
  return std::visit([](auto v) { return nlohmann::json(v); }, c);
}

CostValue cost_from_json(const nlohmann::json& j) {
  if (j.is_number_integer()) return j.get<std::int64_t>();
  return j.get<double>();
}

std::string cost_text(const CostValue& c) {
  return std::visit([](auto v) { return detail::format_scalar(v); }, c);
}

std::string with_commas(std::int64_t v) {
  std::string s = std::to_string(v < 0 ? -v : v);
  for (int i = static_cast<int>(s.size()) - 3; i > 0; i -= 3) s.insert(static_cast<std::size_t>(i), ",");
  return (v < 0 ? "-" : "") + s;
}

geo::RoundingMode parse_rounding(const std::string& r) {
  if (r == "int") return geo::RoundingMode::NearestInteger;
  if (r == "none") return geo::RoundingMode::NoRounding;
  throw Error("--round must be int or none, got '" + r + "'");
}

geo::WeightingMode parse_weighting(const std::string& w, double scale) {
  if (w == "none") return geo::Unweighted{};
  if (!(scale > 0)) throw Error("--scale must be positive");
  if (w == "product") return geo::ProductOfPopulations{scale};
  if (w == "sum") return geo::SumOfPopulations{scale};
  throw Error("--weight must be none, product or sum, got '" + w + "'");
}

std::string weighting_text(const InstanceOptions& opt) {
  if (!opt.matrix.empty()) return "n/a";
  if (opt.weight == "none") return "none";
  std::ostringstream os;
  os << opt.weight << '*' << detail::format_scalar(opt.scale);
  return os.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot write " + path);
  f << text;
  if (!f) throw Error("failed writing " + path);
}

RunReport base_report(const InstanceOptions& inst, const ModelOptions& mo, const GroupSpec& spec, int n,
                      const std::string& source) {
  RunReport r;
  r.source = source;
  r.n = n;
  r.model = mo.model;
  r.spec = describe(spec);
  r.rounding = inst.matrix.empty() ? inst.round : "n/a";
  r.weighting = weighting_text(inst);
  return r;
}

void print_report(std::ostream& out, const RunReport& r) {
  out << "instance     " << r.source << " (n=" << r.n << ")\n"
      << "model        " << r.model << " " << r.spec << "\n"
      << "method       " << r.method;
  if (r.method == "grasp") out << " restarts=" << r.restarts << " seed=" << r.seed;
  out << "\n"
      << "best cost    " << cost_text(r.best_cost) << "  (ordered pairs: " << cost_text(r.ordered_pair_cost) << ")\n";
  if (r.method == "grasp") out << "times best   " << r.times_best << " / " << r.restarts << "\n";
  if (!r.visited.empty()) out << "visited      " << r.visited << "\n";
  out << "partition    " << r.best_partition << "\n"
      << "optimality   " << r.optimality << "\n"
      << "elapsed      " << std::fixed << std::setprecision(3) << r.elapsed_seconds << " s\n";
  out.unsetf(std::ios::floatfield);
}

}  // namespace

CostValue ordered_pair_total(const CostValue& c) {
  return std::visit([](auto v) -> CostValue { return v * 2; }, c);
}

nlohmann::json RunReport::to_json() const {
  nlohmann::json j;
  j["source"] = source;
  j["n"] = n;
  j["model"] = model;
  j["spec"] = spec;
  j["rounding"] = rounding;
  j["weighting"] = weighting;
  j["method"] = method;
  j["restarts"] = restarts;
  j["seed"] = seed;
  j["best_cost"] = cost_json(best_cost);
  j["ordered_pair_cost"] = cost_json(ordered_pair_cost);
  j["best_partition"] = best_partition;
  j["times_best"] = times_best;
  j["visited"] = visited;
  j["elapsed_seconds"] = elapsed_seconds;
  j["optimality"] = optimality;
  return j;
}

RunReport RunReport::from_json(const nlohmann::json& j) {
  RunReport r;
  r.source = j.at("source").get<std::string>();
  r.n = j.at("n").get<int>();
  r.model = j.at("model").get<std::string>();
  r.spec = j.at("spec").get<std::string>();
  r.rounding = j.at("rounding").get<std::string>();
  r.weighting = j.at("weighting").get<std::string>();
  r.method = j.at("method").get<std::string>();
  r.restarts = j.at("restarts").get<int>();
  r.seed = j.at("seed").get<std::uint64_t>();
  r.best_cost = cost_from_json(j.at("best_cost"));
  r.ordered_pair_cost = cost_from_json(j.at("ordered_pair_cost"));
  r.best_partition = j.at("best_partition").get<std::string>();
  r.times_best = j.at("times_best").get<int>();
  r.visited = j.at("visited").get<std::string>();
  r.elapsed_seconds = j.at("elapsed_seconds").get<double>();
  r.optimality = j.at("optimality").get<std::string>();
  return r;
}

std::string serialize(const RunReport& r, bool with_timing) {
  auto j = r.to_json();
  if (!with_timing) j.erase("elapsed_seconds");
  return j.dump(2) + "\n";
}

std::string default_data_path() {
  if (const char* env = std::getenv("GROUPCUT_DATA"); env && *env) return env;
  return GROUPCUT_DEFAULT_DATA;
}

GroupSpec resolve_spec(const ModelOptions& m, int n) {
  if (m.p && !m.sizes.empty()) throw Error("--p and --sizes are mutually exclusive");
  if (m.model == "A") {
    if (!m.sizes.empty()) return FixedSizes{m.sizes};
    if (m.p) return equal_sizes(n, *m.p);
    throw Error("model A needs --sizes or --p");
  }
  if (m.model == "B") {
    if (!m.sizes.empty()) throw Error("model B takes --p, not --sizes");
    if (!m.p) throw Error("model B needs --p");
    return VariableCount{*m.p};
  }
  throw Error("--model must be A or B, got '" + m.model + "'");
}

AnyMatrix load_instance(const InstanceOptions& opt, std::string* source) {
  if (!opt.matrix.empty()) {
    if (!opt.cities.empty()) throw Error("--matrix and --cities are mutually exclusive");
    std::ifstream f(opt.matrix);
    if (!f) throw Error("cannot open matrix file " + opt.matrix);
    if (source) *source = "matrix:" + opt.matrix;
    auto m = read_matrix(f);
    if (opt.n) {
      const int size = with_matrix(m, [](const auto& mm) { return mm.size(); });
      if (opt.n != size) throw Error("--n " + std::to_string(opt.n) + " does not match matrix size " + std::to_string(size));
    }
    return m;
  }
  const std::string path = opt.cities.empty() ? default_data_path() : opt.cities;
  std::ifstream f(path);
  if (!f) throw Error("cannot open city file " + path);
  auto cities = geo::load_cities(f);
  if (opt.n < 0 || opt.n > static_cast<int>(cities.size()))
    throw Error("--n " + std::to_string(opt.n) + " outside 1.." + std::to_string(cities.size()));
  const std::size_t n = opt.n ? static_cast<std::size_t>(opt.n) : cities.size();
  if (source) *source = "cities:" + path;
  return geo::build_matrix(std::span<const geo::CityRecord>(cities.data(), n), parse_weighting(opt.weight, opt.scale),
                           parse_rounding(opt.round));
}

RunReport cmd_solve(const SolveOptions& opt, std::ostream& out) {
  if (opt.restarts < 1) throw Error("--restarts must be at least 1");
  std::string source;
  const AnyMatrix matrix = load_instance(opt.instance, &source);
  RunReport report = with_matrix(matrix, [&](const auto& m) {
    const GroupSpec spec = resolve_spec(opt.model, m.size());
    require_feasible(spec, m.size());
    GraspConfig cfg;
    cfg.restarts = opt.restarts;
    cfg.base_seed = opt.seed;
    cfg.best_prob = opt.best_prob;
    cfg.model = spec;
    cfg.workers = opt.workers;
    const auto res = multistart(m, cfg);
    RunReport r = base_report(opt.instance, opt.model, spec, m.size(), source);
    r.method = "grasp";
    r.restarts = res.restarts_run;
    r.seed = opt.seed;
    r.best_cost = res.best_cost;
    r.ordered_pair_cost = ordered_pair_total(r.best_cost);
    r.best_partition = to_string(res.best_partition);
    r.times_best = res.times_best;
    r.elapsed_seconds = res.elapsed;
    r.optimality = "heuristic";
    return r;
  });
  print_report(out, report);
  if (!opt.out.empty()) write_text_file(opt.out, serialize(report));
  return report;
}

RunReport cmd_exact(const ExactOptions& opt, std::ostream& out) {
  std::string source;
  const AnyMatrix matrix = load_instance(opt.instance, &source);
  RunReport report = with_matrix(matrix, [&](const auto& m) {
    const GroupSpec spec = resolve_spec(opt.model, m.size());
    const auto start = std::chrono::steady_clock::now();
    const auto res = enumerate(m, spec, opt.max_combinations);
    RunReport r = base_report(opt.instance, opt.model, spec, m.size(), source);
    r.method = "enumeration";
    r.best_cost = res.optimum;
    r.ordered_pair_cost = ordered_pair_total(r.best_cost);
    r.best_partition = to_string(res.argmin);
    r.visited = res.visited.decimal();
    r.elapsed_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    r.optimality = "exact";
    return r;
  });
  print_report(out, report);
  if (!opt.out.empty()) write_text_file(opt.out, serialize(report));
  return report;
}

CountReport cmd_count(const CountOptions& opt, std::ostream& out) {
  if (opt.n < 1) throw Error("--n must be positive");
  const GroupSpec spec = resolve_spec(opt.model, opt.n);
  CountReport r{count_partitions(spec, opt.n), {}, {}};
  r.decimal = r.count.decimal();
  r.scientific = r.count.scientific(3);
  out << "model " << opt.model.model << " n=" << opt.n << " " << describe(spec) << "\n"
      << "partitions  " << r.decimal << "\n"
      << "scientific  " << r.scientific << "\n";
  return r;
}

ExportSummary cmd_export(const ExportOptions& opt, std::ostream& out) {
  std::string source;
  const AnyMatrix matrix = load_instance(opt.instance, &source);
  ExportSummary s = with_matrix(matrix, [&](const auto& m) {
    ExportSummary e;
    e.format = opt.format;
    std::ostringstream doc;
    if (opt.format == "lp") {
      const GroupSpec spec = resolve_spec(opt.model, m.size());
      const auto lp = build_blp(m, spec);
      write_lp(doc, lp, "groupcut model " + opt.model.model + " n=" + std::to_string(m.size()) + " " + describe(spec));
      const auto shape = shape_of(lp);
      e.variables = shape.variables;
      e.constraints = shape.constraints;
    } else if (opt.format == "qaplib") {
      if (opt.model.model != "A")
        throw Error("model B has no quadratic assignment form: group sizes are decision variables");
      std::vector<int> sizes = opt.model.sizes;
      if (sizes.empty()) sizes = std::get<FixedSizes>(resolve_spec(opt.model, m.size())).sizes;
      else if (opt.model.p) throw Error("--p and --sizes are mutually exclusive");
      const auto q = export_qap(m, sizes);
      write_qaplib(doc, q);
      e.variables = q.n;  // permutation length
    } else {
      throw Error("--format must be lp or qaplib, got '" + opt.format + "'");
    }
    e.document = doc.str();
    return e;
  });
  if (opt.out.empty()) {
    out << s.document;
  } else {
    write_text_file(opt.out, s.document);
    if (s.format == "lp")
      out << "wrote " << opt.out << ": " << s.variables << " binary variables, " << s.constraints << " constraints\n";
    else
      out << "wrote " << opt.out << ": QAP of size " << s.variables << "\n";
  }
  return s;
}

const std::vector<PublishedRow>& published_rows(const std::string& suite) {
  // Cities-based rows (n >= 40) of the fixed- and variable-size result tables.
  static const std::vector<PublishedRow> fixed = {
      {40, 2, 501424, "OPT"},    {40, 4, 149708, "OPT"},    {40, 5, 102882, "OPT"},  {40, 8, 44976, "UB"},
      {40, 10, 32782, "UB"},     {40, 20, 7082, "OPT"},     {50, 2, 801378, "OPT"},  {50, 5, 182112, "UB"},
      {50, 10, 53164, "UB"},     {50, 25, 6782, "OPT"},     {100, 2, 3656540, "OPT"}, {100, 4, 1261274, "UB"},
      {100, 5, 921302, "UB"},    {100, 10, 276122, "UB"},   {100, 20, 87510, "UB"},  {100, 25, 61962, "UB"},
      {100, 50, 14114, "OPT"},
  };
  static const std::vector<PublishedRow> variable = {
      {40, 2, 499930, "OPT"},   {40, 4, 143408, "OPT"},   {40, 5, 89530, "UB"},  {40, 8, 38576, "UB"},
      {40, 10, 25042, "UB"},    {50, 2, 797668, "OPT"},   {50, 5, 165234, "UB"}, {50, 10, 44602, "UB"},
      {100, 2, 3645284, "UB"},  {100, 4, 1244694, "UB"},  {100, 5, 850330, "UB"}, {100, 10, 233958, "UB"},
  };
  if (suite == "fixed") return fixed;
  if (suite == "variable") return variable;
  throw Error("--suite must be fixed or variable, got '" + suite + "'");
}

std::vector<BenchRow> cmd_bench(const BenchOptions& opt, std::ostream& out) {
  if (opt.restarts < 1) throw Error("--restarts must be at least 1");
  const auto& table = published_rows(opt.suite);
  std::vector<PublishedRow> selected;
  if (opt.rows.empty()) {
    selected = table;
  } else {
    std::istringstream rs(opt.rows);
    std::string item;
    while (std::getline(rs, item, ',')) {
      int n = 0, p = 0;
      char colon = 0;
      std::istringstream is(item);
      if (!(is >> n >> colon >> p) || colon != ':') throw Error("--rows entries look like 40:2, got '" + item + "'");
      const auto it = std::find_if(table.begin(), table.end(), [&](const PublishedRow& r) { return r.n == n && r.p == p; });
      if (it == table.end()) throw Error("no published " + opt.suite + " row for n=" + item);
      selected.push_back(*it);
    }
  }

  out << "suite " << opt.suite << ", " << opt.restarts << " restarts, seed " << opt.seed
      << " (rows with n <= 30 use data not distributed with the tables and are not run)\n";
  out << std::setw(5) << "n" << std::setw(5) << "p" << std::setw(12) << "best" << std::setw(12) << "reported"
      << std::setw(12) << "published" << std::setw(7) << "cplex" << std::setw(8) << "times" << std::setw(10) << "time[s]"
      << "  verdict\n";

  std::vector<BenchRow> rows;
  nlohmann::json doc = nlohmann::json::array();
  for (const auto& pub : selected) {
    SolveOptions so;
    so.instance = opt.instance;
    so.instance.matrix.clear();
    so.instance.n = pub.n;
    so.instance.round = "int";
    so.instance.weight = "none";
    so.model.model = opt.suite == "fixed" ? "A" : "B";
    so.model.p = pub.p;
    so.restarts = opt.restarts;
    so.seed = opt.seed;
    so.workers = opt.workers;
    std::ostringstream sink;
    BenchRow row{pub, cmd_solve(so, sink), {}};
    const auto reported = std::get<std::int64_t>(row.report.ordered_pair_cost);
    row.verdict = reported == pub.best ? "match" : (reported < pub.best ? "improved" : "miss");
    out << std::setw(5) << pub.n << std::setw(5) << pub.p << std::setw(12)
        << with_commas(std::get<std::int64_t>(row.report.best_cost)) << std::setw(12) << with_commas(reported)
        << std::setw(12) << with_commas(pub.best) << std::setw(7) << pub.status << std::setw(8) << row.report.times_best
        << std::setw(10) << std::fixed << std::setprecision(2) << row.report.elapsed_seconds << "  " << row.verdict
        << "\n";
    out.unsetf(std::ios::floatfield);
    auto j = row.report.to_json();
    j["published"] = pub.best;
    j["published_status"] = pub.status;
    j["verdict"] = row.verdict;
    doc.push_back(std::move(j));
    rows.push_back(std::move(row));
  }
  if (!opt.out.empty()) write_text_file(opt.out, doc.dump(2) + "\n");
  return rows;
}

}  // namespace groupcut::cli
