#pragma once

// Binary linear programs for both models, the block-diagonal QAP encoding
// of the fixed-size model, and a solver-free witness checker.
//
// Variable names are 1-based: x_i_k (item i in group k), y_i_j for i < j
// (items i and j share a group), u_s_k (group k has exactly s items).

#include <algorithm>
#include <cctype>
#include <istream>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "groupcut/core.hpp"

namespace groupcut {

enum class Sense { LessEqual, GreaterEqual, Equal };

template <DistanceScalar T>
struct Term {
  std::string var;
  T coef{};
  friend bool operator==(const Term&, const Term&) = default;
};

template <DistanceScalar T>
struct Constraint {
  std::string name;
  std::vector<Term<T>> terms;
  Sense sense = Sense::Equal;
  T rhs{};
  friend bool operator==(const Constraint&, const Constraint&) = default;
};

/// Minimization model with all variables binary.
template <DistanceScalar T>
struct LinearModel {
  std::vector<Term<T>> objective;
  std::vector<Constraint<T>> constraints;
  std::vector<std::string> binaries;
  friend bool operator==(const LinearModel&, const LinearModel&) = default;
};

inline std::string x_name(int i, int k) { return "x_" + std::to_string(i + 1) + "_" + std::to_string(k + 1); }
inline std::string y_name(int i, int j) { return "y_" + std::to_string(i + 1) + "_" + std::to_string(j + 1); }
inline std::string u_name(int s, int k) { return "u_" + std::to_string(s) + "_" + std::to_string(k + 1); }

namespace detail {

/// Big-M linking rows for every pair i < j, with M = p:
///   sum_k k x_ik - sum_k k x_jk - M y_ij >= -M
///   sum_k k x_ik - sum_k k x_jk + M y_ij <=  M
template <DistanceScalar T>
void add_linking_rows(LinearModel<T>& lp, int n, int p) {
  const T big_m = static_cast<T>(p);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      std::vector<Term<T>> center;
      center.reserve(static_cast<std::size_t>(2 * p + 1));
      for (int k = 0; k < p; ++k) center.push_back({x_name(i, k), static_cast<T>(k + 1)});
      for (int k = 0; k < p; ++k) center.push_back({x_name(j, k), static_cast<T>(-(k + 1))});
      auto lo = center;
      lo.push_back({y_name(i, j), -big_m});
      center.push_back({y_name(i, j), big_m});
      const std::string suffix = std::to_string(i + 1) + "_" + std::to_string(j + 1);
      lp.constraints.push_back({"link_lo_" + suffix, std::move(lo), Sense::GreaterEqual, -big_m});
      lp.constraints.push_back({"link_hi_" + suffix, std::move(center), Sense::LessEqual, big_m});
    }
}

template <DistanceScalar T>
void add_assignment_rows(LinearModel<T>& lp, int n, int p) {
  for (int i = 0; i < n; ++i) {
    Constraint<T> row{"assign_" + std::to_string(i + 1), {}, Sense::Equal, T{1}};
    for (int k = 0; k < p; ++k) row.terms.push_back({x_name(i, k), T{1}});
    lp.constraints.push_back(std::move(row));
  }
}

template <DistanceScalar T>
std::vector<Term<T>> all_y(int n, T coef) {
  std::vector<Term<T>> out;
  out.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(n - 1) / 2);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) out.push_back({y_name(i, j), coef});
  return out;
}

inline void declare_xy(std::vector<std::string>& binaries, int n, int p) {
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < p; ++k) binaries.push_back(x_name(i, k));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) binaries.push_back(y_name(i, j));
}

}  // namespace detail

/// Reduced fixed-size model: min 2 sum_{i<j} d_ij y_ij with linking rows,
/// sum y = sum_k n_k (n_k - 1) / 2, one group per item, and group sizes.
template <DistanceScalar T>
[[nodiscard]] LinearModel<T> build_blp_fixed(const DistanceMatrix<T>& m, const std::vector<int>& sizes) {
  const int n = m.size();
  require_feasible(FixedSizes{sizes}, n);
  const int p = static_cast<int>(sizes.size());
  LinearModel<T> lp;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) lp.objective.push_back({y_name(i, j), 2 * m(i, j)});
  detail::add_linking_rows(lp, n, p);
  long long pairs = 0;
  for (int s : sizes) pairs += static_cast<long long>(s) * (s - 1) / 2;
  lp.constraints.push_back({"pairs", detail::all_y(n, T{1}), Sense::Equal, static_cast<T>(pairs)});
  detail::add_assignment_rows(lp, n, p);
  for (int k = 0; k < p; ++k) {
    Constraint<T> row{"size_" + std::to_string(k + 1), {}, Sense::Equal, static_cast<T>(sizes[static_cast<std::size_t>(k)])};
    for (int i = 0; i < n; ++i) row.terms.push_back({x_name(i, k), T{1}});
    lp.constraints.push_back(std::move(row));
  }
  detail::declare_xy(lp.binaries, n, p);
  return lp;
}

/// Variable-size model: group sizes are encoded by u_s_k for s = 1..n-p+1,
/// and n + 2 sum y = sum_s s^2 sum_k u_s_k ties the pair count to them.
template <DistanceScalar T>
[[nodiscard]] LinearModel<T> build_blp_variable(const DistanceMatrix<T>& m, int p) {
  const int n = m.size();
  require_feasible(VariableCount{p}, n);
  const int max_size = n - p + 1;
  LinearModel<T> lp;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) lp.objective.push_back({y_name(i, j), m(i, j)});
  detail::add_linking_rows(lp, n, p);

  Constraint<T> couple{"pairs", detail::all_y(n, T{2}), Sense::Equal, static_cast<T>(-n)};
  for (int s = 1; s <= max_size; ++s)
    for (int k = 0; k < p; ++k) couple.terms.push_back({u_name(s, k), static_cast<T>(-static_cast<long long>(s) * s)});
  lp.constraints.push_back(std::move(couple));

  detail::add_assignment_rows(lp, n, p);
  for (int k = 0; k < p; ++k) {
    Constraint<T> row{"size_" + std::to_string(k + 1), {}, Sense::Equal, T{0}};
    for (int i = 0; i < n; ++i) row.terms.push_back({x_name(i, k), T{1}});
    for (int s = 1; s <= max_size; ++s) row.terms.push_back({u_name(s, k), static_cast<T>(-s)});
    lp.constraints.push_back(std::move(row));
  }
  for (int k = 0; k < p; ++k) {
    Constraint<T> row{"one_size_" + std::to_string(k + 1), {}, Sense::Equal, T{1}};
    for (int s = 1; s <= max_size; ++s) row.terms.push_back({u_name(s, k), T{1}});
    lp.constraints.push_back(std::move(row));
  }
  detail::declare_xy(lp.binaries, n, p);
  for (int s = 1; s <= max_size; ++s)
    for (int k = 0; k < p; ++k) lp.binaries.push_back(u_name(s, k));
  return lp;
}

template <DistanceScalar T>
[[nodiscard]] LinearModel<T> build_blp(const DistanceMatrix<T>& m, const GroupSpec& spec) {
  if (const auto* f = std::get_if<FixedSizes>(&spec)) return build_blp_fixed(m, f->sizes);
  return build_blp_variable(m, std::get<VariableCount>(spec).p);
}

/// Closed-form sizes of the emitted models.
struct ModelShape {
  long long variables = 0;
  long long constraints = 0;
  friend bool operator==(const ModelShape&, const ModelShape&) = default;
};

[[nodiscard]] inline ModelShape expected_shape(const GroupSpec& spec, int n) {
  const long long nn = n;
  const long long p = group_count(spec);
  const long long pairs = nn * (nn - 1) / 2;
  if (is_fixed(spec)) return {nn * p + pairs, 2 * pairs + 1 + nn + p};
  return {nn * p + pairs + (nn - p + 1) * p, 2 * pairs + 1 + nn + 2 * p};
}

template <DistanceScalar T>
[[nodiscard]] ModelShape shape_of(const LinearModel<T>& lp) {
  return {static_cast<long long>(lp.binaries.size()), static_cast<long long>(lp.constraints.size())};
}

// ---------------------------------------------------------------------------
// LP file text

namespace detail {

template <DistanceScalar T>
void write_terms(std::ostream& out, const std::vector<Term<T>>& terms) {
  constexpr std::size_t kTermsPerLine = 8;
  for (std::size_t t = 0; t < terms.size(); ++t) {
    if (t && t % kTermsPerLine == 0) out << "\n   ";
    const T c = terms[t].coef;
    if (t == 0) out << (c < T{0} ? "- " : "");
    else out << (c < T{0} ? " - " : " + ");
    out << format_scalar(c < T{0} ? -c : c) << ' ' << terms[t].var;
  }
  if (terms.empty()) out << "0";
}

inline const char* sense_token(Sense s) {
  switch (s) {
    case Sense::LessEqual: return "<=";
    case Sense::GreaterEqual: return ">=";
    case Sense::Equal: return "=";
  }
  return "=";
}

template <DistanceScalar T>
bool parse_scalar(const std::string& tok, T& out) {
  if constexpr (std::is_same_v<T, double>) {
    return parse_double(tok, out);
  } else {
    long long v = 0;
    if (!parse_int(tok, v)) return false;
    out = v;
    return true;
  }
}

inline std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

}  // namespace detail

template <DistanceScalar T>
void write_lp(std::ostream& out, const LinearModel<T>& lp, const std::string& comment = {}) {
  if (!comment.empty()) out << "\\ " << comment << '\n';
  out << "Minimize\n obj: ";
  detail::write_terms(out, lp.objective);
  out << "\nSubject To\n";
  for (const auto& row : lp.constraints) {
    out << ' ' << row.name << ": ";
    detail::write_terms(out, row.terms);
    out << ' ' << detail::sense_token(row.sense) << ' ' << detail::format_scalar(row.rhs) << '\n';
  }
  out << "Binaries\n";
  for (std::size_t v = 0; v < lp.binaries.size(); ++v) {
    out << (v % 10 == 0 ? (v ? "\n " : " ") : " ") << lp.binaries[v];
  }
  out << "\nEnd\n";
}

template <DistanceScalar T>
[[nodiscard]] std::string to_lp_string(const LinearModel<T>& lp, const std::string& comment = {}) {
  std::ostringstream os;
  write_lp(os, lp, comment);
  return os.str();
}

/// Reads the subset of LP syntax produced by write_lp: whitespace-separated
/// tokens, `\` comments, Minimize / Subject To / Binaries / End sections.
template <DistanceScalar T>
[[nodiscard]] LinearModel<T> parse_lp(std::istream& in) {
  std::vector<std::string> toks;
  std::string line;
  while (std::getline(in, line)) {
    if (const auto c = line.find('\\'); c != std::string::npos) line.erase(c);
    std::istringstream ls(line);
    std::string t;
    while (ls >> t) toks.push_back(t);
  }
  LinearModel<T> lp;
  enum class Section { None, Objective, Rows, Binaries, Done } section = Section::None;
  std::size_t pos = 0;
  auto fail = [&](const std::string& why) -> Error {
    return Error("lp parse: " + why + (pos < toks.size() ? " near '" + toks[pos] + "'" : " at end of input"));
  };

  auto is_terminator = [](const std::string& t) {
    const std::string lt = detail::lower(t);
    return t == "<=" || t == ">=" || t == "=" || t == "=<" || t == "=>" || t == "<" || t == ">" ||
           lt == "subject" || lt == "st" || lt == "s.t." || lt == "binaries" || lt == "binary" || lt == "end" ||
           t.back() == ':';
  };

  // Parses `[+|-] [coef] var ...` until a sense token or a section keyword.
  // A lone `0` stands for the empty expression.
  auto parse_terms = [&](std::vector<Term<T>>& terms) {
    while (pos < toks.size() && !is_terminator(toks[pos])) {
      T sign{1};
      if (toks[pos] == "+" || toks[pos] == "-") {
        if (toks[pos] == "-") sign = T{-1};
        ++pos;
      } else if (!terms.empty()) {
        throw fail("expected + or -");
      }
      if (pos >= toks.size() || is_terminator(toks[pos])) throw fail("dangling sign");
      T coef{1};
      if (detail::parse_scalar<T>(toks[pos], coef)) {
        ++pos;
        if (pos >= toks.size() || is_terminator(toks[pos])) {
          if (terms.empty() && coef == T{0}) return;
          throw fail("coefficient without variable");
        }
      }
      terms.push_back({toks[pos], sign * coef});
      ++pos;
    }
  };

  while (pos < toks.size() && section != Section::Done) {
    const std::string lt = detail::lower(toks[pos]);
    if (lt == "minimize" || lt == "minimise" || lt == "min") {
      section = Section::Objective;
      ++pos;
      if (pos < toks.size() && toks[pos].back() == ':') ++pos;
      parse_terms(lp.objective);
    } else if (lt == "subject" && pos + 1 < toks.size() && detail::lower(toks[pos + 1]) == "to") {
      section = Section::Rows;
      pos += 2;
    } else if (lt == "st" || lt == "s.t.") {
      section = Section::Rows;
      ++pos;
    } else if (lt == "binaries" || lt == "binary") {
      section = Section::Binaries;
      ++pos;
    } else if (lt == "end") {
      section = Section::Done;
      ++pos;
    } else if (section == Section::Rows) {
      Constraint<T> row;
      if (toks[pos].back() != ':') throw fail("constraint without a name");
      row.name = toks[pos].substr(0, toks[pos].size() - 1);
      ++pos;
      parse_terms(row.terms);
      if (pos >= toks.size()) throw fail("missing sense");
      const std::string s = toks[pos++];
      if (s == "<=" || s == "=<" || s == "<") row.sense = Sense::LessEqual;
      else if (s == ">=" || s == "=>" || s == ">") row.sense = Sense::GreaterEqual;
      else if (s == "=") row.sense = Sense::Equal;
      else throw fail("bad sense");
      if (pos >= toks.size()) throw fail("missing right-hand side");
      T sign{1};
      if (toks[pos] == "-" || toks[pos] == "+") {
        if (toks[pos] == "-") sign = T{-1};
        ++pos;
      }
      if (pos >= toks.size() || !detail::parse_scalar<T>(toks[pos], row.rhs)) throw fail("bad right-hand side");
      row.rhs *= sign;
      ++pos;
      lp.constraints.push_back(std::move(row));
    } else if (section == Section::Binaries) {
      lp.binaries.push_back(toks[pos++]);
    } else {
      throw fail("unexpected token");
    }
  }
  if (section != Section::Done) throw fail("missing End");
  return lp;
}

// ---------------------------------------------------------------------------
// Witnesses

/// Values of the formulation variables induced by a partition.
struct FormulationWitness {
  int n = 0;
  int p = 0;
  bool variable_sizes = false;
  std::vector<int> x;  // n * p, row-major by item
  std::vector<int> y;  // n * n; only entries with j > i are meaningful
  std::vector<int> u;  // (n - p + 1) * p, row s-1 holds u_s_k; empty for fixed sizes
  int big_m = 0;

  int& X(int i, int k) { return x[static_cast<std::size_t>(i * p + k)]; }
  int& Y(int i, int j) { return y[static_cast<std::size_t>(i * n + j)]; }
  int& U(int s, int k) { return u[static_cast<std::size_t>((s - 1) * p + k)]; }
  [[nodiscard]] int X(int i, int k) const { return x[static_cast<std::size_t>(i * p + k)]; }
  [[nodiscard]] int Y(int i, int j) const { return y[static_cast<std::size_t>(i * n + j)]; }
  [[nodiscard]] int U(int s, int k) const { return u[static_cast<std::size_t>((s - 1) * p + k)]; }
};

[[nodiscard]] inline FormulationWitness witness_from_partition(const Partition& part, const GroupSpec& spec) {
  const int n = part.size();
  if (const auto v = validate(part, spec, n); !v.empty()) throw Error("witness: " + v.front().message);
  FormulationWitness w;
  w.n = n;
  w.p = group_count(spec);
  w.variable_sizes = !is_fixed(spec);
  w.big_m = w.p;
  w.x.assign(static_cast<std::size_t>(n * w.p), 0);
  w.y.assign(static_cast<std::size_t>(n * n), 0);
  for (int i = 0; i < n; ++i) w.X(i, part.assign[static_cast<std::size_t>(i)]) = 1;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      w.Y(i, j) = part.assign[static_cast<std::size_t>(i)] == part.assign[static_cast<std::size_t>(j)] ? 1 : 0;
  if (w.variable_sizes) {
    w.u.assign(static_cast<std::size_t>((n - w.p + 1) * w.p), 0);
    const auto sizes = part.group_sizes();
    for (int k = 0; k < w.p; ++k) w.U(sizes[static_cast<std::size_t>(k)], k) = 1;
  }
  return w;
}

template <DistanceScalar T>
struct ConstraintViolation {
  std::string name;
  T slack{};  // signed amount by which the row is missed
};

template <DistanceScalar T>
struct WitnessCheck {
  bool feasible = false;
  std::vector<ConstraintViolation<T>> violations;
  T lp_objective{};
};

/// Evaluates every row of `lp` at the given variable values.
template <DistanceScalar T>
[[nodiscard]] WitnessCheck<T> evaluate(const LinearModel<T>& lp, const std::unordered_map<std::string, int>& values) {
  auto value_of = [&](const std::string& var) -> T {
    const auto it = values.find(var);
    if (it == values.end()) throw Error("no value for variable " + var);
    return static_cast<T>(it->second);
  };
  WitnessCheck<T> out;
  for (const auto& t : lp.objective) out.lp_objective += t.coef * value_of(t.var);
  for (const auto& row : lp.constraints) {
    T lhs{0};
    for (const auto& t : row.terms) lhs += t.coef * value_of(t.var);
    bool ok = true;
    T slack{0};
    switch (row.sense) {
      case Sense::LessEqual: ok = lhs <= row.rhs; slack = row.rhs - lhs; break;
      case Sense::GreaterEqual: ok = lhs >= row.rhs; slack = lhs - row.rhs; break;
      case Sense::Equal: ok = lhs == row.rhs; slack = row.rhs - lhs; break;
    }
    if (!ok) out.violations.push_back({row.name, slack});
  }
  for (const auto& var : lp.binaries) {
    const T v = value_of(var);
    if (v != T{0} && v != T{1}) out.violations.push_back({"binary_" + var, v});
  }
  out.feasible = out.violations.empty();
  return out;
}

/// Checks a witness against the model's own formulation. The objective
/// follows that formulation: twice the partition objective for fixed sizes,
/// once for variable sizes.
template <DistanceScalar T>
[[nodiscard]] WitnessCheck<T> check_witness(const FormulationWitness& w, const DistanceMatrix<T>& m,
                                            const GroupSpec& spec) {
  const int n = m.size();
  const int p = group_count(spec);
  if (w.n != n || w.p != p || w.x.size() != static_cast<std::size_t>(n * p) ||
      w.y.size() != static_cast<std::size_t>(n * n))
    throw Error("witness dimensions do not match the instance");
  const bool variable = !is_fixed(spec);
  if (variable && w.u.size() != static_cast<std::size_t>((n - p + 1) * p))
    throw Error("witness U block has wrong dimensions");

  std::unordered_map<std::string, int> values;
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < p; ++k) values[x_name(i, k)] = w.X(i, k);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) values[y_name(i, j)] = w.Y(i, j);
  if (variable)
    for (int s = 1; s <= n - p + 1; ++s)
      for (int k = 0; k < p; ++k) values[u_name(s, k)] = w.U(s, k);

  auto out = evaluate(build_blp(m, spec), values);
  if (w.big_m != p) out.violations.push_back({"big_m", static_cast<T>(p - w.big_m)});
  out.feasible = out.violations.empty();
  return out;
}

// ---------------------------------------------------------------------------
// Quadratic assignment encoding

/// Facility i goes to site perm[i]. Flow matrix C has all-ones diagonal
/// blocks of the group sizes; facilities past the last block are unused.
template <DistanceScalar T>
struct QapInstance {
  int n = 0;
  std::vector<int> sizes;
  std::vector<int> c;  // n * n, 0/1
  DistanceMatrix<T> d;

  [[nodiscard]] int flow(int i, int j) const { return c[static_cast<std::size_t>(i * n + j)]; }
};

template <DistanceScalar T>
[[nodiscard]] QapInstance<T> export_qap(const DistanceMatrix<T>& m, const std::vector<int>& sizes) {
  const int n = m.size();
  long long total = 0;
  for (int s : sizes) {
    if (s < 1) throw Error("group sizes must be positive");
    total += s;
  }
  if (sizes.empty()) throw Error("qap export needs at least one group");
  if (total > n) throw Error("group sizes sum to " + std::to_string(total) + ", more than " + std::to_string(n) + " items");
  QapInstance<T> q{n, sizes, std::vector<int>(static_cast<std::size_t>(n * n), 0), m};
  int start = 0;
  for (int s : sizes) {
    for (int i = start; i < start + s; ++i)
      for (int j = start; j < start + s; ++j) q.c[static_cast<std::size_t>(i * n + j)] = 1;
    start += s;
  }
  return q;
}

template <DistanceScalar T>
[[nodiscard]] T qap_cost(const QapInstance<T>& q, std::span<const int> perm) {
  if (static_cast<int>(perm.size()) != q.n) throw Error("permutation length mismatch");
  T total{0};
  for (int i = 0; i < q.n; ++i)
    for (int j = 0; j < q.n; ++j)
      if (q.flow(i, j)) total += q.d(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]);
  return total;
}

/// Group label of every site under `perm`, or -1 for sites holding an
/// unused facility.
[[nodiscard]] inline std::vector<Label> induced_labels(const std::vector<int>& sizes, std::span<const int> perm) {
  std::vector<Label> labels(perm.size(), -1);
  std::size_t facility = 0;
  for (std::size_t g = 0; g < sizes.size(); ++g)
    for (int s = 0; s < sizes[g]; ++s, ++facility) labels[static_cast<std::size_t>(perm[facility])] = static_cast<Label>(g);
  return labels;
}

/// QAPLIB layout: n, blank line, flow rows, blank line, distance rows.
template <DistanceScalar T>
void write_qaplib(std::ostream& out, const QapInstance<T>& q) {
  out << q.n << "\n\n";
  for (int i = 0; i < q.n; ++i) {
    for (int j = 0; j < q.n; ++j) out << (j ? " " : "") << q.flow(i, j);
    out << '\n';
  }
  out << '\n';
  for (int i = 0; i < q.n; ++i) {
    for (int j = 0; j < q.n; ++j) out << (j ? " " : "") << detail::format_scalar(q.d(i, j));
    out << '\n';
  }
}

/// Reads a QAPLIB file whose flow matrix is block-diagonal 0/1 and recovers
/// the group sizes from it.
template <DistanceScalar T>
[[nodiscard]] QapInstance<T> read_qaplib(std::istream& in) {
  long long n = 0;
  std::string tok;
  if (!(in >> tok) || !detail::parse_int(tok, n) || n < 1) throw Error("qaplib: bad size");
  const auto nn = static_cast<std::size_t>(n * n);
  std::vector<int> c(nn);
  for (auto& v : c) {
    long long x = 0;
    if (!(in >> tok) || !detail::parse_int(tok, x) || (x != 0 && x != 1)) throw Error("qaplib: flow entries must be 0 or 1");
    v = static_cast<int>(x);
  }
  std::vector<T> d(nn);
  for (auto& v : d)
    if (!(in >> tok) || !detail::parse_scalar<T>(tok, v)) throw Error("qaplib: bad distance entry");
  const int size = static_cast<int>(n);
  std::vector<int> sizes;
  int start = 0;
  while (start < size && c[static_cast<std::size_t>(start * size + start)] == 1) {
    int end = start;
    while (end < size && c[static_cast<std::size_t>(start * size + end)] == 1) ++end;
    sizes.push_back(end - start);
    start = end;
  }
  QapInstance<T> q = export_qap(DistanceMatrix<T>(size, std::move(d)), sizes);
  if (q.c != c) throw Error("qaplib: flow matrix is not block-diagonal");
  return q;
}

}  // namespace groupcut
