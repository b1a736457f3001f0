#pragma once

// Instances, partitions and the intra-group distance objective.

#include <algorithm>
#include <charconv>
#include <cmath>
#include <concepts>
#include <cstdint>
#include <istream>
#include <numeric>
#include <ostream>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

namespace groupcut {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Item = int;
using Label = int;

/// Scalar types a distance matrix may hold. Integral costs keep every
/// equality test exact; floating costs are compared with a small tolerance
/// where termination depends on strict improvement.
template <class T>
concept DistanceScalar = std::same_as<T, std::int64_t> || std::same_as<T, double>;

/// Symmetric, nonnegative, zero-diagonal n x n cost table.
template <DistanceScalar T>
class DistanceMatrix {
 public:
  using value_type = T;

  DistanceMatrix() = default;

  /// Takes ownership of a row-major table and checks the metric-table
  /// invariants (not the triangle inequality).
  DistanceMatrix(int n, std::vector<T> entries) : n_(n), d_(std::move(entries)) {
    if (n_ < 1) throw Error("distance matrix needs at least one item");
    if (d_.size() != static_cast<std::size_t>(n_) * static_cast<std::size_t>(n_))
      throw Error("distance matrix has " + std::to_string(d_.size()) + " entries, expected " +
                  std::to_string(n_ * n_));
    for (int i = 0; i < n_; ++i) {
      if ((*this)(i, i) != T{0})
        throw Error("nonzero diagonal entry at item " + std::to_string(i));
      for (int j = 0; j < n_; ++j) {
        const T v = (*this)(i, j);
        if constexpr (std::is_floating_point_v<T>) {
          if (!std::isfinite(v))
            throw Error("non-finite distance at (" + std::to_string(i) + "," + std::to_string(j) + ")");
        }
        if (v < T{0})
          throw Error("negative distance at (" + std::to_string(i) + "," + std::to_string(j) + ")");
        if (v != (*this)(j, i))
          throw Error("asymmetric distance at (" + std::to_string(i) + "," + std::to_string(j) + ")");
      }
    }
  }

  [[nodiscard]] int size() const noexcept { return n_; }
  [[nodiscard]] T operator()(Item i, Item j) const noexcept {
    return d_[static_cast<std::size_t>(i) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(j)];
  }
  [[nodiscard]] std::span<const T> row(Item i) const noexcept {
    return {d_.data() + static_cast<std::size_t>(i) * static_cast<std::size_t>(n_),
            static_cast<std::size_t>(n_)};
  }
  [[nodiscard]] const std::vector<T>& entries() const noexcept { return d_; }

  [[nodiscard]] T max_entry() const noexcept {
    return d_.empty() ? T{0} : *std::max_element(d_.begin(), d_.end());
  }

  friend bool operator==(const DistanceMatrix&, const DistanceMatrix&) = default;

 private:
  int n_ = 0;
  std::vector<T> d_;
};

using IntMatrix = DistanceMatrix<std::int64_t>;
using RealMatrix = DistanceMatrix<double>;
using AnyMatrix = std::variant<IntMatrix, RealMatrix>;

// ---------------------------------------------------------------------------
// Group specifications

/// Model A: prescribed group sizes, in order.
struct FixedSizes {
  std::vector<int> sizes;
  friend bool operator==(const FixedSizes&, const FixedSizes&) = default;
};

/// Model B: exactly p non-empty groups of any size.
struct VariableCount {
  int p = 1;
  friend bool operator==(const VariableCount&, const VariableCount&) = default;
};

using GroupSpec = std::variant<FixedSizes, VariableCount>;

[[nodiscard]] inline bool is_fixed(const GroupSpec& spec) noexcept {
  return std::holds_alternative<FixedSizes>(spec);
}

[[nodiscard]] inline int group_count(const GroupSpec& spec) noexcept {
  if (const auto* f = std::get_if<FixedSizes>(&spec)) return static_cast<int>(f->sizes.size());
  return std::get<VariableCount>(spec).p;
}

/// p groups of n/p items each; throws when p does not divide n.
[[nodiscard]] inline FixedSizes equal_sizes(int n, int p) {
  if (p < 1 || n % p != 0)
    throw Error(std::to_string(p) + " equal groups cannot hold " + std::to_string(n) + " items");
  return FixedSizes{std::vector<int>(static_cast<std::size_t>(p), n / p)};
}

/// Throws unless `spec` can be satisfied by a partition of n items.
inline void require_feasible(const GroupSpec& spec, int n) {
  if (const auto* f = std::get_if<FixedSizes>(&spec)) {
    if (f->sizes.empty()) throw Error("fixed sizes list is empty");
    long long total = 0;
    for (int s : f->sizes) {
      if (s < 1) throw Error("group sizes must be positive");
      total += s;
    }
    if (total != n)
      throw Error("group sizes sum to " + std::to_string(total) + " but the instance has " +
                  std::to_string(n) + " items");
  } else {
    const int p = std::get<VariableCount>(spec).p;
    if (p < 1 || p > n)
      throw Error("group count " + std::to_string(p) + " outside 1.." + std::to_string(n));
  }
}

[[nodiscard]] inline std::string describe(const GroupSpec& spec) {
  std::string out;
  if (const auto* f = std::get_if<FixedSizes>(&spec)) {
    out = "sizes=";
    for (std::size_t k = 0; k < f->sizes.size(); ++k) {
      if (k) out += ',';
      out += std::to_string(f->sizes[k]);
    }
  } else {
    out = "p=" + std::to_string(std::get<VariableCount>(spec).p);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Partitions

struct Partition {
  std::vector<Label> assign;
  int groups = 0;

  [[nodiscard]] int size() const noexcept { return static_cast<int>(assign.size()); }

  [[nodiscard]] std::vector<int> group_sizes() const {
    std::vector<int> sizes(static_cast<std::size_t>(groups), 0);
    for (Label g : assign) ++sizes[static_cast<std::size_t>(g)];
    return sizes;
  }

  [[nodiscard]] std::vector<Item> members(Label g) const {
    std::vector<Item> out;
    for (Item i = 0; i < size(); ++i)
      if (assign[static_cast<std::size_t>(i)] == g) out.push_back(i);
    return out;
  }

  friend bool operator==(const Partition&, const Partition&) = default;
  friend auto operator<=>(const Partition&, const Partition&) = default;
};

/// Relabels groups in order of first occurrence, producing a
/// restricted-growth string. Unused labels are dropped from `groups`
/// only if they never occur; the count is kept otherwise.
[[nodiscard]] inline Partition canonicalize(const Partition& part) {
  std::vector<Label> remap(static_cast<std::size_t>(std::max(part.groups, 0)), -1);
  Partition out;
  out.assign.reserve(part.assign.size());
  Label next = 0;
  for (Label g : part.assign) {
    if (g < 0 || g >= part.groups) throw Error("label " + std::to_string(g) + " out of range");
    auto& r = remap[static_cast<std::size_t>(g)];
    if (r < 0) r = next++;
    out.assign.push_back(r);
  }
  out.groups = std::max(next, part.groups);
  return out;
}

[[nodiscard]] inline bool is_canonical(const Partition& part) noexcept {
  Label next = 0;
  for (Label g : part.assign) {
    if (g > next || g < 0) return false;
    if (g == next) ++next;
  }
  return true;
}

enum class ViolationKind { LengthMismatch, LabelOutOfRange, EmptyGroup, SizeMismatch };

struct Violation {
  ViolationKind kind;
  int index;  // item for LabelOutOfRange, group otherwise
  std::string message;
};

/// Checks `part` against `spec` for n items; an empty result means valid.
[[nodiscard]] inline std::vector<Violation> validate(const Partition& part, const GroupSpec& spec, int n) {
  std::vector<Violation> out;
  const int p = group_count(spec);
  if (part.size() != n)
    out.push_back({ViolationKind::LengthMismatch, -1,
                   "partition has " + std::to_string(part.size()) + " labels for " + std::to_string(n) + " items"});
  std::vector<int> counts(static_cast<std::size_t>(std::max(p, 0)), 0);
  for (Item i = 0; i < part.size(); ++i) {
    const Label g = part.assign[static_cast<std::size_t>(i)];
    if (g < 0 || g >= p) {
      out.push_back({ViolationKind::LabelOutOfRange, i,
                     "item " + std::to_string(i) + " has label " + std::to_string(g) + " outside 0.." +
                         std::to_string(p - 1)});
      continue;
    }
    ++counts[static_cast<std::size_t>(g)];
  }
  const auto* fixed = std::get_if<FixedSizes>(&spec);
  for (int k = 0; k < p; ++k) {
    const int have = counts[static_cast<std::size_t>(k)];
    if (fixed) {
      const int want = fixed->sizes[static_cast<std::size_t>(k)];
      if (have != want)
        out.push_back({ViolationKind::SizeMismatch, k,
                       "group " + std::to_string(k) + " has " + std::to_string(have) + " items, expected " +
                           std::to_string(want)});
    } else if (have == 0) {
      out.push_back({ViolationKind::EmptyGroup, k, "group " + std::to_string(k) + " is empty"});
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Objective and incremental deltas

/// Sum of d[i][j] over unordered pairs {i, j} sharing a group.
template <DistanceScalar T>
[[nodiscard]] T objective(const DistanceMatrix<T>& m, const Partition& part) {
  if (part.size() != m.size())
    throw Error("partition length " + std::to_string(part.size()) + " does not match matrix size " +
                std::to_string(m.size()));
  T total{0};
  for (Item i = 0; i < m.size(); ++i) {
    const Label gi = part.assign[static_cast<std::size_t>(i)];
    const auto row = m.row(i);
    for (Item j = i + 1; j < m.size(); ++j)
      if (part.assign[static_cast<std::size_t>(j)] == gi) total += row[static_cast<std::size_t>(j)];
  }
  return total;
}

/// Objective increase when `item` joins a group holding `members`.
template <DistanceScalar T>
[[nodiscard]] T add_cost(const DistanceMatrix<T>& m, std::span<const Item> members, Item item) {
  T total{0};
  const auto row = m.row(item);
  for (Item j : members) {
    if (j == item) throw Error("item " + std::to_string(item) + " is already in the group");
    total += row[static_cast<std::size_t>(j)];
  }
  return total;
}

/// Objective decrease when `item` leaves the group holding `members`.
template <DistanceScalar T>
[[nodiscard]] T remove_gain(const DistanceMatrix<T>& m, std::span<const Item> members, Item item) {
  T total{0};
  bool found = false;
  const auto row = m.row(item);
  for (Item j : members) {
    if (j == item) {
      found = true;
      continue;
    }
    total += row[static_cast<std::size_t>(j)];
  }
  if (!found) throw Error("item " + std::to_string(item) + " is not in the group");
  return total;
}

/// Threshold below which a delta counts as an improvement: zero for exact
/// integer costs, a relative epsilon for floating costs.
template <DistanceScalar T>
[[nodiscard]] T improvement_tolerance(const DistanceMatrix<T>& m) noexcept {
  if constexpr (std::is_floating_point_v<T>)
    return 1e-10 * std::max(m.max_entry(), 1.0);
  else
    return T{0};
}

// ---------------------------------------------------------------------------
// Text formats

namespace detail {

inline std::string format_scalar(std::int64_t v) { return std::to_string(v); }

inline std::string format_scalar(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

inline bool parse_double(const std::string& tok, double& out) {
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  if (first != last && *first == '+') ++first;
  auto res = std::from_chars(first, last, out);
  return res.ec == std::errc{} && res.ptr == last;
}

inline bool parse_int(const std::string& tok, long long& out) {
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  if (first != last && *first == '+') ++first;
  auto res = std::from_chars(first, last, out);
  return res.ec == std::errc{} && res.ptr == last;
}

}  // namespace detail

/// Reads `n` followed by n rows of n numbers. The matrix is integral when
/// every entry is an integer, real otherwise.
[[nodiscard]] inline AnyMatrix read_matrix(std::istream& in) {
  std::string tok;
  if (!(in >> tok)) throw Error("matrix: missing item count");
  long long n = 0;
  if (!detail::parse_int(tok, n) || n < 1 || n > 100000) throw Error("matrix: bad item count '" + tok + "'");
  const auto count = static_cast<std::size_t>(n * n);
  std::vector<double> values;
  values.reserve(count);
  bool integral = true;
  while (values.size() < count && in >> tok) {
    double v = 0;
    if (!detail::parse_double(tok, v))
      throw Error("matrix: bad entry '" + tok + "' at position " + std::to_string(values.size()));
    if (v != std::trunc(v) || std::fabs(v) > 9.0e15) integral = false;
    values.push_back(v);
  }
  if (values.size() != count)
    throw Error("matrix: expected " + std::to_string(count) + " entries, found " + std::to_string(values.size()));
  if (in >> tok) throw Error("matrix: trailing token '" + tok + "'");
  if (integral) {
    std::vector<std::int64_t> ints(values.begin(), values.end());
    return IntMatrix(static_cast<int>(n), std::move(ints));
  }
  return RealMatrix(static_cast<int>(n), std::move(values));
}

template <DistanceScalar T>
void write_matrix(std::ostream& out, const DistanceMatrix<T>& m) {
  out << m.size() << '\n';
  for (Item i = 0; i < m.size(); ++i) {
    for (Item j = 0; j < m.size(); ++j) {
      if (j) out << ' ';
      out << detail::format_scalar(m(i, j));
    }
    out << '\n';
  }
}

/// Reads one line of space-separated labels; the group count is one more
/// than the largest label.
[[nodiscard]] inline Partition read_partition(std::istream& in) {
  std::string line;
  std::getline(in, line);
  std::istringstream ls(line);
  Partition part;
  std::string tok;
  while (ls >> tok) {
    long long v = 0;
    if (!detail::parse_int(tok, v) || v < 0 || v > 1000000) throw Error("partition: bad label '" + tok + "'");
    part.assign.push_back(static_cast<Label>(v));
  }
  if (part.assign.empty()) throw Error("partition: no labels");
  part.groups = *std::max_element(part.assign.begin(), part.assign.end()) + 1;
  return part;
}

inline void write_partition(std::ostream& out, const Partition& part) {
  for (std::size_t i = 0; i < part.assign.size(); ++i) {
    if (i) out << ' ';
    out << part.assign[i];
  }
  out << '\n';
}

[[nodiscard]] inline std::string to_string(const Partition& part) {
  std::ostringstream os;
  write_partition(os, part);
  std::string s = os.str();
  s.pop_back();
  return s;
}

}  // namespace groupcut
