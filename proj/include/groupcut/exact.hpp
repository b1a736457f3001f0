#pragma once

// Solution-space counting and exhaustive enumeration for both models.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "groupcut/core.hpp"

namespace groupcut {

/// Exact nonnegative integer of unbounded size.
class BigCount {
 public:
  using Int = boost::multiprecision::cpp_int;

  BigCount() = default;
  BigCount(std::uint64_t v) : v_(v) {}  // NOLINT(google-explicit-constructor)
  explicit BigCount(Int v) : v_(std::move(v)) {
    if (v_ < 0) throw Error("BigCount cannot be negative");
  }

  [[nodiscard]] const Int& value() const noexcept { return v_; }
  [[nodiscard]] std::string decimal() const { return v_.str(); }

  /// d.ddE+XX with the given number of significant digits, rounding half
  /// away from zero on the dropped digits.
  [[nodiscard]] std::string scientific(int digits = 3) const {
    const std::string s = decimal();
    std::string mant = s.substr(0, std::min<std::size_t>(s.size(), static_cast<std::size_t>(digits)));
    mant.resize(static_cast<std::size_t>(digits), '0');
    int exponent = static_cast<int>(s.size()) - 1;
    if (s.size() > static_cast<std::size_t>(digits) && s[static_cast<std::size_t>(digits)] >= '5') {
      int i = digits - 1;
      while (i >= 0 && mant[static_cast<std::size_t>(i)] == '9') mant[static_cast<std::size_t>(i--)] = '0';
      if (i >= 0) {
        ++mant[static_cast<std::size_t>(i)];
      } else {
        mant.insert(mant.begin(), '1');
        mant.pop_back();
        ++exponent;
      }
    }
    std::string out(1, mant[0]);
    if (digits > 1) out += "." + mant.substr(1);
    out += 'E';
    out += exponent < 0 ? '-' : '+';
    const std::string e = std::to_string(std::abs(exponent));
    out += (e.size() < 2 ? "0" : "") + e;
    return out;
  }

  /// Values that fit in a uint64 compare directly; used for budget guards.
  [[nodiscard]] bool exceeds(std::uint64_t limit) const { return v_ > limit; }

  [[nodiscard]] std::uint64_t to_u64() const {
    if (v_ > std::numeric_limits<std::uint64_t>::max()) throw Error("count " + decimal() + " exceeds 64 bits");
    return v_.convert_to<std::uint64_t>();
  }

  friend bool operator==(const BigCount&, const BigCount&) = default;
  friend auto operator<=>(const BigCount& a, const BigCount& b) {
    return a.v_ < b.v_ ? std::strong_ordering::less
                       : (a.v_ > b.v_ ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  Int v_{0};
};

namespace detail {

inline BigCount::Int factorial(int n) {
  BigCount::Int r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

inline BigCount::Int binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  BigCount::Int r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace detail

/// Unlabeled partitions of n items into groups of the given sizes:
/// n! / (prod n_k! * prod m_s!), m_s being the number of groups of size s.
[[nodiscard]] inline BigCount count_fixed(int n, const std::vector<int>& sizes) {
  require_feasible(FixedSizes{sizes}, n);
  BigCount::Int r = detail::factorial(n);
  std::map<int, int> multiplicity;
  for (int s : sizes) {
    r /= detail::factorial(s);
    ++multiplicity[s];
  }
  for (const auto& [size, m] : multiplicity) r /= detail::factorial(m);
  return BigCount(r);
}

/// Stirling number of the second kind via P(n,p) = P(n-1,p-1) + p P(n-1,p).
[[nodiscard]] inline BigCount count_variable(int n, int p) {
  require_feasible(VariableCount{p}, n);
  // row[k] holds P(m, k) for the current m
  std::vector<BigCount::Int> row(static_cast<std::size_t>(p) + 1, 0);
  row[0] = 1;  // P(0, 0)
  for (int m = 1; m <= n; ++m) {
    for (int k = std::min(m, p); k >= 1; --k)
      row[static_cast<std::size_t>(k)] =
          row[static_cast<std::size_t>(k) - 1] + BigCount::Int(k) * row[static_cast<std::size_t>(k)];
    row[0] = 0;
  }
  return BigCount(row[static_cast<std::size_t>(p)]);
}

/// Inclusion-exclusion form (1/p!) sum_j (-1)^(p-j) C(p,j) j^n.
[[nodiscard]] inline BigCount stirling_closed_form(int n, int p) {
  require_feasible(VariableCount{p}, n);
  BigCount::Int sum = 0;
  for (int j = 1; j <= p; ++j) {
    BigCount::Int term = detail::binomial(p, j) * boost::multiprecision::pow(BigCount::Int(j), static_cast<unsigned>(n));
    if ((p - j) % 2) sum -= term;
    else sum += term;
  }
  return BigCount(sum / detail::factorial(p));
}

[[nodiscard]] inline BigCount count_partitions(const GroupSpec& spec, int n) {
  if (const auto* f = std::get_if<FixedSizes>(&spec)) return count_fixed(n, f->sizes);
  return count_variable(n, std::get<VariableCount>(spec).p);
}

inline constexpr std::uint64_t kDefaultEnumerationBudget = 100'000'000;

class BudgetExceeded : public Error {
 public:
  explicit BudgetExceeded(const BigCount& count, std::uint64_t budget)
      : Error("enumeration would visit " + count.decimal() + " (" + count.scientific() +
              ") partitions, above the budget of " + std::to_string(budget)),
        count_(count) {}
  [[nodiscard]] const BigCount& count() const noexcept { return count_; }

 private:
  BigCount count_;
};

template <DistanceScalar T>
struct EnumerationResult {
  T optimum{};
  Partition argmin;  // canonical
  BigCount visited;
};

namespace detail {

/// Depth-first search over item placements. `open_ok(g)` decides whether an
/// empty group may receive the next item, which is what removes label
/// symmetry.
template <DistanceScalar T>
class Enumerator {
 public:
  Enumerator(const DistanceMatrix<T>& m, int groups) : m_(m), n_(m.size()) {
    assign_.assign(static_cast<std::size_t>(n_), -1);
    members_.resize(static_cast<std::size_t>(groups));
  }

  template <class CanPlace>
  EnumerationResult<T> run(CanPlace can_place) {
    recurse(0, T{0}, can_place);
    EnumerationResult<T> res;
    res.optimum = best_cost_;
    res.argmin = best_;
    res.visited = BigCount(visited_);
    return res;
  }

  [[nodiscard]] const std::vector<std::vector<Item>>& members() const noexcept { return members_; }

 private:
  template <class CanPlace>
  void recurse(Item i, T cost, CanPlace& can_place) {
    if (i == n_) {
      ++visited_;
      if (have_best_ && cost > best_cost_) return;
      Partition c = canonicalize(Partition{assign_, static_cast<int>(members_.size())});
      if (!have_best_ || cost < best_cost_ || c.assign < best_.assign) {
        best_cost_ = cost;
        best_ = std::move(c);
        have_best_ = true;
      }
      return;
    }
    for (Label g = 0; g < static_cast<Label>(members_.size()); ++g) {
      if (!can_place(i, g, members_)) continue;
      auto& grp = members_[static_cast<std::size_t>(g)];
      const T delta = add_cost<T>(m_, grp, i);
      grp.push_back(i);
      assign_[static_cast<std::size_t>(i)] = g;
      recurse(i + 1, cost + delta, can_place);
      grp.pop_back();
    }
    assign_[static_cast<std::size_t>(i)] = -1;
  }

  const DistanceMatrix<T>& m_;
  int n_;
  std::vector<Label> assign_;
  std::vector<std::vector<Item>> members_;
  std::uint64_t visited_ = 0;
  bool have_best_ = false;
  T best_cost_{};
  Partition best_;
};

}  // namespace detail

/// Visits every unlabeled partition with the given size multiset once.
/// Groups of equal size form a class; within a class an empty group may
/// only be opened after all earlier groups of the class are non-empty.
template <DistanceScalar T>
[[nodiscard]] EnumerationResult<T> enumerate_fixed(const DistanceMatrix<T>& m, const std::vector<int>& sizes,
                                                   std::uint64_t budget = kDefaultEnumerationBudget) {
  const int n = m.size();
  const BigCount count = count_fixed(n, sizes);
  if (count.exceeds(budget)) throw BudgetExceeded(count, budget);

  const int p = static_cast<int>(sizes.size());
  // previous group of the same size, or -1
  std::vector<int> prev_same(static_cast<std::size_t>(p), -1);
  for (int g = 0; g < p; ++g)
    for (int h = g - 1; h >= 0; --h)
      if (sizes[static_cast<std::size_t>(h)] == sizes[static_cast<std::size_t>(g)]) {
        prev_same[static_cast<std::size_t>(g)] = h;
        break;
      }

  detail::Enumerator<T> e(m, p);
  auto can_place = [&](Item, Label g, const std::vector<std::vector<Item>>& members) {
    const auto& grp = members[static_cast<std::size_t>(g)];
    if (static_cast<int>(grp.size()) >= sizes[static_cast<std::size_t>(g)]) return false;
    if (grp.empty()) {
      const int h = prev_same[static_cast<std::size_t>(g)];
      if (h >= 0 && members[static_cast<std::size_t>(h)].empty()) return false;
    }
    return true;
  };
  auto res = e.run(can_place);
  res.optimum = objective(m, res.argmin);
  return res;
}

/// Iterates restricted-growth strings of length n using exactly p labels.
template <DistanceScalar T>
[[nodiscard]] EnumerationResult<T> enumerate_variable(const DistanceMatrix<T>& m, int p,
                                                      std::uint64_t budget = kDefaultEnumerationBudget) {
  const int n = m.size();
  const BigCount count = count_variable(n, p);
  if (count.exceeds(budget)) throw BudgetExceeded(count, budget);

  detail::Enumerator<T> e(m, p);
  auto can_place = [&](Item i, Label g, const std::vector<std::vector<Item>>& members) {
    int used = 0;
    while (used < p && !members[static_cast<std::size_t>(used)].empty()) ++used;
    if (g > used) return false;  // restricted growth
    const int used_after = g == used ? used + 1 : used;
    return n - (i + 1) >= p - used_after;  // enough items left to fill the rest
  };
  auto res = e.run(can_place);
  res.optimum = objective(m, res.argmin);
  return res;
}

template <DistanceScalar T>
[[nodiscard]] EnumerationResult<T> enumerate(const DistanceMatrix<T>& m, const GroupSpec& spec,
                                             std::uint64_t budget = kDefaultEnumerationBudget) {
  if (const auto* f = std::get_if<FixedSizes>(&spec)) return enumerate_fixed(m, f->sizes, budget);
  return enumerate_variable(m, std::get<VariableCount>(spec).p, budget);
}

}  // namespace groupcut
