#pragma once

// Three-phase construction + descent heuristic with GRASP randomization
// and a deterministic multi-start driver.
//
// Phase 1 picks one seed item per group (farthest pair, then max-min
// distance). Phase 2 inserts the remaining items by cheapest add cost.
// Phase 3 is a best-improvement descent: single-item relocations for
// variable group sizes, cross-group swaps for fixed group sizes. In the
// first two phases every step takes the best candidate with probability
// best_prob and the runner-up otherwise.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <limits>
#include <random>
#include <thread>
#include <vector>

#include "groupcut/core.hpp"

namespace groupcut {

struct GraspConfig {
  int restarts = 10000;
  std::uint64_t base_seed = 0;
  double best_prob = 2.0 / 3.0;
  GroupSpec model = VariableCount{2};
  int workers = 1;
};

template <DistanceScalar T>
struct SolveResult {
  Partition best_partition;  // canonical
  T best_cost{};
  int times_best = 0;
  double elapsed = 0;  // seconds
  int restarts_run = 0;
};

/// 64-bit stream used by every restart.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(splitmix(seed)) {}

  /// Uniform in [0, 1) from the top 53 bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// True when the best candidate should be taken.
  bool take_best(double best_prob) { return best_prob >= 1.0 || uniform() < best_prob; }

 private:
  static std::uint64_t splitmix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  }
  std::mt19937_64 engine_;
};

namespace detail {

/// Keeps the two best candidates under a strict total order `better`.
template <class Cand, class Better>
class TopTwo {
 public:
  explicit TopTwo(Better better) : better_(better) {}

  void offer(const Cand& c) {
    if (count_ == 0 || better_(c, first_)) {
      second_ = first_;
      first_ = c;
    } else if (count_ == 1 || better_(c, second_)) {
      second_ = c;
    }
    count_ = std::min(count_ + 1, 2);
  }

  [[nodiscard]] int count() const noexcept { return count_; }

  /// Best with probability best_prob, otherwise the runner-up. A lone
  /// candidate is always taken.
  const Cand& pick(Rng& rng, double best_prob) const {
    if (count_ < 2) return first_;
    return rng.take_best(best_prob) ? first_ : second_;
  }

 private:
  Better better_;
  Cand first_{};
  Cand second_{};
  int count_ = 0;
};

template <class Cand, class Better>
TopTwo<Cand, Better> top_two(Better better) {
  return TopTwo<Cand, Better>(better);
}

/// contrib[i * p + g] = sum of d[i][j] over members j of group g.
template <DistanceScalar T>
std::vector<T> contributions(const DistanceMatrix<T>& m, const Partition& part) {
  const int n = m.size();
  const auto p = static_cast<std::size_t>(part.groups);
  std::vector<T> contrib(static_cast<std::size_t>(n) * p, T{0});
  for (Item i = 0; i < n; ++i) {
    const auto row = m.row(i);
    T* ci = contrib.data() + static_cast<std::size_t>(i) * p;
    for (Item j = 0; j < n; ++j) ci[part.assign[static_cast<std::size_t>(j)]] += row[static_cast<std::size_t>(j)];
  }
  return contrib;
}

}  // namespace detail

/// Phase 1. Returns p distinct seed items; seeds[k] starts group k.
template <DistanceScalar T>
[[nodiscard]] std::vector<Item> seed_groups(const DistanceMatrix<T>& m, int p, Rng& rng, double best_prob) {
  const int n = m.size();
  if (p < 1 || p > n) throw Error("cannot seed " + std::to_string(p) + " groups from " + std::to_string(n) + " items");
  std::vector<Item> seeds;
  seeds.reserve(static_cast<std::size_t>(p));
  if (p == 1) {
    seeds.push_back(0);
    return seeds;
  }

  struct PairCand {
    T dist;
    Item i, j;
  };
  // larger distance first, then smaller (i, j)
  auto pairs = detail::top_two<PairCand>([](const PairCand& a, const PairCand& b) {
    if (a.dist != b.dist) return a.dist > b.dist;
    if (a.i != b.i) return a.i < b.i;
    return a.j < b.j;
  });
  for (Item i = 0; i < n; ++i)
    for (Item j = i + 1; j < n; ++j) pairs.offer({m(i, j), i, j});
  const PairCand first = pairs.pick(rng, best_prob);
  seeds.push_back(first.i);
  seeds.push_back(first.j);

  std::vector<char> chosen(static_cast<std::size_t>(n), 0);
  chosen[static_cast<std::size_t>(first.i)] = chosen[static_cast<std::size_t>(first.j)] = 1;
  std::vector<T> min_dist(static_cast<std::size_t>(n));
  for (Item k = 0; k < n; ++k) min_dist[static_cast<std::size_t>(k)] = std::min(m(k, first.i), m(k, first.j));

  struct ItemCand {
    T score;
    Item item;
  };
  while (static_cast<int>(seeds.size()) < p) {
    auto cands = detail::top_two<ItemCand>([](const ItemCand& a, const ItemCand& b) {
      if (a.score != b.score) return a.score > b.score;
      return a.item < b.item;
    });
    for (Item k = 0; k < n; ++k)
      if (!chosen[static_cast<std::size_t>(k)]) cands.offer({min_dist[static_cast<std::size_t>(k)], k});
    const Item s = cands.pick(rng, best_prob).item;
    seeds.push_back(s);
    chosen[static_cast<std::size_t>(s)] = 1;
    for (Item k = 0; k < n; ++k) min_dist[static_cast<std::size_t>(k)] = std::min(min_dist[static_cast<std::size_t>(k)], m(k, s));
  }
  return seeds;
}

/// Phase 2. Group k starts with seeds[k]; under fixed sizes its capacity is
/// sizes[k] and it stops receiving items once full.
template <DistanceScalar T>
[[nodiscard]] Partition greedy_fill(const DistanceMatrix<T>& m, std::span<const Item> seeds, const GroupSpec& spec,
                                    Rng& rng, double best_prob) {
  const int n = m.size();
  const int p = group_count(spec);
  require_feasible(spec, n);
  if (static_cast<int>(seeds.size()) != p) throw Error("greedy_fill needs one seed per group");

  const auto* fixed = std::get_if<FixedSizes>(&spec);
  std::vector<int> capacity(static_cast<std::size_t>(p), n);
  if (fixed) capacity = fixed->sizes;
  std::vector<int> fill(static_cast<std::size_t>(p), 0);

  Partition part{std::vector<Label>(static_cast<std::size_t>(n), -1), p};
  const auto pz = static_cast<std::size_t>(p);
  std::vector<T> add(static_cast<std::size_t>(n) * pz, T{0});
  auto place = [&](Item item, Label g) {
    if (part.assign[static_cast<std::size_t>(item)] != -1) throw Error("seed items must be distinct");
    part.assign[static_cast<std::size_t>(item)] = g;
    ++fill[static_cast<std::size_t>(g)];
    const auto row = m.row(item);
    for (Item j = 0; j < n; ++j) add[static_cast<std::size_t>(j) * pz + static_cast<std::size_t>(g)] += row[static_cast<std::size_t>(j)];
  };
  for (Label g = 0; g < p; ++g) place(seeds[static_cast<std::size_t>(g)], g);

  struct MoveCand {
    T cost;
    Item item;
    Label group;
  };
  const auto better = [](const MoveCand& a, const MoveCand& b) {
    if (a.cost != b.cost) return a.cost < b.cost;
    if (a.item != b.item) return a.item < b.item;
    return a.group < b.group;
  };
  for (int remaining = n - p; remaining > 0; --remaining) {
    auto cands = detail::top_two<MoveCand>(better);
    for (Item i = 0; i < n; ++i) {
      if (part.assign[static_cast<std::size_t>(i)] != -1) continue;
      const T* ai = add.data() + static_cast<std::size_t>(i) * pz;
      for (Label g = 0; g < p; ++g)
        if (fill[static_cast<std::size_t>(g)] < capacity[static_cast<std::size_t>(g)]) cands.offer({ai[g], i, g});
    }
    const MoveCand mv = cands.pick(rng, best_prob);
    place(mv.item, mv.group);
  }
  return part;
}

/// Phase 3 for variable sizes: repeatedly applies the best strictly
/// improving single-item relocation. Never empties a group.
template <DistanceScalar T>
[[nodiscard]] Partition descent_relocate(const DistanceMatrix<T>& m, Partition part) {
  const int n = m.size();
  const int p = part.groups;
  const auto pz = static_cast<std::size_t>(p);
  auto contrib = detail::contributions(m, part);
  auto sizes = part.group_sizes();
  const T tol = improvement_tolerance(m);

  for (;;) {
    T best_delta = -tol;
    Item best_item = -1;
    Label best_target = -1;
    for (Item i = 0; i < n; ++i) {
      const Label from = part.assign[static_cast<std::size_t>(i)];
      if (sizes[static_cast<std::size_t>(from)] <= 1) continue;
      const T* ci = contrib.data() + static_cast<std::size_t>(i) * pz;
      const T gain = ci[from];
      for (Label g = 0; g < p; ++g) {
        if (g == from) continue;
        const T delta = ci[g] - gain;
        if (delta < best_delta) {
          best_delta = delta;
          best_item = i;
          best_target = g;
        }
      }
    }
    if (best_item < 0) break;
    const Label from = part.assign[static_cast<std::size_t>(best_item)];
    part.assign[static_cast<std::size_t>(best_item)] = best_target;
    --sizes[static_cast<std::size_t>(from)];
    ++sizes[static_cast<std::size_t>(best_target)];
    const auto row = m.row(best_item);
    for (Item j = 0; j < n; ++j) {
      T* cj = contrib.data() + static_cast<std::size_t>(j) * pz;
      cj[from] -= row[static_cast<std::size_t>(j)];
      cj[best_target] += row[static_cast<std::size_t>(j)];
    }
  }
  return part;
}

/// Phase 3 for fixed sizes: repeatedly applies the best strictly improving
/// exchange of two items in different groups. Group sizes never change.
template <DistanceScalar T>
[[nodiscard]] Partition descent_swap(const DistanceMatrix<T>& m, Partition part) {
  const int n = m.size();
  const auto pz = static_cast<std::size_t>(part.groups);
  auto contrib = detail::contributions(m, part);
  const T tol = improvement_tolerance(m);

  for (;;) {
    T best_delta = -tol;
    Item bi = -1, bj = -1;
    for (Item i = 0; i < n; ++i) {
      const Label a = part.assign[static_cast<std::size_t>(i)];
      const T* ci = contrib.data() + static_cast<std::size_t>(i) * pz;
      const auto row = m.row(i);
      for (Item j = i + 1; j < n; ++j) {
        const Label b = part.assign[static_cast<std::size_t>(j)];
        if (a == b) continue;
        const T* cj = contrib.data() + static_cast<std::size_t>(j) * pz;
        const T dij = row[static_cast<std::size_t>(j)];
        const T delta = (ci[b] - ci[a]) + (cj[a] - cj[b]) - 2 * dij;
        if (delta < best_delta) {
          best_delta = delta;
          bi = i;
          bj = j;
        }
      }
    }
    if (bi < 0) break;
    const Label a = part.assign[static_cast<std::size_t>(bi)];
    const Label b = part.assign[static_cast<std::size_t>(bj)];
    part.assign[static_cast<std::size_t>(bi)] = b;
    part.assign[static_cast<std::size_t>(bj)] = a;
    const auto ri = m.row(bi);
    const auto rj = m.row(bj);
    for (Item k = 0; k < n; ++k) {
      T* ck = contrib.data() + static_cast<std::size_t>(k) * pz;
      const T shift = ri[static_cast<std::size_t>(k)] - rj[static_cast<std::size_t>(k)];
      ck[a] -= shift;
      ck[b] += shift;
    }
  }
  return part;
}

template <DistanceScalar T>
struct RestartOutcome {
  Partition construction;
  Partition final_partition;  // canonical
  T construction_cost{};
  T final_cost{};
};

/// One restart: seed, fill, descend. Restart r uses the stream seeded with
/// base_seed XOR r.
template <DistanceScalar T>
[[nodiscard]] RestartOutcome<T> run_restart(const DistanceMatrix<T>& m, const GraspConfig& cfg, std::uint64_t r) {
  Rng rng(cfg.base_seed ^ r);
  const int p = group_count(cfg.model);
  const auto seeds = seed_groups(m, p, rng, cfg.best_prob);
  RestartOutcome<T> out;
  out.construction = greedy_fill(m, std::span<const Item>(seeds), cfg.model, rng, cfg.best_prob);
  out.construction_cost = objective(m, out.construction);
  Partition local = is_fixed(cfg.model) ? descent_swap(m, out.construction) : descent_relocate(m, out.construction);
  out.final_partition = canonicalize(local);
  out.final_cost = objective(m, out.final_partition);
  return out;
}

namespace detail {

template <DistanceScalar T>
struct Incumbent {
  bool any = false;
  T cost{};
  Partition part;
  int times = 0;

  void offer(T c, const Partition& p) {
    if (!any || c < cost) {
      any = true;
      cost = c;
      part = p;
      times = 1;
    } else if (c == cost) {
      ++times;
      if (p.assign < part.assign) part = p;
    }
  }

  void merge(const Incumbent& o) {
    if (!o.any) return;
    if (!any || o.cost < cost) {
      *this = o;
    } else if (o.cost == cost) {
      times += o.times;
      if (o.part.assign < part.assign) part = o.part;
    }
  }
};

}  // namespace detail

/// Runs cfg.restarts independent restarts and keeps the cheapest final
/// partition (ties go to the lexicographically smallest canonical form).
/// The result does not depend on cfg.workers.
template <DistanceScalar T>
[[nodiscard]] SolveResult<T> multistart(const DistanceMatrix<T>& m, const GraspConfig& cfg) {
  if (cfg.restarts < 1) throw Error("restarts must be at least 1");
  if (!(cfg.best_prob > 0.0 && cfg.best_prob <= 1.0)) throw Error("best_prob must lie in (0, 1]");
  require_feasible(cfg.model, m.size());

  const auto start = std::chrono::steady_clock::now();
  const int workers = std::clamp(cfg.workers, 1, cfg.restarts);
  std::vector<detail::Incumbent<T>> partial(static_cast<std::size_t>(workers));
  std::atomic<int> next{0};
  auto work = [&](int w) {
    auto& inc = partial[static_cast<std::size_t>(w)];
    for (int r = next++; r < cfg.restarts; r = next++) {
      const auto out = run_restart(m, cfg, static_cast<std::uint64_t>(r));
      inc.offer(out.final_cost, out.final_partition);
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back(work, w);
  }

  detail::Incumbent<T> total;
  for (const auto& inc : partial) total.merge(inc);
  SolveResult<T> res;
  res.best_partition = total.part;
  res.best_cost = total.cost;
  res.times_best = total.times;
  res.restarts_run = cfg.restarts;
  res.elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return res;
}

}  // namespace groupcut
