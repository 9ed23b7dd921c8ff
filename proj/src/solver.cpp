#include "stampforge/solver.hpp"

#include <algorithm>
#include <chrono>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace stampforge {

namespace {

constexpr unsigned long long kSat = std::numeric_limits<unsigned long long>::max();

unsigned long long sat_mul(unsigned long long a, unsigned long long b) {
  if (a == 0 || b == 0) return 0;
  if (a > kSat / b) return kSat;
  return a * b;
}

unsigned long long sat_add(unsigned long long a, unsigned long long b) {
  return (a > kSat - b) ? kSat : a + b;
}

// C(n, r) with saturation.
unsigned long long binom(long long n, long long r) {
  if (r < 0 || r > n) return 0;
  r = std::min(r, n - r);
  unsigned long long out = 1;
  for (long long i = 1; i <= r; ++i) {
    // out * (n - r + i) / i stays integral at each step
    unsigned long long num = sat_mul(out, static_cast<unsigned long long>(n - r + i));
    if (num == kSat) return kSat;
    out = num / static_cast<unsigned long long>(i);
  }
  return out;
}

// Coverage count of [1, n] by sums of at most h elements of `elems`.
long long covered_count(const std::vector<long long>& elems, int h,
                        long long n) {
  if (elems.empty()) return 0;
  auto rep = coverage_range(elems, h, 1, n);
  return n - static_cast<long long>(rep.uncovered.size());
}

struct BasisSearch {
  long long n;
  int h;
  long long goal_k;
  long long node_budget;
  bool ascending;  // candidate order within the DFS
  SearchStats* stats;
  std::vector<long long> chosen;
  std::vector<long long> result;
  bool out_of_budget = false;

  bool feasible_extension(long long covered, long long slots) const {
    // Counting bound on what `slots` further elements could add.
    unsigned long long extra = 0;
    for (int i = 1; i <= h; ++i) {
      unsigned long long with_all = binom(goal_k + i - 1, i);
      unsigned long long with_cur =
          binom(static_cast<long long>(chosen.size()) + i - 1, i);
      extra = sat_add(extra, with_all >= with_cur ? with_all - with_cur : 0);
    }
    (void)slots;
    return sat_add(static_cast<unsigned long long>(covered), extra) >=
           static_cast<unsigned long long>(n);
  }

  bool dfs(long long last) {
    if (stats) ++stats->nodes_expanded;
    if (node_budget >= 0 && stats && stats->nodes_expanded > node_budget) {
      out_of_budget = true;
      return false;
    }
    long long covered = covered_count(chosen, h, n);
    long long slots = goal_k - static_cast<long long>(chosen.size());
    if (covered == n) {
      result = chosen;
      return true;
    }
    if (slots == 0) {
      if (stats) ++stats->prunes_by_coverage;
      return false;
    }
    if (!feasible_extension(covered, slots)) {
      if (stats) ++stats->prunes_by_bound;
      return false;
    }
    if (ascending) {
      for (long long c = last + 1; c <= n; ++c) {
        if (n - c + 1 < slots) break;  // not enough candidates left
        chosen.push_back(c);
        bool done = dfs(c);
        chosen.pop_back();
        if (done) return true;
        if (out_of_budget) return false;
      }
    } else {
      for (long long c = last - 1; c >= 2; --c) {
        if (c - 1 < slots - 1) break;
        chosen.push_back(c);
        std::sort(chosen.begin(), chosen.end());
        bool done = dfs_desc(c);
        chosen.erase(std::find(chosen.begin(), chosen.end(), c));
        if (done) return true;
        if (out_of_budget) return false;
      }
    }
    return false;
  }

  // Descending candidate order; `last` is the smallest element tried so far
  // above 1.
  bool dfs_desc(long long last) { return dfs(last); }
};

// Feasibility of covering [1, n] with exactly k elements (1 forced).
// Descending candidate order finds witnesses quickly; ascending order finds
// the lexicographically smallest witness first.
bool find_basis_of_size(long long n, int h, long long k, bool ascending,
                        long long node_budget, SearchStats* stats,
                        std::vector<long long>* witness, bool* budget_hit) {
  if (k < 1) return false;
  BasisSearch search{n, h, k, node_budget, ascending, stats, {1}, {}, false};
  bool ok = ascending ? search.dfs(1) : search.dfs(n + 1);
  if (budget_hit) *budget_hit = search.out_of_budget;
  if (ok && witness) *witness = search.result;
  return ok;
}

}  // namespace

unsigned long long counting_capacity(long long k, int h) {
  unsigned long long total = 0;
  for (int i = 1; i <= h; ++i) total = sat_add(total, binom(k + i - 1, i));
  return total;
}

long long counting_lower_exact(long long n, int h) {
  if (n < 1) throw std::invalid_argument("counting_lower_exact: n must be >= 1");
  if (h < 1) throw std::invalid_argument("counting_lower_exact: h must be >= 1");
  long long k = 1;
  while (counting_capacity(k, h) < static_cast<unsigned long long>(n)) ++k;
  return k;
}

SearchStats exact_min_basis(const SearchConfig& cfg) {
  long long n = cfg.n;
  int h = cfg.h;
  if (n < 1 || h < 1) throw std::invalid_argument("exact_min_basis: bad (n, h)");
  long long ceiling = h == 1 ? 1000 : h == 2 ? 200 : h == 3 ? 60 : 40;
  if (n > ceiling)
    throw std::invalid_argument("exact_min_basis: n exceeds ceiling " +
                                std::to_string(ceiling) + " for h=" +
                                std::to_string(h));
  auto t0 = std::chrono::steady_clock::now();
  SearchStats stats;
  if (h == 1) {
    // Order-1 basis must contain every target.
    std::vector<long long> all(static_cast<std::size_t>(n));
    for (long long i = 0; i < n; ++i) all[static_cast<std::size_t>(i)] = i + 1;
    stats.optimum_size = n;
    stats.witness = IntegerBasis(all, n, 1);
    return stats;
  }
  for (long long k = counting_lower_exact(n, h);; ++k) {
    bool budget_hit = false;
    if (find_basis_of_size(n, h, k, /*ascending=*/false, cfg.node_budget,
                           &stats, nullptr, &budget_hit)) {
      // Second pass in lexicographic order for the canonical witness.
      std::vector<long long> lex;
      find_basis_of_size(n, h, k, /*ascending=*/true, cfg.node_budget, &stats,
                         &lex, &budget_hit);
      stats.optimum_size = k;
      stats.witness = IntegerBasis(lex, n, h);
      break;
    }
    if (budget_hit) {
      stats.optimal = false;
      stats.optimum_size = -1;
      break;
    }
    if (k > n) throw std::logic_error("exact_min_basis: search overran [1, n]");
  }
  stats.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return stats;
}

SearchStats oracle_min_basis(long long n, int h) {
  if (n < 1 || n > 30 || h < 1 || h > 3)
    throw std::domain_error("oracle_min_basis: limits are n <= 30, h <= 3");
  auto t0 = std::chrono::steady_clock::now();

  // Naive coverage check, independent of the packed-bit engine.
  auto covers = [&](const std::vector<long long>& a) {
    std::vector<char> cov(static_cast<std::size_t>(n) + 1, 0);
    std::vector<long long> sums = {0};
    for (int i = 0; i < h; ++i) {
      std::vector<long long> next;
      for (long long s : sums)
        for (long long e : a) {
          long long v = s + e;
          if (v <= n) next.push_back(v);
        }
      std::sort(next.begin(), next.end());
      next.erase(std::unique(next.begin(), next.end()), next.end());
      for (long long v : next)
        if (v >= 1) cov[static_cast<std::size_t>(v)] = 1;
      sums = std::move(next);
    }
    for (long long x = 1; x <= n; ++x)
      if (!cov[static_cast<std::size_t>(x)]) return false;
    return true;
  };

  SearchStats stats;
  for (long long k = 1; k <= n; ++k) {
    // Subsets of [1, n] of size k in lexicographic order.
    std::vector<long long> idx(static_cast<std::size_t>(k));
    for (long long i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i + 1;
    while (true) {
      ++stats.nodes_expanded;
      if (covers(idx)) {
        stats.optimum_size = k;
        stats.witness = IntegerBasis(idx, n, h);
        stats.elapsed_seconds = std::chrono::duration<double>(
                                    std::chrono::steady_clock::now() - t0)
                                    .count();
        return stats;
      }
      // next combination
      long long i = k - 1;
      while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - (k - 1 - i)) --i;
      if (i < 0) break;
      ++idx[static_cast<std::size_t>(i)];
      for (long long j = i + 1; j < k; ++j)
        idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
    }
  }
  throw std::logic_error("oracle_min_basis: no basis found");
}

ReachResult extremal_reach(int k, int h, long long node_budget) {
  if (k < 1 || k > 8 || h < 1 || h > 4)
    throw std::domain_error("extremal_reach: limits are k <= 8, h <= 4");
  long long n_cap = static_cast<long long>(
      std::min<unsigned long long>(counting_capacity(k, h), 1'000'000));

  long long best_reach = 0;
  std::vector<long long> best_set;
  long long nodes = 0;

  // Classic stamp search: elements ascending, the next element is at most
  // reach + 1 or reach + 1 stays uncovered forever.
  std::vector<long long> chosen = {1};
  auto reach_of = [&](const std::vector<long long>& a) {
    auto rep = coverage_range(a, h, 1, std::min(n_cap, h * a.back()));
    long long r = 0;
    while (r < static_cast<long long>(rep.min_summands.size()) &&
           rep.min_summands[static_cast<std::size_t>(r)] != 0)
      ++r;
    return r;
  };
  auto dfs = [&](auto&& self) -> void {
    ++nodes;
    if (node_budget >= 0 && nodes > node_budget) return;
    long long r = reach_of(chosen);
    if (static_cast<int>(chosen.size()) == k) {
      if (r > best_reach) {
        best_reach = r;
        best_set = chosen;
      }
      return;
    }
    for (long long e = chosen.back() + 1; e <= r + 1; ++e) {
      chosen.push_back(e);
      self(self);
      chosen.pop_back();
    }
  };
  dfs(dfs);
  if (best_set.empty()) {
    best_set = {1};
    best_reach = h;
  }
  ReachResult res;
  res.n = best_reach;
  res.witness = IntegerBasis(best_set, std::max<long long>(best_reach, 1), h);
  return res;
}

}  // namespace stampforge
