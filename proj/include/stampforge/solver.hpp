#pragma once

#include <optional>

#include "stampforge/sumsets.hpp"

namespace stampforge {

struct SearchConfig {
  long long n = 1;
  int h = 1;
  long long node_budget = -1;  // < 0: unlimited
};

struct SearchStats {
  long long nodes_expanded = 0;
  long long prunes_by_bound = 0;
  long long prunes_by_coverage = 0;
  double elapsed_seconds = 0.0;
  long long optimum_size = 0;
  std::optional<IntegerBasis> witness;
  bool optimal = true;  // false when the node budget cut the search short
};

/// Least k with sum_{i=1..h} C(k+i-1, i) >= n (the exact counting bound).
long long counting_lower_exact(long long n, int h);

/// Sum_{i=1..h} C(k+i-1, i), saturating instead of overflowing.
unsigned long long counting_capacity(long long k, int h);

/// F_h(n) restricted to A within [1, n], by iterative-deepening
/// branch-and-bound; the returned witness is the lexicographically smallest
/// optimal basis.
SearchStats exact_min_basis(const SearchConfig& cfg);

/// Independent brute force: subsets of [1, n] by increasing cardinality.
SearchStats oracle_min_basis(long long n, int h);

/// Largest n coverable at order h by some k-element subset of [1, n].
struct ReachResult {
  long long n = 0;
  IntegerBasis witness;
};
ReachResult extremal_reach(int k, int h, long long node_budget = -1);

}  // namespace stampforge
