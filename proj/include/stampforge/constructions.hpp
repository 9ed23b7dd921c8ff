#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "stampforge/cyclic.hpp"
#include "stampforge/sumsets.hpp"

namespace stampforge {

/// Parameter set for the cyclic-lift construction of order h = 2t + g.
struct JiaShenParams {
  int h = 3;
  int g = 1;      // 1 for odd h, 2 for even h
  int t = 1;      // number of cyclic levels, (h - g) / 2
  long long u = 1;
  long long v = 1;
  long long b = 7;  // (3u^2 + 3u + 1) v^2
  long long m = 1;
  long long n = 1;
};

/// A witnessed representation of one target by elements of a constructed set.
struct Certificate {
  long long target = 0;
  std::vector<long long> summands;
  int order_used = 0;
};

/// Everything needed to decompose targets of a lifted basis later.
struct LiftRecord {
  CyclicBasis cyclic;              // modulus b, order k
  std::vector<long long> interval;  // g-fold basis of [-k, m]
  int g = 1;
  long long m = 1;
  int t = 1;
  std::vector<long long> elements;  // the lifted basis itself
  long long range_hi = 1;           // m * b^t
  int order = 1;                    // t*k + g
  long long size_bound = 0;         // t|A| + |C|
};

/// Result of the cyclic 2-basis search.
struct CyclicSearchResult {
  CyclicBasis basis;        // always verified
  long long target = 0;     // (3u+2)v + u
  bool target_met = false;
  bool exhaustive = false;  // true when the size is a proven optimum
  long long baseline_size = 0;
  long long nodes = 0;
};

/// Size accounting for the composed construction.
struct SizeLedger {
  long long cyclic_size = 0;    // |A|
  int levels = 0;               // t
  long long interval_size = 0;  // |C|
  long long total_bound = 0;    // t|A| + |C|
  long long actual_size = 0;    // |S|
};

struct JiaShenBasis {
  IntegerBasis basis;
  JiaShenParams params;
  SizeLedger ledger;
  std::optional<LiftRecord> lift;  // empty when the trivial fallback fired
  bool fallback_trivial = false;
};

/// Smallest b with b^h >= n.
long long nth_root_ceil(long long n, int h);

/// Base-b digit basis {0, n} u U_i b^i {1..b-1} with b = ceil(n^(1/h)).
IntegerBasis trivial_basis(long long n, int h);

/// A g-fold basis of the interval [lo, hi] with lo <= 0 < hi.
std::vector<long long> interval_basis(long long lo, long long hi, int g);

/// Lift a k-fold basis of Z/bZ through t scaled levels, capped by a g-fold
/// interval basis, yielding an order tk+g basis of [1, m b^t].
LiftRecord lift_basis(const CyclicBasis& cyclic,
                      const std::vector<long long>& interval_c, int g,
                      long long m, int t);

/// Base-b expansion + carry recursion certificate for one target.
Certificate decompose(const LiftRecord& rec, long long s);

/// Parameter choices u, v, b, m, t, g for a requested (n, h).
JiaShenParams jia_shen_params(long long n, int h);

/// Search for a small verified 2-fold basis of Z/bZ, b = (3u^2+3u+1)v^2.
/// Baseline two-scale set, then deterministic local search; for b <= 100 an
/// exhaustive branch-and-bound reports the true optimum over 0-containing
/// sets. Never returns an unverified set.
CyclicSearchResult cyclic_two_basis(long long u, long long v,
                                    long long node_budget = 10'000'000'000,
                                    unsigned seed = 1);

/// Full pipeline: params -> cyclic 2-basis -> interval basis -> lift.
JiaShenBasis jia_shen_basis(long long n, int h,
                            long long node_budget = 10'000'000'000,
                            unsigned seed = 1);

}  // namespace stampforge
