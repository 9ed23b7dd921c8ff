#pragma once

#include <cstdint>
#include <map>
#include <vector>

namespace stampforge {

/// A finite set of integers proposed as an h-fold basis of [1, n].
/// Elements are kept sorted and distinct. In canonical mode every element
/// lies in [0, n]; `allow_any_integers` lifts that restriction (verification
/// still works, the exact solver does not search outside [1, n]).
struct IntegerBasis {
  std::vector<long long> elements;
  long long n = 1;
  int h = 1;
  bool allow_any_integers = false;

  IntegerBasis() = default;
  IntegerBasis(std::vector<long long> elems, long long n_, int h_,
               bool allow_any = false);
};

/// A set of residues proposed as a k-fold basis of Z/bZ.
struct CyclicBasis {
  std::vector<long long> residues;  // sorted, distinct, in [0, b-1]
  long long modulus = 1;
  int order = 1;

  CyclicBasis() = default;
  CyclicBasis(std::vector<long long> res, long long b, int k);
};

/// Per-target minimum summand counts over a contiguous range of targets.
/// min_summands[x - lo] is the least i with x in iA, or 0 if uncovered.
struct CoverageReport {
  long long lo = 1;
  long long hi = 1;
  int h = 1;
  std::vector<std::uint8_t> min_summands;
  std::vector<long long> uncovered;
  bool is_basis = false;

  int min_summands_of(long long x) const { return min_summands.at(static_cast<std::size_t>(x - lo)); }
};

/// Ordered-tuple representation counts r_{iA}(x) for one fixed i.
struct RepresentationTable {
  int i = 1;
  std::map<long long, unsigned long long> counts;
};

/// iA = { a_1 + ... + a_i : a_j in A }, repetition allowed.
std::vector<long long> iterated_sumset(const std::vector<long long>& a, int i);

/// r_{iA}(x): number of ordered i-tuples from A summing to x.
unsigned long long representation_count(const std::vector<long long>& a, int i,
                                        long long x);

RepresentationTable representation_table(const std::vector<long long>& a, int i);

/// Word-packed shift-OR coverage of [1, n] by sums of at most h elements.
CoverageReport coverage(const IntegerBasis& basis);

/// Same engine over an arbitrary contiguous target range [lo, hi].
/// Negative elements are supported; the working window is widened so no
/// intermediate sum is lost.
CoverageReport coverage_range(const std::vector<long long>& elements, int h,
                              long long lo, long long hi);

}  // namespace stampforge
