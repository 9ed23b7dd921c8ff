#pragma once

#include <vector>

#include "stampforge/sumsets.hpp"

namespace stampforge {

/// Coverage of all residues of Z/bZ by sums of at most k residues of A.
/// The report's target range is [0, b-1].
CoverageReport cyclic_coverage(const CyclicBasis& basis);

/// A representation of residue x as a sum of elements of A, reduced mod b.
/// The minimal number of summands is used; among minimal representations the
/// lexicographically smallest sorted tuple is returned. If 0 is in A the
/// result is padded with zeros to exactly k entries, otherwise the shorter
/// list is returned as-is.
std::vector<long long> cyclic_representation(const CyclicBasis& basis,
                                             long long x);

}  // namespace stampforge
