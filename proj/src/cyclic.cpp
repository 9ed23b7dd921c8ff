#include "stampforge/cyclic.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace stampforge {

CoverageReport cyclic_coverage(const CyclicBasis& basis) {
  long long b = basis.modulus;
  int k = basis.order;
  std::vector<std::uint8_t> min_level(static_cast<std::size_t>(b), 0);

  std::vector<char> cur(static_cast<std::size_t>(b), 0);
  for (long long r : basis.residues) cur[static_cast<std::size_t>(r)] = 1;
  auto absorb = [&](const std::vector<char>& s, int i) {
    for (long long r = 0; r < b; ++r)
      if (s[static_cast<std::size_t>(r)] && min_level[static_cast<std::size_t>(r)] == 0)
        min_level[static_cast<std::size_t>(r)] = static_cast<std::uint8_t>(i);
  };
  absorb(cur, 1);
  for (int i = 2; i <= k; ++i) {
    std::vector<char> next(static_cast<std::size_t>(b), 0);
    for (long long r = 0; r < b; ++r) {
      if (!cur[static_cast<std::size_t>(r)]) continue;
      for (long long a : basis.residues) {
        long long s = r + a;
        if (s >= b) s -= b;
        next[static_cast<std::size_t>(s)] = 1;
      }
    }
    cur = std::move(next);
    absorb(cur, i);
  }

  CoverageReport rep;
  rep.lo = 0;
  rep.hi = b - 1;
  rep.h = k;
  rep.min_summands = std::move(min_level);
  for (long long r = 0; r < b; ++r)
    if (rep.min_summands[static_cast<std::size_t>(r)] == 0) rep.uncovered.push_back(r);
  rep.is_basis = rep.uncovered.empty();
  return rep;
}

std::vector<long long> cyclic_representation(const CyclicBasis& basis,
                                             long long x) {
  long long b = basis.modulus;
  int k = basis.order;
  if (x < 0 || x >= b)
    throw std::invalid_argument("cyclic_representation: residue out of range");
  const auto& a = basis.residues;
  std::size_t m = a.size();

  // can[idx][j][r]: r is a sum of exactly j elements drawn from a[idx..].
  // Supports the greedy lexicographic extraction below.
  std::vector<std::vector<std::vector<char>>> can(
      m + 1, std::vector<std::vector<char>>(
                 static_cast<std::size_t>(k) + 1,
                 std::vector<char>(static_cast<std::size_t>(b), 0)));
  for (std::size_t idx = 0; idx <= m; ++idx) can[idx][0][0] = 1;
  for (int j = 1; j <= k; ++j) {
    for (std::size_t idx = m; idx-- > 0;) {
      auto& row = can[idx][static_cast<std::size_t>(j)];
      row = can[idx + 1][static_cast<std::size_t>(j)];
      const auto& sub = can[idx][static_cast<std::size_t>(j - 1)];
      long long e = a[idx];
      for (long long r = 0; r < b; ++r) {
        if (row[static_cast<std::size_t>(r)]) continue;
        long long prev = r - e;
        if (prev < 0) prev += b;
        if (sub[static_cast<std::size_t>(prev)]) row[static_cast<std::size_t>(r)] = 1;
      }
    }
  }

  int len = -1;
  for (int j = 1; j <= k; ++j)
    if (can[0][static_cast<std::size_t>(j)][static_cast<std::size_t>(x)]) {
      len = j;
      break;
    }
  if (len < 0)
    throw std::domain_error(
        "cyclic_representation: residue not representable within order " +
        std::to_string(k));

  std::vector<long long> out;
  long long rem = x;
  std::size_t idx = 0;
  for (int j = len; j >= 1; --j) {
    for (std::size_t i = idx; i < m; ++i) {
      long long prev = rem - a[i];
      prev %= b;
      if (prev < 0) prev += b;
      if (can[i][static_cast<std::size_t>(j - 1)][static_cast<std::size_t>(prev)]) {
        out.push_back(a[i]);
        rem = prev;
        idx = i;
        break;
      }
    }
  }
  if (static_cast<int>(out.size()) != len)
    throw std::logic_error("cyclic_representation: extraction failed");

  bool has_zero = std::binary_search(a.begin(), a.end(), 0LL);
  if (has_zero && static_cast<int>(out.size()) < k)
    out.insert(out.begin(), static_cast<std::size_t>(k) - out.size(), 0LL);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace stampforge
