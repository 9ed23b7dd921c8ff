#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <vector>

#include "stampforge/constructions.hpp"
#include "stampforge/cyclic.hpp"
#include "stampforge/sumsets.hpp"

using namespace stampforge;

TEST_CASE("trivial_basis follows the digit recipe") {
  auto b8 = trivial_basis(8, 3);
  CHECK(b8.elements == std::vector<long long>{0, 1, 2, 4, 8});
  CHECK(coverage(b8).is_basis);

  auto b1 = trivial_basis(1, 2);
  CHECK(b1.elements == std::vector<long long>{0, 1});

  auto b100 = trivial_basis(100, 2);
  CHECK(b100.elements.size() == 20);
  std::set<long long> want = {0, 100};
  for (long long d = 1; d <= 9; ++d) {
    want.insert(d);
    want.insert(10 * d);
  }
  CHECK(std::set<long long>(b100.elements.begin(), b100.elements.end()) == want);
  CHECK(coverage(b100).is_basis);
}

TEST_CASE("trivial_basis size bound h*ceil(n^(1/h))") {
  for (int h = 2; h <= 6; ++h)
    for (long long n : {2LL, 10LL, 97LL, 1000LL, 4096LL, 100000LL}) {
      auto basis = trivial_basis(n, h);
      CHECK(coverage(basis).is_basis);
      long long root = nth_root_ceil(n, h);
      CHECK(static_cast<long long>(basis.elements.size()) <= h * root);
    }
}

TEST_CASE("trivial_basis rejects h < 2") {
  CHECK_THROWS_AS(trivial_basis(5, 1), std::invalid_argument);
}

TEST_CASE("interval_basis covers its window") {
  auto whole = interval_basis(-2, 3, 1);
  CHECK(whole == std::vector<long long>{-2, -1, 0, 1, 2, 3});

  auto c = interval_basis(-2, 100, 2);
  CHECK(c.size() <= 23);
  CHECK(coverage_range(c, 2, -2, 100).is_basis);

  auto tiny = interval_basis(0, 1, 3);
  CHECK(coverage_range(tiny, 3, 0, 1).is_basis);
}

TEST_CASE("lift_basis assembles scaled levels") {
  CyclicBasis a({0, 1}, 3, 2);
  auto rec = lift_basis(a, {-2, -1, 0, 1, 2}, 1, 2, 1);
  CHECK(rec.order == 3);
  CHECK(rec.range_hi == 6);
  CHECK(std::set<long long>(rec.elements.begin(), rec.elements.end()) ==
        std::set<long long>{-6, -3, 0, 1, 3, 6});
  CHECK(coverage_range(rec.elements, 3, 1, 6).is_basis);

  // t = 0 degenerate: just the interval basis
  auto rec0 = lift_basis(a, {-2, -1, 0, 1, 2}, 1, 2, 0);
  CHECK(rec0.order == 1);
  CHECK(coverage_range(rec0.elements, 1, 1, 2).is_basis);

  CyclicBasis a7({0, 1, 2, 4}, 7, 2);
  auto c = interval_basis(-2, 6, 1);
  auto rec7 = lift_basis(a7, c, 1, 6, 2);
  CHECK(rec7.order == 5);
  CHECK(rec7.range_hi == 294);
  CHECK(static_cast<long long>(rec7.elements.size()) <= rec7.size_bound);
  CHECK(rec7.size_bound == 2 * 4 + static_cast<long long>(c.size()));
  CHECK(coverage_range(rec7.elements, 5, 1, 294).is_basis);
}

TEST_CASE("lift_basis rejects m > b-1") {
  CyclicBasis a({0, 1}, 3, 2);
  CHECK_THROWS_AS(lift_basis(a, {-2, -1, 0, 1, 2, 3}, 1, 3, 1),
                  std::domain_error);
}

TEST_CASE("decompose worked examples") {
  CyclicBasis a({0, 1}, 3, 2);
  auto rec = lift_basis(a, {-2, -1, 0, 1, 2}, 1, 2, 1);
  auto c5 = decompose(rec, 5);
  CHECK(c5.summands == std::vector<long long>{1, 1, 3});
  auto c6 = decompose(rec, 6);
  CHECK(c6.summands == std::vector<long long>{6});
  auto c1 = decompose(rec, 1);
  CHECK(c1.summands == std::vector<long long>{1});
  CHECK_THROWS_AS(decompose(rec, 7), std::domain_error);
  CHECK_THROWS_AS(decompose(rec, 0), std::domain_error);
}

TEST_CASE("decompose certifies every target in range") {
  CyclicBasis a7({0, 1, 2, 4}, 7, 2);
  auto c = interval_basis(-2, 6, 1);
  auto rec = lift_basis(a7, c, 1, 6, 2);
  std::set<long long> members(rec.elements.begin(), rec.elements.end());
  for (long long s = 1; s <= rec.range_hi; ++s) {
    auto cert = decompose(rec, s);
    long long total = 0;
    for (long long x : cert.summands) {
      CHECK(members.count(x) == 1);
      total += x;
    }
    CHECK(total == s);
    CHECK(cert.order_used <= rec.order);
    CHECK(cert.order_used == static_cast<int>(cert.summands.size()));
  }
}

TEST_CASE("jia_shen_params worked examples") {
  auto p = jia_shen_params(1000000, 5);
  CHECK(p.g == 1);
  CHECK(p.t == 2);
  CHECK(p.v == 4);
  CHECK(p.u == 3);
  CHECK(p.b == 592);
  CHECK(p.m == 16);
  CHECK(p.m * p.b * p.b >= 1000000);

  auto q = jia_shen_params(10000, 4);
  CHECK(q.g == 2);
  CHECK(q.t == 1);
  CHECK(q.v == 4);
  CHECK(q.u == 2);
  CHECK(q.b == 304);
  // m = max(ceil(n^(g/h)), ceil(n / b^t)) = max(100, 33)
  CHECK(q.m == 100);
  CHECK(q.m <= q.b - 1);

  auto r = jia_shen_params(7, 3);
  CHECK(r.g == 1);
  CHECK(r.t == 1);
  CHECK(r.v == 2);
  CHECK(r.u == 1);
  CHECK(r.b == 28);
  CHECK(r.m == 2);
}

TEST_CASE("jia_shen_params invariants across a grid") {
  for (int h = 3; h <= 8; ++h)
    for (long long n : {20LL, 500LL, 12345LL, 1000000LL}) {
      auto p = jia_shen_params(n, h);
      CHECK(p.g == (h % 2 == 1 ? 1 : 2));
      CHECK(p.t == (h - p.g) / 2);
      CHECK(p.b == (3 * p.u * p.u + 3 * p.u + 1) * p.v * p.v);
      CHECK(p.m <= p.b - 1);
      long long bt = 1;
      for (int i = 0; i < p.t; ++i) bt *= p.b;
      CHECK(p.m * bt >= n);
    }
}

TEST_CASE("cyclic_two_basis verified results with known optima") {
  auto r7 = cyclic_two_basis(1, 1);
  CHECK(r7.basis.modulus == 7);
  CHECK(r7.target == 6);
  CHECK(r7.basis.residues.size() == 4);
  CHECK(r7.target_met);
  CHECK(r7.exhaustive);
  CHECK(cyclic_coverage(r7.basis).is_basis);

  auto r19 = cyclic_two_basis(2, 1);
  CHECK(r19.basis.modulus == 19);
  CHECK(r19.basis.residues.size() == 6);
  CHECK(r19.exhaustive);
  CHECK(cyclic_coverage(r19.basis).is_basis);

  auto r28 = cyclic_two_basis(1, 2);
  CHECK(r28.basis.modulus == 28);
  CHECK(r28.target == 11);
  CHECK(r28.basis.residues.size() == 9);
  CHECK(r28.target_met);
  CHECK(r28.exhaustive);
  CHECK(cyclic_coverage(r28.basis).is_basis);
}

TEST_CASE("cyclic_two_basis b=63 meets target with proven optimum 12") {
  auto r = cyclic_two_basis(1, 3);
  CHECK(r.basis.modulus == 63);
  CHECK(r.target == 16);
  CHECK(r.baseline_size <= 16);
  CHECK(r.target_met);
  CHECK(r.exhaustive);
  CHECK(r.basis.residues.size() == 12);
  CHECK(cyclic_coverage(r.basis).is_basis);
}

TEST_CASE("cyclic_two_basis determinism") {
  auto a = cyclic_two_basis(1, 2, 1000000, 5);
  auto b = cyclic_two_basis(1, 2, 1000000, 5);
  CHECK(a.basis.residues == b.basis.residues);
  CHECK(a.nodes == b.nodes);
}

TEST_CASE("jia_shen_basis composes and self-verifies") {
  auto js = jia_shen_basis(10000, 4);
  CHECK_FALSE(js.fallback_trivial);
  CHECK(coverage_range(js.basis.elements, 4, 1, 10000).is_basis);
  CHECK(js.ledger.total_bound ==
        js.ledger.levels * js.ledger.cyclic_size + js.ledger.interval_size);
  CHECK(js.ledger.actual_size <= js.ledger.total_bound);
  CHECK(js.ledger.actual_size ==
        static_cast<long long>(js.basis.elements.size()));

  auto small = jia_shen_basis(7, 3);
  CHECK(coverage_range(small.basis.elements, 3, 1, 7).is_basis);

  auto tiny = jia_shen_basis(2, 3);
  CHECK(tiny.fallback_trivial);
  CHECK(coverage_range(tiny.basis.elements, 3, 1, 2).is_basis);
}

TEST_CASE("jia_shen_basis rejects h < 3") {
  CHECK_THROWS_AS(jia_shen_basis(100, 2), std::invalid_argument);
}
