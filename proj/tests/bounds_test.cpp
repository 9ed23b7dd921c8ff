#include <doctest.h>

#include <cmath>
#include <random>
#include <set>
#include <vector>

#include "stampforge/bounds.hpp"

using namespace stampforge;
using doctest::Approx;

namespace {
unsigned long long count_at(const SumDistribution& d, long long x) {
  long long idx = x - d.support_lo;
  if (idx < 0 || idx >= static_cast<long long>(d.counts.size())) return 0;
  return d.counts[static_cast<std::size_t>(idx)];
}
}  // namespace

TEST_CASE("bound_report basic fields") {
  auto r = bound_report(2, 100);
  CHECK(r.trivial_lower == Approx(std::sqrt(200.0)).epsilon(1e-12));
  CHECK(r.trivial_upper == Approx(20.0).epsilon(1e-12));
  CHECK(r.counting_lower_exact == 13);  // 13 + C(14,2) = 104 >= 100; 12 + 78 < 100
  CHECK_FALSE(r.mpr_lower.has_value());  // tabulated only for h >= 3
  CHECK(bound_report(3, 10).mpr_lower.has_value());
}

TEST_CASE("yu constant for h=2 reproduces the printed 2.1810") {
  CHECK(2.0 / (1.0 - yu_epsilon(2)) == Approx(2.1810).epsilon(1e-3));
}

TEST_CASE("yu_epsilon table") {
  CHECK(yu_epsilon(3) == 0.0724);
  CHECK(yu_epsilon(4) == 0.0830);
  CHECK(yu_epsilon(5) == 0.0789);
  CHECK(yu_epsilon(6) == 0.0830);
  CHECK(yu_epsilon(7) == 0.0806);
  CHECK(yu_epsilon(9) == 0.0813);
  CHECK(yu_epsilon(11) == 0.0830);
  CHECK(yu_epsilon(100) == 0.0830);
  CHECK_FALSE(yu_epsilon_is_approximate(9));
  CHECK(yu_epsilon_is_approximate(11));
  CHECK_FALSE(yu_epsilon_is_approximate(100));
}

TEST_CASE("mpr_epsilon table and closed forms") {
  CHECK(mpr_epsilon(3) == 0.0221);
  CHECK(mpr_epsilon(4) == 0.0115);
  auto s = [](int h) {
    double c = std::cos(M_PI / h);
    return c / (2.0 + c);
  };
  for (int h = 5; h <= 7; ++h)
    CHECK(mpr_epsilon(h) == Approx(std::pow(1.02 * s(h), h)).epsilon(1e-12));
  for (int h : {8, 12, 20})
    CHECK(mpr_epsilon(h) == Approx(std::pow(1.1 * s(h), h)).epsilon(1e-12));
}

TEST_CASE("lower bound constants are ordered as claimed") {
  for (int h = 3; h <= 20; ++h) {
    double mpr = 1.0 / (1.0 - mpr_epsilon(h));  // relative to the trivial h!
    double yu = 1.0 / (1.0 - yu_epsilon(h));
    CHECK(1.0 <= mpr);
    CHECK(mpr <= yu);
  }
  for (int h = 3; h <= 20; ++h) {
    auto r = bound_report(h, 1000000);
    CHECK(r.trivial_lower <= *r.mpr_lower);
    CHECK(*r.mpr_lower <= r.yu_lower);
    CHECK(r.yu_lower <= r.trivial_upper);
  }
}

TEST_CASE("new lower constant beats Yu for h=30, eps=0.1") {
  CHECK(new_lower_constant_log(30, 0.1) > yu_constant_log(30));
}

TEST_CASE("negligible_sets worked examples") {
  auto n1 = negligible_sets({1, 2}, 3);
  CHECK(n1.b_set == std::vector<long long>{1, 2, 3, 4});
  CHECK(n1.r_set == std::vector<long long>{3, 4, 5, 6});
  CHECK(n1.union_size == 6);
  CHECK(n1.union_size <= n1.bound_rhs);

  auto n2 = negligible_sets({1}, 2);
  CHECK(n2.b_set == std::vector<long long>{1});
  CHECK(n2.r_set == std::vector<long long>{2});
  CHECK(n2.union_size == 2);

  auto n3 = negligible_sets({1, 2, 4}, 2);
  CHECK(n3.b_set == std::vector<long long>{1, 2, 4});
  CHECK(n3.r_set == std::vector<long long>{2, 4, 8});
}

TEST_CASE("negligible_sets majorant holds on random sets") {
  std::mt19937 rng(23);
  for (int trial = 0; trial < 25; ++trial) {
    std::set<long long> elems;
    int sz = 1 + static_cast<int>(rng() % 8);
    while (static_cast<int>(elems.size()) < sz)
      elems.insert(1 + static_cast<long long>(rng() % 50));
    std::vector<long long> a(elems.begin(), elems.end());
    int h = 2 + static_cast<int>(rng() % 3);
    auto res = negligible_sets(a, h);
    CHECK(res.union_size <= res.bound_rhs);
  }
}

TEST_CASE("negligible_sets enforces enumeration ceilings") {
  std::vector<long long> big;
  for (long long i = 1; i <= 13; ++i) big.push_back(i);
  CHECK_THROWS_AS(negligible_sets(big, 3), std::domain_error);
  CHECK_THROWS_AS(negligible_sets({1, 2}, 6), std::domain_error);
}

TEST_CASE("stat_profile exact moments") {
  auto p = stat_profile({1, 2, 3});
  CHECK(p.mean == cpp_rational(2));
  CHECK(p.variance == cpp_rational(2, 3));
  CHECK(p.third_abs_raw == cpp_rational(12));

  auto d = stat_profile({5});
  CHECK(d.variance == 0);
  CHECK(d.third_abs_central == 0);

  auto b = stat_profile({0, 1});
  CHECK(b.mean == cpp_rational(1, 2));
  CHECK(b.variance == cpp_rational(1, 4));
  CHECK(b.third_abs_central == cpp_rational(1, 8));
}

TEST_CASE("sum_distribution exact counts") {
  auto d1 = sum_distribution({0, 1}, 2);
  CHECK(count_at(d1, 0) == 1);
  CHECK(count_at(d1, 1) == 2);
  CHECK(count_at(d1, 2) == 1);
  CHECK(d1.total == 4);

  auto d2 = sum_distribution({1, 2}, 3);
  CHECK(count_at(d2, 3) == 1);
  CHECK(count_at(d2, 4) == 3);
  CHECK(count_at(d2, 5) == 3);
  CHECK(count_at(d2, 6) == 1);

  auto d3 = sum_distribution({1, 3, 4}, 2);
  CHECK(count_at(d3, 4) == 2);  // 1+3 and 3+1: 2 ordered pairs of 9
  CHECK(d3.total == 9);
}

TEST_CASE("sum_distribution normalizes exactly") {
  std::mt19937 rng(29);
  for (int trial = 0; trial < 15; ++trial) {
    std::set<long long> elems;
    int sz = 2 + static_cast<int>(rng() % 7);
    while (static_cast<int>(elems.size()) < sz)
      elems.insert(static_cast<long long>(rng() % 40));
    std::vector<long long> a(elems.begin(), elems.end());
    int h = 2 + static_cast<int>(rng() % 8);
    auto d = sum_distribution(a, h);
    unsigned long long sum = 0, expect = 1;
    for (auto c : d.counts) sum += c;
    for (int i = 0; i < h; ++i) expect *= a.size();
    CHECK(sum == expect);
    CHECK(static_cast<long long>(d.counts.size()) ==
          h * (a.back() - a.front()) + 1);
  }
}

TEST_CASE("berry_esseen_check behavior") {
  CHECK_THROWS_AS(berry_esseen_check({5}, 4, 0.56), std::domain_error);

  // A={0,1}, h=4: rho_centered = 1/8, sigma^3 = 1/8, sqrt(h) = 2
  auto r = berry_esseen_check({0, 1}, 4, 0.56);
  CHECK(r.rhs == Approx(0.56 / 2.0).epsilon(1e-12));
  CHECK(r.sup_distance > 0.0);
  CHECK(r.sup_distance < 1.0);

  auto r2 = berry_esseen_check({1, 2, 3}, 9, 0.56);
  CHECK(r2.holds);
}

TEST_CASE("f(sigma) machinery") {
  auto m = minimize_f(100, 4, 0.0);
  CHECK(m.sigma_star_closed_form == Approx(25.0).epsilon(1e-12));
  CHECK(m.sigma_star_numeric == Approx(25.0).epsilon(1e-6));

  std::mt19937 rng(31);
  for (int trial = 0; trial < 5; ++trial) {
    long long n = 10 + static_cast<long long>(rng() % 10000);
    int h = 2 + static_cast<int>(rng() % 48);
    double eps = (rng() % 1000) / 2500.0;  // [0, 0.4)
    auto fm = minimize_f(static_cast<double>(n), h, eps);
    double closed_sigma = (0.5 - eps) * n / std::sqrt(static_cast<double>(h));
    CHECK(fm.sigma_star_closed_form == Approx(closed_sigma).epsilon(1e-12));
    CHECK(fm.sigma_star_numeric == Approx(closed_sigma).epsilon(1e-6));
    CHECK(fm.log_f_min == Approx(fm.log_f_closed_form).epsilon(1e-10));
    CHECK(f_sigma_log(closed_sigma, static_cast<double>(n), h, eps) ==
          Approx(fm.log_f_closed_form).epsilon(1e-10));
  }

  CHECK(0.5 * std::sqrt(2.0 * M_PI * M_E) == Approx(2.066).epsilon(5e-4));
  CHECK_THROWS_AS(f_sigma_log(0.0, 100, 4, 0.0), std::domain_error);
}

TEST_CASE("assumption_check exact inequality") {
  std::vector<long long> all10;
  for (long long i = 1; i <= 10; ++i) all10.push_back(i);
  // reduces to 2 h sum(a) <= n |A|: 2*2*55 = 220 > 100
  auto r = assumption_check(all10, 10, 2);
  CHECK_FALSE(r.holds);

  CHECK_THROWS_AS(assumption_check({10}, 10, 2), std::domain_error);

  auto r2 = assumption_check({1, 2}, 4, 2);
  CHECK_FALSE(r2.holds);  // 2*2*3 = 12 > 4*2 = 8
  CHECK(r2.reflected_holds == (2 * 2 * (3 + 2) <= 4 * 2 ? true : false));
  auto r3 = assumption_check({1, 2}, 20, 2);
  CHECK(r3.holds);  // 12 <= 40
}

TEST_CASE("new_upper main term follows the parity formula") {
  auto r5 = bound_report(5, 100000);
  double n5 = std::pow(100000.0, 0.2);
  CHECK(r5.new_upper ==
        Approx((std::sqrt(3.0) * 2.0 + 1.0) * n5).epsilon(1e-12));
  CHECK(r5.new_upper_asymptotic);

  auto r4 = bound_report(4, 10000);
  double n4 = std::pow(10000.0, 0.25);
  CHECK(r4.new_upper ==
        Approx((std::sqrt(3.0) * 1.0 + 2.0) * n4).epsilon(1e-12));
}
