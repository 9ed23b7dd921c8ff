#pragma once

#include <optional>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace stampforge {

using boost::multiprecision::cpp_int;
using boost::multiprecision::cpp_rational;

/// Named bound values for a given (h, n). Lower/upper forms are the finite-n
/// evaluations of the constants; new_upper is the asymptotic main term with
/// its o(1) dropped.
struct BoundReport {
  int h = 2;
  long long n = 1;
  double trivial_lower = 0;       // (h! n)^(1/h)
  long long counting_lower_exact = 0;
  double trivial_upper = 0;       // h n^(1/h)
  std::optional<double> mpr_lower;  // (h!/(1-eps_h))^(1/h) n^(1/h), h >= 3
  double yu_lower = 0;
  double new_lower = 0;           // ((1/2-eps) h! sqrt(2 pi e))^(1/h) n^(1/h)
  double new_lower_epsilon = 0;
  double new_upper = 0;           // parity-specific main term, o(1) = 0
  bool new_upper_asymptotic = true;
};

/// Exact uniform-distribution moments of a finite integer set.
struct MomentProfile {
  cpp_rational mean;
  cpp_rational variance;
  cpp_rational third_abs_central;
  cpp_rational third_abs_raw;

  double mean_d() const;
  double variance_d() const;
  double third_abs_central_d() const;
  double third_abs_raw_d() const;
};

/// Exact distribution of Z = X_1 + ... + X_h, X_i uniform on A.
/// Probability of value (support_lo + i) is counts[i] / total.
struct SumDistribution {
  long long support_lo = 0;
  std::vector<unsigned long long> counts;
  unsigned long long total = 1;  // |A|^h
};

struct BerryEsseenResult {
  double sup_distance = 0;
  double rhs = 0;
  bool holds = false;
};

struct NegligibleSets {
  std::vector<long long> b_set;  // sums of fewer than h elements
  std::vector<long long> r_set;  // h-term sums with a repeated element
  unsigned long long union_size = 0;
  unsigned long long bound_rhs = 0;  // sum |A|^i + sum C(|A|,k) h!
};

struct AssumptionResult {
  bool holds = false;            // mu <= n / (2 sqrt(h) sigma)
  bool reflected_holds = false;  // same check for {n+1-a : a in A}
};

double yu_epsilon(int h);
bool yu_epsilon_is_approximate(int h);  // odd h > 9 uses the limit value
double mpr_epsilon(int h);

BoundReport bound_report(int h, long long n, double new_lower_eps = 0.0);

/// log of the paper's lower-bound constant (1/2 - eps) h! sqrt(2 pi e).
double new_lower_constant_log(int h, double eps);
/// log of Yu's constant h!/(1 - eps_h).
double yu_constant_log(int h);
/// log of the MPR constant h!/(1 - eps_h).
double mpr_constant_log(int h);

NegligibleSets negligible_sets(const std::vector<long long>& a, int h);

MomentProfile stat_profile(const std::vector<long long>& a);

SumDistribution sum_distribution(const std::vector<long long>& a, int h);

BerryEsseenResult berry_esseen_check(const std::vector<long long>& a, int h,
                                     double c_be);

/// log f(sigma) with f(sigma) = sigma sqrt(2 pi h) h! exp(((1/2-eps)n / (sigma sqrt h))^2 / 2).
double f_sigma_log(double sigma, double n, int h, double eps);

struct FMinimum {
  double sigma_star_closed_form = 0;
  double sigma_star_numeric = 0;
  double log_f_min = 0;            // numeric value at the grid minimum
  double log_f_closed_form = 0;    // log((1/2-eps) h! sqrt(2 pi e) n)
};
FMinimum minimize_f(double n, int h, double eps);

AssumptionResult assumption_check(const std::vector<long long>& a, long long n,
                                  int h);

}  // namespace stampforge
