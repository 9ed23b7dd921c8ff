#include "stampforge/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

#include "stampforge/solver.hpp"
#include "stampforge/sumsets.hpp"

namespace stampforge {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884L;

double rational_to_double(const cpp_rational& q) {
  return static_cast<double>(q);
}

double lfact(int h) { return std::lgamma(static_cast<double>(h) + 1.0); }

// Standard normal CDF via the complementary error function.
long double phi(long double x) {
  return 0.5L * erfcl(-x / 1.4142135623730950488016887242096981L);
}


}  // namespace

double MomentProfile::mean_d() const { return rational_to_double(mean); }
double MomentProfile::variance_d() const { return rational_to_double(variance); }
double MomentProfile::third_abs_central_d() const {
  return rational_to_double(third_abs_central);
}
double MomentProfile::third_abs_raw_d() const {
  return rational_to_double(third_abs_raw);
}

double yu_epsilon(int h) {
  if (h < 2) throw std::invalid_argument("yu_epsilon: h must be >= 2");
  if (h % 2 == 0) return 0.0830;
  switch (h) {
    case 3: return 0.0724;
    case 5: return 0.0789;
    case 7: return 0.0806;
    case 9: return 0.0813;
    default: return 0.0830;  // limit value, flagged approximate
  }
}

bool yu_epsilon_is_approximate(int h) { return h % 2 == 1 && h > 9; }

double mpr_epsilon(int h) {
  if (h < 3) throw std::invalid_argument("mpr_epsilon: h must be >= 3");
  if (h == 3) return 0.0221;
  if (h == 4) return 0.0115;
  double s = std::cos(kPi / h) / (2.0 + std::cos(kPi / h));
  double factor = (h <= 7) ? 1.02 : 1.1;
  return std::pow(factor * s, h);
}

double new_lower_constant_log(int h, double eps) {
  if (eps < 0 || eps >= 0.5)
    throw std::invalid_argument("new_lower_constant_log: need 0 <= eps < 1/2");
  return std::log(0.5 - eps) + lfact(h) + 0.5 * std::log(2.0 * kPi * std::exp(1.0));
}

double yu_constant_log(int h) {
  return lfact(h) - std::log1p(-yu_epsilon(h));
}

double mpr_constant_log(int h) {
  return lfact(h) - std::log1p(-mpr_epsilon(h));
}

BoundReport bound_report(int h, long long n, double new_lower_eps) {
  if (h < 2 || n < 1) throw std::invalid_argument("bound_report: bad (h, n)");
  BoundReport r;
  r.h = h;
  r.n = n;
  double logn = std::log(static_cast<double>(n));
  r.trivial_lower = std::exp((lfact(h) + logn) / h);
  r.counting_lower_exact = counting_lower_exact(n, h);
  r.trivial_upper = h * std::exp(logn / h);
  if (h >= 3) r.mpr_lower = std::exp((mpr_constant_log(h) + logn) / h);
  r.yu_lower = std::exp((yu_constant_log(h) + logn) / h);
  r.new_lower_epsilon = new_lower_eps;
  r.new_lower = std::exp((new_lower_constant_log(h, new_lower_eps) + logn) / h);
  int g = (h % 2 == 1) ? 1 : 2;
  r.new_upper =
      (std::sqrt(3.0) * (h - g) / 2.0 + g) * std::exp(logn / h);
  r.new_upper_asymptotic = true;
  return r;
}

NegligibleSets negligible_sets(const std::vector<long long>& a, int h) {
  if (a.empty()) throw std::invalid_argument("negligible_sets: empty set");
  if (static_cast<int>(a.size()) > 12 || h > 5 || h < 2)
    throw std::domain_error("negligible_sets: limits are |A| <= 12, h <= 5");

  NegligibleSets out;
  std::set<long long> b_set;
  for (int i = 1; i <= h - 1; ++i) {
    auto s = iterated_sumset(a, i);
    b_set.insert(s.begin(), s.end());
  }

  // h-term sums with fewer than h distinct values: nondecreasing index
  // tuples of length h with at least one adjacent repeat.
  std::set<long long> r_set;
  auto rec = [&](auto&& self, std::size_t pos, std::size_t lo, long long sum,
                 std::size_t prev, bool repeated) -> void {
    if (pos == static_cast<std::size_t>(h)) {
      if (repeated) r_set.insert(sum);
      return;
    }
    for (std::size_t i = lo; i < a.size(); ++i)
      self(self, pos + 1, i, sum + a[i], i, repeated || (pos > 0 && i == prev));
  };
  rec(rec, 0, 0, 0, a.size(), false);

  std::set<long long> uni = b_set;
  uni.insert(r_set.begin(), r_set.end());
  out.b_set.assign(b_set.begin(), b_set.end());
  out.r_set.assign(r_set.begin(), r_set.end());
  out.union_size = uni.size();

  unsigned long long rhs = 0;
  unsigned long long pw = 1;
  unsigned long long m = a.size();
  for (int i = 1; i <= h - 1; ++i) {
    pw *= m;
    rhs += pw;
  }
  unsigned long long hfact = 1;
  for (int i = 2; i <= h; ++i) hfact *= static_cast<unsigned long long>(i);
  for (int k = 1; k <= h - 1; ++k) {
    // C(m, k)
    unsigned long long c = 1;
    for (int i = 1; i <= k; ++i)
      c = c * (m - static_cast<unsigned long long>(k) + i) / i;
    rhs += c * hfact;
  }
  out.bound_rhs = rhs;
  return out;
}

MomentProfile stat_profile(const std::vector<long long>& a) {
  if (a.empty()) throw std::invalid_argument("stat_profile: empty set");
  cpp_int m = a.size();
  cpp_int s1 = 0, s2 = 0;
  cpp_int abs3 = 0;
  for (long long x : a) {
    s1 += x;
    s2 += cpp_int(x) * x;
    cpp_int ax = x < 0 ? -x : x;
    abs3 += ax * ax * ax;
  }
  MomentProfile p;
  p.mean = cpp_rational(s1, m);
  p.variance = cpp_rational(s2, m) - p.mean * p.mean;
  p.third_abs_raw = cpp_rational(abs3, m);
  // E |X - mu|^3 = sum |x m - s1|^3 / m^4
  cpp_int num = 0;
  for (long long x : a) {
    cpp_int d = cpp_int(x) * m - s1;
    if (d < 0) d = -d;
    num += d * d * d;
  }
  p.third_abs_central = cpp_rational(num, m * m * m * m);
  return p;
}

SumDistribution sum_distribution(const std::vector<long long>& a, int h) {
  if (a.empty()) throw std::invalid_argument("sum_distribution: empty set");
  if (h < 1) throw std::invalid_argument("sum_distribution: h must be >= 1");
  long long amin = *std::min_element(a.begin(), a.end());
  long long amax = *std::max_element(a.begin(), a.end());
  long long span = static_cast<long long>(h) * (amax - amin) + 1;
  if (span > 10'000'000)
    throw std::invalid_argument("sum_distribution: support exceeds table limit");
  long double total_chk = std::pow(static_cast<long double>(a.size()),
                                   static_cast<long double>(h));
  if (total_chk > 4.0e18L)
    throw std::invalid_argument("sum_distribution: |A|^h exceeds exact range");

  SumDistribution d;
  d.support_lo = static_cast<long long>(h) * amin;
  d.counts.assign(static_cast<std::size_t>(span), 0);

  std::vector<unsigned long long> cur(1, 1);  // counts over offsets, exact
  long long cur_lo = 0;
  for (int level = 0; level < h; ++level) {
    std::vector<unsigned long long> next(
        cur.size() + static_cast<std::size_t>(amax - amin), 0);
    for (std::size_t i = 0; i < cur.size(); ++i) {
      if (!cur[i]) continue;
      for (long long x : a)
        next[i + static_cast<std::size_t>(x - amin)] += cur[i];
    }
    cur = std::move(next);
    cur_lo += amin;
  }
  d.counts = std::move(cur);
  d.support_lo = cur_lo;
  d.total = 1;
  for (int i = 0; i < h; ++i) d.total *= a.size();
  unsigned long long s = 0;
  for (auto c : d.counts) s += c;
  if (s != d.total)
    throw std::logic_error("sum_distribution: counts do not sum to |A|^h");
  return d;
}

BerryEsseenResult berry_esseen_check(const std::vector<long long>& a, int h,
                                     double c_be) {
  if (a.size() < 2)
    throw std::domain_error("berry_esseen_check: need |A| >= 2 (sigma > 0)");
  auto prof = stat_profile(a);
  if (prof.variance == 0)
    throw std::domain_error("berry_esseen_check: sigma = 0");
  auto dist = sum_distribution(a, h);

  long double mu = static_cast<long double>(static_cast<double>(prof.mean));
  long double sigma = sqrtl(static_cast<long double>(static_cast<double>(prof.variance)));
  long double rho = static_cast<long double>(prof.third_abs_central_d());
  long double denom = sigma * sqrtl(static_cast<long double>(h));

  long double sup = 0;
  unsigned long long cum = 0;
  long double total = static_cast<long double>(dist.total);
  for (std::size_t i = 0; i < dist.counts.size(); ++i) {
    if (!dist.counts[i]) continue;
    long double z = static_cast<long double>(dist.support_lo +
                                             static_cast<long long>(i));
    long double t = (z - h * mu) / denom;
    long double before = static_cast<long double>(cum) / total;
    cum += dist.counts[i];
    long double after = static_cast<long double>(cum) / total;
    long double p = phi(t);
    sup = std::max({sup, fabsl(before - p), fabsl(after - p)});
  }

  BerryEsseenResult r;
  r.sup_distance = static_cast<double>(sup);
  r.rhs = static_cast<double>(c_be * rho / (sigma * sigma * sigma *
                                            sqrtl(static_cast<long double>(h))));
  r.holds = r.sup_distance <= r.rhs;
  return r;
}

double f_sigma_log(double sigma, double n, int h, double eps) {
  if (sigma <= 0) throw std::domain_error("f_sigma: sigma must be > 0");
  if (eps < 0 || eps >= 0.5)
    throw std::invalid_argument("f_sigma: need 0 <= eps < 1/2");
  if (h < 2) throw std::invalid_argument("f_sigma: h must be >= 2");
  double z = (0.5 - eps) * n / (sigma * std::sqrt(static_cast<double>(h)));
  return std::log(sigma) + 0.5 * std::log(2.0 * kPi * h) + lfact(h) +
         0.5 * z * z;
}

FMinimum minimize_f(double n, int h, double eps) {
  FMinimum out;
  out.sigma_star_closed_form = (0.5 - eps) * n / std::sqrt(static_cast<double>(h));
  out.log_f_closed_form =
      std::log(0.5 - eps) + lfact(h) +
      0.5 * std::log(2.0 * kPi * std::exp(1.0)) + std::log(n);

  // Coarse log-spaced grid, then golden-section refinement of the bracket.
  double lo = out.sigma_star_closed_form / 1e3;
  double hi = out.sigma_star_closed_form * 1e3;
  int grid = 400;
  double best_s = lo;
  double best_v = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= grid; ++i) {
    double s = lo * std::pow(hi / lo, static_cast<double>(i) / grid);
    double v = f_sigma_log(s, n, h, eps);
    if (v < best_v) {
      best_v = v;
      best_s = s;
    }
  }
  double a = best_s / 1.1, b = best_s * 1.1;
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
  double f1 = f_sigma_log(x1, n, h, eps), f2 = f_sigma_log(x2, n, h, eps);
  for (int it = 0; it < 200; ++it) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - gr * (b - a);
      f1 = f_sigma_log(x1, n, h, eps);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + gr * (b - a);
      f2 = f_sigma_log(x2, n, h, eps);
    }
  }
  out.sigma_star_numeric = 0.5 * (a + b);
  out.log_f_min = f_sigma_log(out.sigma_star_numeric, n, h, eps);
  return out;
}

AssumptionResult assumption_check(const std::vector<long long>& a, long long n,
                                  int h) {
  if (a.empty()) throw std::invalid_argument("assumption_check: empty set");
  auto prof = stat_profile(a);
  if (prof.variance == 0)
    throw std::domain_error("assumption_check: sigma = 0");
  // mu of Z/(sigma sqrt h) is h mu0 / (sigma sqrt h); the inequality
  // mu <= n / (2 sqrt(h) sigma) reduces exactly to 2 h sum(A) <= n |A|.
  AssumptionResult r;
  cpp_int s1 = 0;
  for (long long x : a) s1 += x;
  r.holds = 2 * h * s1 <= cpp_int(n) * static_cast<long long>(a.size());
  cpp_int s1r = 0;
  for (long long x : a) s1r += (n + 1 - x);
  r.reflected_holds = 2 * h * s1r <= cpp_int(n) * static_cast<long long>(a.size());
  return r;
}

}  // namespace stampforge
