#include "stampforge/constructions.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace stampforge {

namespace {

using boost::multiprecision::cpp_int;

cpp_int ipow(cpp_int base, int e) {
  cpp_int r = 1;
  while (e-- > 0) r *= base;
  return r;
}

// Smallest x >= 1 with pred(x) true; pred must be monotone.
template <typename Pred>
long long least_satisfying(Pred pred) {
  long long hi = 1;
  while (!pred(hi)) hi *= 2;
  long long lo = hi / 2 + 1;
  if (hi == 1) return 1;
  while (lo < hi) {
    long long mid = lo + (hi - lo) / 2;
    if (pred(mid))
      hi = mid;
    else
      lo = mid + 1;
  }
  return lo;
}

long long powll(long long b, int e) {
  cpp_int r = ipow(b, e);
  if (r > std::numeric_limits<long long>::max())
    throw std::overflow_error("powll: overflow");
  return static_cast<long long>(r);
}

}  // namespace

long long nth_root_ceil(long long n, int h) {
  if (n < 1) throw std::invalid_argument("nth_root_ceil: n must be >= 1");
  if (h < 1) throw std::invalid_argument("nth_root_ceil: h must be >= 1");
  return least_satisfying([&](long long x) { return ipow(x, h) >= n; });
}

IntegerBasis trivial_basis(long long n, int h) {
  if (h < 2) throw std::invalid_argument("trivial_basis: h must be >= 2");
  if (n < 1) throw std::invalid_argument("trivial_basis: n must be >= 1");
  long long b = nth_root_ceil(n, h);
  std::vector<long long> s = {0, n};
  long long scale = 1;
  for (int i = 0; i < h; ++i) {
    for (long long a = 1; a <= b - 1; ++a) {
      long long e = scale * a;
      if (e <= n) s.push_back(e);
    }
    if (i + 1 < h) scale *= b;
  }
  return IntegerBasis(std::move(s), n, h);
}

std::vector<long long> interval_basis(long long lo, long long hi, int g) {
  if (lo > 0 || hi < 1)
    throw std::invalid_argument("interval_basis: need lo <= 0 < hi");
  if (g < 1) throw std::invalid_argument("interval_basis: g must be >= 1");
  std::set<long long> c;
  if (g == 1) {
    for (long long x = lo; x <= hi; ++x) c.insert(x);
  } else {
    auto t = trivial_basis(hi, g);
    c.insert(t.elements.begin(), t.elements.end());
    for (long long x = lo; x <= 0; ++x) c.insert(x);
  }
  std::vector<long long> out(c.begin(), c.end());
  auto rep = coverage_range(out, g, lo, hi);
  if (!rep.is_basis)
    throw std::logic_error("interval_basis: self-verification failed");
  return out;
}

LiftRecord lift_basis(const CyclicBasis& cyclic,
                      const std::vector<long long>& interval_c, int g,
                      long long m, int t) {
  long long b = cyclic.modulus;
  int k = cyclic.order;
  if (m < 1 || m > b - 1)
    throw std::domain_error("lift_basis: need 1 <= m <= b-1");
  if (t < 0) throw std::invalid_argument("lift_basis: t must be >= 0");
  if (!cyclic_coverage(cyclic).is_basis)
    throw std::domain_error("lift_basis: cyclic set is not a verified basis");
  if (!coverage_range(interval_c, g, -static_cast<long long>(k), m).is_basis)
    throw std::domain_error(
        "lift_basis: interval set is not a verified g-fold basis of [-k, m]");

  std::set<long long> s;
  long long scale = 1;
  for (int i = 0; i < t; ++i) {
    for (long long a : cyclic.residues) s.insert(a * scale);
    scale *= b;
  }
  for (long long c : interval_c) s.insert(c * scale);

  LiftRecord rec;
  rec.cyclic = cyclic;
  rec.interval = interval_c;
  rec.g = g;
  rec.m = m;
  rec.t = t;
  rec.elements.assign(s.begin(), s.end());
  rec.range_hi = m * powll(b, t);
  rec.order = t * k + g;
  rec.size_bound = static_cast<long long>(t) * cyclic.residues.size() +
                   interval_c.size();
  if (static_cast<long long>(rec.elements.size()) > rec.size_bound)
    throw std::logic_error("lift_basis: size accounting violated");
  auto rep = coverage_range(rec.elements, rec.order, 1, rec.range_hi);
  if (!rep.is_basis)
    throw std::logic_error("lift_basis: self-verification failed");
  return rec;
}

Certificate decompose(const LiftRecord& rec, long long s) {
  if (s < 1 || s > rec.range_hi)
    throw std::domain_error("decompose: target out of [1, m b^t]");
  long long b = rec.cyclic.modulus;
  int k = rec.cyclic.order;

  // Base-b digits a_0 .. a_{t-1} and top digit c <= m.
  std::vector<long long> digits(static_cast<std::size_t>(rec.t), 0);
  long long rest = s;
  for (int i = 0; i < rec.t; ++i) {
    digits[static_cast<std::size_t>(i)] = rest % b;
    rest /= b;
  }
  long long c = rest;

  Certificate cert;
  cert.target = s;
  long long delta = 0;
  long long scale = 1;
  for (int i = 0; i < rec.t; ++i) {
    long long need = digits[static_cast<std::size_t>(i)] - delta;
    long long lift = ((need % b) + b) % b;
    auto alphas = cyclic_representation(rec.cyclic, lift);
    long long sum = std::accumulate(alphas.begin(), alphas.end(), 0LL);
    long long next_delta = (sum - need) / b;
    if ((sum - need) % b != 0 || next_delta < 0 || next_delta > k - 1)
      throw std::logic_error("decompose: carry out of [0, k-1]");
    for (long long a : alphas)
      if (a != 0) cert.summands.push_back(a * scale);
    delta = next_delta;
    scale *= b;
  }
  long long top = c - delta;
  if (top != 0) {
    // top lies in [-(k-1), m]; the interval basis covers [-k, m] at order g.
    auto extract = [&](auto&& self, long long val, int slots) -> bool {
      if (val == 0) return true;
      if (slots == 0) return false;
      for (long long e : rec.interval) {
        if (e == 0) continue;
        bool tail_ok =
            (val == e) ||
            (slots > 1 &&
             coverage_range(rec.interval, slots - 1, val - e, val - e).is_basis);
        if (tail_ok) {
          cert.summands.push_back(e * scale);
          return self(self, val - e, slots - 1);
        }
      }
      return false;
    };
    if (!extract(extract, top, rec.g))
      throw std::logic_error("decompose: interval extraction failed");
  }
  cert.order_used = static_cast<int>(cert.summands.size());
  if (cert.order_used > rec.order)
    throw std::logic_error("decompose: certificate too long");
  long long total = std::accumulate(cert.summands.begin(),
                                    cert.summands.end(), 0LL);
  if (total != s) throw std::logic_error("decompose: certificate sum mismatch");
  for (long long e : cert.summands)
    if (!std::binary_search(rec.elements.begin(), rec.elements.end(), e))
      throw std::logic_error("decompose: summand not in basis");
  return cert;
}

JiaShenParams jia_shen_params(long long n, int h) {
  if (h < 3) throw std::invalid_argument("jia_shen_params: h must be >= 3");
  if (n < 1) throw std::invalid_argument("jia_shen_params: n must be >= 1");
  JiaShenParams p;
  p.h = h;
  p.n = n;
  p.g = (h % 2 == 1) ? 1 : 2;
  p.t = (h - p.g) / 2;

  // u = ceil(n^(1/2h) / sqrt3)  <=>  least u with (3u^2)^h >= n
  // v = ceil(n^(1/2h))          <=>  least v with v^(2h) >= n
  p.u = least_satisfying([&](long long u) { return ipow(3 * u * u, h) >= n; });
  for (p.v = least_satisfying([&](long long v) { return ipow(v, 2 * h) >= n; });;
       ++p.v) {
    p.b = (3 * p.u * p.u + 3 * p.u + 1) * p.v * p.v;
    // m = max(ceil(n^(g/h)), ceil(n / b^t)), clamped to b - 1.
    long long m_pow =
        least_satisfying([&](long long m) { return ipow(m, h) >= ipow(n, p.g); });
    cpp_int bt = ipow(p.b, p.t);
    long long m_cov =
        static_cast<long long>((cpp_int(n) + bt - 1) / bt);
    p.m = std::max(m_pow, std::max(m_cov, 1LL));
    if (p.m <= p.b - 1 && cpp_int(p.m) * bt >= n) return p;
    // Clamp failed: grow v and recompute.
    if (p.v > n) break;
  }
  throw std::domain_error("jia_shen_params: no feasible (u, v, m) found");
}

namespace {

bool cyclic_covers(const std::vector<long long>& elems, long long b) {
  if (elems.empty()) return b == 0;
  std::vector<char> cov(static_cast<std::size_t>(b), 0);
  long long cnt = 0;
  auto mark = [&](long long r) {
    if (!cov[static_cast<std::size_t>(r)]) {
      cov[static_cast<std::size_t>(r)] = 1;
      ++cnt;
    }
  };
  for (long long x : elems) mark(x);
  for (long long x : elems)
    for (long long y : elems) {
      long long s = x + y;
      if (s >= b) s -= b;
      mark(s);
    }
  return cnt == b;
}

// Two-scale baseline {0..w-1} u {w, 2w, ...}; w chosen to minimize the size.
std::vector<long long> two_scale_baseline(long long b) {
  long long best_w = 1;
  long long best_size = std::numeric_limits<long long>::max();
  for (long long w = 1; w * w <= 4 * b + 4; ++w) {
    long long size = w + (b - 1) / w;
    if (size < best_size) {
      best_size = size;
      best_w = w;
    }
  }
  std::vector<long long> elems;
  for (long long i = 0; i < best_w; ++i) elems.push_back(i);
  for (long long j = 1; j <= (b - 1) / best_w; ++j) elems.push_back(j * best_w);
  return elems;
}

// Deterministic local search: drop redundant elements, then try
// replace-one-with-one moves that unlock further drops.
std::vector<long long> local_search_shrink(std::vector<long long> elems,
                                           long long b, long long max_rounds,
                                           unsigned seed) {
  auto drop_redundant = [&](std::vector<long long>& v) {
    bool any = true;
    while (any) {
      any = false;
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i] == 0) continue;  // keep 0: padding convention
        std::vector<long long> cand;
        cand.reserve(v.size() - 1);
        for (std::size_t j = 0; j < v.size(); ++j)
          if (j != i) cand.push_back(v[j]);
        if (cyclic_covers(cand, b)) {
          v = std::move(cand);
          any = true;
          break;
        }
      }
    }
  };
  (void)seed;  // scan order is fixed; seed kept for interface stability
  drop_redundant(elems);
  for (long long round = 0; round < max_rounds; ++round) {
    bool improved = false;
    for (std::size_t i = 0; i < elems.size() && !improved; ++i) {
      if (elems[i] == 0) continue;
      for (long long r = 1; r < b && !improved; ++r) {
        if (std::find(elems.begin(), elems.end(), r) != elems.end()) continue;
        std::vector<long long> cand = elems;
        cand[i] = r;
        if (!cyclic_covers(cand, b)) continue;
        std::size_t before = cand.size();
        drop_redundant(cand);
        if (cand.size() < before) {
          elems = std::move(cand);
          improved = true;
        }
      }
    }
    if (!improved) break;
  }
  std::sort(elems.begin(), elems.end());
  return elems;
}

// Least total size (0 included) not excluded by the counting bound:
// a 0-containing set of size s covers at most 1 + (s-1) + s(s-1)/2 residues.
long long counting_min_with_zero(long long b) {
  long long s = 1;
  while (1 + (s - 1) + s * (s - 1) / 2 < b) ++s;
  return s;
}

// Fixed-size annealing: look for a covering set of exactly `size` residues
// containing {0, 1}. Deterministic given the seed. Returns sorted set or
// nothing.
std::optional<std::vector<long long>> anneal_cover(long long b, long long size,
                                                   unsigned seed, int restarts,
                                                   int iters) {
  if (size < 2 || size >= b) return std::nullopt;
  std::mt19937 rng(seed);
  std::vector<char> cov(static_cast<std::size_t>(b));
  auto uncovered = [&](const std::vector<long long>& a) {
    std::fill(cov.begin(), cov.end(), 0);
    long long cnt = 0;
    auto mark = [&](long long r) {
      if (!cov[static_cast<std::size_t>(r)]) {
        cov[static_cast<std::size_t>(r)] = 1;
        ++cnt;
      }
    };
    for (long long x : a) mark(x);
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = i; j < a.size(); ++j) {
        long long s = a[i] + a[j];
        if (s >= b) s -= b;
        mark(s);
      }
    return b - cnt;
  };
  for (int restart = 0; restart < restarts; ++restart) {
    std::vector<long long> a = {0, 1};
    std::vector<long long> pool;
    for (long long r = 2; r < b; ++r) pool.push_back(r);
    std::shuffle(pool.begin(), pool.end(), rng);
    a.insert(a.end(), pool.begin(), pool.begin() + (size - 2));
    long long cost = uncovered(a);
    double temp = 3.0;
    for (int it = 0; it < iters && cost > 0; ++it) {
      temp = std::max(0.05, temp * 0.99995);
      std::size_t pos = 2 + rng() % (a.size() - 2);
      long long old = a[pos];
      long long neu = 1 + static_cast<long long>(rng() % (b - 1));
      if (std::find(a.begin(), a.end(), neu) != a.end()) continue;
      a[pos] = neu;
      long long nc = uncovered(a);
      if (nc <= cost ||
          std::exp(static_cast<double>(cost - nc) / temp) * 4294967296.0 >
              rng()) {
        cost = nc;
      } else {
        a[pos] = old;
      }
    }
    if (cost == 0) {
      std::sort(a.begin(), a.end());
      return a;
    }
  }
  return std::nullopt;
}

// The exhaustive engines below force the elements {0, 1}. Forcing 0 is the
// search-space convention; forcing 1 is a symmetry reduction (multiply by the
// inverse of any element coprime to b) that is only valid for sets that
// contain at least one unit of Z/bZ. A unit-free cover is not impossible in
// general, but every residue coprime to b must then be a sum x + y whose
// terms carry disjoint prime divisors of b, which forces the set to be large.
// unit_free_floor computes that size floor; proofs below it are complete.
long long unit_free_floor(long long b) {
  std::vector<long long> primes;
  long long rest = b;
  for (long long p = 2; p * p <= rest; ++p)
    if (rest % p == 0) {
      primes.push_back(p);
      while (rest % p == 0) rest /= p;
    }
  if (rest > 1) primes.push_back(rest);
  if (primes.size() <= 1) return b + 1;  // non-units share the prime: no cover
  if (primes.size() > 2) return 2;       // floor not derived; disable forcing
  long long p = primes[0], q = primes[1];
  long long cap_p = 0, cap_q = 0, phi = 0;
  for (long long x = 1; x < b; ++x) {
    bool dp = x % p == 0, dq = x % q == 0;
    if (dp && !dq) ++cap_p;
    if (dq && !dp) ++cap_q;
    if (!dp && !dq) ++phi;
  }
  // phi targets need one multiple of p plus one multiple of q; maximize the
  // pair count n_p * n_q over allocations of s - 1 non-unit elements.
  for (long long s = 2; s <= b; ++s) {
    long long best = 0;
    for (long long a = 0; a <= std::min(cap_p, s - 1); ++a)
      best = std::max(best, a * std::min(cap_q, s - 1 - a));
    if (best >= phi) return s;
  }
  return b + 1;
}

// Exhaustive search for a covering set of total size <= `size`, branching on
// the ways to cover the smallest uncovered residue: any cover must contain an
// unordered pair {x, y} with x + y = r (mod b), so trying every such pair is
// complete and keeps the branching factor near b/2 instead of b per level.
struct InfeasibilityProof {
  long long b;
  long long budget;
  long long* nodes;
  bool exhausted = false;
  long long size_limit = 0;
  std::vector<long long> chosen;
  std::vector<char> in;

  bool covered(long long r) const {
    for (long long x : chosen) {
      long long y = r - x;
      if (y < 0) y += b;
      if (in[static_cast<std::size_t>(y)]) return true;
    }
    return false;
  }

  bool dfs() {
    if (++*nodes > budget && budget >= 0) {
      exhausted = true;
      return false;
    }
    long long r = -1, unc = 0;
    for (long long t = 0; t < b; ++t)
      if (!covered(t)) {
        if (r < 0) r = t;
        ++unc;
      }
    if (r < 0) return true;
    long long q = size_limit - static_cast<long long>(chosen.size());
    if (q <= 0) return false;
    // q new elements add at most q*|chosen| + q(q+1)/2 new pair sums.
    if (q * static_cast<long long>(chosen.size()) + q * (q + 1) / 2 < unc)
      return false;
    for (long long x = 0; x < b; ++x) {
      long long y = r - x;
      if (y < 0) y += b;
      if (y < x) continue;
      if (in[static_cast<std::size_t>(x)] && in[static_cast<std::size_t>(y)])
        continue;
      long long need = (in[static_cast<std::size_t>(x)] ? 0 : 1) +
                       (y != x && !in[static_cast<std::size_t>(y)] ? 1 : 0);
      if (need > q) continue;
      bool push_x = !in[static_cast<std::size_t>(x)];
      if (push_x) {
        chosen.push_back(x);
        in[static_cast<std::size_t>(x)] = 1;
      }
      bool push_y = !in[static_cast<std::size_t>(y)];
      if (push_y) {
        chosen.push_back(y);
        in[static_cast<std::size_t>(y)] = 1;
      }
      bool found = dfs();
      if (push_y) {
        chosen.pop_back();
        in[static_cast<std::size_t>(y)] = 0;
      }
      if (push_x) {
        chosen.pop_back();
        in[static_cast<std::size_t>(x)] = 0;
      }
      if (found) return true;
      if (exhausted) return false;
    }
    return false;
  }

  // Returns a covering witness of total size `size`, or nullopt when proven
  // infeasible (check `exhausted` to distinguish a budget cut).
  std::optional<std::vector<long long>> run(long long size) {
    if (b > 1024 || size < 1) return std::nullopt;
    size_limit = size;
    chosen = {0};
    in.assign(static_cast<std::size_t>(b), 0);
    in[0] = 1;
    if (b > 1 && size >= 2) {
      chosen.push_back(1);
      in[1] = 1;
    }
    if (dfs()) {
      auto out = chosen;
      std::sort(out.begin(), out.end());
      return out;
    }
    return std::nullopt;
  }
};

// For b = 4w with w odd the cover condition factors through Z/4 x Z/w: with
// T_a = { x mod w : x in A, x = a (mod 4) }, the set covers Z/b iff for every
// class j of Z/4 the union of T_{a1} + T_{a2} over a1 + a2 = j (mod 4) is all
// of Z/w. The engine enumerates class sizes (t0..t3) under a per-class pair
// capacity filter, then T0, T2, T1 from subset lists with running uncovered
// masks, and completes T3 by a DFS on the unmet residues, branching on the
// requirement with the fewest candidate elements. This reaches proofs (such
// as b = 76) that the flat pair search cannot finish.
struct CrtFourProof {
  long long b;
  long long budget;
  long long* nodes;
  bool exhausted = false;

  int w = 0;
  std::uint32_t full = 0;
  std::uint32_t t0m = 0, t1m = 0, t2m = 0;       // fixed classes of the combo
  std::uint32_t c_d = 0, c_a = 0, c_c = 0, c_b = 0;  // requirements on T3
  int t3 = 0;
  std::uint32_t t3_out = 0;

  std::uint32_t rot(std::uint32_t m, int i) const {
    return ((m << i) | (m >> (w - i))) & full;
  }
  std::uint32_t add_sets(std::uint32_t a, std::uint32_t m) const {
    std::uint32_t out = 0;
    for (int i = 0; i < w && a >> i; ++i)
      if (a >> i & 1) out |= rot(m, i);
    return out;
  }
  std::uint32_t sub_from(int r, std::uint32_t m) const {  // { r - x : x in m }
    std::uint32_t refl = 0;
    for (int x = 0; x < w; ++x)
      if (m >> x & 1) refl |= 1u << ((w - x) % w);
    return rot(refl, r);
  }

  struct T3State {
    std::uint32_t part, ud, ua, uc, ub;
    int cnt;
  };

  // Adding one element touches each unmet mask through a single rotation.
  T3State extended(T3State st, int x) const {
    st.part |= 1u << x;
    st.ud &= ~rot(t0m, x);
    st.ua &= ~rot(t2m, x);
    st.uc &= ~rot(t1m, x);
    st.ub &= ~rot(st.part, x);
    ++st.cnt;
    return st;
  }

  bool t3_dfs(const T3State& st) {
    if (++*nodes > budget && budget >= 0) {
      exhausted = true;
      return false;
    }
    if (!st.ud && !st.ua && !st.uc && !st.ub) {
      t3_out = st.part;
      return true;
    }
    if (st.cnt >= t3) return false;
    // Capacity prunes: each of the q remaining elements covers at most
    // |T_a| bits of a cross-class requirement, and pair sums within T3 are
    // limited by q * cnt + q(q+1)/2.
    int q = t3 - st.cnt;
    if (std::popcount(st.ud) > q * std::popcount(t0m) ||
        std::popcount(st.ua) > q * std::popcount(t2m) ||
        std::popcount(st.uc) > q * std::popcount(t1m) ||
        std::popcount(st.ub) > q * st.cnt + q * (q + 1) / 2)
      return false;
    int best = -1;
    std::uint32_t best_cand = 0;
    auto consider = [&](std::uint32_t unmet, std::uint32_t src) {
      if (!unmet) return;
      int r = std::countr_zero(unmet);
      std::uint32_t cand = sub_from(r, src) & ~st.part;
      int k = std::popcount(cand);
      if (best < 0 || k < best) {
        best = k;
        best_cand = cand;
      }
    };
    consider(st.ud, t0m);
    consider(st.ua, t2m);
    consider(st.uc, t1m);
    if (best >= 0) {
      for (int x = 0; x < w; ++x)
        if (best_cand >> x & 1) {
          if (t3_dfs(extended(st, x))) return true;
          if (exhausted) return false;
        }
      return false;
    }
    // Only T3 + T3 requirements left: branch on unordered pairs for one bit.
    int r = std::countr_zero(st.ub);
    for (int x = 0; x < w; ++x) {
      int y = (r - x + w) % w;
      if (y < x) continue;
      std::uint32_t px = 1u << x, py = 1u << y;
      int need = static_cast<int>(!(st.part & px)) +
                 (y != x ? static_cast<int>(!(st.part & py)) : 0);
      if (need == 0 || need > q) continue;
      T3State next = st;
      if (!(next.part & px)) next = extended(next, x);
      if (!(next.part & py)) next = extended(next, y);
      if (t3_dfs(next)) return true;
      if (exhausted) return false;
    }
    return false;
  }

  static std::vector<std::uint32_t> subsets(int w, int k, std::uint32_t forced) {
    std::vector<std::uint32_t> out;
    int extra = k - std::popcount(forced);
    if (extra < 0) return out;
    std::vector<int> free_pos;
    for (int i = 0; i < w; ++i)
      if (!(forced >> i & 1)) free_pos.push_back(i);
    int f = static_cast<int>(free_pos.size());
    if (extra > f) return out;
    if (extra == 0) return {forced};
    std::vector<int> idx(extra);
    for (int i = 0; i < extra; ++i) idx[i] = i;
    while (true) {
      std::uint32_t m = forced;
      for (int i : idx) m |= 1u << free_pos[i];
      out.push_back(m);
      int i = extra - 1;
      while (i >= 0 && idx[i] == f - extra + i) --i;
      if (i < 0) break;
      ++idx[i];
      for (int j = i + 1; j < extra; ++j) idx[j] = idx[j - 1] + 1;
    }
    return out;
  }

  std::optional<std::vector<long long>> run(long long size) {
    w = static_cast<int>(b / 4);
    if (b % 4 != 0 || w % 2 == 0 || w < 3 || w > 31 || size < 2)
      return std::nullopt;
    full = (w == 31) ? 0x7fffffffu : (1u << w) - 1;
    int s = static_cast<int>(size);
    for (int a0 = 1; a0 <= s; ++a0)
      for (int a1 = 1; a0 + a1 <= s; ++a1)
        for (int a2 = 0; a0 + a1 + a2 <= s; ++a2) {
          int a3 = s - a0 - a1 - a2;
          if (a0 > w || a1 > w || a2 > w || a3 > w) continue;
          long long c0 = static_cast<long long>(a0) * (a0 + 1) / 2 +
                         static_cast<long long>(a1) * a3 +
                         static_cast<long long>(a2) * (a2 + 1) / 2;
          long long c1 = static_cast<long long>(a0) * a1 +
                         static_cast<long long>(a2) * a3;
          long long c2 = static_cast<long long>(a1) * (a1 + 1) / 2 +
                         static_cast<long long>(a0) * a2 +
                         static_cast<long long>(a3) * (a3 + 1) / 2;
          long long c3 = static_cast<long long>(a0) * a3 +
                         static_cast<long long>(a1) * a2;
          if (c0 < w || c1 < w || c2 < w || c3 < w) continue;
          t3 = a3;
          for (std::uint32_t T0 : subsets(w, a0, 1u)) {      // element 0
            std::uint32_t d00 = add_sets(T0, T0);
            for (std::uint32_t T2 : subsets(w, a2, 0u)) {
              std::uint32_t m0 = full & ~(d00 | add_sets(T2, T2));
              if (std::popcount(m0) > a1 * a3) continue;
              std::uint32_t m2 = full & ~add_sets(T0, T2);
              if (std::popcount(m2) > a1 * (a1 + 1) / 2 + a3 * (a3 + 1) / 2)
                continue;
              for (std::uint32_t T1 : subsets(w, a1, 2u)) {  // element 1
                std::uint32_t m1 = full & ~add_sets(T0, T1);
                if (std::popcount(m1) > a2 * a3) continue;
                std::uint32_t m2b = m2 & ~add_sets(T1, T1);
                if (std::popcount(m2b) > a3 * (a3 + 1) / 2) continue;
                std::uint32_t need3 = full & ~add_sets(T1, T2);
                if (std::popcount(need3) > a0 * a3) continue;
                t0m = T0;
                t1m = T1;
                t2m = T2;
                c_d = need3;                     // class 3 via T0 + T3
                c_a = m1;                        // class 1 via T2 + T3
                c_c = m0;                        // class 0 via T1 + T3
                c_b = m2b;                       // class 2 via T3 + T3
                if (t3_dfs(T3State{0, c_d, c_a, c_c, c_b, 0})) {
                  std::vector<long long> out;
                  const std::uint32_t ts[4] = {T0, T1, T2, t3_out};
                  for (int a = 0; a < 4; ++a)
                    for (int r = 0; r < w; ++r)
                      if (ts[a] >> r & 1)
                        for (long long x = 0; x < b; ++x)
                          if (x % 4 == a && x % w == r) out.push_back(x);
                  std::sort(out.begin(), out.end());
                  return out;
                }
                if (exhausted) return std::nullopt;
              }
            }
          }
        }
    return std::nullopt;
  }
};

}  // namespace

CyclicSearchResult cyclic_two_basis(long long u, long long v,
                                    long long node_budget, unsigned seed) {
  if (u < 1 || v < 1)
    throw std::invalid_argument("cyclic_two_basis: u, v must be >= 1");
  long long b = (3 * u * u + 3 * u + 1) * v * v;
  CyclicSearchResult res;
  res.target = (3 * u + 2) * v + u;

  auto baseline = two_scale_baseline(b);
  if (!cyclic_covers(baseline, b))
    throw std::logic_error("cyclic_two_basis: baseline failed verification");
  res.baseline_size = static_cast<long long>(baseline.size());

  std::vector<long long> best = baseline;
  auto shrunk = local_search_shrink(baseline, b, 64, seed);
  if (cyclic_covers(shrunk, b) && shrunk.size() < best.size()) best = shrunk;

  long long kmin = counting_min_with_zero(b);

  // Anneal downward from the incumbent for a tighter upper bound. The last
  // (failing) size dominates the cost, so restart effort shrinks with b.
  if (b <= 400) {
    int restarts = b <= 100 ? 60 : 12;
    while (static_cast<long long>(best.size()) > kmin) {
      auto found = anneal_cover(b, static_cast<long long>(best.size()) - 1,
                                seed, restarts, 200000);
      if (!found) break;
      best = *found;
    }
  }

  // Exhaustive proofs below the incumbent turn it into a proven optimum.
  // The engines force {0, 1}, which is only complete below the unit-free
  // floor; the CRT engine handles b = 4w (w odd), the pair search the rest.
  if (b <= 100) {
    long long floor_uf = unit_free_floor(b);
    bool all_proven = static_cast<long long>(best.size()) <= floor_uf;
    bool use_crt = b % 4 == 0 && (b / 4) % 2 == 1 && b / 4 >= 3 && b / 4 <= 31;
    for (long long s = kmin;
         all_proven && s < static_cast<long long>(best.size()); ++s) {
      std::optional<std::vector<long long>> counterexample;
      bool cut = false;
      if (use_crt) {
        CrtFourProof proof;
        proof.b = b;
        proof.budget = node_budget;
        proof.nodes = &res.nodes;
        counterexample = proof.run(s);
        cut = proof.exhausted;
      } else {
        InfeasibilityProof proof;
        proof.b = b;
        proof.budget = node_budget;
        proof.nodes = &res.nodes;
        counterexample = proof.run(s);
        cut = proof.exhausted;
      }
      if (counterexample) {
        best = *counterexample;  // smaller cover found by the proof itself
        break;
      }
      if (cut) all_proven = false;
    }
    res.exhaustive = all_proven;
  }

  if (!cyclic_covers(best, b))
    throw std::logic_error("cyclic_two_basis: unverified result");
  res.basis = CyclicBasis(best, b, 2);
  res.target_met = static_cast<long long>(best.size()) <= res.target;
  return res;
}

JiaShenBasis jia_shen_basis(long long n, int h, long long node_budget,
                            unsigned seed) {
  if (h < 3) throw std::invalid_argument("jia_shen_basis: h must be >= 3");
  JiaShenBasis out;
  if (n <= 16) {
    // Degenerate range: the pipeline's modulus dwarfs n, use the digit basis.
    out.basis = trivial_basis(n, h);
    out.fallback_trivial = true;
    out.ledger.actual_size = static_cast<long long>(out.basis.elements.size());
    return out;
  }
  out.params = jia_shen_params(n, h);
  const auto& p = out.params;
  auto cyc = cyclic_two_basis(p.u, p.v, node_budget, seed);
  auto c = interval_basis(-2, p.m, p.g);
  auto rec = lift_basis(cyc.basis, c, p.g, p.m, p.t);
  auto rep = coverage_range(rec.elements, h, 1, n);
  if (!rep.is_basis)
    throw std::logic_error("jia_shen_basis: verification over [1, n] failed");
  out.basis = IntegerBasis(rec.elements, n, h, /*allow_any=*/true);
  out.ledger.cyclic_size = static_cast<long long>(cyc.basis.residues.size());
  out.ledger.levels = p.t;
  out.ledger.interval_size = static_cast<long long>(c.size());
  out.ledger.total_bound = rec.size_bound;
  out.ledger.actual_size = static_cast<long long>(rec.elements.size());
  out.lift = std::move(rec);
  return out;
}

}  // namespace stampforge
