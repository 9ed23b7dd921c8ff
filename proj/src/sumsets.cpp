#include "stampforge/sumsets.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <stdexcept>
#include <string>

namespace stampforge {

namespace {

std::vector<long long> sorted_unique(std::vector<long long> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

// Bit array over a contiguous integer window [lo, hi].
class BitWindow {
 public:
  BitWindow(long long lo, long long hi)
      : lo_(lo), size_(static_cast<std::size_t>(hi - lo + 1)),
        words_((size_ + 63) / 64, 0) {}

  void set(long long x) {
    std::size_t i = static_cast<std::size_t>(x - lo_);
    words_[i >> 6] |= std::uint64_t{1} << (i & 63);
  }
  bool test(long long x) const {
    if (x < lo_ || x - lo_ >= static_cast<long long>(size_)) return false;
    std::size_t i = static_cast<std::size_t>(x - lo_);
    return (words_[i >> 6] >> (i & 63)) & 1;
  }

  // this |= other shifted by `delta` positions (delta may be negative);
  // bits shifted outside the window are dropped.
  void or_shifted(const BitWindow& other, long long delta) {
    if (delta >= 0) {
      std::size_t wshift = static_cast<std::size_t>(delta) >> 6;
      unsigned bshift = static_cast<unsigned>(delta & 63);
      std::size_t n = words_.size();
      for (std::size_t i = n; i-- > 0;) {
        if (i < wshift) break;
        std::uint64_t w = other.words_[i - wshift] << bshift;
        if (bshift && i - wshift > 0)
          w |= other.words_[i - wshift - 1] >> (64 - bshift);
        words_[i] |= w;
      }
    } else {
      std::size_t d = static_cast<std::size_t>(-delta);
      std::size_t wshift = d >> 6;
      unsigned bshift = static_cast<unsigned>(d & 63);
      std::size_t n = words_.size();
      for (std::size_t i = 0; i < n; ++i) {
        std::size_t j = i + wshift;
        if (j >= n) break;
        std::uint64_t w = other.words_[j] >> bshift;
        if (bshift && j + 1 < n) w |= other.words_[j + 1] << (64 - bshift);
        words_[i] |= w;
      }
    }
    trim();
  }

 private:
  void trim() {
    unsigned tail = static_cast<unsigned>(size_ & 63);
    if (tail) words_.back() &= (std::uint64_t{1} << tail) - 1;
  }

  long long lo_;
  std::size_t size_;
  std::vector<std::uint64_t> words_;
};

}  // namespace

IntegerBasis::IntegerBasis(std::vector<long long> elems, long long n_, int h_,
                           bool allow_any)
    : elements(sorted_unique(std::move(elems))), n(n_), h(h_),
      allow_any_integers(allow_any) {
  if (n < 1) throw std::invalid_argument("IntegerBasis: n must be >= 1");
  if (h < 1) throw std::invalid_argument("IntegerBasis: h must be >= 1");
  if (elements.empty())
    throw std::invalid_argument("IntegerBasis: empty element set");
  if (!allow_any_integers) {
    if (elements.front() < 0 || elements.back() > n)
      throw std::invalid_argument(
          "IntegerBasis: element outside [0, n] (pass allow_any_integers to "
          "permit)");
  }
}

CyclicBasis::CyclicBasis(std::vector<long long> res, long long b, int k)
    : residues(sorted_unique(std::move(res))), modulus(b), order(k) {
  if (b < 1) throw std::invalid_argument("CyclicBasis: modulus must be >= 1");
  if (k < 1) throw std::invalid_argument("CyclicBasis: order must be >= 1");
  for (long long r : residues)
    if (r < 0 || r >= b)
      throw std::invalid_argument("CyclicBasis: residue outside [0, b-1]");
}

std::vector<long long> iterated_sumset(const std::vector<long long>& a, int i) {
  if (a.empty()) throw std::invalid_argument("iterated_sumset: empty set");
  if (i < 1) throw std::invalid_argument("iterated_sumset: i must be >= 1");
  std::set<long long> cur(a.begin(), a.end());
  for (int level = 2; level <= i; ++level) {
    std::set<long long> next;
    for (long long s : cur)
      for (long long e : a) next.insert(s + e);
    cur = std::move(next);
  }
  return {cur.begin(), cur.end()};
}

RepresentationTable representation_table(const std::vector<long long>& a,
                                         int i) {
  if (a.empty()) throw std::invalid_argument("representation_table: empty set");
  if (i < 1) throw std::invalid_argument("representation_table: i must be >= 1");
  std::map<long long, unsigned long long> counts;
  for (long long e : a) counts[e] += 1;
  for (int level = 2; level <= i; ++level) {
    std::map<long long, unsigned long long> next;
    for (const auto& [s, c] : counts)
      for (long long e : a) next[s + e] += c;
    counts = std::move(next);
  }
  RepresentationTable t;
  t.i = i;
  t.counts = std::move(counts);
  return t;
}

unsigned long long representation_count(const std::vector<long long>& a, int i,
                                        long long x) {
  auto t = representation_table(a, i);
  auto it = t.counts.find(x);
  return it == t.counts.end() ? 0 : it->second;
}

CoverageReport coverage_range(const std::vector<long long>& elements, int h,
                              long long lo, long long hi) {
  if (elements.empty())
    throw std::invalid_argument("coverage_range: empty element set");
  if (h < 1) throw std::invalid_argument("coverage_range: h must be >= 1");
  if (lo > hi) throw std::invalid_argument("coverage_range: lo > hi");

  long long emin = *std::min_element(elements.begin(), elements.end());
  long long emax = *std::max_element(elements.begin(), elements.end());

  // Window holding every intermediate sum of at most h elements that can
  // still reach a target. With nonnegative elements sums only grow, so the
  // window can be clipped at hi.
  long long wlo;
  long long whi;
  if (emin >= 0) {
    // Sums of nonnegative elements only grow, so anything past hi is dead.
    wlo = std::min(lo, 0LL);
    whi = hi;
  } else {
    wlo = std::min(lo, static_cast<long long>(h) * emin);
    whi = std::max(hi, static_cast<long long>(h) * std::max(emax, 0LL));
  }
  if (whi - wlo + 1 > (1LL << 28))
    throw std::invalid_argument("coverage_range: window too large");

  BitWindow level(wlo, whi);
  std::vector<std::uint8_t> min_level(static_cast<std::size_t>(hi - lo + 1), 0);

  auto absorb = [&](const BitWindow& s, int i) {
    for (long long x = lo; x <= hi; ++x) {
      std::size_t idx = static_cast<std::size_t>(x - lo);
      if (min_level[idx] == 0 && s.test(x))
        min_level[idx] = static_cast<std::uint8_t>(i);
    }
  };

  for (long long e : elements)
    if (e >= wlo && e <= whi) level.set(e);
  absorb(level, 1);

  for (int i = 2; i <= h; ++i) {
    BitWindow next(wlo, whi);
    for (long long e : elements) next.or_shifted(level, e);
    level = std::move(next);
    absorb(level, i);
  }

  CoverageReport rep;
  rep.lo = lo;
  rep.hi = hi;
  rep.h = h;
  rep.min_summands = std::move(min_level);
  for (long long x = lo; x <= hi; ++x)
    if (rep.min_summands[static_cast<std::size_t>(x - lo)] == 0)
      rep.uncovered.push_back(x);
  rep.is_basis = rep.uncovered.empty();
  return rep;
}

CoverageReport coverage(const IntegerBasis& basis) {
  return coverage_range(basis.elements, basis.h, 1, basis.n);
}

}  // namespace stampforge
