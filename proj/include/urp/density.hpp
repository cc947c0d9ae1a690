#pragma once

#include <algorithm>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "urp/errors.hpp"
#include "urp/integer.hpp"
#include "urp/radix.hpp"

namespace urp {

// D_k = 1/m_k - 1/(m_k m_{k-1}) + ... + (-1)^{k-1}/(m_k ... m_1), summed as written.
inline Rational dk(const RadixSequence& radix, std::size_t k) {
  if (k == 0) throw InvalidInput("D_k is defined for k >= 1");
  Rational sum = 0;
  Integer denom = 1;
  for (std::size_t i = 0; i < k; ++i) {
    denom *= radix.radix(k - i);
    Rational term(Integer(1), denom);
    if (i % 2 == 0)
      sum += term;
    else
      sum -= term;
  }
  return sum;
}

// D_k = (1 - D_{k-1}) / m_k with D_0 = 0.
inline Rational dk_recurrence(const RadixSequence& radix, std::size_t k) {
  if (k == 0) throw InvalidInput("D_k is defined for k >= 1");
  Rational d = 0;
  for (std::size_t i = 1; i <= k; ++i) d = (1 - d) / Rational(Integer(radix.radix(i)));
  return d;
}

// 2 / (1 + D_k)
inline Rational dk_profile(const Rational& d) { return Rational(2) / (1 + d); }

struct DkEntry {
  std::size_t k = 0;
  Rational dk;
  Rational profile;
};

inline std::vector<DkEntry> dk_table(const RadixSequence& radix, std::size_t k_max) {
  std::vector<DkEntry> out;
  Rational d = 0;
  for (std::size_t k = 1; k <= k_max; ++k) {
    d = (1 - d) / Rational(Integer(radix.radix(k)));
    out.push_back({k, d, dk_profile(d)});
  }
  return out;
}

// A(x), B(x) and the unreduced ratio A(x)B(x)/x.
struct DensityPoint {
  Integer x;
  Integer count_a;
  Integer count_b;

  Integer ratio_num() const { return count_a * count_b; }
  const Integer& ratio_den() const { return x; }
  Rational ratio() const { return Rational(ratio_num(), x); }
  friend bool operator==(const DensityPoint&, const DensityPoint&) = default;
};

inline DensityPoint density_point(const PairDescriptor& pd, const Integer& x) {
  if (x < 1) throw InvalidInput("density ratio needs x >= 1");
  return {x, count(pd, Which::A, x), count(pd, Which::B, x)};
}

// Points at x = stride, 2*stride, ... <= x_max.
inline std::vector<DensityPoint> ratio_curve(const PairDescriptor& pd, const Integer& x_max, const Integer& stride = 1) {
  if (x_max < 1) throw InvalidInput("ratio curve needs x_max >= 1");
  if (stride < 1) throw InvalidInput("stride must be positive");
  std::vector<DensityPoint> out;
  for (Integer x = stride; x <= x_max; x += stride) out.push_back(density_point(pd, x));
  return out;
}

struct LiminfPoint {
  std::size_t k = 0;
  DensityPoint point;
};

// x_k = w_{2k} - 1, where A(x_k) B(x_k) = x_k + 1.
inline std::vector<LiminfPoint> liminf_points(const PairDescriptor& pd, std::size_t k_max) {
  if (k_max < 1) throw InvalidInput("k_max must be at least 1");
  std::vector<LiminfPoint> out;
  Integer w = 1;
  Integer odd = 1, even = 1;  // m_1 m_3 ..., m_2 m_4 ...
  for (std::size_t k = 1; k <= k_max; ++k) {
    Radix m_odd = pd.radix.radix(2 * k - 1);
    Radix m_even = pd.radix.radix(2 * k);
    w *= m_odd;
    w *= m_even;
    odd *= m_odd;
    even *= m_even;
    auto p = density_point(pd, w - 1);
    const Integer& holder = pd.side == SideFlag::EvenInA ? p.count_a : p.count_b;
    const Integer& partner = pd.side == SideFlag::EvenInA ? p.count_b : p.count_a;
    if (holder != odd || partner != even || p.ratio_num() != p.x + 1)
      throw std::logic_error("liminf identity failed at k = " + std::to_string(k));
    out.push_back({k, std::move(p)});
  }
  return out;
}

struct RatioExtrema {
  DensityPoint max;
  DensityPoint min;
};

// Exact extrema of A(x)B(x)/x over every integer in [lo, hi]. Counts are
// constant between consecutive elements of A u B, so the ratio falls on each
// such stretch: maxima sit at stretch starts, minima at stretch ends. Ties
// resolve to the largest x (all-2 peaks repeat: 512/341 == 1024/682).
inline RatioExtrema ratio_extrema(const PairDescriptor& pd, const Integer& lo, const Integer& hi) {
  if (lo < 1 || hi < lo) throw InvalidInput("ratio extrema need 1 <= lo <= hi");
  const FiniteSet a = elements_up_to(pd, Which::A, hi);
  const FiniteSet b = elements_up_to(pd, Which::B, hi);

  std::vector<Integer> starts{lo};
  std::vector<Integer> ends{hi};
  for (const FiniteSet* s : {&a, &b}) {
    for (auto it = std::upper_bound(s->begin(), s->end(), lo); it != s->end(); ++it) {
      starts.push_back(*it);
      ends.push_back(*it - 1);
    }
  }
  auto at = [&](const Integer& x) {
    return DensityPoint{x, Integer(a.count_up_to(x)), Integer(b.count_up_to(x))};
  };
  // p < q as ratios, by cross multiplication.
  auto less = [](const DensityPoint& p, const DensityPoint& q) { return p.ratio_num() * q.x < q.ratio_num() * p.x; };

  std::sort(starts.begin(), starts.end());
  std::sort(ends.begin(), ends.end());
  RatioExtrema out{at(lo), at(lo)};
  for (const auto& x : starts) {
    auto p = at(x);
    if (!less(p, out.max)) out.max = std::move(p);
  }
  for (const auto& x : ends) {
    auto p = at(x);
    if (!less(out.min, p)) out.min = std::move(p);
  }
  return out;
}

inline std::string format_float(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9f", v);
  return buf;
}

inline void write_density_csv(std::ostream& out, const std::vector<DensityPoint>& points) {
  out << "x,A(x),B(x),ratio_num,ratio_den,ratio_float\n";
  for (const auto& p : points)
    out << p.x << ',' << p.count_a << ',' << p.count_b << ',' << p.ratio_num() << ',' << p.ratio_den() << ','
        << format_float(to_double(p.ratio())) << '\n';
}

inline void write_dk_csv(std::ostream& out, const std::vector<DkEntry>& table) {
  out << "k,Dk_num,Dk_den,profile_float\n";
  for (const auto& e : table)
    out << e.k << ',' << numerator(e.dk) << ',' << denominator(e.dk) << ',' << format_float(to_double(e.profile))
        << '\n';
}

}  // namespace urp
