#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <ostream>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "urp/errors.hpp"
#include "urp/finite_set.hpp"
#include "urp/integer.hpp"
#include "urp/oracle.hpp"
#include "urp/radix.hpp"
#include "urp/text.hpp"

namespace urp {

// I_k = A_k - B_k, an interval of exactly w_{2k} integers.
struct DiffInterval {
  std::size_t k = 0;
  Integer lo;
  Integer hi;

  Integer size() const { return hi - lo + 1; }
  bool contains(const Integer& n) const { return lo <= n && n <= hi; }
  friend bool operator==(const DiffInterval&, const DiffInterval&) = default;
};

inline DiffInterval interval_bounds(const PairDescriptor& pd, std::size_t k) {
  if (k < 1) throw InvalidInput("interval index k must be at least 1");
  // Written for the set holding the even positions; the other side flag
  // negates the interval.
  Integer lo = 0, hi = 0;
  Integer w = 1;  // w_{2i-2}
  for (std::size_t i = 1; i <= k; ++i) {
    Radix m_odd = pd.radix.radix(2 * i - 1);
    Radix m_even = pd.radix.radix(2 * i);
    hi += Integer(m_odd - 1) * w;
    w *= m_odd;
    lo -= Integer(m_even - 1) * w;
    w *= m_even;
  }
  if (pd.side == SideFlag::EvenInB) return {k, -hi, -lo};
  return {k, lo, hi};
}

struct DifferencePair {
  Integer a;
  Integer b;
  friend bool operator==(const DifferencePair&, const DifferencePair&) = default;
};

namespace detail {

inline Integer floor_div(const Integer& v, const Integer& d) {
  Integer q, r;
  boost::multiprecision::divide_qr(v, d, q, r);
  if (r != 0 && v < 0) --q;
  return q;
}

}  // namespace detail

// The unique a in A, b in B with a - b = n. Digits of b are fixed from the
// least significant position up: each B-owned digit is chosen to cancel the
// digit of n + b at that position, carries included.
inline DifferencePair solve_difference(const PairDescriptor& pd, const Integer& n) {
  std::size_t k = 1;
  while (!interval_bounds(pd, k).contains(n)) ++k;
  const std::size_t safety = 2 * k + 2;

  Integer v = n;
  Integer b = 0;
  Integer w = 1;
  for (std::size_t p = 0;; ++p) {
    if (p >= safety)
      throw std::logic_error("difference solver did not settle within w_" + std::to_string(safety) + " for n = " +
                             to_string(n));
    const Radix m = pd.radix.at_position(p);
    if (pd.owns(Which::B, p)) {
      Integer digit = detail::floor_div(v, w) % m;
      if (digit < 0) digit += m;
      if (digit != 0) {
        Integer step = (Integer(m) - digit) * w;
        v += step;
        b += step;
      }
    }
    w *= m;
    if (v >= 0 && v < w) return {v, b};
  }
}

namespace detail {

// u_k = 2^{2k-1} + 2 - 2^{k-1}; the half terms cancel at k = 0, leaving 2.
inline Integer gadget_u(std::size_t k) {
  if (k == 0) return 2;
  return pow2(2 * k - 1) + 2 - pow2(k - 1);
}

inline std::vector<Integer> collapse(std::vector<Integer> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace detail

// The n-th gadget: offsets indexed by k = 0..n, plus their collapsed sets.
struct GadgetFamily {
  std::size_t n = 0;
  Integer t = 0;
  std::vector<Integer> c_offsets_raw;
  std::vector<Integer> d_offsets_raw;
  std::vector<Integer> c_offsets;  // collapsed, ascending
  std::vector<Integer> d_offsets;

  std::vector<Integer> c_elements() const { return shifted(c_offsets); }
  std::vector<Integer> d_elements() const { return shifted(d_offsets); }

 private:
  std::vector<Integer> shifted(const std::vector<Integer>& offsets) const {
    std::vector<Integer> out;
    for (const auto& o : offsets) out.push_back(t + o);
    return out;
  }
};

inline GadgetFamily gadget_offsets(std::size_t n, const Integer& t = 0) {
  GadgetFamily g;
  g.n = n;
  g.t = t;
  for (std::size_t k = 0; k <= n; ++k) {
    Integer u = detail::gadget_u(k);
    g.c_offsets_raw.push_back(u - (pow2(k) - 2) * k);
    g.d_offsets_raw.push_back(u - (pow2(k) - 1) * k);
    if (g.c_offsets_raw[k] - g.d_offsets_raw[k] != k)
      throw std::logic_error("gadget diagonal broken at k = " + std::to_string(k));
  }
  g.c_offsets = detail::collapse(g.c_offsets_raw);
  g.d_offsets = detail::collapse(g.d_offsets_raw);
  return g;
}

// A complement pair supplied as input; a_i, b_i are 1-indexed in the sorted order.
struct BasePair {
  FiniteSet a;
  FiniteSet b;
};

// A gadget element that was already present, either in the base or in an
// earlier gadget. The merge keeps one copy.
struct Collision {
  std::size_t family = 0;
  Which set = Which::A;
  Integer value;
  std::size_t with_family = 0;  // 0 means the base set
};

// A diagonal pair (T + c_k, T + d_k) that was already a pair of the base or
// of an earlier gadget, so it does not add to d(k).
struct DiagonalClash {
  std::size_t family = 0;
  std::size_t k = 0;
  Integer a;
  Integer b;
};

// Checks A(x) - A1(x) <= sqrt(A1(x)) at every x up to the bound.
struct SlackCheck {
  std::size_t added = 0;
  std::optional<Integer> first_violation;
  bool holds() const { return !first_violation; }
};

struct GadgetPlacement {
  BasePair base;
  unsigned exponent = 4;
  FiniteSet a;
  FiniteSet b;
  std::vector<GadgetFamily> families;
  std::vector<Collision> collisions;
  std::vector<DiagonalClash> unresolved;
  SlackCheck slack_a;
  SlackCheck slack_b;
};

namespace detail {

inline SlackCheck slack(const FiniteSet& base, const FiniteSet& merged) {
  SlackCheck out;
  std::size_t base_count = 0;
  for (const auto& x : merged) {
    if (std::binary_search(base.begin(), base.end(), x)) {
      ++base_count;
    } else {
      ++out.added;
      if (!out.first_violation && out.added * out.added > base_count) out.first_violation = x;
    }
  }
  return out;
}

}  // namespace detail

// A = A1 u C_1 u ... u C_nmax and B likewise, with T_n = max{a_{n^e}, b_{n^e}}.
// The result is the finite-stage construction; its bounds are the base bounds.
inline GadgetPlacement place_gadgets(const BasePair& base, std::size_t n_max, unsigned exponent = 4) {
  if (base.a.empty() || base.b.empty() || base.a[0] != 0 || base.b[0] != 0)
    throw InvalidInput("base sets must both contain 0");
  GadgetPlacement out;
  out.base = base;
  out.exponent = exponent;

  std::vector<Integer> a_values = base.a.elements();
  std::vector<Integer> b_values = base.b.elements();
  // Diagonal pairs contributed so far by earlier gadgets.
  std::set<std::pair<Integer, Integer>> pairs_seen;
  std::vector<std::pair<Integer, std::size_t>> added_a, added_b;  // value, family

  for (std::size_t n = 1; n <= n_max; ++n) {
    Integer idx = boost::multiprecision::pow(Integer(n), exponent);
    if (idx > base.a.size() || idx > base.b.size())
      throw IndexOutOfRange("gadget " + std::to_string(n) + " needs a_" + to_string(idx) + " and b_" +
                            to_string(idx) + " but the base holds " + std::to_string(base.a.size()) + " and " +
                            std::to_string(base.b.size()) + " elements");
    std::size_t i = idx.convert_to<std::size_t>() - 1;
    GadgetFamily g = gadget_offsets(n, std::max(base.a[i], base.b[i]));

    auto place = [&](const std::vector<Integer>& elements, Which which) {
      const FiniteSet& home = which == Which::A ? base.a : base.b;
      auto& added = which == Which::A ? added_a : added_b;
      auto& values = which == Which::A ? a_values : b_values;
      for (const auto& x : elements) {
        if (x > home.bound())
          throw IndexOutOfRange("gadget " + std::to_string(n) + " element " + to_string(x) + " exceeds the base bound " +
                                to_string(home.bound()));
        if (home.contains(x)) {
          out.collisions.push_back({n, which, x, 0});
          continue;
        }
        auto prior = std::find_if(added.begin(), added.end(), [&](const auto& e) { return e.first == x; });
        if (prior != added.end()) {
          out.collisions.push_back({n, which, x, prior->second});
          continue;
        }
        added.emplace_back(x, n);
        values.push_back(x);
      }
    };
    place(g.c_elements(), Which::A);
    place(g.d_elements(), Which::B);

    for (std::size_t k = 0; k <= n; ++k) {
      Integer pa = g.t + g.c_offsets_raw[k];
      Integer pb = g.t + g.d_offsets_raw[k];
      bool in_base = base.a.contains(pa) && base.b.contains(pb);
      if (in_base || !pairs_seen.emplace(pa, pb).second) out.unresolved.push_back({n, k, pa, pb});
    }
    out.families.push_back(std::move(g));
  }

  out.a = FiniteSet::from_unsorted(std::move(a_values), base.a.bound());
  out.b = FiniteSet::from_unsorted(std::move(b_values), base.b.bound());
  out.slack_a = detail::slack(base.a, out.a);
  out.slack_b = detail::slack(base.b, out.b);
  return out;
}

// d(k) >= d_base(k) + #{gadgets n >= k}, from the diagonal pairs.
struct LowerBoundCheck {
  Integer k;
  std::uint64_t expected = 0;
  std::uint64_t observed = 0;
  bool sound = true;  // no unresolved diagonal clash at this k
  bool holds() const { return observed >= expected; }
};

struct MultiplicityReport {
  oracle::CensusHistogram census;
  std::uint64_t c_max = 0;
  std::uint64_t above_c_max = 0;  // window values with d(n) > c_max
  std::vector<LowerBoundCheck> checks;
};

inline MultiplicityReport multiplicity_report(const FiniteSet& a, const FiniteSet& b, const oracle::Window& window,
                                              std::uint64_t c_max, const GadgetPlacement* placement = nullptr,
                                              const oracle::CensusOptions& options = {}) {
  MultiplicityReport out;
  out.census = oracle::diff_census(a, b, window, options);
  out.c_max = c_max;
  for (const auto& [c, bucket] : out.census.counts)
    if (c > c_max) out.above_c_max += bucket.total;
  if (!placement) return out;

  const Integer n_max = placement->families.size();
  for (Integer k = std::max(window.lo, Integer(0)); k <= std::min(window.hi, n_max); ++k) {
    LowerBoundCheck check;
    check.k = k;
    check.expected = oracle::d_of(placement->base.a, placement->base.b, k).count;
    for (const auto& g : placement->families)
      if (Integer(g.n) >= k) ++check.expected;
    check.observed = oracle::d_of(a, b, k).count;
    for (const auto& clash : placement->unresolved)
      if (Integer(clash.k) == k) check.sound = false;
    out.checks.push_back(std::move(check));
  }
  return out;
}

inline void write_gadget_csv(std::ostream& out, const GadgetPlacement& placement) {
  out << "n,T_n,c_offsets,d_offsets,collisions\n";
  for (const auto& g : placement.families) {
    std::vector<std::string> hits;
    for (const auto& c : placement.collisions) {
      if (c.family != g.n) continue;
      hits.push_back(std::string(1, name_of(c.set)) + ":" + to_string(c.value) +
                     (c.with_family == 0 ? "@base" : "@gadget" + std::to_string(c.with_family)));
    }
    out << g.n << ',' << g.t << ',' << join(g.c_offsets, ";") << ',' << join(g.d_offsets, ";") << ',';
    for (std::size_t i = 0; i < hits.size(); ++i) out << (i ? ";" : "") << hits[i];
    out << '\n';
  }
}

// One row per n in the window; needs a census that kept every witness.
inline void write_census_csv(std::ostream& out, const oracle::CensusHistogram& census) {
  std::vector<std::pair<Integer, std::uint64_t>> rows;
  for (const auto& [c, bucket] : census.counts) {
    if (bucket.witnesses.size() != bucket.total)
      throw InvalidInput("census CSV needs every witness; rerun without a witness limit");
    for (const auto& n : bucket.witnesses) rows.emplace_back(n, c);
  }
  std::sort(rows.begin(), rows.end());
  out << (census.kind == oracle::Kind::Sum ? "n,r(n)\n" : "n,d(n)\n");
  for (const auto& [n, c] : rows) out << n << ',' << c << '\n';
}

}  // namespace urp
