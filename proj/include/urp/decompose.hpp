#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "urp/errors.hpp"
#include "urp/finite_set.hpp"
#include "urp/integer.hpp"
#include "urp/oracle.hpp"
#include "urp/radix.hpp"

namespace urp {

// One peel: C = {0, ..., m-1} + m*E and D = m*F on [0, bound].
struct PeelResult {
  Radix m = 0;
  FiniteSet e;
  FiniteSet f;
  Integer new_bound;
};

namespace detail {

// Smallest j >= 1 missing from `set`, or nullopt when [0, bound] is full.
inline std::optional<std::size_t> smallest_missing(const FiniteSet& set) {
  std::size_t i = 0;
  while (i < set.size() && set[i] == i) ++i;
  if (Integer(i) > set.bound()) return std::nullopt;
  return i;
}

}  // namespace detail

// `c` must contain 0 and 1, `d` must contain 0. Both are cut to the smaller
// bound. Only complete residue blocks are required to be full; the trailing
// partial block must still be a prefix of its block.
inline PeelResult peel(const FiniteSet& c_in, const FiniteSet& d_in, bool census = true) {
  const Integer bound = std::min(c_in.bound(), d_in.bound());
  const FiniteSet c = c_in.truncated(bound);
  const FiniteSet d = d_in.truncated(bound);

  if (!c.contains(0) || !d.contains(0))
    throw NotUniquePair("0 must lie in both sets", Integer(0), oracle::r_of(c, d, 0));
  if (bound < 1 || !c.contains(1)) throw InvalidInput("peel needs 1 in the first set");
  if (d.contains(1)) throw NotUniquePair("1 lies in both sets", Integer(1), oracle::r_of(c, d, 1));

  auto missing = detail::smallest_missing(c);
  if (!missing)
    throw DegeneratePair("first set contains all of [0, " + to_string(bound) + "]; no radix can be certified");
  const Radix m = *missing;
  const Integer big_m = m;

  if (!d.contains(big_m))
    throw StructureViolation(std::to_string(m) + " is missing from both sets", big_m);
  for (const auto& x : d) {
    if (x % big_m != 0)
      throw StructureViolation("element " + to_string(x) + " of the second set is not divisible by " +
                                   std::to_string(m),
                               x);
  }
  for (std::size_t i = 0; i < c.size();) {
    const Integer start = c[i] / big_m * big_m;
    Integer expected = start;
    for (; i < c.size() && c[i] < start + big_m; ++i, ++expected) {
      if (c[i] != expected)
        throw StructureViolation("block [" + to_string(start) + ", " + to_string(start + big_m - 1) +
                                     "] holds " + to_string(c[i]) + " but misses " + to_string(expected),
                                 c[i]);
    }
    if (start + big_m - 1 <= bound && expected != start + big_m)
      throw StructureViolation("complete block [" + to_string(start) + ", " + to_string(start + big_m - 1) +
                                   "] is only partly filled",
                               expected);
  }

  if (census) {
    auto h = oracle::sum_census(c, d, {0, bound}, {.workers = 1, .witness_limit = 0});
    if (h.first_violation) {
      const auto& [n, reps] = *h.first_violation;
      throw NotUniquePair("r(" + to_string(n) + ") = " + std::to_string(reps), n, reps);
    }
  }

  PeelResult out;
  out.m = m;
  out.new_bound = bound / big_m;
  std::vector<Integer> e, f;
  for (const auto& x : c)
    if (x % big_m == 0) e.push_back(x / big_m);
  for (const auto& x : d) f.push_back(x / big_m);
  out.e = FiniteSet(std::move(e), out.new_bound);
  out.f = FiniteSet(std::move(f), out.new_bound);
  return out;
}

enum class DecompositionStatus { Exhausted, Degenerate, NotUnique, StructureViolation };

inline const char* to_string(DecompositionStatus s) {
  switch (s) {
    case DecompositionStatus::Exhausted: return "Exhausted";
    case DecompositionStatus::Degenerate: return "Degenerate";
    case DecompositionStatus::NotUnique: return "NotUnique";
    case DecompositionStatus::StructureViolation: return "StructureViolation";
  }
  return "?";
}

struct DecompositionReport {
  std::vector<Radix> radix_prefix;
  SideFlag side = SideFlag::EvenInA;
  FiniteSet residual_a;
  FiniteSet residual_b;
  DecompositionStatus status = DecompositionStatus::Exhausted;
  std::optional<Integer> witness;  // in the coordinates of the original sets
  std::string detail;
  Integer bound;
  // Last radix was read off a saturated final block (assume_aligned_bound).
  bool final_radix_inferred = false;
};

struct DecomposeOptions {
  bool census = true;
  // Treat the common bound as w_j - 1 for some j. A final residual that
  // fills [0, N'] is then read as radix N' + 1 instead of stopping.
  bool assume_aligned_bound = false;
};

inline DecompositionReport decompose(const FiniteSet& a_in, const FiniteSet& b_in, const DecomposeOptions& options = {}) {
  DecompositionReport report;
  report.bound = std::min(a_in.bound(), b_in.bound());
  const FiniteSet a = a_in.truncated(report.bound);
  const FiniteSet b = b_in.truncated(report.bound);
  report.residual_a = a;
  report.residual_b = b;

  auto stop = [&](DecompositionStatus status, std::optional<Integer> witness, std::string detail) {
    report.status = status;
    report.witness = std::move(witness);
    report.detail = std::move(detail);
    return report;
  };

  if (!a.contains(0) || !b.contains(0))
    return stop(DecompositionStatus::NotUnique, Integer(0), "0 must lie in both sets");
  if (report.bound == 0) return stop(DecompositionStatus::Exhausted, std::nullopt, "bound 0 certifies no radix");
  const bool one_in_a = a.contains(1);
  const bool one_in_b = b.contains(1);
  if (one_in_a == one_in_b)
    return stop(DecompositionStatus::NotUnique, Integer(1), one_in_a ? "r(1) = 2" : "r(1) = 0");
  report.side = one_in_a ? SideFlag::EvenInA : SideFlag::EvenInB;

  if (options.census) {
    auto h = oracle::sum_census(a, b, {0, report.bound}, {.workers = 1, .witness_limit = 0});
    if (h.first_violation) {
      const auto& [n, reps] = *h.first_violation;
      return stop(DecompositionStatus::NotUnique, n, "r(" + to_string(n) + ") = " + std::to_string(reps));
    }
  }

  // Peels alternate: the residual of the set holding 1 is peeled against
  // the other, and the next residual holding 1 comes from the other side.
  FiniteSet c = one_in_a ? a : b;
  FiniteSet d = one_in_a ? b : a;
  Integer scale = 1;
  std::size_t level = 0;
  auto assign_residuals = [&] {
    // At even levels c descends from the set that held 1.
    bool c_is_holder = level % 2 == 0;
    bool c_is_a = c_is_holder == one_in_a;
    report.residual_a = c_is_a ? c : d;
    report.residual_b = c_is_a ? d : c;
  };

  for (;; ++level) {
    auto missing = detail::smallest_missing(c);
    if (!missing) {
      if (level == 0)
        return stop(DecompositionStatus::Degenerate, std::nullopt,
                    "the set holding 1 contains all of [0, " + to_string(report.bound) + "]");
      const Integer& n = c.bound();
      if (options.assume_aligned_bound && n >= 1 && d.size() == 1) {
        report.radix_prefix.push_back((n + 1).convert_to<Radix>());
        report.final_radix_inferred = true;
        FiniteSet zero({Integer(0)}, 0);
        c = zero;
        d = zero;
        ++level;
      }
      assign_residuals();
      return stop(DecompositionStatus::Exhausted, std::nullopt, "");
    }
    try {
      PeelResult step = peel(c, d, false);
      report.radix_prefix.push_back(step.m);
      scale *= step.m;
      c = std::move(step.f);
      d = std::move(step.e);
    } catch (const urp::StructureViolation& e) {
      assign_residuals();
      return stop(DecompositionStatus::StructureViolation, scale * e.witness, e.what());
    } catch (const NotUniquePair& e) {
      assign_residuals();
      return stop(DecompositionStatus::NotUnique, scale * e.witness, e.what());
    }
  }
}

// Rebuilds one input set on [0, bound] from the recovered radices and its
// residual: (owned digits below position j) + w_j * residual.
inline FiniteSet reconstruct(const DecompositionReport& report, Which which, const Integer& bound) {
  const auto& residual = which == Which::A ? report.residual_a : report.residual_b;
  const std::size_t j = report.radix_prefix.size();
  if (j == 0) return residual.truncated(std::min(bound, residual.bound()));

  PairDescriptor pd{RadixSequence(report.radix_prefix), report.side};
  std::vector<Integer> low{Integer(0)};
  Integer w = 1;
  for (std::size_t p = 0; p < j; ++p) {
    Radix m = pd.radix.at_position(p);
    if (pd.owns(which, p)) {
      std::vector<Integer> next;
      for (const auto& base : low)
        for (Radix digit = 0; digit < m; ++digit) next.push_back(base + w * digit);
      low = std::move(next);
    }
    w *= m;
  }
  std::vector<Integer> values;
  for (const auto& r : residual)
    for (const auto& x : low) {
      Integer v = x + w * r;
      if (v <= bound) values.push_back(std::move(v));
    }
  return FiniteSet::from_unsorted(std::move(values), bound);
}

}  // namespace urp
