#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <thread>
#include <utility>
#include <vector>

#include "urp/errors.hpp"
#include "urp/finite_set.hpp"
#include "urp/integer.hpp"
#include "urp/text.hpp"

// Brute-force ground truth for r(n) and d(n) over explicit finite sets.
// Nothing in here shares code with the radix fast paths.
namespace urp::oracle {

// Closed interval [lo, hi].
struct Window {
  Integer lo;
  Integer hi;

  Integer size() const { return hi < lo ? Integer(0) : hi - lo + 1; }
  bool contains(const Integer& n) const { return lo <= n && n <= hi; }
  friend bool operator==(const Window&, const Window&) = default;
};

// "lo:hi"; either side may be negative.
inline Window parse_window(std::string_view text) {
  // The separator is the first ':' after position 0 so "-5:3" parses.
  auto colon = text.find(':', 1);
  if (colon == std::string_view::npos) throw InvalidInput("window must look like lo:hi, got '" + std::string(text) + "'");
  Window w{parse_integer(trim(text.substr(0, colon))), parse_integer(trim(text.substr(colon + 1)))};
  if (w.hi < w.lo) throw InvalidInput("window has hi < lo: '" + std::string(text) + "'");
  return w;
}

inline std::uint64_t r_of(const FiniteSet& a, const FiniteSet& b, const Integer& n) {
  if (n < 0) return 0;
  if (n > a.bound() || n > b.bound())
    throw IncompleteWindow("r(" + to_string(n) + ") needs both sets complete up to " + to_string(n), n);
  // Sorted merge: a ascending, n - a descending.
  std::uint64_t reps = 0;
  auto ia = a.begin();
  auto ib = b.elements().rbegin();
  while (ia != a.end() && ib != b.elements().rend()) {
    Integer s = *ia + *ib;
    if (s == n) {
      ++reps;
      ++ia;
      ++ib;
    } else if (s < n) {
      ++ia;
    } else {
      ++ib;
    }
  }
  return reps;
}

// A difference count is complete when no pair with a - b = n can have its
// larger member inside its own set's bound while the smaller member lies
// past the other set's bound. Otherwise the count is only a lower bound.
inline bool difference_complete(const FiniteSet& a, const FiniteSet& b, const Integer& n) {
  if (n >= 0) return a.bound() - n <= b.bound();
  return b.bound() + n <= a.bound();
}

struct DiffCount {
  std::uint64_t count = 0;
  bool complete = true;
  friend bool operator==(const DiffCount&, const DiffCount&) = default;
};

inline DiffCount d_of(const FiniteSet& a, const FiniteSet& b, const Integer& n) {
  DiffCount out;
  out.complete = difference_complete(a, b, n);
  // Sorted merge: both ascending, compare a - b against n.
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    Integer diff = *ia - *ib;
    if (diff == n) {
      ++out.count;
      ++ia;
      ++ib;
    } else if (diff < n) {
      ++ia;
    } else {
      ++ib;
    }
  }
  return out;
}

enum class Kind { Sum, Difference };

struct Representation {
  Integer a;
  Integer b;
  friend bool operator==(const Representation&, const Representation&) = default;
};

struct CensusBucket {
  std::uint64_t total = 0;
  std::vector<Integer> witnesses;  // ascending; capped by CensusOptions::witness_limit
  friend bool operator==(const CensusBucket&, const CensusBucket&) = default;
};

struct CensusHistogram {
  Kind kind = Kind::Sum;
  Window window;
  std::map<std::uint64_t, CensusBucket> counts;
  // Smallest n in the window whose count is not exactly one, with that count.
  std::optional<std::pair<Integer, std::uint64_t>> first_violation;

  std::uint64_t total() const {
    std::uint64_t t = 0;
    for (const auto& [c, bucket] : counts) t += bucket.total;
    return t;
  }
  bool all_unique() const { return !first_violation.has_value(); }
  friend bool operator==(const CensusHistogram&, const CensusHistogram&) = default;
};

struct CensusOptions {
  unsigned workers = 1;
  std::optional<std::size_t> witness_limit = std::nullopt;  // per c; unset keeps every n
};

namespace detail {

inline void check_window(Kind kind, const FiniteSet& a, const FiniteSet& b, const Window& w) {
  if (w.hi < w.lo) throw InvalidInput("empty census window");
  if (kind == Kind::Sum) {
    if (w.lo < 0) throw InvalidInput("sum census windows start at 0 or above");
    Integer limit = std::min(a.bound(), b.bound());
    if (w.hi > limit)
      throw IncompleteWindow("sum census up to " + to_string(w.hi) + " exceeds the provable range [0, " +
                                 to_string(limit) + "]",
                             w.hi);
  } else {
    // Completeness weakens toward n = 0 from either side.
    for (const Integer& n : {std::clamp(Integer(0), w.lo, w.hi), std::clamp(Integer(-1), w.lo, w.hi)}) {
      if (!difference_complete(a, b, n))
        throw IncompleteWindow("d(" + to_string(n) + ") is not certifiable from these bounds", n);
    }
  }
}

// Counts for n in [lo, lo + len) by enumerating every pair that lands there.
inline std::vector<std::uint64_t> tally_slice(Kind kind, const FiniteSet& a, const FiniteSet& b,
                                              const Integer& lo, std::size_t len) {
  std::vector<std::uint64_t> counts(len, 0);
  if (len == 0) return counts;
  Integer hi = lo + Integer(len) - 1;
  for (const auto& x : a) {
    // Sum: b in [lo - x, hi - x]. Difference (x - b = n): b in [x - hi, x - lo].
    Integer from = kind == Kind::Sum ? lo - x : x - hi;
    Integer to = kind == Kind::Sum ? hi - x : x - lo;
    auto first = std::lower_bound(b.begin(), b.end(), from);
    auto last = std::upper_bound(first, b.end(), to);
    for (auto it = first; it != last; ++it) {
      Integer n = kind == Kind::Sum ? x + *it : x - *it;
      ++counts[(n - lo).convert_to<std::size_t>()];
    }
  }
  return counts;
}

inline CensusHistogram census(Kind kind, const FiniteSet& a, const FiniteSet& b, const Window& window,
                              const CensusOptions& options) {
  check_window(kind, a, b, window);
  const std::size_t len = to_size(window.size());
  const std::size_t workers = std::clamp<std::size_t>(options.workers, 1, std::max<std::size_t>(len, 1));

  std::vector<std::vector<std::uint64_t>> parts(workers);
  std::vector<std::size_t> starts(workers + 1);
  for (std::size_t i = 0; i <= workers; ++i) starts[i] = len * i / workers;
  auto run = [&](std::size_t i) {
    parts[i] = tally_slice(kind, a, b, window.lo + Integer(starts[i]), starts[i + 1] - starts[i]);
  };
  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t i = 0; i < workers; ++i) pool.emplace_back(run, i);
    for (auto& t : pool) t.join();
  }

  CensusHistogram h;
  h.kind = kind;
  h.window = window;
  Integer n = window.lo;
  for (const auto& part : parts) {
    for (std::uint64_t c : part) {
      auto& bucket = h.counts[c];
      ++bucket.total;
      if (!options.witness_limit || bucket.witnesses.size() < *options.witness_limit) bucket.witnesses.push_back(n);
      if (c != 1 && !h.first_violation) h.first_violation = std::make_pair(n, c);
      ++n;
    }
  }
  return h;
}

}  // namespace detail

inline CensusHistogram sum_census(const FiniteSet& a, const FiniteSet& b, const Window& window,
                                  const CensusOptions& options = {}) {
  return detail::census(Kind::Sum, a, b, window, options);
}

inline CensusHistogram diff_census(const FiniteSet& a, const FiniteSet& b, const Window& window,
                                   const CensusOptions& options = {}) {
  return detail::census(Kind::Difference, a, b, window, options);
}

// Every representing pair for each n in the window, indexed by n - lo.
inline std::vector<std::vector<Representation>> representations(Kind kind, const FiniteSet& a, const FiniteSet& b,
                                                                 const Window& window) {
  detail::check_window(kind, a, b, window);
  std::vector<std::vector<Representation>> out(to_size(window.size()));
  for (const auto& x : a) {
    for (const auto& y : b) {
      Integer n = kind == Kind::Sum ? x + y : x - y;
      if (window.contains(n)) out[(n - window.lo).convert_to<std::size_t>()].push_back({x, y});
    }
  }
  return out;
}

}  // namespace urp::oracle
