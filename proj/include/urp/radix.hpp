#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "urp/errors.hpp"
#include "urp/finite_set.hpp"
#include "urp/integer.hpp"
#include "urp/text.hpp"

namespace urp {

// Which set holds the even digit positions. EvenInA means 1 is in A.
enum class SideFlag { EvenInA, EvenInB };

enum class Which { A, B };

inline Which other(Which w) { return w == Which::A ? Which::B : Which::A; }
inline SideFlag flipped(SideFlag s) { return s == SideFlag::EvenInA ? SideFlag::EvenInB : SideFlag::EvenInA; }
inline char name_of(Which w) { return w == Which::A ? 'A' : 'B'; }
inline char name_of(SideFlag s) { return s == SideFlag::EvenInA ? 'A' : 'B'; }

// "A" or "B": the set that contains 1.
inline SideFlag parse_side(std::string_view text) {
  text = trim(text);
  if (text == "A" || text == "a") return SideFlag::EvenInA;
  if (text == "B" || text == "b") return SideFlag::EvenInB;
  throw InvalidInput("side must be 'A' or 'B', got '" + std::string(text) + "'");
}

inline Which parse_which(std::string_view text) {
  return parse_side(text) == SideFlag::EvenInA ? Which::A : Which::B;
}

// The radices m_1, m_2, ... as a finite prefix followed by a tail rule.
// Without a tail the sequence is only defined on its prefix, and asking for
// anything past it is an error rather than a guess.
class RadixSequence {
 public:
  struct Constant {
    Radix value;
    friend bool operator==(const Constant&, const Constant&) = default;
  };
  struct Cycle {
    std::vector<Radix> values;
    friend bool operator==(const Cycle&, const Cycle&) = default;
  };
  using Tail = std::variant<std::monostate, Constant, Cycle>;

  static constexpr std::size_t kDefaultPositionLimit = std::size_t{1} << 16;

  explicit RadixSequence(std::vector<Radix> prefix, Tail tail = std::monostate{})
      : prefix_(std::move(prefix)), tail_(std::move(tail)) {
    auto check = [](Radix m) {
      if (m < 2) throw InvalidInput("every radix must be at least 2, got " + std::to_string(m));
    };
    for (Radix m : prefix_) check(m);
    if (auto* c = std::get_if<Constant>(&tail_)) check(c->value);
    if (auto* c = std::get_if<Cycle>(&tail_)) {
      if (c->values.empty()) throw InvalidInput("a repeating tail needs at least one radix");
      for (Radix m : c->values) check(m);
    }
    if (prefix_.empty() && !has_tail()) throw InvalidInput("a radix sequence needs a prefix or a tail");
  }

  static RadixSequence constant(Radix m) { return RadixSequence({}, Constant{m}); }

  // Grammar: comma-separated prefix, then optionally '|' and a tail:
  // "c<m>" (constant) or "r<m>,<m>,..." (repeating cycle). E.g. "2,3|c2".
  static RadixSequence parse(std::string_view input) {
    std::string_view text = trim(input);
    std::string_view head = text;
    std::string_view tail_text;
    bool has_bar = false;
    if (auto bar = text.find('|'); bar != std::string_view::npos) {
      head = trim(text.substr(0, bar));
      tail_text = trim(text.substr(bar + 1));
      has_bar = true;
    }
    auto parse_list = [&](std::string_view list) {
      std::vector<Radix> out;
      for (auto part : split_on(list, ',')) {
        part = trim(part);
        if (part.empty()) throw InvalidInput("empty radix in '" + std::string(input) + "'");
        out.push_back(parse_u64(part));
      }
      return out;
    };
    std::vector<Radix> prefix;
    if (!head.empty()) prefix = parse_list(head);
    Tail tail = std::monostate{};
    if (has_bar) {
      if (tail_text.size() < 2 || (tail_text[0] != 'c' && tail_text[0] != 'r'))
        throw InvalidInput("tail must be 'c<m>' or 'r<m>,...' in '" + std::string(input) + "'");
      auto values = parse_list(tail_text.substr(1));
      if (tail_text[0] == 'c') {
        if (values.size() != 1) throw InvalidInput("constant tail takes one radix in '" + std::string(input) + "'");
        tail = Constant{values.front()};
      } else {
        tail = Cycle{std::move(values)};
      }
    }
    return RadixSequence(std::move(prefix), std::move(tail));
  }

  bool has_tail() const { return !std::holds_alternative<std::monostate>(tail_); }

  // Number of defined radices; max() when a tail is present.
  std::size_t defined_length() const {
    return has_tail() ? std::numeric_limits<std::size_t>::max() : prefix_.size();
  }

  // m_i, 1-indexed.
  Radix radix(std::size_t i) const {
    if (i == 0) throw IndexOutOfRange("radices are numbered from 1");
    if (i <= prefix_.size()) return prefix_[i - 1];
    if (i > position_limit_)
      throw LimitExceeded("radix index " + std::to_string(i) + " exceeds the position limit " +
                          std::to_string(position_limit_));
    std::size_t past = i - prefix_.size() - 1;
    if (auto* c = std::get_if<Constant>(&tail_)) return c->value;
    if (auto* c = std::get_if<Cycle>(&tail_)) return c->values[past % c->values.size()];
    throw IndexOutOfRange("radix m_" + std::to_string(i) + " is undefined: sequence has only " +
                          std::to_string(prefix_.size()) + " radices and no tail");
  }

  // Digit position p (0-indexed, epsilon_p) runs over [0, m_{p+1}).
  Radix at_position(std::size_t p) const { return radix(p + 1); }

  const std::vector<Radix>& prefix() const { return prefix_; }
  const Tail& tail() const { return tail_; }

  std::size_t position_limit() const { return position_limit_; }
  RadixSequence with_position_limit(std::size_t limit) const {
    RadixSequence copy = *this;
    copy.position_limit_ = limit;
    return copy;
  }

  std::string to_string() const {
    std::string out = join(prefix_, ",");
    if (auto* c = std::get_if<Constant>(&tail_)) out += "|c" + std::to_string(c->value);
    if (auto* c = std::get_if<Cycle>(&tail_)) out += "|r" + join(c->values, ",");
    return out;
  }

  friend bool operator==(const RadixSequence& a, const RadixSequence& b) {
    return a.prefix_ == b.prefix_ && a.tail_ == b.tail_;
  }

 private:
  std::vector<Radix> prefix_;
  Tail tail_;
  std::size_t position_limit_ = kDefaultPositionLimit;
};

// A radix sequence plus the side flag: defines the pair (A, B).
struct PairDescriptor {
  RadixSequence radix;
  SideFlag side = SideFlag::EvenInA;

  // Parity of the digit positions owned by `which`.
  std::size_t parity(Which which) const {
    bool even = (which == Which::A) == (side == SideFlag::EvenInA);
    return even ? 0 : 1;
  }
  bool owns(Which which, std::size_t position) const { return position % 2 == parity(which); }
};

// Canonical digits epsilon_0, epsilon_1, ...; empty encodes zero.
struct MixedRadixDigits {
  std::vector<Radix> digits;
  friend bool operator==(const MixedRadixDigits&, const MixedRadixDigits&) = default;
};

// w_j = m_1 * ... * m_j, w_0 = 1.
inline Integer weight(const RadixSequence& radix, std::size_t j) {
  Integer w = 1;
  for (std::size_t i = 1; i <= j; ++i) w *= radix.radix(i);
  return w;
}
inline Integer weight(const PairDescriptor& pd, std::size_t j) { return weight(pd.radix, j); }

namespace detail {

// w_0, ..., w_L with w_L > x (so every value <= x has digits only below L).
inline std::vector<Integer> weights_covering(const RadixSequence& radix, const Integer& x) {
  std::vector<Integer> w{Integer(1)};
  while (w.back() <= x) w.push_back(w.back() * radix.at_position(w.size() - 1));
  return w;
}

}  // namespace detail

inline MixedRadixDigits encode(const RadixSequence& radix, const Integer& n) {
  if (n < 0) throw InvalidInput("cannot encode negative value " + to_string(n));
  MixedRadixDigits out;
  Integer rest = n;
  Integer q, r;
  while (rest > 0) {
    Radix m = radix.at_position(out.digits.size());
    boost::multiprecision::divide_qr(rest, Integer(m), q, r);
    out.digits.push_back(r.convert_to<Radix>());
    rest = q;
  }
  return out;
}
inline MixedRadixDigits encode(const PairDescriptor& pd, const Integer& n) { return encode(pd.radix, n); }

inline Integer decode(const RadixSequence& radix, const MixedRadixDigits& d) {
  Integer value = 0;
  Integer w = 1;
  for (std::size_t p = 0; p < d.digits.size(); ++p) {
    Radix m = radix.at_position(p);
    if (d.digits[p] >= m)
      throw InvalidInput("digit " + std::to_string(d.digits[p]) + " at position " + std::to_string(p) +
                         " is out of range for radix " + std::to_string(m));
    value += w * d.digits[p];
    w *= m;
  }
  return value;
}
inline Integer decode(const PairDescriptor& pd, const MixedRadixDigits& d) { return decode(pd.radix, d); }

inline bool member(const PairDescriptor& pd, Which which, const Integer& n) {
  if (n < 0) return false;
  auto d = encode(pd.radix, n);
  for (std::size_t p = 0; p < d.digits.size(); ++p)
    if (!pd.owns(which, p) && d.digits[p] != 0) return false;
  return true;
}

// The idx-th smallest element (0-indexed): idx written in the mixed radix of
// the owned positions, digits placed back at those positions.
inline Integer nth_element(const PairDescriptor& pd, Which which, const Integer& idx) {
  if (idx < 0) throw InvalidInput("element index must be nonnegative");
  Integer rest = idx;
  Integer value = 0;
  Integer w = 1;
  Integer q, r;
  for (std::size_t p = 0; rest > 0; ++p) {
    Radix m = pd.radix.at_position(p);
    if (pd.owns(which, p)) {
      boost::multiprecision::divide_qr(rest, Integer(m), q, r);
      value += w * r;
      rest = q;
    }
    w *= m;
  }
  return value;
}

inline FiniteSet elements_up_to(const PairDescriptor& pd, Which which, const Integer& x) {
  if (x < 0) throw InvalidInput("bound must be nonnegative");
  auto w = detail::weights_covering(pd.radix, x);
  std::vector<Integer> values{Integer(0)};
  for (std::size_t p = 0; p + 1 < w.size(); ++p) {
    if (!pd.owns(which, p)) continue;
    Radix m = pd.radix.at_position(p);
    std::vector<Integer> next;
    next.reserve(values.size() * 2);
    for (const auto& base : values) {
      Integer v = base;
      for (Radix digit = 0; digit < m && v <= x; ++digit, v += w[p]) next.push_back(v);
    }
    values = std::move(next);
  }
  std::sort(values.begin(), values.end());
  return FiniteSet(std::move(values), x);
}

struct SumSplit {
  Integer a;
  Integer b;
  friend bool operator==(const SumSplit&, const SumSplit&) = default;
};

// The unique a in A, b in B with a + b = n.
inline SumSplit split(const PairDescriptor& pd, const Integer& n) {
  auto d = encode(pd.radix, n);
  Integer a = 0;
  Integer w = 1;
  for (std::size_t p = 0; p < d.digits.size(); ++p) {
    if (pd.owns(Which::A, p)) a += w * d.digits[p];
    w *= pd.radix.at_position(p);
  }
  return {a, n - a};
}

// |{s in set : s <= x}| by a most-significant-first digit walk.
inline Integer count(const PairDescriptor& pd, Which which, const Integer& x) {
  if (x < 0) return 0;
  auto d = encode(pd.radix, x);
  const std::size_t len = d.digits.size();
  // free_below[p] = number of owned-digit assignments on positions < p.
  std::vector<Integer> free_below(len + 1);
  free_below[0] = 1;
  for (std::size_t p = 0; p < len; ++p)
    free_below[p + 1] = pd.owns(which, p) ? free_below[p] * pd.radix.at_position(p) : free_below[p];

  Integer total = 0;
  for (std::size_t p = len; p-- > 0;) {
    Radix digit = d.digits[p];
    if (pd.owns(which, p)) {
      total += free_below[p] * digit;
    } else if (digit != 0) {
      // Forced zero here is already below x; everything lower is free.
      return total + free_below[p];
    }
  }
  return total + 1;  // x itself
}

}  // namespace urp
