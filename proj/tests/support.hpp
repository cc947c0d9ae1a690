#pragma once

// Test-only oracles. These deliberately avoid the library's radix code paths.

#include <cstdint>
#include <random>
#include <vector>

#include "urp/finite_set.hpp"
#include "urp/integer.hpp"
#include "urp/radix.hpp"

namespace urp::test {

// Moser-de Bruijn: base-4 digits all in {0, 1}.
inline bool is_moser(std::uint64_t n) {
  for (; n > 0; n /= 4)
    if (n % 4 > 1) return false;
  return true;
}

inline FiniteSet moser_a(std::uint64_t bound) {
  std::vector<Integer> v;
  for (std::uint64_t n = 0; n <= bound; ++n)
    if (is_moser(n)) v.emplace_back(n);
  return FiniteSet(std::move(v), bound);
}

inline FiniteSet moser_b(std::uint64_t bound) {
  std::vector<Integer> v;
  for (std::uint64_t n = 0; n <= bound; n += 2)
    if (is_moser(n / 2)) v.emplace_back(n);
  return FiniteSet(std::move(v), bound);
}

// Every value sum_{owned p < len} e_p * w_p with explicit weights, by an
// odometer over digit tuples, cut to `bound`.
inline FiniteSet odometer_set(const std::vector<Radix>& radices, std::size_t parity, std::uint64_t bound) {
  std::vector<std::uint64_t> w{1};
  for (Radix m : radices) w.push_back(w.back() * m);
  std::vector<std::size_t> owned;
  for (std::size_t p = parity; p < radices.size(); p += 2) owned.push_back(p);
  std::vector<Radix> digit(owned.size(), 0);
  std::vector<Integer> out;
  for (;;) {
    std::uint64_t value = 0;
    for (std::size_t i = 0; i < owned.size(); ++i) value += digit[i] * w[owned[i]];
    if (value <= bound) out.emplace_back(value);
    std::size_t i = 0;
    while (i < owned.size() && ++digit[i] == radices[owned[i]]) digit[i++] = 0;
    if (i == owned.size()) break;
  }
  return FiniteSet::from_unsorted(std::move(out), bound);
}

inline std::vector<Radix> random_radices(std::mt19937_64& rng, std::size_t len, Radix lo = 2, Radix hi = 6) {
  std::uniform_int_distribution<Radix> dist(lo, hi);
  std::vector<Radix> out(len);
  for (auto& m : out) m = dist(rng);
  return out;
}

// A random finite prefix with a random repeating tail.
inline RadixSequence random_sequence(std::mt19937_64& rng, std::size_t len) {
  return RadixSequence(random_radices(rng, len), RadixSequence::Cycle{random_radices(rng, 3)});
}

inline std::uint64_t product(const std::vector<Radix>& radices, std::size_t j) {
  std::uint64_t w = 1;
  for (std::size_t i = 0; i < j; ++i) w *= radices[i];
  return w;
}

inline FiniteSet set_of(std::initializer_list<int> values, int bound) {
  std::vector<Integer> v(values.begin(), values.end());
  return FiniteSet(std::move(v), bound);
}

}  // namespace urp::test
