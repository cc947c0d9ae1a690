#pragma once

#include <algorithm>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "urp/errors.hpp"
#include "urp/integer.hpp"
#include "urp/text.hpp"

namespace urp {

// A sorted prefix of a set of nonnegative integers. The set promises to hold
// every element of the underlying (possibly infinite) set that is <= bound.
class FiniteSet {
 public:
  FiniteSet() = default;

  FiniteSet(std::vector<Integer> elements, Integer bound)
      : elements_(std::move(elements)), bound_(std::move(bound)) {
    if (bound_ < 0) throw InvalidInput("set bound must be nonnegative");
    for (std::size_t i = 0; i < elements_.size(); ++i) {
      if (elements_[i] < 0) throw InvalidInput("negative set element " + to_string(elements_[i]));
      if (i > 0 && elements_[i] <= elements_[i - 1])
        throw InvalidInput("set elements must be strictly increasing at " + to_string(elements_[i]));
    }
    if (!elements_.empty() && elements_.back() > bound_)
      throw InvalidInput("element " + to_string(elements_.back()) + " exceeds bound " + to_string(bound_));
  }

  // Sorts and deduplicates; returns the number of duplicates dropped via `dropped`.
  static FiniteSet from_unsorted(std::vector<Integer> elements, Integer bound,
                                 std::size_t* dropped = nullptr) {
    std::sort(elements.begin(), elements.end());
    auto last = std::unique(elements.begin(), elements.end());
    if (dropped) *dropped = static_cast<std::size_t>(elements.end() - last);
    elements.erase(last, elements.end());
    return FiniteSet(std::move(elements), std::move(bound));
  }

  const std::vector<Integer>& elements() const { return elements_; }
  const Integer& bound() const { return bound_; }
  std::size_t size() const { return elements_.size(); }
  bool empty() const { return elements_.empty(); }
  const Integer& operator[](std::size_t i) const { return elements_[i]; }
  auto begin() const { return elements_.begin(); }
  auto end() const { return elements_.end(); }

  // Membership is only knowable up to the bound.
  bool contains(const Integer& x) const {
    if (x > bound_)
      throw IncompleteWindow("membership of " + to_string(x) + " is beyond bound " + to_string(bound_), x);
    return std::binary_search(elements_.begin(), elements_.end(), x);
  }

  // Number of stored elements <= x (x must not exceed the bound).
  std::size_t count_up_to(const Integer& x) const {
    if (x > bound_)
      throw IncompleteWindow("count up to " + to_string(x) + " is beyond bound " + to_string(bound_), x);
    return static_cast<std::size_t>(std::upper_bound(elements_.begin(), elements_.end(), x) - elements_.begin());
  }

  FiniteSet truncated(const Integer& new_bound) const {
    if (new_bound > bound_)
      throw IncompleteWindow("cannot extend a set past its bound", new_bound);
    auto cut = std::upper_bound(elements_.begin(), elements_.end(), new_bound);
    return FiniteSet(std::vector<Integer>(elements_.begin(), cut), new_bound);
  }

  friend bool operator==(const FiniteSet&, const FiniteSet&) = default;

 private:
  std::vector<Integer> elements_;
  Integer bound_ = 0;
};

struct LoadedSet {
  FiniteSet set;
  std::vector<std::string> warnings;
};

// Text format: one base-10 integer per line, '#' starts a comment, and a
// header line "# bound <N>" is required.
inline LoadedSet read_finite_set(std::istream& in, const std::string& source = "<stream>") {
  std::vector<Integer> values;
  std::optional<Integer> bound;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view text = trim(line);
    if (text.empty()) continue;
    if (text.front() == '#') {
      std::string_view body = trim(text.substr(1));
      if (body.rfind("bound", 0) == 0 && (body.size() == 5 || body[5] == ' ' || body[5] == '\t')) {
        if (bound) throw InvalidInput(source + ":" + std::to_string(line_no) + ": duplicate bound header");
        bound = parse_integer(trim(body.substr(5)));
      }
      continue;
    }
    if (auto hash = text.find('#'); hash != std::string_view::npos) text = trim(text.substr(0, hash));
    try {
      values.push_back(parse_integer(text));
    } catch (const InvalidInput& e) {
      throw InvalidInput(source + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  if (!bound) throw InvalidInput(source + ": missing '# bound <N>' header");

  LoadedSet out;
  bool sorted = std::is_sorted(values.begin(), values.end());
  std::size_t dropped = 0;
  out.set = FiniteSet::from_unsorted(std::move(values), *bound, &dropped);
  if (!sorted) out.warnings.push_back(source + ": input was not sorted; sorted on load");
  if (dropped > 0)
    out.warnings.push_back(source + ": dropped " + std::to_string(dropped) + " duplicate value(s)");
  return out;
}

inline LoadedSet load_finite_set(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open set file '" + path + "'");
  return read_finite_set(in, path);
}

inline void write_finite_set(std::ostream& out, const FiniteSet& set) {
  out << "# bound " << set.bound() << '\n';
  for (const auto& v : set) out << v << '\n';
}

inline void save_finite_set(const std::string& path, const FiniteSet& set) {
  std::ofstream out(path);
  if (!out) throw InvalidInput("cannot write set file '" + path + "'");
  write_finite_set(out, set);
}

}  // namespace urp
