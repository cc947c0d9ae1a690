#pragma once

#include <stdexcept>
#include <string>

#include "urp/integer.hpp"

namespace urp {

// Base of every error reported to callers. Core bugs surface as
// std::logic_error instead.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InvalidInput : Error {
  using Error::Error;
};

struct LimitExceeded : Error {
  using Error::Error;
};

struct IndexOutOfRange : Error {
  using Error::Error;
};

// The question cannot be answered from the stored prefix of a set.
struct IncompleteWindow : Error {
  IncompleteWindow(const std::string& what, Integer at) : Error(what), n(std::move(at)) {}
  Integer n;
};

struct DegeneratePair : Error {
  using Error::Error;
};

struct StructureViolation : Error {
  StructureViolation(const std::string& what, Integer at) : Error(what), witness(std::move(at)) {}
  Integer witness;
};

// r(witness) != 1; count is the observed number of representations.
struct NotUniquePair : Error {
  NotUniquePair(const std::string& what, Integer at, std::uint64_t reps)
      : Error(what), witness(std::move(at)), count(reps) {}
  Integer witness;
  std::uint64_t count;
};

}  // namespace urp
