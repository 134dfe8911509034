#pragma once

#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace hyperg {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// input tuple or relation arity outside the documented range
struct ArityError : Error {
  using Error::Error;
};

// scope length does not match the arity of the relation it names
struct ArityMismatch : Error {
  using Error::Error;
};

// a member or formula produces a hypergraph forbidden by the ambient class
struct ClassViolation : Error {
  using Error::Error;
};

// enumeration or search would exceed the configured budget
struct ResourceLimit : Error {
  using Error::Error;
};

// malformed formula or input file; position is a byte offset where known
struct SyntaxError : Error {
  SyntaxError(const std::string& msg, std::size_t position)
      : Error(msg + " at offset " + std::to_string(position)), position(position) {}
  explicit SyntaxError(const std::string& msg) : Error(msg), position(0) {}
  std::size_t position;
};

// behaviour table lookup on a cell it does not define
struct MissingCell : Error {
  using Error::Error;
};

// operation requires a minimality level the instance does not have
struct NotMinimal : Error {
  using Error::Error;
};

// a precondition established elsewhere failed to hold at runtime
struct AssumptionViolated : Error {
  using Error::Error;
};

// requested solve mode is not available for the template
struct ModeUnavailable : Error {
  using Error::Error;
};

struct InternalError : Error {
  using Error::Error;
};

// Single scalar budget; derived caps keep enumeration, node allocation and
// backtracking bounded. HYPERG_BUDGET overrides the default unit count.
struct Budget {
  std::uint64_t units = 10'000'000;

  std::uint64_t orbit_enumeration_cap() const { return units; }
  std::uint64_t member_enumeration_cap() const { return units; }
  std::uint64_t node_cap() const { return units < 4'000'000 ? 4'000'000 : units * 4; }
  std::uint64_t search_step_cap() const { return units; }

  static Budget from_env() {
    Budget b;
    if (const char* s = std::getenv("HYPERG_BUDGET")) {
      char* end = nullptr;
      unsigned long long v = std::strtoull(s, &end, 10);
      if (end && *end == '\0' && v > 0) b.units = v;
    }
    return b;
  }
};

inline Budget& budget() {
  static Budget b = Budget::from_env();
  return b;
}

}  // namespace hyperg
