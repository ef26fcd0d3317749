#pragma once

#include <stdexcept>
#include <string>

namespace spraykit {

struct arity_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Denominator or domain inequation vanished during exact evaluation.
struct eval_domain_error : std::domain_error {
  explicit eval_domain_error(const std::string& what, std::string offending_poly = {})
      : std::domain_error(what), offending(std::move(offending_poly)) {}
  std::string offending;
};

// In-domain sampling budget exhausted; the check is inconclusive.
struct sampling_exhausted : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A spray/gluing construction precondition failed with a concrete witness.
struct construction_error : std::runtime_error {
  explicit construction_error(const std::string& what, std::string witness_point = {})
      : std::runtime_error(what), witness(std::move(witness_point)) {}
  std::string witness;
};

}  // namespace spraykit
