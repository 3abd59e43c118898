#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>

namespace smatch {

/// Exact rational number. Measures, stationary masses and drifts are carried
/// exactly so that product-form identities can be checked with zero residual.
using Rational = mpq_class;

/// Malformed user input (graph, measure, policy, word, CLI parameter).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An operation needs μ inside the stability region and it is not.
class NcondViolation : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Parses "0.25", "-1.5e-3", "3", "1/3" exactly. Throws InputError.
Rational parse_rational(std::string_view text);

/// Exact decimal when the denominator is of the form 2^a 5^b, "p/q" otherwise.
std::string format_rational(const Rational& value);

inline double to_double(const Rational& value) { return value.get_d(); }

}  // namespace smatch
