#pragma once

#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace gemsample {

using BigInt = mpz_class;
using Rational = mpq_class;

BigInt factorial(unsigned long n);

/// Natural log of a positive rational, accurate for values far outside the
/// double range.
double log_of(const Rational &q);
double log_of(const BigInt &z);

/// Nearest double; 0 on underflow.
double to_double(const Rational &q);

/// a / b as a double, computed without forming the exact quotient. b > 0.
double ratio(const Rational &a, const Rational &b);

/// "num/den" in decimal.
/// Exact sum of many rationals. Terms are combined pairwise, like a binary
/// counter, so operands stay balanced instead of one huge accumulator
/// absorbing every term.
class RationalSum {
public:
  void add(const Rational &q) { push(0, q); }
  void merge(const RationalSum &other);
  Rational total() const;
  bool empty() const noexcept { return stack_.empty(); }

private:
  void push(unsigned level, Rational q);
  std::vector<std::pair<unsigned, Rational>> stack_;
};

std::string to_fraction_string(const Rational &q);
Rational parse_fraction(const std::string &text);

} // namespace gemsample
