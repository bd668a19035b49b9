#include "gemsample/num.hpp"

#include <cmath>
#include <stdexcept>

namespace gemsample {

BigInt factorial(unsigned long n) {
  BigInt out;
  mpz_fac_ui(out.get_mpz_t(), n);
  return out;
}

double log_of(const BigInt &z) {
  if (sgn(z) <= 0)
    throw std::domain_error("log_of: non-positive integer");
  long exp2 = 0;
  double mant = mpz_get_d_2exp(&exp2, z.get_mpz_t());
  return std::log(mant) + static_cast<double>(exp2) * std::log(2.0);
}

double log_of(const Rational &q) {
  if (sgn(q) <= 0)
    throw std::domain_error("log_of: non-positive rational");
  return log_of(BigInt(q.get_num())) - log_of(BigInt(q.get_den()));
}

double ratio(const Rational &a, const Rational &b) {
  if (sgn(a) == 0)
    return 0.0;
  long e[4] = {};
  double m[4] = {
      mpz_get_d_2exp(&e[0], a.get_num_mpz_t()),
      mpz_get_d_2exp(&e[1], a.get_den_mpz_t()),
      mpz_get_d_2exp(&e[2], b.get_num_mpz_t()),
      mpz_get_d_2exp(&e[3], b.get_den_mpz_t()),
  };
  long shift = e[0] - e[1] - e[2] + e[3];
  if (shift > 4096)
    shift = 4096;
  if (shift < -4096)
    shift = -4096;
  return std::ldexp(m[0] / m[1] * m[3] / m[2], static_cast<int>(shift));
}

double to_double(const Rational &q) { return ratio(q, Rational(1)); }

std::string to_fraction_string(const Rational &q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational parse_fraction(const std::string &text) {
  Rational q;
  if (q.set_str(text, 10) != 0)
    throw std::invalid_argument("not a rational: '" + text + "'");
  q.canonicalize();
  return q;
}

void RationalSum::push(unsigned level, Rational q) {
  while (!stack_.empty() && stack_.back().first == level) {
    q += stack_.back().second;
    stack_.pop_back();
    ++level;
  }
  stack_.emplace_back(level, std::move(q));
}

void RationalSum::merge(const RationalSum &other) {
  for (const auto &[level, q] : other.stack_)
    push(level, q);
}

Rational RationalSum::total() const {
  Rational out = 0;
  for (auto it = stack_.rbegin(); it != stack_.rend(); ++it)
    out += it->second;
  return out;
}

} // namespace gemsample
