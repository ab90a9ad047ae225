#pragma once

#include <cstdint>
#include <mutex>
#include <string>
#include <string_view>

#include <gmpxx.h>
#include <boost/multiprecision/mpfr.hpp>

namespace erldp {

using BigInt = mpz_class;
using Rational = mpq_class;
using HighFloat = boost::multiprecision::mpfr_float;

inline constexpr unsigned kDefaultPrecisionBits = 256;

/// RAII guard for the working precision of HighFloat.
///
/// The MPFR default precision is process-wide, so every guard also holds a
/// recursive lock for its lifetime: high-precision evaluations are
/// serialized, nested guards on the same thread are fine.
class ScopedPrecision {
 public:
  explicit ScopedPrecision(unsigned bits);
  ~ScopedPrecision();
  ScopedPrecision(const ScopedPrecision&) = delete;
  ScopedPrecision& operator=(const ScopedPrecision&) = delete;

  unsigned bits() const noexcept { return bits_; }

 private:
  std::unique_lock<std::recursive_mutex> lock_;
  unsigned bits_;
  unsigned saved_digits10_;
};

/// Parses "a/b", "a" or a finite decimal such as "0.25" into an exact
/// rational. Throws ParameterOutOfRange on malformed input or zero
/// denominator.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& q);
std::string to_string(const BigInt& z);

/// Exact power of a rational with a nonnegative integer exponent.
Rational pow(const Rational& base, std::uint64_t exponent);

BigInt binomial(std::uint64_t n, std::uint64_t k);
BigInt factorial(std::uint64_t n);

/// Natural log of a positive rational, evaluated at the current HighFloat
/// precision.
HighFloat log_hp(const Rational& q);
HighFloat to_hp(const Rational& q);

/// log(n choose k) for real arguments through lgamma.
double log_binomial(double n, double k);

}  // namespace erldp
