#include "erldp/numeric.hpp"

#include <cmath>
#include <cctype>

#include "erldp/errors.hpp"

namespace erldp {

namespace {

std::recursive_mutex& precision_mutex() {
  static std::recursive_mutex m;
  return m;
}

unsigned bits_to_digits10(unsigned bits) {
  return static_cast<unsigned>(std::ceil(bits * 0.30102999566398120)) + 1;
}

}  // namespace

ScopedPrecision::ScopedPrecision(unsigned bits)
    : lock_(precision_mutex()),
      bits_(bits),
      saved_digits10_(HighFloat::default_precision()) {
  HighFloat::default_precision(bits_to_digits10(bits));
}

ScopedPrecision::~ScopedPrecision() {
  HighFloat::default_precision(saved_digits10_);
}

Rational parse_rational(std::string_view text) {
  std::string s(text);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  std::size_t start = 0;
  while (start < s.size() && std::isspace(static_cast<unsigned char>(s[start]))) ++start;
  s = s.substr(start);
  if (s.empty()) throw ParameterOutOfRange("empty rational literal");

  Rational q;
  auto dot = s.find('.');
  if (dot != std::string::npos && s.find('/') == std::string::npos) {
    // finite decimal: "0.25" -> 25/100
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    std::size_t frac_len = s.size() - dot - 1;
    if (digits.empty() || digits == "-" || digits == "+") {
      throw ParameterOutOfRange("malformed decimal: " + s);
    }
    BigInt num;
    if (num.set_str(digits[0] == '+' ? digits.substr(1) : digits, 10) != 0) {
      throw ParameterOutOfRange("malformed decimal: " + s);
    }
    BigInt den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, frac_len);
    q = Rational(num, den);
  } else {
    if (q.set_str(s[0] == '+' ? s.substr(1) : s, 10) != 0) {
      throw ParameterOutOfRange("malformed rational: " + s);
    }
    if (q.get_den() == 0) throw ParameterOutOfRange("zero denominator: " + s);
  }
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(10); }
std::string to_string(const BigInt& z) { return z.get_str(10); }

Rational pow(const Rational& base, std::uint64_t exponent) {
  BigInt num, den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), exponent);
  mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), exponent);
  Rational r(num, den);
  r.canonicalize();
  return r;
}

BigInt binomial(std::uint64_t n, std::uint64_t k) {
  BigInt r;
  if (k > n) return r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

BigInt factorial(std::uint64_t n) {
  BigInt r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

HighFloat to_hp(const Rational& q) {
  HighFloat x;
  mpfr_set_q(x.backend().data(), q.get_mpq_t(), MPFR_RNDN);
  return x;
}

HighFloat log_hp(const Rational& q) {
  if (sgn(q) <= 0) throw DomainError("log of nonpositive rational");
  return boost::multiprecision::log(to_hp(q));
}

double log_binomial(double n, double k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

}  // namespace erldp
