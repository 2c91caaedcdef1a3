#pragma once

#include <mpfr.h>

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

#include "replica/errors.hpp"

namespace replica {

/// Exact rational number p/q, kept in lowest terms with q > 0.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(std::int64_t num, std::int64_t den = 1);

  /// Parses "p/q" or "p" (optional leading '-').
  static Rational parse(std::string_view text);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  std::string to_string() const;

  friend bool operator==(const Rational&, const Rational&) = default;
  friend Rational operator+(const Rational& x, const Rational& y);
  friend Rational operator-(const Rational& x, const Rational& y);
  friend Rational operator*(const Rational& x, const Rational& y);

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

class Real;

/// Precision budget shared by every quantity of one computation.
///
/// working_digits = target_digits + guard_digits always holds; values are
/// immutable once built.
class PrecisionContext {
 public:
  int target_digits() const { return target_digits_; }
  int working_digits() const { return working_digits_; }
  int guard_digits() const { return guard_digits_; }
  int max_iterations() const { return max_iterations_; }
  int algorithm_order() const { return algorithm_order_; }

  /// Binary precision carrying at least working_digits decimal digits.
  mpfr_prec_t bits() const;

  /// Same target and order with a different guard allowance (>= 32).
  PrecisionContext with_guard_digits(int guard_digits) const;

  Real zero() const;
  Real real(long value) const;
  Real real(const Rational& value) const;
  Real real(double value) const;
  /// Exact decimal string converted at working precision.
  Real parse(std::string_view decimal) const;

  friend PrecisionContext make_context(int target_digits, int algorithm_order);

 private:
  PrecisionContext(int target, int guard, int max_iterations, int order);

  int target_digits_;
  int working_digits_;
  int guard_digits_;
  int max_iterations_;
  int algorithm_order_;
};

/// Builds the context for an algorithm of the given convergence order:
/// max_iterations = ceil(log(target)/log(order)) + 3,
/// guard_digits = 32 + 8 * max_iterations.
PrecisionContext make_context(int target_digits, int algorithm_order);

/// Decimal digits carried by a binary precision.
int digits_for_bits(mpfr_prec_t bits);
mpfr_prec_t bits_for_digits(int digits);

/// Significant decimal digits of a Real, truncated toward zero.
struct DecimalDigits {
  bool negative = false;
  std::string mantissa;  // value = 0.<mantissa> * 10^exponent
  long exponent = 0;
  bool exact = false;    // nothing non-zero was cut off

  /// Positional notation, e.g. "3.14159" or "0.000123".
  std::string plain() const;
};

/// Arbitrary-precision real backed by an MPFR value.
///
/// Binary operations round to the larger of the operand precisions, so
/// every value created from one context stays at that context's precision.
class Real {
 public:
  explicit Real(mpfr_prec_t bits);
  Real(const Real& other);
  Real(Real&& other) noexcept;
  Real& operator=(const Real& other);
  Real& operator=(Real&& other) noexcept;
  ~Real();

  mpfr_prec_t precision_bits() const { return mpfr_get_prec(value_); }
  int precision_digits() const { return digits_for_bits(precision_bits()); }

  mpfr_srcptr get() const { return value_; }
  mpfr_ptr get() { return value_; }

  Real& operator+=(const Real& rhs);
  Real& operator-=(const Real& rhs);
  Real& operator*=(const Real& rhs);
  Real& operator/=(const Real& rhs);
  Real& operator+=(long rhs);
  Real& operator-=(long rhs);
  Real& operator*=(long rhs);
  Real& operator/=(long rhs);

  friend Real operator+(Real lhs, const Real& rhs);
  friend Real operator-(Real lhs, const Real& rhs);
  friend Real operator*(Real lhs, const Real& rhs);
  friend Real operator/(Real lhs, const Real& rhs);
  friend Real operator+(Real lhs, long rhs) { return lhs += rhs; }
  friend Real operator-(Real lhs, long rhs) { return lhs -= rhs; }
  friend Real operator*(Real lhs, long rhs) { return lhs *= rhs; }
  friend Real operator/(Real lhs, long rhs) { return lhs /= rhs; }
  friend Real operator+(long lhs, Real rhs) { return rhs += lhs; }
  friend Real operator-(long lhs, const Real& rhs);
  friend Real operator*(long lhs, Real rhs) { return rhs *= lhs; }
  friend Real operator/(long lhs, const Real& rhs);
  Real operator-() const;

  friend bool operator==(const Real& x, const Real& y) { return mpfr_equal_p(x.value_, y.value_) != 0; }
  friend std::partial_ordering operator<=>(const Real& x, const Real& y);
  friend bool operator==(const Real& x, long y) { return mpfr_cmp_si(x.value_, y) == 0; }
  friend std::partial_ordering operator<=>(const Real& x, long y);

  bool is_zero() const { return mpfr_zero_p(value_) != 0; }
  int sign() const { return mpfr_sgn(value_); }

  Real abs() const;
  Real squared() const;
  Real pow(unsigned long exponent) const;

  double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }
  /// log10|x| to hardware precision; -infinity for zero.
  double log10_abs() const;

  /// `significant` digits, rounded first to significant+16 digits so that
  /// working-precision noise below the guard band cannot flip a digit.
  DecimalDigits digits(int significant) const;

 private:
  mpfr_t value_;
};

/// Newton iteration for x^(1/n), n in {2, 3, 4}.
///
/// Seeded from a double estimate; stops once two successive iterates agree
/// to the working precision of x.
Real nth_root(const Real& x, int n);

/// x^(p/q) for x > 0 and q in {1, 2, 3, 4, 6, 12}.
Real pow_rational(const Real& x, std::int64_t p, std::int64_t q);
Real pow_rational(const Real& x, const Rational& exponent);

/// Number of leading significant digits on which x and y agree, measured
/// as floor(-log10(|x - y| / |y|)); capped at the precision carried.
int agreement_digits(const Real& x, const Real& y);

}  // namespace replica
