#include "replica/precision.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <limits>
#include <numeric>

namespace replica {

namespace {

constexpr double kLog2Of10 = 3.321928094887362347870319429489390175864831393;
constexpr double kLog10Of2 = 0.301029995663981195213738894724493026768189881;
constexpr int kMinGuardDigits = 32;

bool is_supported_root_denominator(std::int64_t q) {
  return q == 1 || q == 2 || q == 3 || q == 4 || q == 6 || q == 12;
}

// Rounds a copy of x to `bits` (MPFR keeps the value, changes the precision).
Real rounded_to(const Real& x, mpfr_prec_t bits) {
  Real out(bits);
  mpfr_set(out.get(), x.get(), MPFR_RNDN);
  return out;
}

// One Newton step for r -> x^(1/n) at precision `bits`:
// r' = ((n - 1) r + x / r^(n-1)) / n
Real newton_root_step(const Real& r, const Real& x, int n) {
  Real next = x / r.pow(static_cast<unsigned long>(n - 1));
  next += r * static_cast<long>(n - 1);
  next /= static_cast<long>(n);
  return next;
}

bool agree_to_precision(const Real& a, const Real& b, mpfr_prec_t bits) {
  Real diff = a - b;
  if (diff.is_zero()) return true;
  // |a - b| <= |a| * 2^-(bits - 4), i.e. within a few ulps.
  return mpfr_get_exp(diff.get()) <= mpfr_get_exp(a.get()) - (bits - 4);
}

bool is_plain_decimal(std::string_view s) {
  std::size_t i = 0;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
  std::size_t digits = 0;
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i, ++digits;
  if (i < s.size() && s[i] == '.') {
    ++i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i, ++digits;
  }
  if (digits == 0) return false;
  if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
    ++i;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
    std::size_t exp_digits = 0;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i, ++exp_digits;
    if (exp_digits == 0) return false;
  }
  return i == s.size();
}

}  // namespace

// ---------------------------------------------------------------------------
// Rational

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw InvalidArgument("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num, den);
  num_ = num / g;
  den_ = den / g;
}

Rational Rational::parse(std::string_view text) {
  auto parse_int = [&](std::string_view part) {
    std::int64_t value = 0;
    const char* first = part.data();
    const char* last = part.data() + part.size();
    if (first != last && *first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (part.empty() || ec != std::errc() || ptr != last) {
      throw InvalidArgument("malformed rational: '" + std::string(text) + "'");
    }
    return value;
  };
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text));
  const std::int64_t den = parse_int(text.substr(slash + 1));
  if (den == 0) throw InvalidArgument("rational with zero denominator: '" + std::string(text) + "'");
  return Rational(parse_int(text.substr(0, slash)), den);
}

std::string Rational::to_string() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rational operator+(const Rational& x, const Rational& y) {
  return Rational(x.num_ * y.den_ + y.num_ * x.den_, x.den_ * y.den_);
}

Rational operator-(const Rational& x, const Rational& y) {
  return Rational(x.num_ * y.den_ - y.num_ * x.den_, x.den_ * y.den_);
}

Rational operator*(const Rational& x, const Rational& y) {
  return Rational(x.num_ * y.num_, x.den_ * y.den_);
}

// ---------------------------------------------------------------------------
// PrecisionContext

int digits_for_bits(mpfr_prec_t bits) {
  return static_cast<int>(std::floor(static_cast<double>(bits) * kLog10Of2));
}

mpfr_prec_t bits_for_digits(int digits) {
  return static_cast<mpfr_prec_t>(std::ceil(digits * kLog2Of10)) + 8;
}

PrecisionContext::PrecisionContext(int target, int guard, int max_iterations, int order)
    : target_digits_(target),
      working_digits_(target + guard),
      guard_digits_(guard),
      max_iterations_(max_iterations),
      algorithm_order_(order) {}

PrecisionContext make_context(int target_digits, int algorithm_order) {
  if (target_digits <= 0) {
    throw InvalidArgument("target_digits must be positive, got " + std::to_string(target_digits));
  }
  if (algorithm_order < 2 || algorithm_order > 4) {
    throw InvalidArgument("algorithm order must be 2, 3 or 4, got " + std::to_string(algorithm_order));
  }
  // ceil(log(target) / log(order)) without floating-point rounding.
  int steps = 0;
  for (std::int64_t reach = 1; reach < target_digits; reach *= algorithm_order) ++steps;
  const int max_iterations = steps + 3;
  return PrecisionContext(target_digits, kMinGuardDigits + 8 * max_iterations, max_iterations,
                          algorithm_order);
}

mpfr_prec_t PrecisionContext::bits() const { return bits_for_digits(working_digits_); }

PrecisionContext PrecisionContext::with_guard_digits(int guard_digits) const {
  if (guard_digits < kMinGuardDigits) {
    throw InvalidArgument("guard_digits must be at least " + std::to_string(kMinGuardDigits));
  }
  return PrecisionContext(target_digits_, guard_digits, max_iterations_, algorithm_order_);
}

Real PrecisionContext::zero() const { return Real(bits()); }

Real PrecisionContext::real(long value) const {
  Real out(bits());
  mpfr_set_si(out.get(), value, MPFR_RNDN);
  return out;
}

Real PrecisionContext::real(const Rational& value) const {
  Real out = real(static_cast<long>(value.num()));
  return out /= static_cast<long>(value.den());
}

Real PrecisionContext::real(double value) const {
  Real out(bits());
  mpfr_set_d(out.get(), value, MPFR_RNDN);
  return out;
}

Real PrecisionContext::parse(std::string_view decimal) const {
  if (!is_plain_decimal(decimal)) {
    throw InvalidArgument("not a decimal number: '" + std::string(decimal) + "'");
  }
  Real out(bits());
  const std::string text(decimal);
  mpfr_set_str(out.get(), text.c_str(), 10, MPFR_RNDN);
  return out;
}

// ---------------------------------------------------------------------------
// Real

Real::Real(mpfr_prec_t bits) {
  mpfr_init2(value_, bits);
  mpfr_set_zero(value_, 1);
}

Real::Real(const Real& other) {
  mpfr_init2(value_, other.precision_bits());
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

Real::Real(Real&& other) noexcept {
  mpfr_init2(value_, MPFR_PREC_MIN);
  mpfr_swap(value_, other.value_);
}

Real& Real::operator=(const Real& other) {
  if (this != &other) {
    mpfr_set_prec(value_, other.precision_bits());
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  return *this;
}

Real& Real::operator=(Real&& other) noexcept {
  mpfr_swap(value_, other.value_);
  return *this;
}

Real::~Real() { mpfr_clear(value_); }

namespace {
void widen_to(Real& x, const Real& other) {
  if (other.precision_bits() > x.precision_bits()) {
    mpfr_prec_round(x.get(), other.precision_bits(), MPFR_RNDN);
  }
}
}  // namespace

Real& Real::operator+=(const Real& rhs) {
  widen_to(*this, rhs);
  mpfr_add(value_, value_, rhs.value_, MPFR_RNDN);
  return *this;
}

Real& Real::operator-=(const Real& rhs) {
  widen_to(*this, rhs);
  mpfr_sub(value_, value_, rhs.value_, MPFR_RNDN);
  return *this;
}

Real& Real::operator*=(const Real& rhs) {
  widen_to(*this, rhs);
  mpfr_mul(value_, value_, rhs.value_, MPFR_RNDN);
  return *this;
}

Real& Real::operator/=(const Real& rhs) {
  widen_to(*this, rhs);
  mpfr_div(value_, value_, rhs.value_, MPFR_RNDN);
  return *this;
}

Real& Real::operator+=(long rhs) {
  mpfr_add_si(value_, value_, rhs, MPFR_RNDN);
  return *this;
}

Real& Real::operator-=(long rhs) {
  mpfr_sub_si(value_, value_, rhs, MPFR_RNDN);
  return *this;
}

Real& Real::operator*=(long rhs) {
  mpfr_mul_si(value_, value_, rhs, MPFR_RNDN);
  return *this;
}

Real& Real::operator/=(long rhs) {
  mpfr_div_si(value_, value_, rhs, MPFR_RNDN);
  return *this;
}

Real operator+(Real lhs, const Real& rhs) { return lhs += rhs; }
Real operator-(Real lhs, const Real& rhs) { return lhs -= rhs; }
Real operator*(Real lhs, const Real& rhs) { return lhs *= rhs; }
Real operator/(Real lhs, const Real& rhs) { return lhs /= rhs; }

Real operator-(long lhs, const Real& rhs) {
  Real out(rhs.precision_bits());
  mpfr_si_sub(out.get(), lhs, rhs.get(), MPFR_RNDN);
  return out;
}

Real operator/(long lhs, const Real& rhs) {
  Real out(rhs.precision_bits());
  mpfr_si_div(out.get(), lhs, rhs.get(), MPFR_RNDN);
  return out;
}

Real Real::operator-() const {
  Real out(*this);
  mpfr_neg(out.value_, out.value_, MPFR_RNDN);
  return out;
}

std::partial_ordering operator<=>(const Real& x, const Real& y) {
  if (mpfr_unordered_p(x.value_, y.value_)) return std::partial_ordering::unordered;
  const int c = mpfr_cmp(x.value_, y.value_);
  return c < 0 ? std::partial_ordering::less
               : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
}

std::partial_ordering operator<=>(const Real& x, long y) {
  if (mpfr_nan_p(x.value_)) return std::partial_ordering::unordered;
  const int c = mpfr_cmp_si(x.value_, y);
  return c < 0 ? std::partial_ordering::less
               : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
}

Real Real::abs() const {
  Real out(*this);
  mpfr_abs(out.value_, out.value_, MPFR_RNDN);
  return out;
}

Real Real::squared() const {
  Real out(precision_bits());
  mpfr_sqr(out.value_, value_, MPFR_RNDN);
  return out;
}

Real Real::pow(unsigned long exponent) const {
  Real out(precision_bits());
  mpfr_pow_ui(out.value_, value_, exponent, MPFR_RNDN);
  return out;
}

double Real::log10_abs() const {
  if (is_zero()) return -std::numeric_limits<double>::infinity();
  long exp2 = 0;
  const double mant = mpfr_get_d_2exp(&exp2, value_, MPFR_RNDN);
  return std::log10(std::fabs(mant)) + static_cast<double>(exp2) * kLog10Of2;
}

DecimalDigits Real::digits(int significant) const {
  if (significant < 1) throw InvalidArgument("at least one significant digit is required");
  if (!mpfr_number_p(value_)) throw DomainError("cannot format a non-finite value");
  DecimalDigits out;
  if (is_zero()) {
    out.mantissa.assign(static_cast<std::size_t>(significant), '0');
    out.exponent = 1;
    out.exact = true;
    return out;
  }
  mpfr_exp_t exp10 = 0;
  const std::size_t requested = static_cast<std::size_t>(significant) + 16;
  char* raw = mpfr_get_str(nullptr, &exp10, 10, requested, value_, MPFR_RNDN);
  std::string text(raw);
  mpfr_free_str(raw);
  if (!text.empty() && text.front() == '-') {
    out.negative = true;
    text.erase(0, 1);
  }
  const std::string tail = text.substr(static_cast<std::size_t>(significant));
  out.mantissa = text.substr(0, static_cast<std::size_t>(significant));
  out.exponent = exp10;
  out.exact = std::all_of(tail.begin(), tail.end(), [](char c) { return c == '0'; });
  return out;
}

std::string DecimalDigits::plain() const {
  std::string out = negative ? "-" : "";
  const long len = static_cast<long>(mantissa.size());
  if (exponent >= len) {
    out += mantissa;
    out.append(static_cast<std::size_t>(exponent - len), '0');
  } else if (exponent > 0) {
    out += mantissa.substr(0, static_cast<std::size_t>(exponent));
    out += '.';
    out += mantissa.substr(static_cast<std::size_t>(exponent));
  } else {
    out += "0.";
    out.append(static_cast<std::size_t>(-exponent), '0');
    out += mantissa;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Roots and rational powers

Real nth_root(const Real& x, int n) {
  if (n < 2 || n > 4) throw InvalidArgument("nth_root supports n in {2, 3, 4}, got " + std::to_string(n));
  if (!mpfr_number_p(x.get())) throw DomainError("nth_root of a non-finite value");
  if (x.sign() < 0) throw DomainError("nth_root of a negative number");
  const mpfr_prec_t bits = x.precision_bits();
  if (x.is_zero()) return Real(bits);

  // Seed: x = m * 2^e with m in [0.5, 1); split e = n*k + r with 0 <= r < n.
  long e = 0;
  const double m = mpfr_get_d_2exp(&e, x.get(), MPFR_RNDN);
  long k = e / n;
  long r = e % n;
  if (r < 0) {
    r += n;
    --k;
  }
  mpfr_prec_t prec = 53;
  Real root(prec);
  mpfr_set_d(root.get(), std::pow(std::ldexp(m, static_cast<int>(r)), 1.0 / n), MPFR_RNDN);
  mpfr_mul_2si(root.get(), root.get(), k, MPFR_RNDN);

  // Each step doubles the correct bits, so ramp the precision up with it.
  while (prec < bits) {
    prec = std::min<mpfr_prec_t>(2 * prec, bits);
    root = newton_root_step(rounded_to(root, prec), rounded_to(x, prec), n);
  }
  for (int i = 0; i < 64; ++i) {
    Real next = newton_root_step(root, x, n);
    if (agree_to_precision(next, root, bits)) return next;
    root = std::move(next);
  }
  throw Error("nth_root: Newton iteration failed to settle");
}

Real pow_rational(const Real& x, std::int64_t p, std::int64_t q) {
  if (q <= 0) throw UnsupportedExponentError("exponent denominator must be positive");
  return pow_rational(x, Rational(p, q));
}

Real pow_rational(const Real& x, const Rational& exponent) {
  if (!(x > 0L)) throw DomainError("pow_rational requires a positive base");
  if (!is_supported_root_denominator(exponent.den())) {
    throw UnsupportedExponentError("exponent denominator " + std::to_string(exponent.den()) +
                                   " not in {1, 2, 3, 4, 6, 12}");
  }
  const mpfr_prec_t bits = x.precision_bits();
  if (exponent.num() == 0) {
    Real one(bits);
    mpfr_set_ui(one.get(), 1, MPFR_RNDN);
    return one;
  }
  Real y = x.pow(static_cast<unsigned long>(exponent.num() < 0 ? -exponent.num() : exponent.num()));
  switch (exponent.den()) {
    case 1: break;
    case 2:
    case 3:
    case 4: y = nth_root(y, static_cast<int>(exponent.den())); break;
    case 6: y = nth_root(nth_root(y, 2), 3); break;
    case 12: y = nth_root(nth_root(y, 4), 3); break;
  }
  if (exponent.num() < 0) y = 1L / y;
  return y;
}

int agreement_digits(const Real& x, const Real& y) {
  const int carried = std::min(x.precision_digits(), y.precision_digits());
  const Real diff = (x - y).abs();
  if (diff.is_zero()) return carried;
  const double rel = y.is_zero() ? diff.log10_abs() : diff.log10_abs() - y.log10_abs();
  const double digits = std::floor(-rel);
  return static_cast<int>(std::clamp(digits, 0.0, static_cast<double>(carried)));
}

}  // namespace replica
